#include "ldp/ratefn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldp/numeric.hpp"

namespace ldp {

RateFunctionHandle RateFunctionHandle::degenerate(double m, std::string tag) {
    RateFunctionHandle h;
    h.kind = Kind::Degenerate;
    h.degenerate_m = m;
    h.speed_tag = std::move(tag);
    return h;
}

RateFunctionHandle RateFunctionHandle::closed_form(std::function<double(double)> f,
                                                   std::string tag) {
    RateFunctionHandle h;
    h.kind = Kind::ClosedForm;
    h.eval_fn = std::move(f);
    h.speed_tag = std::move(tag);
    return h;
}

RateFunctionHandle RateFunctionHandle::variational(std::function<double(double)> f,
                                                   std::string tag) {
    RateFunctionHandle h;
    h.kind = Kind::Variational;
    h.eval_fn = std::move(f);
    h.speed_tag = std::move(tag);
    return h;
}

namespace {

int grid_for(const RateFunctionHandle& jx) {
    return jx.kind == RateFunctionHandle::Kind::Variational ? 48 : 257;
}

constexpr double kLogMgfTol = 1e-11;

}  // namespace

// --- MeasureArg ---------------------------------------------------------------

MeasureArg MeasureArg::gaussian_measure(double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("MeasureArg: sigma must be positive");
    MeasureArg m;
    m.gaussian = true;
    m.sigma = sigma;
    return m;
}

MeasureArg MeasureArg::histogram(std::vector<double> edges, std::vector<double> masses) {
    if (edges.size() != masses.size() + 1 || masses.empty())
        throw InvalidArgument("MeasureArg: need edges.size() == masses.size() + 1");
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1])) throw InvalidArgument("MeasureArg: edges not increasing");
    double sum = 0.0;
    for (double w : masses) {
        if (w < 0.0) throw InvalidArgument("MeasureArg: negative mass");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-8) throw InvalidArgument("MeasureArg: masses must sum to 1");
    for (double& w : masses) w /= sum;
    MeasureArg m;
    m.gaussian = false;
    m.sigma = 0.0;
    m.edges = std::move(edges);
    m.masses = std::move(masses);
    return m;
}

MeasureArg MeasureArg::histogram_of(const std::vector<double>& draws) {
    if (draws.size() < 4) throw InvalidArgument("MeasureArg::histogram_of: too few draws");
    std::vector<double> s(draws);
    std::sort(s.begin(), s.end());
    size_t n = s.size();
    double iqr = s[(3 * n) / 4] - s[n / 4];
    double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
    if (!(width > 0.0)) width = (s.back() - s.front()) / 64.0;
    if (!(width > 0.0)) throw InvalidArgument("MeasureArg::histogram_of: degenerate sample");
    double lo = s.front(), hi = s.back();
    int bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    std::vector<double> edges(bins + 1), masses(bins, 0.0);
    for (int i = 0; i <= bins; ++i) edges[i] = lo + (hi - lo) * i / bins;
    for (double x : s) {
        int b = std::min(bins - 1, static_cast<int>((x - lo) / (hi - lo) * bins));
        masses[b] += 1.0 / n;
    }
    return histogram(std::move(edges), std::move(masses));
}

double MeasureArg::entropy() const {
    if (gaussian) return 0.5 * std::log(2.0 * M_PI * M_E * sigma * sigma);
    double h = 0.0;
    for (size_t i = 0; i < masses.size(); ++i) {
        double m = masses[i], w = edges[i + 1] - edges[i];
        if (m > 0.0) h -= m * std::log(m / w);
    }
    return h;
}

double MeasureArg::second_moment() const {
    if (gaussian) return sigma * sigma;
    double m2 = 0.0;
    for (size_t i = 0; i < masses.size(); ++i) {
        double mid = 0.5 * (edges[i] + edges[i + 1]);
        double w = edges[i + 1] - edges[i];
        m2 += masses[i] * (mid * mid + w * w / 12.0);
    }
    return m2;
}

MeasureArg MeasureArg::scaled_down_by(double c) const {
    if (!(c > 0.0)) throw InvalidArgument("MeasureArg::scaled_down_by: c must be positive");
    MeasureArg out(*this);
    if (gaussian) {
        out.sigma = sigma / c;
    } else {
        for (double& e : out.edges) e /= c;
    }
    return out;
}

// --- closed forms ---------------------------------------------------------------

double chi_square_rate(double t) {
    if (!(t > 0.0)) return kInf;
    return 0.5 * (t - 1.0) - 0.5 * std::log(t);
}

double mp(double p) {
    if (!(p >= 1.0)) throw InvalidArgument("mp: p must be >= 1");
    double lg = (2.0 / p) * std::log(p) + std::lgamma(1.0 + 3.0 / p) - std::log(3.0) -
                std::lgamma(1.0 + 1.0 / p);
    return std::exp(0.5 * lg);
}

double gaussian_abs_moment(double q) {
    if (!(q > 0.0)) throw InvalidArgument("gaussian_abs_moment: q must be positive");
    return std::exp(0.5 * q * std::log(2.0) + std::lgamma(0.5 * (q + 1.0))) / std::sqrt(M_PI);
}

double gaussian_ratio_rate(double lambda, double z) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw InvalidArgument("gaussian_ratio_rate: lambda in (0,1]");
    if (lambda == 1.0) {
        if (!(z > 0.0 && z <= 1.0)) return kInf;
        return -std::log(z);
    }
    if (!(z > 0.0 && z < 1.0)) return kInf;
    return 0.5 * lambda * std::log(lambda / (z * z)) +
           0.5 * (1.0 - lambda) * std::log((1.0 - lambda) / (1.0 - z * z));
}

double rate_pgn_partial_sum(double p, double t) {
    if (!(p >= 1.0 && p <= 2.0)) throw InvalidArgument("rate_pgn_partial_sum: p in [1,2]");
    if (t < 0.0) return kInf;
    return std::pow(t, 0.5 * p) / p;
}

// --- tilted Gaussian log-MGFs ----------------------------------------------------

double tilted_gaussian_logmgf(double q, double t1, double t2) {
    if (!(q >= 1.0 && q <= 2.0)) throw InvalidArgument("tilted_gaussian_logmgf: q in [1,2]");
    bool finite = (q < 2.0) ? (t2 < 0.5) : (t1 + t2 < 0.5);
    if (!finite) return kInf;
    const double logc = -0.5 * std::log(2.0 * M_PI);
    LogIntegrand gi{[=](double x) { return t1 * std::pow(std::fabs(x), q) + (t2 - 0.5) * x * x + logc; },
                    Interval{-kInf, kInf}};
    return log_integral(gi, kLogMgfTol);
}

double gaussian_qnorm_conjugate(double q, double y) {
    Fn1D lam;
    lam.f = [q](double t) { return tilted_gaussian_logmgf(q, t, 0.0); };
    lam.domain = (q < 2.0) ? Interval{-kInf, kInf} : Interval{-kInf, 0.5};
    return legendre_1d(lam, y);
}

// --- product measures / lp balls ---------------------------------------------------

double rate_product(const Fn1D& log_mgf_square, double x) {
    if (x < 0.0) return kInf;
    return legendre_1d(log_mgf_square, x * x);
}

namespace {

double fp_star_impl(double p, double y, std::pair<double, double>* warm) {
    if (!(p > 2.0)) throw InvalidArgument("fp_star: p must be > 2");
    if (!(y > 0.0)) throw InvalidArgument("fp_star: y must be > 0");
    // With the p-th absolute moment pinned at 1, Jensen caps the second
    // moment at 1; beyond it the supremum runs away along a tilt ridge.
    if (y >= 1.0) throw Diverging("fp_star: y outside the attainable moment range");
    const double logc = -std::log(2.0) - std::log(p) / p - std::lgamma(1.0 + 1.0 / p);
    auto h = [&](double t1, double t2) -> double {
        if (!(t2 < 1.0 / p)) return -kInf;
        LogIntegrand gi{[=](double x) {
                            double ap = std::pow(std::fabs(x), p);
                            return t1 * x * x + (t2 - 1.0 / p) * ap + logc;
                        },
                        Interval{-kInf, kInf}};
        return t1 * y + t2 - log_integral(gi, kLogMgfTol);
    };
    Max2DResult r = maximize_concave_2d(h, warm ? *warm : std::pair<double, double>{0.0, 0.0},
                                        1e-11);
    if (warm) *warm = {r.s, r.t};
    return r.value;
}

}  // namespace

double fp_star(double p, double y) { return fp_star_impl(p, y, nullptr); }

double rate_lp_norm(double p, double x) {
    if (!(p >= 1.0)) throw InvalidArgument("rate_lp_norm: p must be >= 1");
    if (p < 2.0) {
        if (x < 0.0) return kInf;
        return std::pow(x, p) / p;
    }
    if (p == 2.0) {
        if (!(x > 0.0 && x <= 1.0)) return kInf;
        return -std::log(x);
    }
    if (!(x > 0.0 && x < 1.0)) return kInf;
    // inf over y in [x, 1) of log(y/x) + F_p*(y^2); the argument of F_p* is
    // the second moment of the generalized normal coordinates, attainable only
    // below 1.  The tilt optimum moves slowly in y, so one warm-start pair
    // serves the whole scan.
    std::pair<double, double> warm{0.0, 0.0};
    auto obj = [&](double y) -> double {
        try {
            double f = fp_star_impl(p, y * y, &warm);
            return f == kInf ? kInf : std::log(y / x) + f;
        } catch (const Diverging&) {
            return kInf;
        }
    };
    double best = obj(x);
    // F_p* has its minimum at m(p)^2, so the objective increases in y beyond
    // max(x, m(p)); capping the scan there also keeps the tilts moderate.
    double hi = std::min(std::max(x * (1.0 + 1e-9), 1.05 * mp(p)), 1.0 - 1e-6);
    if (hi > x * (1.0 + 1e-10)) {
        MinResult r = infimum_log_grid(obj, x * (1.0 + 1e-10), hi, 33, 1e-10);
        best = std::min(best, r.value);
    }
    return best;
}

// --- regime rate functions ------------------------------------------------------------

double rate_constant_regime(const RateFunctionHandle& jx, ConstantVariant variant, double xnorm) {
    if (!(xnorm >= 0.0)) return kInf;
    const bool astar = variant == ConstantVariant::AStar;
    auto angular = [&](double c) {
        return astar ? -0.5 * std::log1p(-c * c) : 0.5 * c * c;
    };
    if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
        double m = jx.degenerate_m;
        if (xnorm == 0.0) return m == 0.0 ? 0.0 : kInf;
        if (!(m > 0.0)) return kInf;
        double c = xnorm / m;
        if (astar && !(c < 1.0)) return kInf;
        return angular(c);
    }
    auto phi = [&](double c) {
        double j = jx(xnorm / c);
        return j == kInf ? kInf : j + angular(c);
    };
    double hi = astar ? 1.0 - 1e-13 : 1e4 * std::max(1.0, xnorm);
    MinResult r = infimum_log_grid(phi, 1e-9, hi, grid_for(jx), 1e-11);
    return r.value;
}

double rate_sublinear_norm(SublinearNormCase cse, double r, const RateFunctionHandle& jx,
                           double x) {
    switch (cse) {
        case SublinearNormCase::AStar:
            return rate_constant_regime(jx, ConstantVariant::AStar, x);
        case SublinearNormCase::R0:
            return jx(x);
        case SublinearNormCase::RPos: {
            if (!(r > 0.0) || !std::isfinite(r))
                throw InvalidArgument("rate_sublinear_norm: RPos needs r in (0,inf)");
            auto angular = [&](double c) { return 0.5 * (c * c - 1.0) - std::log(c); };
            if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
                double m = jx.degenerate_m;
                if (x == 0.0 && m == 0.0) return 0.0;  // infimum at c = 1
                if (!(m > 0.0) || !(x > 0.0)) return kInf;
                return angular(std::sqrt(r) * x / m);
            }
            auto phi = [&](double c) {
                double j = jx(std::sqrt(r) * x / c);
                return j == kInf ? kInf : angular(c) + r * j;
            };
            MinResult res = infimum_log_grid(phi, 1e-9, 1e4 * std::max(1.0, x), grid_for(jx), 1e-11);
            return res.value;
        }
        case SublinearNormCase::RInf: {
            if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
                double m = jx.degenerate_m;
                if (x == 0.0) return m == 0.0 ? 0.0 : kInf;
                if (!(m > 0.0)) return kInf;
                double c = x / m;
                return 0.5 * c * c;
            }
            auto phi = [&](double c) {
                double j = jx(x / c);
                return j == kInf ? kInf : 0.5 * c * c + j;
            };
            MinResult res = infimum_log_grid(phi, 1e-9, 1e4 * std::max(1.0, x), grid_for(jx), 1e-11);
            return res.value;
        }
    }
    return kInf;
}

double rate_sublinear_qnorm(double q, SpeedBalance cse, const RateFunctionHandle& jx, double m,
                            double x) {
    if (!(q >= 1.0 && q <= 2.0)) throw InvalidArgument("rate_sublinear_qnorm: q in [1,2]");
    if (!(m > 0.0)) throw InvalidArgument("rate_sublinear_qnorm: m must be positive");
    if (x < 0.0) return kInf;
    switch (cse) {
        case SpeedBalance::Fast:
            return gaussian_qnorm_conjugate(q, std::pow(x / m, q));
        case SpeedBalance::Balanced: {
            if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
                double md = jx.degenerate_m;
                if (!(md > 0.0)) return kInf;
                return gaussian_qnorm_conjugate(q, std::pow(x / md, q));
            }
            auto phi = [&](double c) {
                double j = jx(x / c);
                if (j == kInf) return kInf;
                double lam = gaussian_qnorm_conjugate(q, std::pow(c, q));
                return lam == kInf ? kInf : lam + j;
            };
            MinResult res = infimum_log_grid(phi, 1e-6, 1e3 * std::max(1.0, x), 33, 1e-10);
            return res.value;
        }
        case SpeedBalance::Slow:
            return jx(x / std::pow(gaussian_abs_moment(q), 1.0 / q));
    }
    return kInf;
}

LpProjectionRate rate_lp_projection(double p, LpProjectionCase cse, double x) {
    if (!(p >= 1.0 && p < 2.0)) throw InvalidArgument("rate_lp_projection: p in [1,2)");
    LpProjectionRate out;
    char tag[64];
    if (x < 0.0) {
        out.value = kInf;
        return out;
    }
    switch (cse) {
        case LpProjectionCase::Constant:
        case LpProjectionCase::SubSlow:
            out.value = (p + 2.0) / (2.0 * p) * std::pow(x, 2.0 * p / (p + 2.0));
            std::snprintf(tag, sizeof(tag), "n^%.6g", 2.0 * p / (2.0 + p));
            out.speed_tag = tag;
            return out;
        case LpProjectionCase::SubCrit: {
            std::snprintf(tag, sizeof(tag), "n^%.6g", 2.0 * p / (2.0 + p));
            out.speed_tag = tag;
            if (x == 0.0) {
                out.cbar = 1.0;
                out.value = 0.0;
                return out;
            }
            double xp = std::pow(x, p);
            Fn1D phi;
            phi.f = [=](double c) { return std::pow(c, p + 2.0) - std::pow(c, p) - xp; };
            // c^p (c^2 - 1) = x^p pins the root into
            // [max(1, x^{p/(p+2)}), sqrt(1 + x^p)].
            double lo = std::max(1.0, std::pow(x, p / (p + 2.0)));
            double hi = std::sqrt(1.0 + xp);
            while (phi.f(hi) < 0.0) hi *= 2.0;
            double cbar = phi.f(lo) == 0.0 ? lo : find_root_bracketed(phi, lo, hi, 1e-12);
            out.cbar = cbar;
            out.value = (p + 2.0) / (2.0 * p) * xp / std::pow(cbar, p) - std::log(cbar);
            return out;
        }
        case LpProjectionCase::SubFast:
            out.value = std::pow(x, p) / p;
            std::snprintf(tag, sizeof(tag), "n^%.6g*k_n^-%.6g", p, 0.5 * p);
            out.speed_tag = tag;
            return out;
    }
    return out;
}

double entropy_H_lambda(double lambda, const MeasureArg& nu) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("entropy_H_lambda: lambda in (0,1]");
    double m2 = nu.second_moment();
    double lm2 = lambda * m2;
    if (lm2 > 1.0) return kInf;
    if (lambda < 1.0 && lm2 >= 1.0) return kInf;
    double h = nu.entropy();
    double third = 0.0;
    if (lambda < 1.0) third = 0.5 * (1.0 - lambda) * std::log((1.0 - lambda) / (1.0 - lm2));
    return -lambda * h + 0.5 * lambda * std::log(2.0 * M_PI * M_E) + third;
}

double relative_entropy_to_gaussian(const MeasureArg& nu, double c) {
    if (!(c > 0.0)) throw InvalidArgument("relative_entropy_to_gaussian: c must be positive");
    if (nu.gaussian) {
        double a = nu.sigma;
        return 0.5 * (a * a / (c * c) - 1.0) - std::log(a / c);
    }
    // Binned KL against the gamma_c density at bin midpoints (diagnostic grade).
    double kl = 0.0;
    for (size_t i = 0; i < nu.masses.size(); ++i) {
        double m = nu.masses[i];
        if (m <= 0.0) continue;
        double w = nu.edges[i + 1] - nu.edges[i];
        double mid = 0.5 * (nu.edges[i] + nu.edges[i + 1]);
        double logphi = -0.5 * mid * mid / (c * c) - std::log(c) - 0.5 * std::log(2.0 * M_PI);
        kl += m * (std::log(m / w) - logphi);
    }
    return kl;
}

double rate_sublinear_empirical(SpeedBalance cse, const RateFunctionHandle& jx, double m,
                                const MeasureArg& nu) {
    if (!(m > 0.0)) throw InvalidArgument("rate_sublinear_empirical: m must be positive");
    switch (cse) {
        case SpeedBalance::Fast:
            return relative_entropy_to_gaussian(nu, m);
        case SpeedBalance::Balanced: {
            if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
                double md = jx.degenerate_m;
                return md > 0.0 ? relative_entropy_to_gaussian(nu, md) : kInf;
            }
            auto phi = [&](double c) {
                double j = jx(c);
                return j == kInf ? kInf : relative_entropy_to_gaussian(nu, c) + j;
            };
            MinResult res = infimum_log_grid(phi, 1e-6, 1e6, grid_for(jx), 1e-11);
            return res.value;
        }
        case SpeedBalance::Slow:
            return nu.gaussian ? jx(nu.sigma) : kInf;
    }
    return kInf;
}

double rate_linear_empirical(double lambda, const RateFunctionHandle& jx, LinearCase cse,
                             const MeasureArg& mu) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw InvalidArgument("rate_linear_empirical: lambda in (0,1]");
    if (cse == LinearCase::Slow) return mu.gaussian ? jx(mu.sigma) : kInf;
    double cmin = std::sqrt(lambda * mu.second_moment());
    if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
        double md = jx.degenerate_m;
        if (!(md > 0.0)) return kInf;
        return entropy_H_lambda(lambda, mu.scaled_down_by(md));
    }
    auto phi = [&](double c) {
        double j = jx(c);
        if (j == kInf) return kInf;
        double hl = entropy_H_lambda(lambda, mu.scaled_down_by(c));
        return hl == kInf ? kInf : hl + j;
    };
    MinResult res =
        infimum_log_grid(phi, std::max(1e-9, cmin * (1.0 + 1e-12)), std::max(1.0, cmin) * 1e4,
                         grid_for(jx), 1e-11);
    return res.value;
}

namespace {

// Newton iteration on the stationarity conditions E[|x|^q] = y1, E[x^2] = y2
// under the (t1,t2)-tilted Gaussian; used to prime the ascent so the final
// maximize_concave_2d call starts next to the optimum.
std::pair<double, double> tilt_moment_match(double q, double y1, double y2) {
    double t1 = 0.0, t2 = 0.0;
    auto region_ok = [&](double a, double b) { return (q < 2.0) ? (b < 0.5) : (a + b < 0.5); };
    auto log_moment = [&](double a, double b, double pw) {
        const double logc = -0.5 * std::log(2.0 * M_PI);
        LogIntegrand gi{[=](double x) {
                            double ax = std::fabs(x);
                            double w = pw == 0.0 ? 0.0
                                                 : (x == 0.0 ? -kInf : pw * std::log(ax));
                            return w == -kInf
                                       ? -kInf
                                       : a * std::pow(ax, q) + (b - 0.5) * x * x + logc + w;
                        },
                        Interval{-kInf, kInf}};
        return log_integral(gi, 1e-10);
    };
    for (int it = 0; it < 24; ++it) {
        if (!region_ok(t1, t2)) break;
        double lz = log_moment(t1, t2, 0.0);
        double mq = std::exp(log_moment(t1, t2, q) - lz);
        double m2 = std::exp(log_moment(t1, t2, 2.0) - lz);
        double g1 = y1 - mq, g2 = y2 - m2;
        if (std::fabs(g1) + std::fabs(g2) < 1e-12 * (1.0 + y1 + y2)) break;
        double c11 = std::exp(log_moment(t1, t2, 2.0 * q) - lz) - mq * mq;
        double c12 = std::exp(log_moment(t1, t2, q + 2.0) - lz) - mq * m2;
        double c22 = std::exp(log_moment(t1, t2, 4.0) - lz) - m2 * m2;
        double det = c11 * c22 - c12 * c12;
        if (!(det > 1e-300)) break;
        double d1 = (c22 * g1 - c12 * g2) / det;
        double d2 = (c11 * g2 - c12 * g1) / det;
        double step = 1.0;
        while (step > 1e-6 && !region_ok(t1 + step * d1, t2 + step * d2)) step *= 0.5;
        if (step <= 1e-6) break;
        t1 += step * d1;
        t2 += step * d2;
    }
    if (!region_ok(t1, t2)) return {0.0, 0.0};
    return {t1, t2};
}

// 2D Legendre conjugate of Lambda_{A,q}, Newton-primed then finished by
// maximize_concave_2d; outside the attainable cone the supremum escapes and
// the conjugate is +inf.  Jensen bounds the q-th moment: y1 <= y2^{q/2}.
// Within a 1e-4 relative margin of that boundary the conjugate blows up and
// the optimal tilts explode; such points are reported as +inf rather than
// chased along the ridge.
double lambda_Aq_conjugate(double q, double y1, double y2) {
    if (!(y1 > 0.0 && y2 > 0.0)) return kInf;
    if (y1 >= std::pow(y2, 0.5 * q) * (1.0 - 1e-4)) return kInf;
    auto h = [&](double t1, double t2) -> double {
        double lam = tilted_gaussian_logmgf(q, t1, t2);
        return lam == kInf ? -kInf : t1 * y1 + t2 * y2 - lam;
    };
    try {
        Max2DResult r = maximize_concave_2d(h, tilt_moment_match(q, y1, y2), 1e-10);
        return r.value;
    } catch (const Diverging&) {
        return kInf;
    }
}

}  // namespace

double rate_J_q_lambda(double q, double lambda, double z) {
    if (!(q >= 1.0 && q <= 2.0)) throw InvalidArgument("rate_J_q_lambda: q in [1,2]");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("rate_J_q_lambda: lambda in (0,1]");
    if (q == 2.0) return gaussian_ratio_rate(lambda, z);
    if (!(z > 0.0)) return kInf;

    // The low-rate region of both conjugates sits at mildly tilted moments, so
    // the optimal total x2 + x3 is O(1); argument tolerances are coarse since
    // the value error is second order at the infimum.
    if (lambda == 1.0) {
        auto phi = [&](double x2) {
            double x1 = std::pow(z, q) * std::pow(x2, 0.5 * q);
            return lambda_Aq_conjugate(q, x1, x2);
        };
        MinResult r = infimum_log_grid(phi, 0.05, 20.0, 21, 1e-5);
        return r.value;
    }
    // x1 pinned by the constraint z = x1^{1/q} / (x2 + x3)^{1/2}; search over the
    // total u = x2 + x3 and the split fraction.
    auto inner = [&](double u) {
        double x1 = std::pow(z, q) * std::pow(u, 0.5 * q);
        auto phi = [&](double frac) {
            double x2 = frac * u, x3 = (1.0 - frac) * u;
            double a = lambda_Aq_conjugate(q, x1 / lambda, x2 / lambda);
            if (a == kInf) return kInf;
            double b = chi_square_rate(x3 / (1.0 - lambda));
            return b == kInf ? kInf : lambda * a + (1.0 - lambda) * b;
        };
        MinResult r = infimum_linear_grid(phi, 1e-3, 1.0 - 1e-3, 13, 1e-5);
        return r.value;
    };
    MinResult r = infimum_log_grid(inner, 0.1, 6.0, 15, 1e-5);
    return r.value;
}

double rate_linear_qnorm(double q, double lambda, const RateFunctionHandle& jx, LinearCase cse,
                         double x) {
    if (!(q >= 1.0 && q <= 2.0)) throw InvalidArgument("rate_linear_qnorm: q in [1,2]");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw InvalidArgument("rate_linear_qnorm: lambda in (0,1]");
    if (x < 0.0) return kInf;
    if (cse == LinearCase::Slow)
        return jx(x / std::pow(lambda * gaussian_abs_moment(q), 1.0 / q));
    if (jx.kind == RateFunctionHandle::Kind::Degenerate) {
        double m = jx.degenerate_m;
        if (!(m > 0.0)) return kInf;
        return rate_J_q_lambda(q, lambda, x / m);
    }
    auto phi = [&](double y) {
        double j = jx(y);
        if (j == kInf) return kInf;
        double jq = rate_J_q_lambda(q, lambda, x / y);
        return jq == kInf ? kInf : jq + j;
    };
    int grid = (q == 2.0) ? grid_for(jx) : 21;
    MinResult r = infimum_log_grid(phi, 1e-6, 1e4 * std::max(1.0, x), grid, 1e-9);
    return r.value;
}

}  // namespace ldp
