#include "ldp/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ldp/orlicz.hpp"

namespace ldp {

long RegimeSpec::k_n(long n) const {
    switch (kind) {
        case Kind::Constant:
            return k;
        case Kind::Sublinear:
            return std::max<long>(1, static_cast<long>(std::ceil(std::pow(double(n), alpha))));
        case Kind::Linear:
            return std::clamp<long>(static_cast<long>(std::ceil(lambda * double(n))), 1, n);
    }
    return 1;
}

RegimeSpec RegimeSpec::constant(int k) {
    if (k < 1) throw InvalidArgument("RegimeSpec: k must be >= 1");
    RegimeSpec r;
    r.kind = Kind::Constant;
    r.k = k;
    return r;
}

RegimeSpec RegimeSpec::sublinear(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("RegimeSpec: alpha in (0,1)");
    RegimeSpec r;
    r.kind = Kind::Sublinear;
    r.alpha = alpha;
    return r;
}

RegimeSpec RegimeSpec::linear(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("RegimeSpec: lambda in (0,1]");
    RegimeSpec r;
    r.kind = Kind::Linear;
    r.lambda = lambda;
    return r;
}

std::string RegimeSpec::to_string() const {
    char buf[64];
    switch (kind) {
        case Kind::Constant:
            std::snprintf(buf, sizeof(buf), "constant:k=%d", k);
            break;
        case Kind::Sublinear:
            std::snprintf(buf, sizeof(buf), "sublinear:alpha=%.17g", alpha);
            break;
        case Kind::Linear:
            std::snprintf(buf, sizeof(buf), "linear:lambda=%.17g", lambda);
            break;
    }
    return buf;
}

DistributionSpec DistributionSpec::lp_ball(double p) {
    if (!(p >= 1.0)) throw InvalidArgument("DistributionSpec: LpBall requires p >= 1");
    DistributionSpec d;
    d.family = Family::LpBall;
    d.p = p;
    return d;
}

DistributionSpec DistributionSpec::product(Marginal m, double point) {
    DistributionSpec d;
    d.family = Family::Product;
    d.marginal = m;
    d.point = point;
    return d;
}

DistributionSpec DistributionSpec::gaussian_mixture(std::vector<double> variances,
                                                    std::vector<double> weights) {
    if (variances.empty() || variances.size() != weights.size())
        throw InvalidArgument("DistributionSpec: mixture needs matching variances/weights");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidArgument("DistributionSpec: negative mixture weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw InvalidArgument("DistributionSpec: mixture weights must sum to 1");
    for (double v : variances)
        if (!(v > 0.0)) throw InvalidArgument("DistributionSpec: mixture variances must be > 0");
    DistributionSpec d;
    d.family = Family::GaussianMixture;
    d.variances = std::move(variances);
    d.weights = std::move(weights);
    return d;
}

DistributionSpec DistributionSpec::orlicz_ball(OrliczFunction v) {
    validate_orlicz(v);
    if (!orlicz_superquadratic(v))
        throw InvalidArgument("DistributionSpec: OrliczBall requires a superquadratic V");
    DistributionSpec d;
    d.family = Family::OrliczBall;
    d.v = std::move(v);
    return d;
}

bool DistributionSpec::has_unique_center() const {
    if (family != Family::GaussianMixture) return true;
    for (double v : variances)
        if (v != variances.front()) return false;
    return true;
}

double DistributionSpec::thin_shell_center() const {
    switch (family) {
        case Family::LpBall:
            return mp(p);
        case Family::Product:
            switch (marginal) {
                case Marginal::Normal:
                    return 1.0;
                case Marginal::Rademacher:
                    return 1.0;
                case Marginal::PointMass:
                    return std::fabs(point);
            }
            return 1.0;
        case Family::GaussianMixture:
            if (!has_unique_center())
                throw Unsupported("thin_shell_center: mixture with distinct variances");
            return std::sqrt(variances.front());
        case Family::OrliczBall:
            return orlicz_bstar(v).m;
    }
    throw Unsupported("thin_shell_center: unknown family");
}

std::string DistributionSpec::to_string() const {
    char buf[128];
    switch (family) {
        case Family::LpBall:
            std::snprintf(buf, sizeof(buf), "lp:p=%.17g", p);
            return buf;
        case Family::Product:
            return marginal == Marginal::Normal       ? "product:normal"
                   : marginal == Marginal::Rademacher ? "product:rademacher"
                                                      : "product:pointmass";
        case Family::GaussianMixture: {
            std::string s = "mixture:v=";
            for (size_t i = 0; i < variances.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "", variances[i]);
                s += buf;
            }
            s += ";w=";
            for (size_t i = 0; i < weights.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "", weights[i]);
                s += buf;
            }
            return s;
        }
        case Family::OrliczBall:
            return "orlicz:" + v.name;
    }
    return "?";
}

// --- samplers -------------------------------------------------------------------

Eigen::VectorXd sample_pgn(double p, long n, RngStream& rng) {
    if (!(p >= 1.0)) throw InvalidArgument("sample_pgn: p must be >= 1");
    Eigen::VectorXd x(n);
    for (long i = 0; i < n; ++i) {
        double g = rng.gamma(1.0 / p, 1.0);
        x[i] = rng.sign() * std::pow(p * g, 1.0 / p);
    }
    return x;
}

Eigen::VectorXd sample_lp_ball(double p, long n, RngStream& rng) {
    if (!(p >= 1.0)) throw InvalidArgument("sample_lp_ball: p must be >= 1");
    if (n < 1) throw InvalidArgument("sample_lp_ball: n must be >= 1");
    Eigen::VectorXd xi = sample_pgn(p, n, rng);
    double u = rng.uniform();
    double norm_p = std::pow(xi.array().abs().pow(p).sum(), 1.0 / p);
    double scale = std::pow(double(n), 1.0 / p) * std::pow(u, 1.0 / double(n)) / norm_p;
    return scale * xi;
}

Eigen::VectorXd sample_product(DistributionSpec::Marginal marginal, double point, long n,
                               RngStream& rng) {
    Eigen::VectorXd x(n);
    switch (marginal) {
        case DistributionSpec::Marginal::Normal:
            for (long i = 0; i < n; ++i) x[i] = rng.normal();
            break;
        case DistributionSpec::Marginal::Rademacher:
            for (long i = 0; i < n; ++i) x[i] = rng.sign();
            break;
        case DistributionSpec::Marginal::PointMass:
            x.setConstant(point);
            break;
    }
    return x;
}

Eigen::VectorXd sample_gaussian_mixture(const std::vector<double>& variances,
                                        const std::vector<double>& weights, long n,
                                        RngStream& rng) {
    if (variances.empty() || variances.size() != weights.size())
        throw InvalidArgument("sample_gaussian_mixture: invalid simplex");
    double u = rng.uniform(), acc = 0.0;
    size_t comp = variances.size() - 1;
    for (size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u <= acc) {
            comp = i;
            break;
        }
    }
    double sigma = std::sqrt(variances[comp]);
    Eigen::VectorXd x(n);
    for (long i = 0; i < n; ++i) x[i] = sigma * rng.normal();
    return x;
}

OrliczSampler::OrliczSampler(OrliczFunction v, long n, long burnin, RngStream& rng)
    : v_(std::move(v)), x_(Eigen::VectorXd::Zero(n)) {
    validate_orlicz(v_);
    for (long i = 0; i < burnin; ++i) move(rng);
}

void OrliczSampler::move(RngStream& rng) {
    const long n = x_.size();
    long i = static_cast<long>(rng.uniform_index(n));
    double vi = v_(x_[i]);
    double budget = double(n) - (total_ - vi);
    if (budget < -1e-9 * double(n))
        throw DegenerateBody("OrliczSampler: conditional interval collapsed");
    if (budget <= 0.0) {
        total_ += v_(0.0) - vi;
        x_[i] = 0.0;
        return;
    }
    // Slice endpoint: largest T with V(T) <= budget (V even, nondecreasing on
    // the positive axis).
    double t = 1.0;
    double dhi = std::isfinite(v_.domain.hi) ? v_.domain.hi : kInf;
    while (t < dhi && v_(t) <= budget) t *= 2.0;
    double lo = t * 0.5 <= 0.0 ? 0.0 : t * 0.5, hi = std::min(t, dhi);
    if (v_(lo) > budget) lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (v_(mid) <= budget)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    double bound = lo;
    if (!(bound > 0.0)) {
        total_ += v_(0.0) - vi;
        x_[i] = 0.0;
        return;
    }
    double draw = (2.0 * rng.uniform() - 1.0) * bound;
    total_ += v_(draw) - vi;
    x_[i] = draw;
    if (++moves_ % n == 0) total_ = x_.unaryExpr([this](double y) { return v_(y); }).sum();
}

Eigen::VectorXd OrliczSampler::next(long thin, RngStream& rng) {
    for (long i = 0; i < thin; ++i) move(rng);
    return x_;
}

Eigen::VectorXd sample_orlicz_ball(const OrliczFunction& v, long n, long burnin, long thin,
                                   RngStream& rng) {
    if (burnin < 1 || thin < 1) throw InvalidArgument("sample_orlicz_ball: burnin, thin >= 1");
    OrliczSampler chain(v, n, burnin, rng);
    return chain.next(thin, rng);
}

Eigen::VectorXd sample_vector(const DistributionSpec& dist, long n, RngStream& rng) {
    switch (dist.family) {
        case DistributionSpec::Family::LpBall:
            return sample_lp_ball(dist.p, n, rng);
        case DistributionSpec::Family::Product:
            return sample_product(dist.marginal, dist.point, n, rng);
        case DistributionSpec::Family::GaussianMixture:
            return sample_gaussian_mixture(dist.variances, dist.weights, n, rng);
        case DistributionSpec::Family::OrliczBall:
            return sample_orlicz_ball(dist.v, n, 10 * n, n, rng);
    }
    throw Unsupported("sample_vector: unknown family");
}

bool has_radial_shortcut(const DistributionSpec& dist) {
    return dist.family != DistributionSpec::Family::OrliczBall;
}

double sample_radial_norm2(const DistributionSpec& dist, long n, RngStream& rng) {
    switch (dist.family) {
        case DistributionSpec::Family::LpBall: {
            double u = std::pow(rng.uniform(), 1.0 / double(n));
            if (dist.p == 2.0) return std::sqrt(double(n)) * u;
            Eigen::VectorXd xi = sample_pgn(dist.p, n, rng);
            double norm_p = std::pow(xi.array().abs().pow(dist.p).sum(), 1.0 / dist.p);
            return std::pow(double(n), 1.0 / dist.p) * u * xi.norm() / norm_p;
        }
        case DistributionSpec::Family::Product:
            switch (dist.marginal) {
                case DistributionSpec::Marginal::Normal:
                    return std::sqrt(rng.chi_squared(double(n)));
                case DistributionSpec::Marginal::Rademacher:
                    return std::sqrt(double(n));
                case DistributionSpec::Marginal::PointMass:
                    return std::fabs(dist.point) * std::sqrt(double(n));
            }
            break;
        case DistributionSpec::Family::GaussianMixture: {
            double u = rng.uniform(), acc = 0.0;
            size_t comp = dist.variances.size() - 1;
            for (size_t i = 0; i < dist.weights.size(); ++i) {
                acc += dist.weights[i];
                if (u <= acc) {
                    comp = i;
                    break;
                }
            }
            return std::sqrt(dist.variances[comp] * rng.chi_squared(double(n)));
        }
        case DistributionSpec::Family::OrliczBall:
            return sample_vector(dist, n, rng).norm();
    }
    throw Unsupported("sample_radial_norm2: unknown family");
}

// --- LDP metadata ----------------------------------------------------------------

namespace {

std::function<double(long)> power_speed(double expo) {
    return [expo](long n) { return std::pow(double(n), expo); };
}

std::string power_tag(double expo) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "n^%.6g", expo);
    return buf;
}

RateFunctionHandle lp_small_p_handle(double p) {
    return RateFunctionHandle::closed_form(
        [p](double x) { return x < 0.0 ? kInf : std::pow(x, p) / p; });
}

}  // namespace

LdpMetadata ldp_metadata(const DistributionSpec& dist, const RegimeSpec& regime) {
    LdpMetadata md;
    using Family = DistributionSpec::Family;
    using Marginal = DistributionSpec::Marginal;

    if (dist.family == Family::LpBall && dist.p < 2.0) {
        const double p = dist.p;
        const double crit = 2.0 * p / (2.0 + p);
        switch (regime.kind) {
            case RegimeSpec::Kind::Constant:
                md.tag = LdpMetadata::Assumption::B;
                md.speed = power_speed(crit);
                md.speed_tag = power_tag(crit);
                md.jx = lp_small_p_handle(p);
                md.m = 0.0;
                return md;
            case RegimeSpec::Kind::Sublinear: {
                md.tag = LdpMetadata::Assumption::C;
                md.jx = lp_small_p_handle(p);
                md.m = 0.0;
                const double a = regime.alpha;
                if (a > crit + 1e-12) {
                    md.r = 0.0;
                    RegimeSpec reg = regime;
                    md.speed = [p, reg](long n) {
                        return std::pow(double(n), p) * std::pow(double(reg.k_n(n)), -0.5 * p);
                    };
                    char buf[48];
                    std::snprintf(buf, sizeof(buf), "n^%.6g*k_n^-%.6g", p, 0.5 * p);
                    md.speed_tag = buf;
                } else {
                    md.r = (std::fabs(a - crit) <= 1e-12) ? 1.0 : kInf;
                    md.speed = power_speed(crit);
                    md.speed_tag = power_tag(crit);
                }
                return md;
            }
            case RegimeSpec::Kind::Linear: {
                md.tag = LdpMetadata::Assumption::A;
                md.speed = power_speed(0.5 * p);
                md.speed_tag = power_tag(0.5 * p);
                const double center = mp(p);
                md.jx = RateFunctionHandle::closed_form([p, center](double x) {
                    if (x < center) return kInf;
                    return std::pow(x * x - center * center, 0.5 * p) / p;
                });
                md.m = center;
                return md;
            }
        }
    }

    // Assumption A* families: speed n.
    md.tag = LdpMetadata::Assumption::AStar;
    md.speed = power_speed(1.0);
    md.speed_tag = "n";
    switch (dist.family) {
        case Family::LpBall:
            if (dist.p == 2.0) {
                md.jx = RateFunctionHandle::closed_form(
                    [](double x) { return (x > 0.0 && x <= 1.0) ? -std::log(x) : kInf; });
                md.m = 1.0;
            } else {
                const double p = dist.p;
                md.jx = RateFunctionHandle::variational([p](double x) { return rate_lp_norm(p, x); });
                md.m = mp(p);
            }
            return md;
        case Family::Product:
            switch (dist.marginal) {
                case Marginal::Normal:
                    md.jx = RateFunctionHandle::closed_form(
                        [](double x) { return x < 0.0 ? kInf : chi_square_rate(x * x); });
                    md.m = 1.0;
                    return md;
                case Marginal::Rademacher:
                    md.jx = RateFunctionHandle::degenerate(1.0);
                    md.m = 1.0;
                    return md;
                case Marginal::PointMass:
                    md.jx = RateFunctionHandle::degenerate(std::fabs(dist.point));
                    md.m = std::fabs(dist.point);
                    return md;
            }
            break;
        case Family::GaussianMixture: {
            std::vector<double> vars = dist.variances;
            md.jx = RateFunctionHandle::closed_form([vars](double x) {
                if (x < 0.0) return kInf;
                double best = kInf;
                for (double v : vars) best = std::min(best, chi_square_rate(x * x / v));
                return best;
            });
            md.m = dist.has_unique_center() ? std::sqrt(dist.variances.front())
                                            : std::numeric_limits<double>::quiet_NaN();
            return md;
        }
        case Family::OrliczBall: {
            OrliczFunction v = dist.v;
            md.jx = RateFunctionHandle::variational([v](double x) {
                if (x < 0.0) return kInf;
                try {
                    return orlicz_rate(v, x);
                } catch (const Diverging&) {
                    return kInf;
                }
            });
            md.m = orlicz_bstar(v).m;
            return md;
        }
        default:
            break;
    }
    throw Unsupported("ldp_metadata: unsupported (family, regime) pair");
}

SpeedBalance classify_speed_balance(const LdpMetadata& md, const RegimeSpec& regime) {
    auto rho = [&](long n) { return md.speed(n) / double(regime.k_n(n)); };
    double r1 = rho(1000000L), r2 = rho(1000000000000L);
    if (std::fabs(std::log(r2)) < 0.2 && std::fabs(std::log(r2 / r1)) < 0.2)
        return SpeedBalance::Balanced;
    if (r2 > r1) return SpeedBalance::Fast;
    return SpeedBalance::Slow;
}

}  // namespace ldp
