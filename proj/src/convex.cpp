#include "ldp/convex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace ldp {

namespace {

struct GLRule {
    std::vector<double> x, w;  // nodes/weights on [-1,1]
};

// Gauss-Legendre nodes by Newton iteration on P_n.
GLRule make_gl_rule(int n) {
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GLRule& gl_rule(int n) {
    static std::mutex mu;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gl_rule(n)).first;
    return it->second;
}

// log of integral of exp(g) over [a,b] with a single fixed-order panel.
double log_panel(const std::function<double(double)>& g, double a, double b, const GLRule& r) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    if (hw <= 0.0) return -kInf;
    double m = -kInf;
    const int n = static_cast<int>(r.x.size());
    std::vector<double> terms(n);
    for (int i = 0; i < n; ++i) {
        double gi = g(c + hw * r.x[i]);
        terms[i] = std::isnan(gi) ? -kInf : gi + std::log(r.w[i] * hw);
        m = std::max(m, terms[i]);
    }
    if (m == -kInf) return -kInf;
    if (m == kInf) return kInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

// Adaptive bisection: accept a segment once halving changes its log value by
// at most tol (relative error of the segment integral).  `whole` carries the
// parent's single-panel value so nothing is evaluated twice.  Segments whose
// panel values sit below `floor_log` are not refined further -- except when
// they contain one of the two exempt points (the probed peaks), whose spikes
// the coarse panels may not have resolved yet.
struct SegmentIntegrator {
    const std::function<double(double)>& g;
    double tol;
    double floor_log;
    double exempt0, exempt1;

    double run(double a, double b, int depth, double whole) const {
        const GLRule& r = gl_rule(24);
        if (std::isnan(whole)) whole = log_panel(g, a, b, r);
        double mid = 0.5 * (a + b);
        double left = log_panel(g, a, mid, r);
        double right = log_panel(g, mid, b, r);
        double split = log_add_exp(left, right);
        if (whole == -kInf && split == -kInf) return -kInf;
        if (std::fabs(split - whole) <= tol || depth >= 40) return split;
        bool holds_peak = (exempt0 >= a && exempt0 <= b) || (exempt1 >= a && exempt1 <= b);
        if (!holds_peak && whole < floor_log && split < floor_log) return split;
        return log_add_exp(run(a, mid, depth + 1, left), run(mid, b, depth + 1, right));
    }
};

constexpr double kTailCutoffLog = -32.236990699;  // log(1e-14)
constexpr double kTruncationSpanCap = 1e15;

}  // namespace

double log_integral(const LogIntegrand& gi, double tol) {
    if (!(tol > 0.0)) throw InvalidTol("log_integral: tol must be > 0");
    const auto& g = gi.g;
    const double dlo = gi.domain.lo, dhi = gi.domain.hi;
    if (!(dlo < dhi)) return -kInf;

    // Anchor the panel layout at the largest probed value of g; track a
    // second peak away from the first for symmetric twin-peak integrands.
    double anchor = 0.0, banchor = -kInf;
    auto probe = [&](double x) {
        if (!(x > dlo && x < dhi)) return;
        double v = g(x);
        if (std::isfinite(v) && v > banchor) {
            banchor = v;
            anchor = x;
        }
    };
    if (gi.domain.contains(0.0)) probe(0.0);
    if (std::isfinite(dlo) && std::isfinite(dhi)) {
        for (int j = 1; j < 16; ++j) probe(dlo + (dhi - dlo) * j / 16.0);
    }
    for (int j = -4; j <= 50; j += 2) {
        double d = std::ldexp(1.0, j);
        probe(anchor + d);
        probe(anchor - d);
        if (std::isfinite(dhi)) probe(dhi - d);
        if (std::isfinite(dlo)) probe(dlo + d);
    }
    if (banchor == -kInf) return -kInf;
    double mirror = -anchor;
    if (!(mirror > dlo && mirror < dhi)) mirror = anchor;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double seg_tol = std::max(0.1 * tol, 5e-14);
    double lo = std::max(dlo, anchor - 1.0);
    double hi = std::min(dhi, anchor + 1.0);
    // Panels 80 nats below the probed peak cannot matter at any concentration
    // scale representable here; without this floor the bisection tree explodes
    // on sharply peaked integrands.
    SegmentIntegrator seg_int{g, seg_tol, banchor - 80.0, anchor, mirror};
    double total = seg_int.run(lo, hi, 0, nan);

    // Grow right, doubling the distance from the anchor each panel.
    double edge = hi;
    while (edge < dhi) {
        double next = anchor + 2.0 * (edge - anchor);
        if (next >= dhi) next = dhi;
        seg_int.floor_log = std::max(banchor - 80.0, total + kTailCutoffLog);
        double seg = seg_int.run(edge, next, 0, nan);
        total = log_add_exp(total, seg);
        bool negligible = seg <= total + kTailCutoffLog;
        edge = next;
        if (negligible) break;
        if (edge - anchor > kTruncationSpanCap)
            throw NonIntegrable("log_integral: no decaying right tail within truncation span");
    }
    // And left.
    edge = lo;
    while (edge > dlo) {
        double next = anchor - 2.0 * (anchor - edge);
        if (next <= dlo) next = dlo;
        seg_int.floor_log = std::max(banchor - 80.0, total + kTailCutoffLog);
        double seg = seg_int.run(next, edge, 0, nan);
        total = log_add_exp(total, seg);
        bool negligible = seg <= total + kTailCutoffLog;
        edge = next;
        if (negligible) break;
        if (anchor - edge > kTruncationSpanCap)
            throw NonIntegrable("log_integral: no decaying left tail within truncation span");
    }
    return total;
}

namespace {

// Golden-section search for the minimum of fn on [a,b]; returns the best
// evaluated point.  fn may be +inf on parts of the interval.
MinResult golden_min(const std::function<double(double)>& fn, double a, double b, double tol,
                     int max_iter = 400) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    MinResult best{f1 <= f2 ? x1 : x2, std::min(f1, f2)};
    int it = 0;
    while (b - a > tol && it++ < max_iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = fn(x2);
        }
        if (f1 < best.value) best = {x1, f1};
        if (f2 < best.value) best = {x2, f2};
    }
    return best;
}

}  // namespace

MinResult minimize_unimodal(const Fn1D& g, Interval bracket, double tol) {
    if (!(tol > 0.0)) throw InvalidTol("minimize_unimodal: tol must be > 0");
    double a = bracket.lo, b = bracket.hi;
    if (!(a < b)) throw InvalidArgument("minimize_unimodal: empty bracket");

    // Expand while g is still decreasing at an endpoint.
    const int kMaxExpand = 64;
    for (int j = 0; j <= kMaxExpand; ++j) {
        double w = b - a;
        double ea = g(a + 1e-3 * w), eb = g(b - 1e-3 * w);
        double mid = g(a + 0.5 * w);
        bool dec_right = std::isfinite(eb) && eb < mid && eb <= ea;
        bool dec_left = std::isfinite(ea) && ea < mid && ea < eb;
        if (!dec_right && !dec_left) break;
        if (j == kMaxExpand)
            throw BracketFailure("minimize_unimodal: no interior minimum after expansion cap");
        if (dec_right)
            b = a + 2.0 * w;
        else
            a = b - 2.0 * w;
    }
    auto fn = [&](double x) { return g(x); };
    return golden_min(fn, a, b, tol);
}

double legendre_1d(const Fn1D& f, double x) {
    auto phi = [&](double t) {
        double ft = f(t);
        return ft == kInf ? -kInf : x * t - ft;
    };

    // Finite anchor.
    const double dlo = f.domain.lo, dhi = f.domain.hi;
    double t0 = 0.0;
    if (!(f.domain.contains(t0) && std::isfinite(f(t0)))) {
        bool found = false;
        std::vector<double> cand;
        if (std::isfinite(dlo) && std::isfinite(dhi)) {
            for (int j = 1; j < 32; ++j) cand.push_back(dlo + (dhi - dlo) * j / 32.0);
        }
        for (int j = -20; j <= 40 && !found; ++j) {
            double d = std::ldexp(1.0, j);
            if (std::isfinite(dlo)) cand.push_back(dlo + d);
            if (std::isfinite(dhi)) cand.push_back(dhi - d);
            cand.push_back(d);
            cand.push_back(-d);
        }
        for (double c : cand)
            if (f.domain.contains(c) && std::isfinite(f(c))) {
                t0 = c;
                found = true;
                break;
            }
        if (!found) return -kInf;  // conjugate of an everywhere-infinite function
    }

    // Expand a bracket [a,b] around t0 until phi stops increasing outward.
    double v0 = phi(t0);
    double a = t0, b = t0, va = v0, vb = v0;
    double step = 0.5 * std::max(1.0, std::fabs(t0));
    {
        const double edge_eps = 16.0 * std::numeric_limits<double>::epsilon();
        double prev = v0;
        double t = t0;
        for (int j = 0; j < 90; ++j) {
            double tn = t + step * std::ldexp(1.0, j);
            // Approach a finite edge geometrically; blow-up of f toward the
            // edge then stops the expansion at a safe distance.
            if (tn >= dhi) tn = 0.5 * (t + dhi);
            double v = phi(tn);
            if (!(v > prev)) {
                b = tn;
                vb = v;
                break;
            }
            t = tn;
            prev = v;
            b = tn;
            vb = v;
            if (!std::isfinite(dhi) && tn > 1e15 && v > 1e12) return kInf;
            if (std::isfinite(dhi) && dhi - tn <= edge_eps * std::max(1.0, std::fabs(dhi))) break;
        }
        prev = v0;
        t = t0;
        for (int j = 0; j < 90; ++j) {
            double tn = t - step * std::ldexp(1.0, j);
            if (tn <= dlo) tn = 0.5 * (t + dlo);
            double v = phi(tn);
            if (!(v > prev)) {
                a = tn;
                va = v;
                break;
            }
            t = tn;
            prev = v;
            a = tn;
            va = v;
            if (!std::isfinite(dlo) && tn < -1e15 && v > 1e12) return kInf;
            if (std::isfinite(dlo) && tn - dlo <= edge_eps * std::max(1.0, std::fabs(dlo))) break;
        }
    }
    if (!(a < b)) return v0;

    // Divergence check: unbounded growth toward an infinite domain end.
    if (vb > 1e14 && !std::isfinite(dhi)) return kInf;
    if (va > 1e14 && !std::isfinite(dlo)) return kInf;

    // Convexity spot check at bracket scale (coarse h so quadrature noise in f
    // cannot masquerade as curvature).
    {
        double h = (b - a) / 16.0;
        if (h > 0) {
            for (int i = 2; i <= 14; i += 3) {
                double t = a + i * (b - a) / 16.0;
                double fm = f(t - h), fc = f(t), fp = f(t + h);
                if (std::isfinite(fm) && std::isfinite(fc) && std::isfinite(fp)) {
                    double d2 = fm - 2.0 * fc + fp;
                    double scale = std::max({1.0, std::fabs(fm), std::fabs(fc), std::fabs(fp)});
                    if (d2 < -1e-6 * scale)
                        throw NotConvex("legendre_1d: negative second difference in f");
                }
            }
        }
    }

    MinResult gold = golden_min([&](double t) { return -phi(t); }, a, b, 1e-12 * std::max(1.0, b - a));
    double tbest = gold.arg, vbest = -gold.value;

    // Secant polish on the stationarity condition f'(t) = x.
    auto fprime = [&](double t) {
        double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::fabs(t));
        double fp = f(t + h), fm = f(t - h);
        if (!std::isfinite(fp) || !std::isfinite(fm)) return std::numeric_limits<double>::quiet_NaN();
        return (fp - fm) / (2.0 * h);
    };
    double t1 = tbest, t2 = tbest + 1e-4 * std::max(1.0, std::fabs(tbest));
    if (t2 > b) t2 = tbest - 1e-4 * std::max(1.0, std::fabs(tbest));
    double g1 = fprime(t1) - x, g2 = fprime(t2) - x;
    for (int it = 0; it < 25 && std::isfinite(g1) && std::isfinite(g2) && g1 != g2; ++it) {
        double tn = t2 - g2 * (t2 - t1) / (g2 - g1);
        if (!std::isfinite(tn) || tn <= a || tn >= b) break;
        t1 = t2;
        g1 = g2;
        t2 = tn;
        g2 = fprime(t2) - x;
        if (std::fabs(t2 - t1) < 1e-14 * std::max(1.0, std::fabs(t2))) break;
    }
    if (std::isfinite(t2) && t2 > a && t2 < b) {
        double v = phi(t2);
        if (v > vbest) {
            vbest = v;
            tbest = t2;
        }
    }
    return vbest;
}

Max2DResult maximize_concave_2d(const std::function<double(double, double)>& h,
                                std::pair<double, double> init, double tol) {
    if (!(tol > 0.0)) throw InvalidTol("maximize_concave_2d: tol must be > 0");
    double s = init.first, t = init.second;
    double v = h(s, t);
    if (!std::isfinite(v)) {
        bool found = false;
        for (int j = -8; j <= 24 && !found; ++j) {
            double d = std::ldexp(1.0, j);
            const double off[][2] = {{d, 0},  {-d, 0}, {0, d},  {0, -d},
                                     {d, d},  {-d, d}, {d, -d}, {-d, -d}};
            for (auto& o : off) {
                double vv = h(init.first + o[0], init.second + o[1]);
                if (std::isfinite(vv)) {
                    s = init.first + o[0];
                    t = init.second + o[1];
                    v = vv;
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw Diverging("maximize_concave_2d: no finite objective value near init");
    }

    // Golden maximum of h along the ray (s,t) + u (ds,dt), expanding the
    // u-bracket from 0 while the slice still increases.
    auto ray_max = [&](double ds, double dt) {
        auto slice = [&](double u) { return h(s + u * ds, t + u * dt); };
        double a = 0.0, b = 0.0;
        double prev = v, u = 0.0;
        for (int j = 0; j < 70; ++j) {
            double un = u + std::ldexp(0.5, j);
            double vu = slice(un);
            b = un;
            if (!(vu > prev)) break;
            prev = vu;
            u = un;
            if (std::max(std::fabs(s + un * ds), std::fabs(t + un * dt)) > 1e6)
                throw Diverging("maximize_concave_2d: iterates escape every bounded region");
        }
        prev = v;
        u = 0.0;
        for (int j = 0; j < 70; ++j) {
            double un = u - std::ldexp(0.5, j);
            double vu = slice(un);
            a = un;
            if (!(vu > prev)) break;
            prev = vu;
            u = un;
            if (std::max(std::fabs(s + un * ds), std::fabs(t + un * dt)) > 1e6)
                throw Diverging("maximize_concave_2d: iterates escape every bounded region");
        }
        MinResult r = golden_min([&](double u2) { return -slice(u2); }, a, b,
                                 1e-12 * std::max(1.0, std::fabs(b - a)));
        if (-r.value > v) {
            v = -r.value;
            s += r.arg * ds;
            t += r.arg * dt;
        }
    };

    double vprev = v;
    int sweep = 0;
    for (; sweep < 300; ++sweep) {
        double s0 = s, t0 = t;
        ray_max(std::max(1.0, std::fabs(s)), 0.0);
        ray_max(0.0, std::max(1.0, std::fabs(t)));
        // Powell-style acceleration along the sweep displacement; axis-only
        // ascent crawls when the two tilts are strongly coupled.
        double ds = s - s0, dt = t - t0;
        if (ds != 0.0 || dt != 0.0) ray_max(ds, dt);
        if (v > 1e15) throw Diverging("maximize_concave_2d: unbounded supremum");
        if (v - vprev <= tol) break;
        vprev = v;
    }
    if (sweep == 300 && v - vprev > 1e4 * tol)
        throw Diverging("maximize_concave_2d: no convergence; supremum appears unattained");
    return {s, t, v};
}

double find_root_bracketed(const Fn1D& phi, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw InvalidTol("find_root_bracketed: tol must be > 0");
    double flo = phi(lo), fhi = phi(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo * fhi < 0.0))
        throw NoSignChange("find_root_bracketed: phi(lo) and phi(hi) have the same sign");
    double a = lo, b = hi, fa = flo;
    double mid = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (a + b);
        double fm = phi(mid);
        if (std::fabs(fm) <= tol) return mid;
        if (fa * fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
        if (b - a <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(mid))) break;
    }
    return mid;
}

namespace {

MinResult grid_refine(const std::function<double(double)>& phi,
                      const std::vector<double>& xs, double tol) {
    MinResult best;
    int ibest = -1;
    std::vector<double> vs(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        vs[i] = phi(xs[i]);
        if (vs[i] < best.value) {
            best = {xs[i], vs[i]};
            ibest = static_cast<int>(i);
        }
    }
    if (ibest < 0 || best.value == kInf) return {0.5 * (xs.front() + xs.back()), kInf};
    double a = xs[std::max(0, ibest - 1)];
    double b = xs[std::min<int>(xs.size() - 1, ibest + 1)];
    if (a < b) {
        MinResult g = golden_min(phi, a, b, tol);
        if (g.value < best.value) best = g;
    }
    return best;
}

}  // namespace

MinResult infimum_log_grid(const std::function<double(double)>& phi, double lo, double hi,
                           int grid, double tol) {
    if (!(lo > 0.0 && hi > lo)) throw InvalidArgument("infimum_log_grid: need 0 < lo < hi");
    std::vector<double> xs(grid);
    double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < grid; ++i) xs[i] = std::exp(la + (lb - la) * i / (grid - 1.0));
    auto philog = [&](double u) { return phi(std::exp(u)); };
    MinResult best;
    int ibest = -1;
    std::vector<double> vs(grid);
    for (int i = 0; i < grid; ++i) {
        vs[i] = phi(xs[i]);
        if (vs[i] < best.value) {
            best = {xs[i], vs[i]};
            ibest = i;
        }
    }
    if (ibest < 0 || best.value == kInf) return {std::sqrt(lo * hi), kInf};
    double ua = std::log(xs[std::max(0, ibest - 1)]);
    double ub = std::log(xs[std::min(grid - 1, ibest + 1)]);
    if (ua < ub) {
        MinResult g = golden_min(philog, ua, ub, tol);
        if (g.value < best.value) best = {std::exp(g.arg), g.value};
    }
    return best;
}

MinResult infimum_linear_grid(const std::function<double(double)>& phi, double lo, double hi,
                              int grid, double tol) {
    if (!(hi > lo)) throw InvalidArgument("infimum_linear_grid: need lo < hi");
    std::vector<double> xs(grid);
    for (int i = 0; i < grid; ++i) xs[i] = lo + (hi - lo) * i / (grid - 1.0);
    return grid_refine(phi, xs, tol);
}

}  // namespace ldp
