#include "ldp/orlicz.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <set>
#include <string>

namespace ldp {

namespace {

constexpr double kOrliczTol = 1e-11;

// Integrability probe for exp(sV + tx^2) on an unbounded domain: the exponent
// must be decreasing and negative far out.  Convexity of V makes the far tail
// monotone, so two probe points suffice.
bool tilt_integrable(const OrliczFunction& v, double s, double t) {
    if (v.domain.bounded()) return true;
    double t1 = std::ldexp(1.0, 18), t2 = std::ldexp(1.0, 20);
    auto g = [&](double x) {
        double vx = v(x);
        return vx == kInf ? -kInf : s * vx + t * x * x;
    };
    double g1 = g(t1), g2 = g(t2);
    return g2 < g1 && g2 < -1.0;
}

void warn_subquadratic(const OrliczFunction& v) {
    static std::mutex mu;
    static std::set<std::string> warned;
    std::lock_guard<std::mutex> lock(mu);
    if (warned.insert(v.name).second)
        std::cerr << "warning: Orlicz function " << v.name
                  << " does not look superquadratic; norm-rate formulas assume V(x)/x^2 -> inf\n";
}

}  // namespace

double orlicz_log_partition(const OrliczFunction& v, double s, double t) {
    if (!tilt_integrable(v, s, t)) return kInf;
    LogIntegrand gi{[&v, s, t](double x) {
                        double vx = v(x);
                        return vx == kInf ? -kInf : s * vx + t * x * x;
                    },
                    v.domain};
    try {
        return log_integral(gi, kOrliczTol);
    } catch (const NonIntegrable&) {
        return kInf;
    }
}

TiltedOrliczMeasure make_tilted_orlicz(const OrliczFunction& v, double s, double t) {
    if (!(s < 0.0)) throw InvalidArgument("make_tilted_orlicz: s must be negative");
    double lz = orlicz_log_partition(v, s, t);
    if (lz == kInf) throw NonIntegrable("make_tilted_orlicz: partition function diverges");
    return TiltedOrliczMeasure{v, s, t, lz};
}

namespace {

double tilted_moment(const OrliczFunction& v, double s, double t,
                     const std::function<double(double)>& log_weight) {
    double lz = orlicz_log_partition(v, s, t);
    if (lz == kInf) throw NonIntegrable("tilted_moment: partition function diverges");
    LogIntegrand gi{[&](double x) {
                        double vx = v(x);
                        if (vx == kInf) return -kInf;
                        double lw = log_weight(x);
                        return lw == -kInf ? -kInf : s * vx + t * x * x + lw;
                    },
                    v.domain};
    return std::exp(log_integral(gi, kOrliczTol) - lz);
}

}  // namespace

double orlicz_moment_V(const OrliczFunction& v, double s, double t) {
    return tilted_moment(v, s, t, [&v](double x) {
        double vx = v(x);
        return vx > 0.0 ? std::log(vx) : -kInf;
    });
}

double orlicz_moment_2(const OrliczFunction& v, double s, double t) {
    return tilted_moment(v, s, t,
                         [](double x) { return x != 0.0 ? 2.0 * std::log(std::fabs(x)) : -kInf; });
}

double orlicz_log_volume(const OrliczFunction& v) {
    // sup over s = -e^a of s - log Z(s, 0); the objective is concave in s.
    auto neg = [&](double a) {
        double s = -std::exp(a);
        double lz = orlicz_log_partition(v, s, 0.0);
        return lz == kInf ? kInf : -(s - lz);
    };
    MinResult r = infimum_linear_grid(neg, -34.0, 34.0, 137, 1e-12);
    if (r.value == kInf) throw Diverging("orlicz_log_volume: e^{sV} is not integrable for s < 0");
    return r.value;  // negative of the supremum
}

double orlicz_J(const OrliczFunction& v, double u, double vv) {
    if (!(u > 0.0 && vv > 0.0))
        throw Diverging("orlicz_J: (u,v) outside the attainable moment cone");
    if (!orlicz_superquadratic(v)) warn_subquadratic(v);
    // When t -> V(sqrt(t)) is convex (spot-checked), Jensen gives
    // M_V >= V(sqrt(M_2)), so V(sqrt(v)) <= u is necessary; beyond it the
    // supremum runs away along a tilt ridge.
    {
        bool two_convex = true;
        for (int i = 1; i + 2 <= 8 && two_convex; ++i) {
            double ta = vv * i / 8.0, tb = vv * (i + 2) / 8.0;
            double a = v(std::sqrt(ta)), b = v(std::sqrt(tb)), m = v(std::sqrt(0.5 * (ta + tb)));
            if (a == kInf || b == kInf || m == kInf) continue;
            if (m > 0.5 * (a + b) + 1e-9 * (1.0 + std::fabs(a) + std::fabs(b))) two_convex = false;
        }
        double vs = v(std::sqrt(vv));
        if (two_convex && vs > u + 1e-9)
            throw Diverging("orlicz_J: (u,v) outside the attainable moment cone");
    }
    auto h = [&](double a, double t) -> double {
        double s = -std::exp(a);
        double lz = orlicz_log_partition(v, s, t);
        return lz == kInf ? -kInf : s * u + t * vv - lz;
    };
    Max2DResult r = maximize_concave_2d(h, {0.0, 0.0}, 1e-11);
    return r.value;
}

OrliczCenter orlicz_bstar(const OrliczFunction& v) {
    // M_V(mu_{V,b}) is strictly decreasing in b; scan powers of two for a
    // sign change of M_V - 1, then bisect.
    double blo = 0.0, bhi = 0.0;
    double prev_b = 0.0, prev_val = 0.0;
    bool have_prev = false;
    for (int j = -20; j <= 20; ++j) {
        double b = std::ldexp(1.0, j);
        double val = orlicz_moment_V(v, -b, 0.0) - 1.0;
        if (val == 0.0) return {b, std::sqrt(orlicz_moment_2(v, -b, 0.0))};
        if (have_prev && prev_val > 0.0 && val < 0.0) {
            blo = prev_b;
            bhi = b;
            break;
        }
        prev_b = b;
        prev_val = val;
        have_prev = true;
    }
    if (bhi == 0.0)
        throw BracketFailure("orlicz_bstar: M_V(mu_{V,b}) does not cross 1 in the scan range");
    Fn1D phi;
    phi.f = [&](double b) { return orlicz_moment_V(v, -b, 0.0) - 1.0; };
    double bstar = find_root_bracketed(phi, blo, bhi, 1e-12);
    return {bstar, std::sqrt(orlicz_moment_2(v, -bstar, 0.0))};
}

double orlicz_rate(const OrliczFunction& v, double z) {
    if (!(z >= 0.0)) return kInf;
    return orlicz_J(v, 1.0, z * z) + orlicz_log_volume(v);
}

}  // namespace ldp
