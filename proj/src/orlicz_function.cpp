#include "ldp/orlicz_function.hpp"

#include <cmath>

namespace ldp {

OrliczFunction OrliczFunction::power(double p) {
    if (!(p >= 1.0)) throw InvalidArgument("OrliczFunction::power: p must be >= 1");
    OrliczFunction v;
    v.eval = [p](double x) { return std::pow(std::fabs(x), p); };
    v.domain = Interval{-kInf, kInf};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "abs(x)^%.6g", p);
    v.name = buf;
    return v;
}

bool orlicz_superquadratic(const OrliczFunction& v) {
    double prev = -kInf;
    bool increasing_tail = true;
    double last = 0.0;
    for (int j = 0; j <= 10; ++j) {
        double x = std::ldexp(1.0, j);
        double val = v(x);
        if (val == kInf) return true;  // domain cutoff: ratio reaches +inf
        double ratio = val / (x * x);
        if (j >= 5 && ratio < prev * (1.0 - 1e-12)) increasing_tail = false;
        prev = ratio;
        last = ratio;
    }
    return increasing_tail && last > 1e3;
}

void validate_orlicz(const OrliczFunction& v) {
    if (!v.eval) throw InvalidArgument("OrliczFunction: missing evaluator");
    if (std::fabs(v(0.0)) > 1e-12) throw InvalidArgument("OrliczFunction: V(0) must be 0");
    double hi = std::isfinite(v.domain.hi) ? v.domain.hi : 8.0;
    if (std::isfinite(v.domain.lo) && std::fabs(v.domain.lo + v.domain.hi) > 1e-12)
        throw InvalidArgument("OrliczFunction: domain must be symmetric");
    for (int i = 1; i <= 16; ++i) {
        double x = hi * i / 16.0;
        double a = v(x), b = v(-x);
        if (a == kInf && b == kInf) continue;
        if (std::fabs(a - b) > 1e-9 * std::max(1.0, std::fabs(a)))
            throw InvalidArgument("OrliczFunction: V(x) != V(-x)");
        if (a < -1e-12) throw InvalidArgument("OrliczFunction: V must be nonnegative");
    }
    // Midpoint convexity spot check.
    for (int i = 0; i + 2 <= 16; ++i) {
        double x1 = hi * i / 16.0, x2 = hi * (i + 2) / 16.0;
        double vm = v(0.5 * (x1 + x2)), v1 = v(x1), v2 = v(x2);
        if (vm == kInf || v1 == kInf || v2 == kInf) continue;
        if (vm > 0.5 * (v1 + v2) + 1e-9 * std::max(1.0, std::fabs(v1) + std::fabs(v2)))
            throw InvalidArgument("OrliczFunction: convexity spot check failed");
    }
}

}  // namespace ldp
