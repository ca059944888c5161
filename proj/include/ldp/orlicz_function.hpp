#pragma once

#include <functional>
#include <string>

#include "ldp/convex.hpp"

namespace ldp {

/// Symmetric convex V with V(0) = 0; +inf outside its domain D_V.
struct OrliczFunction {
    std::function<double(double)> eval;
    Interval domain{-kInf, kInf};
    std::string name = "custom";

    double operator()(double x) const {
        if (!domain.contains(x)) return kInf;
        return eval(x);
    }

    /// V(x) = |x|^p, p >= 1.
    static OrliczFunction power(double p);
};

/// Numeric scan for the superquadratic property V(x)/x^2 -> inf: ratios at
/// x = 2^0..2^10 must be eventually increasing and exceed 1e3 (or hit the
/// domain edge, where V jumps to +inf).
bool orlicz_superquadratic(const OrliczFunction& v);

/// Spot-checks V(0)=0, symmetry and convexity on a grid; throws
/// InvalidArgument on violation.
void validate_orlicz(const OrliczFunction& v);

}  // namespace ldp
