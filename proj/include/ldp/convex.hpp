#pragma once

#include <functional>
#include <utility>

#include "ldp/numeric.hpp"

namespace ldp {

/// Closed or unbounded interval of the real line.
struct Interval {
    double lo = -kInf;
    double hi = kInf;
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// Extended-real scalar function: +inf outside its declared domain.
struct Fn1D {
    std::function<double(double)> f;
    Interval domain{};

    double operator()(double t) const {
        if (!domain.contains(t)) return kInf;
        return f(t);
    }
};

/// Log-density exponent g; the object of interest is log of integral of exp(g)
/// over the domain.  The caller asserts integrability.
struct LogIntegrand {
    std::function<double(double)> g;
    Interval domain{};
};

struct NonIntegrable : NumericalError {
    using NumericalError::NumericalError;
};
struct InvalidTol : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct NotConvex : NumericalError {
    using NumericalError::NumericalError;
};
struct BracketFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct Diverging : NumericalError {
    using NumericalError::NumericalError;
};
struct NoSignChange : NumericalError {
    using NumericalError::NumericalError;
};

/// log of integral of exp(g(x)) dx over the domain of g, with log-sum-exp
/// accumulation over adaptive Gauss-Legendre panels.  Unbounded domains are
/// truncated by doubling the span until the outermost panel contributes less
/// than 1e-14 of the running total.  tol bounds the relative error of the
/// integral (= absolute error of the returned log).
double log_integral(const LogIntegrand& g, double tol = 1e-8);

/// Legendre-Fenchel transform sup_t { x t - f(t) } of a convex f.  Stationarity
/// is polished by a secant iteration on the central-difference derivative with
/// a golden-section fallback; returns +inf when the supremum diverges.
double legendre_1d(const Fn1D& f, double x);

struct MinResult {
    double arg = 0.0;
    double value = kInf;
};

/// Golden-section minimum of a unimodal g.  The bracket expands geometrically
/// while g is still decreasing at an endpoint; BracketFailure if no interior
/// minimum emerges before the expansion cap.
MinResult minimize_unimodal(const Fn1D& g, Interval bracket, double tol = 1e-10);

struct Max2DResult {
    double s = 0.0;
    double t = 0.0;
    double value = -kInf;
};

/// Coordinate-ascent maximum of a concave h: alternating golden-section line
/// searches until successive sweep values differ by at most tol.  Throws
/// Diverging when iterates escape every bounded region.
Max2DResult maximize_concave_2d(const std::function<double(double, double)>& h,
                                std::pair<double, double> init, double tol = 1e-10);

/// Bisection root of a continuous sign-changing phi with |phi(root)| <= tol.
double find_root_bracketed(const Fn1D& phi, double lo, double hi, double tol = 1e-10);

// --- internal minimization helpers shared by the rate-function evaluators ---

/// Infimum of phi over (lo, hi) on a logarithmic grid with golden-section
/// refinement of the best cell; tolerates +inf values (infeasible regions).
/// Returns {arg, +inf} when phi is infinite on the whole interval.
MinResult infimum_log_grid(const std::function<double(double)>& phi, double lo, double hi,
                           int grid = 96, double tol = 1e-10);

/// Same, on a linear grid.
MinResult infimum_linear_grid(const std::function<double(double)>& phi, double lo, double hi,
                              int grid = 96, double tol = 1e-10);

}  // namespace ldp
