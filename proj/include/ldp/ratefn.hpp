#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ldp/convex.hpp"

namespace ldp {

/// Evaluable extended-real convex rate function of one real argument.
/// Degenerate(m) is 0 at m and +inf elsewhere; variational evaluators branch
/// on the kind so the infima over a degenerate handle collapse analytically.
struct RateFunctionHandle {
    enum class Kind { ClosedForm, Variational, Degenerate };
    Kind kind = Kind::ClosedForm;
    double degenerate_m = 0.0;
    std::function<double(double)> eval_fn;
    std::string speed_tag;

    double operator()(double x) const {
        if (kind == Kind::Degenerate) return x == degenerate_m ? 0.0 : kInf;
        double v = eval_fn(x);
        return v < 0.0 ? 0.0 : v;  // clamp quadrature jitter at the minimum
    }

    static RateFunctionHandle degenerate(double m, std::string tag = "");
    static RateFunctionHandle closed_form(std::function<double(double)> f, std::string tag = "");
    static RateFunctionHandle variational(std::function<double(double)> f, std::string tag = "");
};

/// Measure argument for empirical-measure rate functions: a centered Gaussian
/// or a normalized histogram read as a piecewise-uniform density.
struct MeasureArg {
    bool gaussian = true;
    double sigma = 1.0;
    std::vector<double> edges;   // size bins+1, increasing
    std::vector<double> masses;  // size bins, sums to 1

    static MeasureArg gaussian_measure(double sigma);
    static MeasureArg histogram(std::vector<double> edges, std::vector<double> masses);
    static MeasureArg histogram_of(const std::vector<double>& draws);  // Freedman-Diaconis bins

    double entropy() const;        // differential entropy h
    double second_moment() const;  // M_2
    MeasureArg scaled_down_by(double c) const;  // law of X/c
};

// --- closed forms -----------------------------------------------------------

/// (t-1)/2 - log(t)/2 for t > 0, +inf otherwise.
double chi_square_rate(double t);

/// m(p) = sqrt(p^{2/p} Gamma(1+3/p) / (3 Gamma(1+1/p))).
double mp(double p);

/// q-th absolute moment of a standard Gaussian: 2^{q/2} Gamma((q+1)/2) / sqrt(pi).
double gaussian_abs_moment(double q);

/// (lambda/2) log(lambda/z^2) + ((1-lambda)/2) log((1-lambda)/(1-z^2)) on
/// 0 < z < 1, with the 0 log 0 = 0 convention at lambda = 1 (domain (0,1]).
double gaussian_ratio_rate(double lambda, double z);

/// t^{p/2}/p for t >= 0; +inf for t < 0.  p in [1,2].
double rate_pgn_partial_sum(double p, double t);

// --- tilted Gaussian log-MGFs ------------------------------------------------

/// log of integral of (2 pi)^{-1/2} exp(t1 |x|^q + (t2 - 1/2) x^2) dx.
/// +inf sentinel outside the finiteness region (q < 2: t2 < 1/2;
/// q = 2: t1 + t2 < 1/2).
double tilted_gaussian_logmgf(double q, double t1, double t2);

/// Legendre transform of t -> tilted_gaussian_logmgf(q, t, 0).
double gaussian_qnorm_conjugate(double q, double y);

// --- product measures / lp balls ---------------------------------------------

/// Cramer rate for the scaled norm of an i.i.d. product: Lambda*(x^2) for
/// x >= 0 where Lambda is the log-MGF of the squared marginal.
double rate_product(const Fn1D& log_mgf_square, double x);

/// Conjugate of the joint (x^2, |x|^p) tilt of the p-generalized normal,
/// evaluated at (y, 1); argument y is in squared (second-moment) units.
double fp_star(double p, double y);

/// Rate for the scaled Euclidean norm of the lp-ball vector: x^p/p for p < 2;
/// -log x on (0,1] at p = 2; the variational form inf_{y >= x} of
/// log(y/x) + F_p*(y^2) on (0,1) for p > 2.
double rate_lp_norm(double p, double x);

// --- regime rate functions -----------------------------------------------------

enum class ConstantVariant { AStar, B };

/// Constant-regime projection rate at Euclidean norm xnorm:
/// AStar: inf_{0<c<1} { jx(xnorm/c) - log(1-c^2)/2 };
/// B:     inf_{c>0}   { jx(xnorm/c) + c^2/2 }.
double rate_constant_regime(const RateFunctionHandle& jx, ConstantVariant variant, double xnorm);

enum class SublinearNormCase { AStar, R0, RPos, RInf };

/// Sublinear-regime rate for n^{-1/2} ||A^T X||_2.
double rate_sublinear_norm(SublinearNormCase c, double r, const RateFunctionHandle& jx, double x);

enum class SpeedBalance { Fast, Balanced, Slow };

/// Sublinear-regime rate for k_n^{-1/q} ||A^T X||_q, q in [1,2]; m is the
/// unique minimizer of jx.
double rate_sublinear_qnorm(double q, SpeedBalance c, const RateFunctionHandle& jx, double m,
                            double x);

enum class LpProjectionCase { Constant, SubSlow, SubCrit, SubFast };

struct LpProjectionRate {
    double value = kInf;
    double cbar = 1.0;  // root of c^{p+2} - c^p - x^p in the critical case
    std::string speed_tag;
};

/// Closed-form lp-ball projection rates for p in [1,2) across the regimes.
LpProjectionRate rate_lp_projection(double p, LpProjectionCase c, double x);

/// H_lambda of the linear-regime empirical-measure theory.
double entropy_H_lambda(double lambda, const MeasureArg& nu);

/// H(nu | gamma_c).
double relative_entropy_to_gaussian(const MeasureArg& nu, double c);

/// Sublinear-regime empirical-measure rate.
double rate_sublinear_empirical(SpeedBalance c, const RateFunctionHandle& jx, double m,
                                const MeasureArg& nu);

enum class LinearCase { Full, Slow };

/// Linear-regime empirical-measure rate (Full: s_n = n; Slow: s_n << n).
double rate_linear_empirical(double lambda, const RateFunctionHandle& jx, LinearCase c,
                             const MeasureArg& mu);

/// The ratio rate J_{q,lambda}(z): closed form at q = 2, constrained
/// conjugate reduction for q in [1,2).
double rate_J_q_lambda(double q, double lambda, double z);

/// Linear-regime rate for n^{-1/q} ||A^T X||_q.
double rate_linear_qnorm(double q, double lambda, const RateFunctionHandle& jx, LinearCase c,
                         double x);

}  // namespace ldp
