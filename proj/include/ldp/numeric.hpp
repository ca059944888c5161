#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace ldp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Error raised when a numerical routine cannot satisfy its contract.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool is_finite(double x) { return std::isfinite(x); }

/// log(sum_i exp(a_i)) without overflow; empty input gives -inf.
double log_sum_exp(std::span<const double> a);

/// log(e^a + e^b)
inline double log_add_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double m = a > b ? a : b;
    return m + std::log1p(std::exp(-(a > b ? a - b : b - a)));
}

// --- special functions -----------------------------------------------------

/// Standard normal density.
inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Inverse standard normal CDF, accurate to ~1e-15 over (0,1).
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a,b).
double incomplete_beta(double a, double b, double x);

/// Quantile of Beta(a,b): smallest x with I_x(a,b) >= p.
double beta_quantile(double a, double b, double p);

/// CDF of Beta(a,b).
inline double beta_cdf(double a, double b, double x) { return incomplete_beta(a, b, x); }

/// Upper critical value of the Kolmogorov distribution: c with
/// P(sup_t |B(t)| > c) = alpha, where the KS statistic scaled by sqrt(n)
/// converges to sup|B|.  Valid for alpha in (0, 0.5].
double kolmogorov_critical(double alpha);

/// 99% Clopper-Pearson interval for a binomial proportion.
struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;
};
ConfidenceInterval clopper_pearson(long hits, long trials, double alpha = 0.01);

}  // namespace ldp
