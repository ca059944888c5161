#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldp/distributions.hpp"
#include "ldp/stiefel.hpp"

namespace ldp {

/// One rare-event estimation cell.
struct TailEstimate {
    long n = 0;
    long k = 0;
    double x = 0.0;
    long trials = 0;
    long hits = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;  // 99% Clopper-Pearson
    double ci_hi = 1.0;
    double s_n = 0.0;
    double rescaled = kInf;  // -log(p_hat) / s_n; +inf when censored
    bool censored = true;    // no hits observed
};

enum class NormScaling { ByN, ByKn };

/// Counts { scaled ||A^T X||_q >= x } over `trials` draws; deterministic given
/// (seed, config), independent of worker count (fixed-size blocks, one RNG
/// stream per block, merged by summation).  LDP_THREADS caps the worker pool.
TailEstimate estimate_tail(const DistributionSpec& dist, const RegimeSpec& regime, double q,
                           double x, long n, long trials, std::uint64_t seed,
                           NormScaling scaling = NormScaling::ByN);

/// Tail of the W1 distance of the projected empirical measure from the
/// family's thin-shell Gaussian: counts { W1(L^n, gamma_m) >= x }.
TailEstimate estimate_empirical_tail(const DistributionSpec& dist, const RegimeSpec& regime,
                                     double x, long n, long trials, std::uint64_t seed);

/// P(n^{-1/2} |A^T X| >= x) for the lp ball with p = 2 and k = 1, by
/// quadrature against the Beta(1/2,(n-1)/2) law of the frame entry.
double exact_tail_oracle_p2(long n, long k, double x);

struct RatePrediction {
    double value = kInf;
    std::string speed_tag;
};

/// Theoretical rate at threshold x for the (dist, regime, quantity) triple.
RatePrediction predict_norm_rate(const DistributionSpec& dist, const RegimeSpec& regime, double q,
                                 NormScaling scaling, double x);

struct DecaySeries {
    std::vector<TailEstimate> estimates;
    double rate_prediction = kInf;
    std::string speed_tag;
};

/// Tail estimates across an n-ladder plus the matching theoretical rate.
DecaySeries decay_series(const DistributionSpec& dist, const RegimeSpec& regime, double q,
                         double x, const std::vector<long>& n_ladder, long trials,
                         std::uint64_t seed, NormScaling scaling = NormScaling::ByN);

struct EmptyMeasure : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// q-Wasserstein distance in one dimension via quantile coupling.
double wasserstein_1d(double q, const EmpiricalMeasure& a, const EmpiricalMeasure& b);
double wasserstein_1d_to_gaussian(double q, const EmpiricalMeasure& a, double sigma);

/// sup-norm distance between the empirical CDF and a reference CDF.
double ks_statistic(const EmpiricalMeasure& sample, const std::function<double(double)>& cdf);

/// MC estimate of P(| ||X||_2 / sqrt(n) - m | >= eps).
double thin_shell_probability(const DistributionSpec& dist, long n, double eps, long trials,
                              std::uint64_t seed);

/// CSV helpers for the verify-run schema (17 significant digit floats).
std::string verify_csv_header();
std::string verify_csv_row(const TailEstimate& t, double rate_prediction);

}  // namespace ldp
