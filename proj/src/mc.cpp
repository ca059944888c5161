#include "ldp/mc.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "ldp/convex.hpp"
#include "ldp/orlicz.hpp"

namespace ldp {

namespace {

constexpr long kBlockSize = 1L << 14;

int worker_count(long blocks) {
    unsigned hw = std::thread::hardware_concurrency();
    long cap = hw == 0 ? 1 : hw;
    if (const char* env = std::getenv("LDP_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) cap = v;
    }
    return static_cast<int>(std::min<long>(cap, std::max<long>(1, blocks)));
}

// Fixed-size blocks, one counter-seeded stream per block, merged by summation:
// the result does not depend on the number of workers.
template <typename BlockFn>
long run_blocks(long trials, std::uint64_t seed, BlockFn&& fn) {
    if (trials < 1) throw InvalidArgument("estimate: trials must be >= 1");
    long blocks = (trials + kBlockSize - 1) / kBlockSize;
    std::vector<long> hits(blocks, 0);
    std::atomic<long> next{0};
    auto work = [&]() {
        for (;;) {
            long b = next.fetch_add(1);
            if (b >= blocks) return;
            long lo = b * kBlockSize;
            long count = std::min(kBlockSize, trials - lo);
            RngStream stream(seed, static_cast<std::uint64_t>(b));
            hits[b] = fn(count, stream);
        }
    };
    int workers = worker_count(blocks);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    long total = 0;
    for (long h : hits) total += h;
    return total;
}

TailEstimate finish_estimate(long n, long k, double x, long trials, long hits, double s_n) {
    TailEstimate t;
    t.n = n;
    t.k = k;
    t.x = x;
    t.trials = trials;
    t.hits = hits;
    t.p_hat = double(hits) / double(trials);
    ConfidenceInterval ci = clopper_pearson(hits, trials);
    t.ci_lo = ci.lo;
    t.ci_hi = ci.hi;
    t.s_n = s_n;
    t.censored = hits == 0;
    t.rescaled = t.censored ? kInf : -std::log(t.p_hat) / s_n;
    return t;
}

}  // namespace

TailEstimate estimate_tail(const DistributionSpec& dist, const RegimeSpec& regime, double q,
                           double x, long n, long trials, std::uint64_t seed,
                           NormScaling scaling) {
    LdpMetadata md = ldp_metadata(dist, regime);
    long k = regime.k_n(n);
    double kn_factor = scaling == NormScaling::ByKn ? std::pow(double(n) / double(k), 1.0 / q) : 1.0;
    bool orlicz = dist.family == DistributionSpec::Family::OrliczBall;
    long hits = run_blocks(trials, seed, [&](long count, RngStream& rng) {
        long h = 0;
        if (orlicz) {
            OrliczSampler chain(dist.v, n, 10 * n, rng);
            for (long i = 0; i < count; ++i) {
                double xnorm2 = chain.next(n, rng).norm();
                double v = kn_factor * projected_qnorm_fast(n, k, q, xnorm2, rng);
                if (v >= x) ++h;
            }
        } else {
            for (long i = 0; i < count; ++i) {
                double xnorm2 = sample_radial_norm2(dist, n, rng);
                double v = kn_factor * projected_qnorm_fast(n, k, q, xnorm2, rng);
                if (v >= x) ++h;
            }
        }
        return h;
    });
    return finish_estimate(n, k, x, trials, hits, md.speed(n));
}

TailEstimate estimate_empirical_tail(const DistributionSpec& dist, const RegimeSpec& regime,
                                     double x, long n, long trials, std::uint64_t seed) {
    LdpMetadata md = ldp_metadata(dist, regime);
    double m = dist.thin_shell_center();
    long k = regime.k_n(n);
    bool orlicz = dist.family == DistributionSpec::Family::OrliczBall;
    long hits = run_blocks(trials, seed, [&](long count, RngStream& rng) {
        long h = 0;
        for (long i = 0; i < count; ++i) {
            double xnorm2;
            if (orlicz) {
                xnorm2 = sample_vector(dist, n, rng).norm();
            } else {
                xnorm2 = sample_radial_norm2(dist, n, rng);
            }
            EmpiricalMeasure ln = projected_empirical_fast(n, k, xnorm2, rng);
            if (wasserstein_1d_to_gaussian(1.0, ln, m) >= x) ++h;
        }
        return h;
    });
    return finish_estimate(n, k, x, trials, hits, md.speed(n));
}

double exact_tail_oracle_p2(long n, long k, double x) {
    if (k != 1) throw Unsupported("exact_tail_oracle_p2: only k = 1 is supported");
    if (n < 2) throw InvalidArgument("exact_tail_oracle_p2: need n >= 2");
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    // P(R U^{1/n} >= x) = E[(1 - (x/R)^n)_+], R^2 ~ Beta(1/2,(n-1)/2); after
    // R = u the density is 2 (1-u^2)^{(n-3)/2} / B(1/2,(n-1)/2) on (0,1).
    const double nn = double(n);
    LogIntegrand gi{[nn, x](double u) {
                        double ratio = nn * std::log(x / u);
                        double mass = -std::expm1(ratio);  // 1 - (x/u)^n
                        if (!(mass > 0.0)) return -kInf;
                        return std::log(mass) + 0.5 * (nn - 3.0) * std::log1p(-u * u);
                    },
                    Interval{x, 1.0}};
    double log_i = log_integral(gi, 1e-11);
    double log_beta = std::lgamma(0.5) + std::lgamma(0.5 * (nn - 1.0)) - std::lgamma(0.5 * nn);
    return std::exp(std::log(2.0) + log_i - log_beta);
}

RatePrediction predict_norm_rate(const DistributionSpec& dist, const RegimeSpec& regime, double q,
                                 NormScaling scaling, double x) {
    if (!(q >= 1.0)) throw InvalidQ("predict_norm_rate: q must be >= 1");
    LdpMetadata md = ldp_metadata(dist, regime);
    RatePrediction out;
    out.speed_tag = md.speed_tag;
    switch (regime.kind) {
        case RegimeSpec::Kind::Constant: {
            if (scaling == NormScaling::ByKn)
                throw Unsupported("predict_norm_rate: k_n^{-1/q} scaling needs growing k_n");
            ConstantVariant variant;
            if (md.tag == LdpMetadata::Assumption::AStar)
                variant = ConstantVariant::AStar;
            else if (md.tag == LdpMetadata::Assumption::B)
                variant = ConstantVariant::B;
            else
                throw Unsupported("predict_norm_rate: constant regime needs A* or B metadata");
            if (q == 2.0) {
                out.value = rate_constant_regime(md.jx, variant, x);
                return out;
            }
            // ||z||_q = x constrains ||z||_2 to a norm-equivalence segment.
            double f = std::pow(double(regime.k), 0.5 - 1.0 / q);
            double lo = std::min(x, x * f), hi = std::max(x, x * f);
            auto phi = [&](double r) { return rate_constant_regime(md.jx, variant, r); };
            MinResult r = infimum_linear_grid(phi, lo, hi, 65, 1e-10);
            out.value = std::min(r.value, std::min(phi(lo), phi(hi)));
            return out;
        }
        case RegimeSpec::Kind::Sublinear: {
            if (scaling == NormScaling::ByN) {
                if (q != 2.0)
                    throw Unsupported("predict_norm_rate: sublinear n^{-1/q} scaling needs q = 2");
                if (md.tag == LdpMetadata::Assumption::AStar) {
                    out.value = rate_sublinear_norm(SublinearNormCase::AStar, 0.0, md.jx, x);
                } else if (md.tag == LdpMetadata::Assumption::C) {
                    if (md.r == 0.0)
                        out.value = rate_sublinear_norm(SublinearNormCase::R0, 0.0, md.jx, x);
                    else if (std::isinf(md.r))
                        out.value = rate_sublinear_norm(SublinearNormCase::RInf, 0.0, md.jx, x);
                    else
                        out.value = rate_sublinear_norm(SublinearNormCase::RPos, md.r, md.jx, x);
                } else {
                    throw Unsupported("predict_norm_rate: sublinear regime needs A* or C metadata");
                }
                return out;
            }
            if (!(q <= 2.0))
                throw Unsupported("predict_norm_rate: k_n^{-1/q} scaling needs q in [1,2]");
            if (!(md.m > 0.0))
                throw Unsupported("predict_norm_rate: k_n^{-1/q} scaling needs a rate minimizer");
            SpeedBalance balance = classify_speed_balance(md, regime);
            if (balance == SpeedBalance::Balanced || balance == SpeedBalance::Slow) {
                long kn = regime.k_n(1000000L);
                out.speed_tag = balance == SpeedBalance::Balanced ? "k_n" : md.speed_tag;
                (void)kn;
            }
            out.value = rate_sublinear_qnorm(q, balance, md.jx, md.m, x);
            return out;
        }
        case RegimeSpec::Kind::Linear: {
            if (!(q <= 2.0))
                throw Unsupported("predict_norm_rate: linear regime covers q in [1,2]");
            double ratio = md.speed(100000000L) / 1e8;
            LinearCase cse = std::fabs(ratio - 1.0) < 1e-9 ? LinearCase::Full : LinearCase::Slow;
            double arg = scaling == NormScaling::ByKn
                             ? x * std::pow(regime.lambda, 1.0 / q)
                             : x;
            out.value = rate_linear_qnorm(q, regime.lambda, md.jx, cse, arg);
            return out;
        }
    }
    throw Unsupported("predict_norm_rate: unknown regime");
}

DecaySeries decay_series(const DistributionSpec& dist, const RegimeSpec& regime, double q,
                         double x, const std::vector<long>& n_ladder, long trials,
                         std::uint64_t seed, NormScaling scaling) {
    if (n_ladder.empty()) throw InvalidArgument("decay_series: empty ladder");
    DecaySeries out;
    RatePrediction pred = predict_norm_rate(dist, regime, q, scaling, x);
    out.rate_prediction = pred.value;
    out.speed_tag = pred.speed_tag;
    out.estimates.reserve(n_ladder.size());
    for (size_t i = 0; i < n_ladder.size(); ++i)
        out.estimates.push_back(
            estimate_tail(dist, regime, q, x, n_ladder[i], trials, seed + i, scaling));
    return out;
}

double wasserstein_1d(double q, const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    if (!(q >= 1.0)) throw InvalidQ("wasserstein_1d: q must be >= 1");
    long na = a.atoms.size(), nb = b.atoms.size();
    if (na == 0 || nb == 0) throw EmptyMeasure("wasserstein_1d: empty measure");
    if (na == nb) {
        double acc = 0.0;
        for (long i = 0; i < na; ++i) acc += std::pow(std::fabs(a.atoms[i] - b.atoms[i]), q);
        return std::pow(acc / double(na), 1.0 / q);
    }
    double acc = 0.0, u = 0.0;
    long ia = 0, ib = 0;
    while (ia < na && ib < nb) {
        double next_a = double(ia + 1) / double(na);
        double next_b = double(ib + 1) / double(nb);
        double un = std::min(next_a, next_b);
        acc += (un - u) * std::pow(std::fabs(a.atoms[ia] - b.atoms[ib]), q);
        u = un;
        if (next_a <= un + 1e-18) ++ia;
        if (next_b <= un + 1e-18) ++ib;
    }
    return std::pow(acc, 1.0 / q);
}

double wasserstein_1d_to_gaussian(double q, const EmpiricalMeasure& a, double sigma) {
    if (!(q >= 1.0)) throw InvalidQ("wasserstein_1d_to_gaussian: q must be >= 1");
    long n = a.atoms.size();
    if (n == 0) throw EmptyMeasure("wasserstein_1d_to_gaussian: empty measure");
    if (!(sigma > 0.0)) throw InvalidArgument("wasserstein_1d_to_gaussian: sigma > 0");
    // 8-point Gauss-Legendre per quantile cell.
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        double u0 = double(i) / double(n), u1 = double(i + 1) / double(n);
        double c = 0.5 * (u0 + u1), hw = 0.5 * (u1 - u0);
        double cell = 0.0;
        for (int j = 0; j < 8; ++j) {
            double u = c + hw * gx[j];
            cell += gw[j] * std::pow(std::fabs(a.atoms[i] - sigma * normal_quantile(u)), q);
        }
        acc += cell * hw;
    }
    return std::pow(acc, 1.0 / q);
}

double ks_statistic(const EmpiricalMeasure& sample, const std::function<double(double)>& cdf) {
    long n = sample.atoms.size();
    if (n == 0) throw EmptyMeasure("ks_statistic: empty sample");
    double d = 0.0;
    for (long i = 0; i < n; ++i) {
        double f = cdf(sample.atoms[i]);
        d = std::max(d, std::fabs(double(i + 1) / double(n) - f));
        d = std::max(d, std::fabs(f - double(i) / double(n)));
    }
    return d;
}

double thin_shell_probability(const DistributionSpec& dist, long n, double eps, long trials,
                              std::uint64_t seed) {
    double m = dist.thin_shell_center();
    double sqrtn = std::sqrt(double(n));
    long hits = run_blocks(trials, seed, [&](long count, RngStream& rng) {
        long h = 0;
        if (dist.family == DistributionSpec::Family::OrliczBall) {
            OrliczSampler chain(dist.v, n, 10 * n, rng);
            for (long i = 0; i < count; ++i)
                if (std::fabs(chain.next(n, rng).norm() / sqrtn - m) >= eps) ++h;
        } else {
            for (long i = 0; i < count; ++i)
                if (std::fabs(sample_radial_norm2(dist, n, rng) / sqrtn - m) >= eps) ++h;
        }
        return h;
    });
    return double(hits) / double(trials);
}

std::string verify_csv_header() {
    return "n,k,s_n,trials,hits,p_hat,ci_lo,ci_hi,rescaled,rate_prediction";
}

std::string verify_csv_row(const TailEstimate& t, double rate_prediction) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%ld,%ld,%.17g,%ld,%ld,%.17g,%.17g,%.17g,%.17g,%.17g", t.n,
                  t.k, t.s_n, t.trials, t.hits, t.p_hat, t.ci_lo, t.ci_hi, t.rescaled,
                  rate_prediction);
    return buf;
}

}  // namespace ldp
