#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "ldp/orlicz_function.hpp"
#include "ldp/ratefn.hpp"
#include "ldp/rng.hpp"

namespace ldp {

struct Unsupported : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct DegenerateBody : NumericalError {
    using NumericalError::NumericalError;
};

/// Projection-dimension schedule.
struct RegimeSpec {
    enum class Kind { Constant, Sublinear, Linear };
    Kind kind = Kind::Constant;
    int k = 1;            // Constant
    double alpha = 0.5;   // Sublinear: k_n = ceil(n^alpha)
    double lambda = 0.5;  // Linear: k_n ~ lambda n

    long k_n(long n) const;

    static RegimeSpec constant(int k);
    static RegimeSpec sublinear(double alpha);
    static RegimeSpec linear(double lambda);
    std::string to_string() const;
};

/// Sampleable measure family, dimension-free parameters only.
struct DistributionSpec {
    enum class Family { LpBall, Product, GaussianMixture, OrliczBall };
    enum class Marginal { Normal, Rademacher, PointMass };

    Family family = Family::LpBall;
    double p = 2.0;                         // LpBall
    Marginal marginal = Marginal::Normal;   // Product
    double point = 1.0;                     // PointMass location
    std::vector<double> variances, weights; // GaussianMixture
    OrliczFunction v;                       // OrliczBall

    static DistributionSpec lp_ball(double p);
    static DistributionSpec product(Marginal m, double point = 1.0);
    static DistributionSpec gaussian_mixture(std::vector<double> variances,
                                             std::vector<double> weights);
    static DistributionSpec orlicz_ball(OrliczFunction v);

    /// Almost-sure limit m of ||X||_2 / sqrt(n); throws Unsupported when the
    /// family has no single thin-shell center (mixtures of distinct variances).
    double thin_shell_center() const;
    bool has_unique_center() const;

    std::string to_string() const;
};

// --- samplers -------------------------------------------------------------------

/// i.i.d. draws from the p-generalized normal f_p(x) ~ exp(-|x|^p / p).
Eigen::VectorXd sample_pgn(double p, long n, RngStream& rng);

/// Uniform draw from n^{1/p} B_p^n via the radial representation
/// n^{1/p} U^{1/n} xi / ||xi||_p.
Eigen::VectorXd sample_lp_ball(double p, long n, RngStream& rng);

Eigen::VectorXd sample_product(DistributionSpec::Marginal marginal, double point, long n,
                               RngStream& rng);

Eigen::VectorXd sample_gaussian_mixture(const std::vector<double>& variances,
                                        const std::vector<double>& weights, long n,
                                        RngStream& rng);

/// Coordinate hit-and-run on the Orlicz ball {sum V(x_i) <= n}.  Burn-in and
/// thinning count single-coordinate moves; a sweep is n moves.
class OrliczSampler {
  public:
    OrliczSampler(OrliczFunction v, long n, long burnin, RngStream& rng);

    /// Advances the chain by `thin` moves and returns the current point.
    Eigen::VectorXd next(long thin, RngStream& rng);

    double budget_used() const { return total_; }

  private:
    void move(RngStream& rng);

    OrliczFunction v_;
    Eigen::VectorXd x_;
    double total_ = 0.0;  // running sum of V(x_i)
    long moves_ = 0;
};

/// One approximate uniform draw from the Orlicz ball (fresh chain).
Eigen::VectorXd sample_orlicz_ball(const OrliczFunction& v, long n, long burnin, long thin,
                                   RngStream& rng);

/// Dispatch on the family.
Eigen::VectorXd sample_vector(const DistributionSpec& dist, long n, RngStream& rng);

/// Whether ||X||_2 can be drawn without materializing the vector.
bool has_radial_shortcut(const DistributionSpec& dist);

/// A draw of ||X||_2 through the family's radial law.
double sample_radial_norm2(const DistributionSpec& dist, long n, RngStream& rng);

// --- LDP metadata ----------------------------------------------------------------

struct LdpMetadata {
    enum class Assumption { AStar, A, B, C };

    std::function<double(long)> speed;  // s_n (regime already bound)
    std::string speed_tag;
    RateFunctionHandle jx;
    double m = std::numeric_limits<double>::quiet_NaN();  // unique minimizer of jx
    Assumption tag = Assumption::AStar;
    double r = std::numeric_limits<double>::quiet_NaN();  // C cases: lim s_n / k_n
};

/// Speed, rate handle and minimizer for the (family, regime) pair.
LdpMetadata ldp_metadata(const DistributionSpec& dist, const RegimeSpec& regime);

/// Classifies s_n against k_n over a numeric ladder (the s_n = k_n branch
/// triggers when the ratio tends to 1).
SpeedBalance classify_speed_balance(const LdpMetadata& md, const RegimeSpec& regime);

}  // namespace ldp
