#pragma once

#include <Eigen/Dense>

#include "ldp/numeric.hpp"
#include "ldp/rng.hpp"

namespace ldp {

struct InvalidDims : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct DimMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct InvalidQ : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// Orthonormal k-frame in R^n (columns orthonormal).
struct Frame {
    Eigen::MatrixXd entries;

    long n() const { return entries.rows(); }
    long k() const { return entries.cols(); }
    double orthonormality_defect() const {
        return (entries.transpose() * entries -
                Eigen::MatrixXd::Identity(entries.cols(), entries.cols()))
            .norm();
    }
};

/// Sorted atoms of a uniform empirical measure.
struct EmpiricalMeasure {
    Eigen::VectorXd atoms;
    static EmpiricalMeasure from_draws(Eigen::VectorXd draws);
};

/// Haar-distributed frame: Gaussian matrix, thin QR, R-diagonal forced
/// positive so the law is exactly rotation invariant.
Frame haar_frame(long n, long k, RngStream& rng);

/// A^T x.
Eigen::VectorXd project(const Frame& a, const Eigen::Ref<const Eigen::VectorXd>& x);

/// One draw of n^{-1/q} ||A^T X||_q given ||X||_2 = xnorm2, through the
/// Gaussian-ratio representation; no frame is materialized.  The squared norm
/// of the unobserved n-k Gaussian tail coordinates is drawn as one chi^2.
double projected_qnorm_fast(long n, long k, double q, double xnorm2, RngStream& rng);

/// Coordinates of A^T X given ||X||_2 = xnorm2, as a sorted empirical measure.
EmpiricalMeasure projected_empirical_fast(long n, long k, double xnorm2, RngStream& rng);

}  // namespace ldp
