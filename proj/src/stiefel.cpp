#include "ldp/stiefel.hpp"

#include <algorithm>
#include <cmath>

namespace ldp {

EmpiricalMeasure EmpiricalMeasure::from_draws(Eigen::VectorXd draws) {
    std::sort(draws.data(), draws.data() + draws.size());
    for (long i = 0; i < draws.size(); ++i)
        if (!std::isfinite(draws[i])) throw InvalidArgument("EmpiricalMeasure: non-finite atom");
    return EmpiricalMeasure{std::move(draws)};
}

Frame haar_frame(long n, long k, RngStream& rng) {
    if (!(1 <= k && k <= n)) throw InvalidDims("haar_frame: need 1 <= k <= n");
    Eigen::MatrixXd g(n, k);
    for (long j = 0; j < k; ++j)
        for (long i = 0; i < n; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    const auto& packed = qr.matrixQR();
    for (long j = 0; j < k; ++j)
        if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
    return Frame{std::move(q)};
}

Eigen::VectorXd project(const Frame& a, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != a.n()) throw DimMismatch("project: x length must equal frame rows");
    return a.entries.transpose() * x;
}

double projected_qnorm_fast(long n, long k, double q, double xnorm2, RngStream& rng) {
    if (!(q >= 1.0)) throw InvalidQ("projected_qnorm_fast: q must be >= 1");
    if (!(1 <= k && k <= n)) throw InvalidDims("projected_qnorm_fast: need 1 <= k <= n");
    if (!(xnorm2 >= 0.0)) throw InvalidArgument("projected_qnorm_fast: xnorm2 >= 0");
    if (q == 2.0 && k == n) return xnorm2 / std::sqrt(double(n));
    double sum_q = 0.0, sum_2 = 0.0;
    for (long i = 0; i < k; ++i) {
        double z = rng.normal();
        sum_2 += z * z;
        sum_q += (q == 2.0) ? z * z : std::pow(std::fabs(z), q);
    }
    double rest = (n > k) ? rng.chi_squared(double(n - k)) : 0.0;
    double norm_q = std::pow(sum_q, 1.0 / q);
    return std::pow(double(n), -1.0 / q) * norm_q * xnorm2 / std::sqrt(sum_2 + rest);
}

EmpiricalMeasure projected_empirical_fast(long n, long k, double xnorm2, RngStream& rng) {
    if (!(1 <= k && k <= n)) throw InvalidDims("projected_empirical_fast: need 1 <= k <= n");
    Eigen::VectorXd z(k);
    double sum_2 = 0.0;
    for (long i = 0; i < k; ++i) {
        z[i] = rng.normal();
        sum_2 += z[i] * z[i];
    }
    double rest = (n > k) ? rng.chi_squared(double(n - k)) : 0.0;
    double denom = std::sqrt(sum_2 + rest);
    return EmpiricalMeasure::from_draws(xnorm2 / denom * z);
}

}  // namespace ldp
