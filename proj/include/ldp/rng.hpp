#pragma once

#include <cstdint>
#include <random>

namespace ldp {

/// Counter-seeded RNG stream: (seed, stream) pairs give independent streams,
/// one per replicate/block, so parallel partitions merge deterministically.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream),
                          static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
        engine_.seed(seq);
    }

    /// Uniform on (0,1); never returns 0 or 1.
    double uniform() {
        double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return u == 0.0 ? 0x1.0p-54 : u;
    }

    double normal() { return std::normal_distribution<double>()(engine_); }

    double gamma(double shape, double scale = 1.0) {
        return std::gamma_distribution<double>(shape, scale)(engine_);
    }

    double chi_squared(double dof) { return gamma(0.5 * dof, 2.0); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    /// Independent random sign.
    double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace ldp
