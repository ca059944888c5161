#pragma once

#include <string>

#include "ldp/distributions.hpp"

namespace ldp {

/// Grammar: lp:p=<float> | product:normal | product:rademacher |
/// mixture:v=<floats>;w=<floats> | orlicz:<expr>.
DistributionSpec parse_distribution(const std::string& s);

/// Grammar: constant:k=<int> | sublinear:alpha=<float> | linear:lambda=<float>.
RegimeSpec parse_regime(const std::string& s);

struct QuantitySpec {
    enum class Kind { Norm, NormKn, Empirical };
    Kind kind = Kind::Norm;
    double q = 2.0;
};

/// Grammar: norm:q=<float> | norm_kn:q=<float> | empirical.
QuantitySpec parse_quantity(const std::string& s);

/// Grammar: <lo>:<hi>:<step>, endpoints inclusive.
std::vector<double> parse_grid(const std::string& s);

}  // namespace ldp
