#include "ldp/spec_parse.hpp"

#include <charconv>
#include <cmath>

#include "ldp/orlicz_expr.hpp"

namespace ldp {

namespace {

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw InvalidArgument(std::string("expected a number for ") + what + ": '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(parse_double(tok, what));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// "key=value" after a fixed prefix.
std::string expect_kv(const std::string& body, const std::string& key, const char* grammar) {
    if (body.rfind(key + "=", 0) != 0)
        throw InvalidArgument(std::string("expected ") + grammar);
    return body.substr(key.size() + 1);
}

}  // namespace

DistributionSpec parse_distribution(const std::string& s) {
    size_t colon = s.find(':');
    std::string head = s.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "lp")
        return DistributionSpec::lp_ball(parse_double(expect_kv(body, "p", "lp:p=<float>"), "p"));
    if (head == "product") {
        if (body == "normal") return DistributionSpec::product(DistributionSpec::Marginal::Normal);
        if (body == "rademacher")
            return DistributionSpec::product(DistributionSpec::Marginal::Rademacher);
        throw InvalidArgument("expected product:normal or product:rademacher");
    }
    if (head == "mixture") {
        size_t semi = body.find(';');
        if (semi == std::string::npos)
            throw InvalidArgument("expected mixture:v=<floats>;w=<floats>");
        std::vector<double> v =
            parse_list(expect_kv(body.substr(0, semi), "v", "mixture:v=...;w=..."), "variance");
        std::vector<double> w =
            parse_list(expect_kv(body.substr(semi + 1), "w", "mixture:v=...;w=..."), "weight");
        return DistributionSpec::gaussian_mixture(std::move(v), std::move(w));
    }
    if (head == "orlicz") {
        if (body.empty()) throw InvalidArgument("expected orlicz:<expr>");
        return DistributionSpec::orlicz_ball(parse_orlicz(body).to_function());
    }
    throw InvalidArgument("unknown distribution family '" + head + "'");
}

RegimeSpec parse_regime(const std::string& s) {
    size_t colon = s.find(':');
    std::string head = s.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "constant") {
        double k = parse_double(expect_kv(body, "k", "constant:k=<int>"), "k");
        if (k != std::floor(k) || k < 1) throw InvalidArgument("constant regime: k must be a positive integer");
        return RegimeSpec::constant(static_cast<int>(k));
    }
    if (head == "sublinear")
        return RegimeSpec::sublinear(
            parse_double(expect_kv(body, "alpha", "sublinear:alpha=<float>"), "alpha"));
    if (head == "linear")
        return RegimeSpec::linear(
            parse_double(expect_kv(body, "lambda", "linear:lambda=<float>"), "lambda"));
    throw InvalidArgument("unknown regime '" + head + "'");
}

QuantitySpec parse_quantity(const std::string& s) {
    QuantitySpec out;
    if (s == "empirical") {
        out.kind = QuantitySpec::Kind::Empirical;
        return out;
    }
    size_t colon = s.find(':');
    std::string head = s.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "norm")
        out.kind = QuantitySpec::Kind::Norm;
    else if (head == "norm_kn")
        out.kind = QuantitySpec::Kind::NormKn;
    else
        throw InvalidArgument("unknown quantity '" + head + "'");
    out.q = parse_double(expect_kv(body, "q", "norm:q=<float>"), "q");
    if (!(out.q >= 1.0)) throw InvalidArgument("quantity: q must be >= 1");
    return out;
}

std::vector<double> parse_grid(const std::string& s) {
    size_t c1 = s.find(':');
    size_t c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InvalidArgument("expected grid <lo>:<hi>:<step>");
    double lo = parse_double(s.substr(0, c1), "grid lo");
    double hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1), "grid hi");
    double step = parse_double(s.substr(c2 + 1), "grid step");
    if (!(step > 0.0) || hi < lo) throw InvalidArgument("grid: need step > 0 and hi >= lo");
    long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (long i = 0; i < count; ++i) out.push_back(lo + step * double(i));
    return out;
}

}  // namespace ldp
