#pragma once

#include <memory>
#include <string>

#include "ldp/orlicz_function.hpp"

namespace ldp {

struct ParseError : InvalidArgument {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : InvalidArgument(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct SemanticError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

/// Parsed Orlicz expression over the grammar: literals, `x`, abs, cosh, exp,
/// `+`, `-`, `*`, `^` with constant exponents, parentheses.
struct OrliczExpr {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Node {
        enum class Op { Const, Var, Abs, Cosh, Exp, Add, Sub, Mul, Pow, Neg };
        Op op = Op::Const;
        double value = 0.0;  // Const payload; Pow exponent
        NodePtr a, b;
    };

    NodePtr root;
    std::string source;

    double eval(double x) const;

    /// Wraps the expression as a validated OrliczFunction; SemanticError when
    /// V(0) != 0, the symmetry check fails, or the convexity spot check fails.
    OrliczFunction to_function() const;
};

/// Recursive-descent parse with standard precedence (`^` above `*` above
/// `+`/`-`).  Non-integer exponents wrap their base in abs.
OrliczExpr parse_orlicz(const std::string& src);

}  // namespace ldp
