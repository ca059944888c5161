#include "ldp/orlicz_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace ldp {

namespace {

using Node = OrliczExpr::Node;
using NodePtr = OrliczExpr::NodePtr;
using Op = Node::Op;

NodePtr make(Op op, double value = 0.0, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = value;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr parse() {
        NodePtr e = sum();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("trailing input", pos_);
        return e;
    }

  private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr sum() {
        NodePtr left = product();
        for (;;) {
            if (eat('+'))
                left = make(Op::Add, 0.0, left, product());
            else if (eat('-'))
                left = make(Op::Sub, 0.0, left, product());
            else
                return left;
        }
    }

    NodePtr product() {
        NodePtr left = unary();
        while (eat('*')) left = make(Op::Mul, 0.0, left, unary());
        return left;
    }

    NodePtr unary() {
        if (eat('-')) return make(Op::Neg, 0.0, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (!eat('^')) return base;
        skip_ws();
        bool neg = eat('-');
        double expo = number();
        if (neg) expo = -expo;
        // A non-integer power of a negative base is undefined; take the even
        // extension through abs.
        if (expo != std::floor(expo)) base = make(Op::Abs, 0.0, base);
        return make(Op::Pow, expo, base);
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = sum();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return make(Op::Const, number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isalpha(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            if (name == "x") return make(Op::Var);
            Op op;
            if (name == "abs")
                op = Op::Abs;
            else if (name == "cosh")
                op = Op::Cosh;
            else if (name == "exp")
                op = Op::Exp;
            else
                throw ParseError("unknown identifier '" + name + "'", start);
            if (!eat('(')) throw ParseError("expected '(' after " + name, pos_);
            NodePtr arg = sum();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return make(op, 0.0, arg);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    double number() {
        skip_ws();
        size_t start = pos_;
        double out = 0.0;
        auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), out);
        if (res.ec != std::errc{}) throw ParseError("expected a number", start);
        pos_ = res.ptr - src_.data();
        return out;
    }

    const std::string& src_;
    size_t pos_ = 0;
};

double eval_node(const Node& n, double x) {
    switch (n.op) {
        case Op::Const:
            return n.value;
        case Op::Var:
            return x;
        case Op::Abs:
            return std::fabs(eval_node(*n.a, x));
        case Op::Cosh:
            return std::cosh(eval_node(*n.a, x));
        case Op::Exp:
            return std::exp(eval_node(*n.a, x));
        case Op::Add:
            return eval_node(*n.a, x) + eval_node(*n.b, x);
        case Op::Sub:
            return eval_node(*n.a, x) - eval_node(*n.b, x);
        case Op::Mul:
            return eval_node(*n.a, x) * eval_node(*n.b, x);
        case Op::Pow:
            return std::pow(eval_node(*n.a, x), n.value);
        case Op::Neg:
            return -eval_node(*n.a, x);
    }
    return 0.0;
}

}  // namespace

double OrliczExpr::eval(double x) const { return eval_node(*root, x); }

OrliczFunction OrliczExpr::to_function() const {
    OrliczFunction v;
    NodePtr r = root;
    v.eval = [r](double x) {
        double y = eval_node(*r, x);
        return std::isnan(y) ? kInf : y;
    };
    v.domain = Interval{-kInf, kInf};
    v.name = source;
    try {
        validate_orlicz(v);
    } catch (const InvalidArgument& e) {
        throw SemanticError(std::string("not a valid Orlicz function: ") + e.what());
    }
    return v;
}

OrliczExpr parse_orlicz(const std::string& src) {
    if (src.empty()) throw ParseError("empty expression", 0);
    OrliczExpr e;
    e.source = src;
    e.root = Parser(src).parse();
    e.to_function();  // surface semantic errors at parse time
    return e;
}

}  // namespace ldp
