#include "qcpot/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace qcpot {

struct Expr::Node {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Abs, Min, Max, Exp, Sin };
    Kind kind;
    double value = 0.0;
    int var = 0;
    std::unique_ptr<Node> a, b;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;

std::unique_ptr<Node> leaf_const(double v) {
    auto n = std::make_unique<Node>();
    n->kind = Kind::Const;
    n->value = v;
    return n;
}

std::unique_ptr<Node> unary(Kind k, std::unique_ptr<Node> a) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->a = std::move(a);
    return n;
}

std::unique_ptr<Node> binary(Kind k, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
    auto n = std::make_unique<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    std::unique_ptr<Node> run() {
        auto e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw Error("unexpected input at `" + s_.substr(pos_) + "`");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    std::unique_ptr<Node> expr() {
        auto lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = binary(Kind::Add, std::move(lhs), term());
            else if (eat('-'))
                lhs = binary(Kind::Sub, std::move(lhs), term());
            else
                return lhs;
        }
    }

    std::unique_ptr<Node> term() {
        auto lhs = factor();
        for (;;) {
            if (eat('*'))
                lhs = binary(Kind::Mul, std::move(lhs), factor());
            else if (eat('/'))
                lhs = binary(Kind::Div, std::move(lhs), factor());
            else
                return lhs;
        }
    }

    // unary minus binds looser than ^: -x^2 reads -(x^2)
    std::unique_ptr<Node> factor() {
        if (eat('-')) return unary(Kind::Neg, factor());
        if (eat('+')) return factor();
        return power();
    }

    std::unique_ptr<Node> power() {
        auto base = primary();
        if (eat('^')) return binary(Kind::Pow, std::move(base), factor());  // right-assoc
        return base;
    }

    std::unique_ptr<Node> primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw Error("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        if (eat('(')) {
            auto e = expr();
            if (!eat(')')) throw Error("missing `)`");
            return e;
        }
        throw Error(std::string("unexpected character `") + c + "`");
    }

    std::unique_ptr<Node> number() {
        std::size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                s_[end] == 'e' || s_[end] == 'E' ||
                ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
                 (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
            ++end;
        const std::string tok = s_.substr(pos_, end - pos_);
        try {
            auto n = leaf_const(std::stod(tok));
            pos_ = end;
            return n;
        } catch (...) {
            throw Error("bad number: " + tok);
        }
    }

    std::unique_ptr<Node> name() {
        std::size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
        const std::string id = s_.substr(pos_, end - pos_);
        pos_ = end;

        if (id == "x" || id == "y" || id == "z") {
            auto n = std::make_unique<Node>();
            n->kind = Kind::Var;
            n->var = id == "x" ? 0 : id == "y" ? 1 : 2;
            return n;
        }

        Kind k;
        int arity;
        if (id == "abs") {
            k = Kind::Abs;
            arity = 1;
        } else if (id == "exp") {
            k = Kind::Exp;
            arity = 1;
        } else if (id == "sin") {
            k = Kind::Sin;
            arity = 1;
        } else if (id == "min") {
            k = Kind::Min;
            arity = 2;
        } else if (id == "max") {
            k = Kind::Max;
            arity = 2;
        } else {
            throw Error("unknown identifier: " + id);
        }

        if (!eat('(')) throw Error(id + " expects `(`");
        auto a = expr();
        if (arity == 1) {
            if (!eat(')')) throw Error("missing `)`");
            return unary(k, std::move(a));
        }
        if (!eat(',')) throw Error(id + " expects two arguments");
        auto b = expr();
        if (!eat(')')) throw Error("missing `)`");
        return binary(k, std::move(a), std::move(b));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, const Vec& pt) {
    switch (n.kind) {
        case Kind::Const:
            return n.value;
        case Kind::Var:
            return pt[static_cast<size_t>(n.var)];
        case Kind::Neg:
            return -eval_node(*n.a, pt);
        case Kind::Add:
            return eval_node(*n.a, pt) + eval_node(*n.b, pt);
        case Kind::Sub:
            return eval_node(*n.a, pt) - eval_node(*n.b, pt);
        case Kind::Mul:
            return eval_node(*n.a, pt) * eval_node(*n.b, pt);
        case Kind::Div:
            return eval_node(*n.a, pt) / eval_node(*n.b, pt);
        case Kind::Pow:
            return std::pow(eval_node(*n.a, pt), eval_node(*n.b, pt));
        case Kind::Abs:
            return std::fabs(eval_node(*n.a, pt));
        case Kind::Min:
            return std::min(eval_node(*n.a, pt), eval_node(*n.b, pt));
        case Kind::Max:
            return std::max(eval_node(*n.a, pt), eval_node(*n.b, pt));
        case Kind::Exp:
            return std::exp(eval_node(*n.a, pt));
        case Kind::Sin:
            return std::sin(eval_node(*n.a, pt));
    }
    return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) { return Expr(Parser(text).run()); }

double Expr::eval(const Vec& point) const { return eval_node(*root_, point); }

Expr::Expr(std::unique_ptr<Node> root) : root_(std::move(root)) {}
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(Expr&&) noexcept = default;
Expr::~Expr() = default;

}  // namespace qcpot
