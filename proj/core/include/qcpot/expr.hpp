#pragma once

#include <memory>
#include <string>

#include "qcpot/common.hpp"

namespace qcpot {

/// Compiled arithmetic expression over the variables x, y, z with
/// +, -, *, /, ^, abs, min, max, exp, sin. No external evaluator: fixtures
/// in tests and docs stay reproducible.
class Expr {
public:
    static Expr parse(const std::string& text);
    double eval(const Vec& point) const;

    Expr(Expr&&) noexcept;
    Expr& operator=(Expr&&) noexcept;
    ~Expr();

    struct Node;

private:
    explicit Expr(std::unique_ptr<Node> root);
    std::unique_ptr<Node> root_;
};

}  // namespace qcpot
