#pragma once

// Scalar expression language for chart data.
//
// Grammar (standard precedence, left associative binary operators):
//
//   expr    ::= term { ("+" | "-") term }
//   term    ::= unary { ("*" | "/") unary }
//   unary   ::= ("-" | "+") unary | power
//   power   ::= primary [ "^" unary ]        exponent must fold to a constant
//   primary ::= number | identifier | func "(" expr ")" | "(" expr ")"
//   func    ::= sin | cos | sinh | cosh | exp | log | sqrt
//
// Identifiers resolve to chart coordinates first, then to named parameters.
// `pi` is always available as a parameter.

#include "svk/dual.hpp"

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svk::expr {

enum class NodeKind : unsigned char { constant, variable, parameter, unary, binary };

enum class UnaryOp : unsigned char { neg, sin, cos, sinh, cosh, exp, log, sqrt };

enum class BinaryOp : unsigned char { add, sub, mul, div, pow };

struct Node;

/// Immutable expression tree. Copies share structure.
class Expr {
public:
    Expr() = default;

    static Expr constant(double value);
    static Expr variable(std::size_t index, std::string name);
    static Expr parameter(std::string name, double value);
    static Expr unary(UnaryOp op, Expr arg);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

    [[nodiscard]] bool empty() const { return node_ == nullptr; }
    [[nodiscard]] const Node& node() const { return *node_; }

    /// True when the tree contains no coordinate variables.
    [[nodiscard]] bool is_constant() const;
    /// True when the tree is exactly the literal 0.
    [[nodiscard]] bool is_zero() const;
    /// Largest coordinate index referenced plus one (0 if none).
    [[nodiscard]] std::size_t variable_bound() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Node {
    NodeKind kind = NodeKind::constant;
    double value = 0.0;       // constant literal or parameter value
    std::size_t index = 0;    // coordinate index
    std::string name;         // coordinate or parameter name
    UnaryOp uop = UnaryOp::neg;
    BinaryOp bop = BinaryOp::add;
    Expr lhs;  // unary argument or binary left operand
    Expr rhs;  // binary right operand (pow: constant exponent)
};

// Builders that keep literal zeros and ones out of generated trees.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr apply(UnaryOp op, const Expr& arg);

using ParameterTable = std::map<std::string, double, std::less<>>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Raised when evaluation leaves the domain of an operation (log of a
/// non-positive number, division by zero, ...). Carries the offending node.
class DomainError : public std::runtime_error {
public:
    DomainError(const std::string& what, std::string node)
        : std::runtime_error(what + " in '" + node + "'"), node_(std::move(node))
    {
    }
    [[nodiscard]] const std::string& node() const { return node_; }

private:
    std::string node_;
};

Expr parse_expression(std::string_view text, std::span<const std::string> coord_names,
                      const ParameterTable& parameters = {});

/// Minimal-parenthesis rendering; re-parsing yields a structurally equal tree.
std::string render(const Expr& e);

/// Shortest decimal text that reads back to exactly the same double.
std::string format_number(double x);

/// Value, gradient and Hessian of a scalar field at a point.
struct Jet2 {
    double value = 0.0;
    Gradient grad{};
    std::array<Gradient, kMaxDim> hess{};

    /// Value and gradient as a first-order number.
    [[nodiscard]] Dual first() const { return {value, grad}; }
    /// The partial derivative along coordinate k, itself carrying its gradient.
    [[nodiscard]] Dual partial(std::size_t k) const { return {grad[k], hess[k]}; }
};

/// Exact second-order forward-mode evaluation.
Jet2 eval_jet2(const Expr& e, std::span<const double> point);

/// Plain double evaluation (same domain rules as eval_jet2).
double eval_value(const Expr& e, std::span<const double> point);

}  // namespace svk::expr
