#include "svk/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace svk::expr {

// ---------------------------------------------------------------------------
// Construction

Expr Expr::constant(double value)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index, std::string name)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::variable;
    n->index = index;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::parameter(std::string name, double value)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::parameter;
    n->name = std::move(name);
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr arg)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::unary;
    n->uop = op;
    n->lhs = std::move(arg);
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
    if (op == BinaryOp::pow && rhs.node().kind != NodeKind::constant) {
        throw std::invalid_argument("pow exponent must be a constant node");
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::binary;
    n->bop = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Expr(std::move(n));
}

bool Expr::is_constant() const { return variable_bound() == 0; }

bool Expr::is_zero() const
{
    return node_ && node_->kind == NodeKind::constant && node_->value == 0.0;
}

std::size_t Expr::variable_bound() const
{
    const Node& n = *node_;
    switch (n.kind) {
    case NodeKind::constant:
    case NodeKind::parameter: return 0;
    case NodeKind::variable: return n.index + 1;
    case NodeKind::unary: return n.lhs.variable_bound();
    case NodeKind::binary: return std::max(n.lhs.variable_bound(), n.rhs.variable_bound());
    }
    return 0;
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
    case NodeKind::constant: return x.value == y.value;
    case NodeKind::variable: return x.index == y.index && x.name == y.name;
    case NodeKind::parameter: return x.name == y.name && x.value == y.value;
    case NodeKind::unary: return x.uop == y.uop && x.lhs == y.lhs;
    case NodeKind::binary: return x.bop == y.bop && x.lhs == y.lhs && x.rhs == y.rhs;
    }
    return false;
}

namespace {

bool is_one(const Expr& e)
{
    return e.node().kind == NodeKind::constant && e.node().value == 1.0;
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Expr::binary(BinaryOp::add, a, b);
}

Expr operator-(const Expr& a, const Expr& b)
{
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return Expr::binary(BinaryOp::sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b)
{
    if (a.is_zero() || b.is_zero()) return Expr::constant(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return Expr::binary(BinaryOp::mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b)
{
    if (a.is_zero()) return Expr::constant(0.0);
    if (is_one(b)) return a;
    return Expr::binary(BinaryOp::div, a, b);
}

Expr operator-(const Expr& a)
{
    if (a.is_zero()) return a;
    return Expr::unary(UnaryOp::neg, a);
}

Expr pow(const Expr& base, double exponent)
{
    if (exponent == 0.0) return Expr::constant(1.0);
    if (exponent == 1.0) return base;
    return Expr::binary(BinaryOp::pow, base, Expr::constant(exponent));
}

Expr apply(UnaryOp op, const Expr& arg)
{
    if (op == UnaryOp::neg) return -arg;
    return Expr::unary(op, arg);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct FunctionName {
    std::string_view name;
    UnaryOp op;
};

constexpr std::array<FunctionName, 7> kFunctions{{
    {"sin", UnaryOp::sin},
    {"cos", UnaryOp::cos},
    {"sinh", UnaryOp::sinh},
    {"cosh", UnaryOp::cosh},
    {"exp", UnaryOp::exp},
    {"log", UnaryOp::log},
    {"sqrt", UnaryOp::sqrt},
}};

std::optional<UnaryOp> lookup_function(std::string_view name)
{
    for (const auto& f : kFunctions) {
        if (f.name == name) return f.op;
    }
    return std::nullopt;
}

std::string_view function_name(UnaryOp op)
{
    for (const auto& f : kFunctions) {
        if (f.op == op) return f.name;
    }
    return "neg";
}

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> coords, const ParameterTable& params)
        : text_(text), coords_(coords), params_(params)
    {
    }

    Expr parse()
    {
        Expr e = expression();
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expression()
    {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(BinaryOp::add, lhs, term());
            } else if (accept('-')) {
                lhs = Expr::binary(BinaryOp::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expr term()
    {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(BinaryOp::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = Expr::binary(BinaryOp::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    Expr unary()
    {
        if (accept('-')) return Expr::unary(UnaryOp::neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (!accept('^')) return base;
        skip_space();
        const std::size_t at = pos_;
        Expr exponent = unary();
        if (!exponent.is_constant()) throw ParseError("non-constant exponent", at);
        const double c = eval_value(exponent, {});
        if (!std::isfinite(c)) throw ParseError("exponent is not finite", at);
        return Expr::binary(BinaryOp::pow, base, Expr::constant(c));
    }

    Expr primary()
    {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = expression();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Expr number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const auto* first = text_.data() + start;
        const auto* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start);
        return Expr::constant(value);
    }

    Expr identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        skip_space();
        const bool call = pos_ < text_.size() && text_[pos_] == '(';
        if (call) {
            if (auto op = lookup_function(name)) {
                ++pos_;
                Expr arg = expression();
                if (!accept(')')) throw ParseError("expected ')'", pos_);
                return Expr::unary(*op, arg);
            }
            throw ParseError("unknown function '" + std::string(name) + "'", start);
        }
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] == name) return Expr::variable(i, std::string(name));
        }
        if (auto it = params_.find(name); it != params_.end()) {
            return Expr::parameter(std::string(name), it->second);
        }
        if (name == "pi") return Expr::parameter("pi", std::numbers::pi);
        if (lookup_function(name)) throw ParseError("expected '(' after '" + std::string(name) + "'", pos_);
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    std::span<const std::string> coords_;
    const ParameterTable& params_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text, std::span<const std::string> coord_names,
                      const ParameterTable& parameters)
{
    return Parser(text, coord_names, parameters).parse();
}

// ---------------------------------------------------------------------------
// Rendering

std::string format_number(double x)
{
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), ptr};
}

namespace {

enum Precedence : int { kAdd = 1, kMul = 2, kNeg = 3, kPow = 4, kAtom = 5 };

int precedence(const Expr& e)
{
    const Node& n = e.node();
    switch (n.kind) {
    case NodeKind::constant: return n.value < 0.0 || std::signbit(n.value) ? kNeg : kAtom;
    case NodeKind::variable:
    case NodeKind::parameter: return kAtom;
    case NodeKind::unary: return n.uop == UnaryOp::neg ? kNeg : kAtom;
    case NodeKind::binary:
        switch (n.bop) {
        case BinaryOp::add:
        case BinaryOp::sub: return kAdd;
        case BinaryOp::mul:
        case BinaryOp::div: return kMul;
        case BinaryOp::pow: return kPow;
        }
    }
    return kAtom;
}

void render_into(const Expr& e, std::string& out);

void render_child(const Expr& e, bool parens, std::string& out)
{
    if (parens) out += '(';
    render_into(e, out);
    if (parens) out += ')';
}

void render_into(const Expr& e, std::string& out)
{
    const Node& n = e.node();
    switch (n.kind) {
    case NodeKind::constant: out += format_number(n.value); return;
    case NodeKind::variable:
    case NodeKind::parameter: out += n.name; return;
    case NodeKind::unary:
        if (n.uop == UnaryOp::neg) {
            out += '-';
            render_child(n.lhs, precedence(n.lhs) < kNeg, out);
        } else {
            out += function_name(n.uop);
            render_child(n.lhs, true, out);
        }
        return;
    case NodeKind::binary: {
        if (n.bop == BinaryOp::pow) {
            render_child(n.lhs, precedence(n.lhs) < kAtom, out);
            out += '^';
            render_child(n.rhs, precedence(n.rhs) < kAtom, out);
            return;
        }
        const int p = precedence(e);
        render_child(n.lhs, precedence(n.lhs) < p, out);
        switch (n.bop) {
        case BinaryOp::add: out += " + "; break;
        case BinaryOp::sub: out += " - "; break;
        case BinaryOp::mul: out += '*'; break;
        case BinaryOp::div: out += '/'; break;
        case BinaryOp::pow: break;
        }
        render_child(n.rhs, precedence(n.rhs) <= p, out);
        return;
    }
    }
}

}  // namespace

std::string render(const Expr& e)
{
    std::string out;
    render_into(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

/// Value and first two derivatives of a scalar function at a point.
struct Taylor {
    double f0, f1, f2;
};

bool is_integer(double c) { return std::floor(c) == c && std::abs(c) < 1e15; }

Taylor pow_taylor(double x, double c, const Expr& where)
{
    if (x == 0.0 && c < 0.0) throw DomainError("division by zero", render(where));
    if (!is_integer(c)) {
        if (x < 0.0) throw DomainError("non-integer power of a negative number", render(where));
        if (x == 0.0 && c < 2.0) throw DomainError("power not twice differentiable at 0", render(where));
    }
    const double f0 = std::pow(x, c);
    const double f1 = c == 0.0 ? 0.0 : c * std::pow(x, c - 1.0);
    const double f2 = (c == 0.0 || c == 1.0) ? 0.0 : c * (c - 1.0) * std::pow(x, c - 2.0);
    return {f0, f1, f2};
}

Taylor unary_taylor(UnaryOp op, double x, const Expr& where)
{
    switch (op) {
    case UnaryOp::neg: return {-x, -1.0, 0.0};
    case UnaryOp::sin: return {std::sin(x), std::cos(x), -std::sin(x)};
    case UnaryOp::cos: return {std::cos(x), -std::sin(x), -std::cos(x)};
    case UnaryOp::sinh: return {std::sinh(x), std::cosh(x), std::sinh(x)};
    case UnaryOp::cosh: return {std::cosh(x), std::sinh(x), std::cosh(x)};
    case UnaryOp::exp: {
        const double e = std::exp(x);
        return {e, e, e};
    }
    case UnaryOp::log:
        if (x <= 0.0) throw DomainError("log of a non-positive number", render(where));
        return {std::log(x), 1.0 / x, -1.0 / (x * x)};
    case UnaryOp::sqrt: {
        if (x < 0.0) throw DomainError("sqrt of a negative number", render(where));
        if (x == 0.0) throw DomainError("sqrt not differentiable at 0", render(where));
        const double s = std::sqrt(x);
        return {s, 0.5 / s, -0.25 / (s * x)};
    }
    }
    return {x, 1.0, 0.0};
}

class JetEvaluator {
public:
    explicit JetEvaluator(std::span<const double> point) : point_(point), n_(point.size()) {}

    Jet2 eval(const Expr& e) const
    {
        const Node& node = e.node();
        switch (node.kind) {
        case NodeKind::constant:
        case NodeKind::parameter: {
            Jet2 j;
            j.value = node.value;
            return j;
        }
        case NodeKind::variable: {
            if (node.index >= n_) throw DomainError("coordinate index out of range", render(e));
            Jet2 j;
            j.value = point_[node.index];
            j.grad[node.index] = 1.0;
            return j;
        }
        case NodeKind::unary: {
            const Jet2 u = eval(node.lhs);
            return compose(u, unary_taylor(node.uop, u.value, e));
        }
        case NodeKind::binary: return binary(node, e);
        }
        return {};
    }

private:
    Jet2 compose(const Jet2& u, const Taylor& t) const
    {
        Jet2 r;
        r.value = t.f0;
        for (std::size_t i = 0; i < n_; ++i) r.grad[i] = t.f1 * u.grad[i];
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                r.hess[i][j] = t.f1 * u.hess[i][j] + t.f2 * (u.grad[i] * u.grad[j]);
            }
        }
        return r;
    }

    Jet2 product(const Jet2& a, const Jet2& b) const
    {
        Jet2 r;
        r.value = a.value * b.value;
        for (std::size_t i = 0; i < n_; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                // the cross pair is summed first so (i,j) and (j,i) round identically
                const double cross = a.grad[i] * b.grad[j] + b.grad[i] * a.grad[j];
                r.hess[i][j] = (a.value * b.hess[i][j] + b.value * a.hess[i][j]) + cross;
            }
        }
        return r;
    }

    Jet2 sum(const Jet2& a, const Jet2& b, double sign) const
    {
        Jet2 r;
        r.value = a.value + sign * b.value;
        for (std::size_t i = 0; i < n_; ++i) r.grad[i] = a.grad[i] + sign * b.grad[i];
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) r.hess[i][j] = a.hess[i][j] + sign * b.hess[i][j];
        }
        return r;
    }

    Jet2 binary(const Node& node, const Expr& e) const
    {
        const Jet2 a = eval(node.lhs);
        switch (node.bop) {
        case BinaryOp::add: return sum(a, eval(node.rhs), 1.0);
        case BinaryOp::sub: return sum(a, eval(node.rhs), -1.0);
        case BinaryOp::mul: return product(a, eval(node.rhs));
        case BinaryOp::div: {
            const Jet2 b = eval(node.rhs);
            if (b.value == 0.0) throw DomainError("division by zero", render(e));
            const double x = b.value;
            return product(a, compose(b, {1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)}));
        }
        case BinaryOp::pow: return compose(a, pow_taylor(a.value, node.rhs.node().value, e));
        }
        return {};
    }

    std::span<const double> point_;
    std::size_t n_;
};

double eval_plain(const Expr& e, std::span<const double> point)
{
    const Node& node = e.node();
    switch (node.kind) {
    case NodeKind::constant:
    case NodeKind::parameter: return node.value;
    case NodeKind::variable:
        if (node.index >= point.size()) throw DomainError("coordinate index out of range", render(e));
        return point[node.index];
    case NodeKind::unary: return unary_taylor(node.uop, eval_plain(node.lhs, point), e).f0;
    case NodeKind::binary: {
        const double a = eval_plain(node.lhs, point);
        switch (node.bop) {
        case BinaryOp::add: return a + eval_plain(node.rhs, point);
        case BinaryOp::sub: return a - eval_plain(node.rhs, point);
        case BinaryOp::mul: return a * eval_plain(node.rhs, point);
        case BinaryOp::div: {
            const double b = eval_plain(node.rhs, point);
            if (b == 0.0) throw DomainError("division by zero", render(e));
            return a / b;
        }
        case BinaryOp::pow: return pow_taylor(a, node.rhs.node().value, e).f0;
        }
    }
    }
    return 0.0;
}

}  // namespace

Jet2 eval_jet2(const Expr& e, std::span<const double> point)
{
    if (point.size() > kMaxDim) throw std::invalid_argument("point dimension exceeds kMaxDim");
    return JetEvaluator(point).eval(e);
}

double eval_value(const Expr& e, std::span<const double> point) { return eval_plain(e, point); }

}  // namespace svk::expr
