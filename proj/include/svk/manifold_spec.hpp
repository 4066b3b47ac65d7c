#pragma once

#include "svk/classes.hpp"
#include "svk/expr.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svk {

enum class Sign : int { minus = -1, plus = 1 };

constexpr double to_double(Sign s) { return static_cast<double>(static_cast<int>(s)); }

/// Metric signature as (number of negative, number of positive) directions.
struct Signature {
    std::size_t negative = 0;
    std::size_t positive = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct Interval {
    double lo = -1.0;
    double hi = 1.0;
};

using SampleBox = std::vector<Interval>;

/// Declared facts about a fixture, used by catalog checks and reports.
struct Expectations {
    std::optional<std::vector<StructureClass>> classes;
    std::optional<expr::Expr> alpha;
    std::optional<expr::Expr> beta;
    std::optional<expr::Expr> scalar;      // r of the Levi-Civita connection
    std::optional<expr::Expr> scalar_svk;  // r of the adapted connection
};

/// A coordinate chart with metric and an almost (para)contact structure, all
/// given as expressions in the chart coordinates.
struct ManifoldSpec {
    std::size_t dimension = 0;
    std::vector<std::string> coordinates;
    expr::ParameterTable parameters;
    std::optional<Signature> signature;
    std::optional<SampleBox> box;

    std::vector<expr::Expr> metric;  // n*n, symmetric, row major
    std::vector<expr::Expr> phi;     // n*n, phi(i, j) = component i of phi(d_j)
    std::vector<expr::Expr> xi;      // n
    std::vector<expr::Expr> eta;     // n
    Sign epsilon = Sign::plus;
    Sign mu = Sign::minus;

    Expectations expected;

    [[nodiscard]] const expr::Expr& g(std::size_t i, std::size_t j) const { return metric[i * dimension + j]; }
    [[nodiscard]] const expr::Expr& phi_at(std::size_t i, std::size_t j) const { return phi[i * dimension + j]; }
};

/// Malformed manifold spec document. `line` is 1-based, 0 when not tied to a line.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

ManifoldSpec parse_manifold_spec(std::string_view document);

/// Document text that parses back to an equivalent spec.
std::string render_manifold_spec(const ManifoldSpec& spec);

/// Parses "lo:hi, lo:hi, ..." (one interval per coordinate).
SampleBox parse_box(std::string_view text);

}  // namespace svk
