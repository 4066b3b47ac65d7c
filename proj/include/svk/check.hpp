#pragma once

#include "svk/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace svk {

/// Residual of lhs = rhs, relative to the participating magnitude once it exceeds 1.
inline double relative_residual(double abs_residual, double magnitude)
{
    return abs_residual / std::max(1.0, magnitude);
}

inline double residual(const TensorValue& lhs, const TensorValue& rhs)
{
    return relative_residual(max_abs_diff(lhs, rhs), std::max(max_abs(lhs), max_abs(rhs)));
}

inline double residual(double lhs, double rhs)
{
    return relative_residual(std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs)));
}

/// Max-reduced residual of one identity over a sample.
struct Check {
    std::string id;
    std::string anchor;
    double threshold = 0.0;
    double max_residual = 0.0;
    std::optional<std::size_t> worst_point;
    std::optional<std::string> error;
    std::string note;
    /// Reported but never fails (diagnostic values).
    bool informational = false;

    Check() = default;
    Check(std::string id_, std::string anchor_, double threshold_)
        : id(std::move(id_)), anchor(std::move(anchor_)), threshold(threshold_)
    {
    }

    void record(double r, std::size_t point)
    {
        if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
        if (!worst_point || r > max_residual) {
            max_residual = r;
            worst_point = point;
        }
    }

    void fail(std::string message, std::size_t point)
    {
        if (!error) {
            error = std::move(message);
            worst_point = point;
            max_residual = std::numeric_limits<double>::infinity();
        }
    }

    /// Folds another partial reduction of the same check into this one.
    void merge(const Check& o)
    {
        if (o.error && !error) {
            error = o.error;
            worst_point = o.worst_point;
            max_residual = o.max_residual;
            return;
        }
        if (error) return;
        if (o.worst_point && (!worst_point || o.max_residual > max_residual ||
                              (o.max_residual == max_residual && *o.worst_point < *worst_point))) {
            max_residual = o.max_residual;
            worst_point = o.worst_point;
        }
    }

    [[nodiscard]] bool passed() const { return !error && (informational || max_residual < threshold); }
};

using CheckList = std::vector<Check>;

inline bool all_passed(const CheckList& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

inline const Check* find_check(const CheckList& checks, std::string_view id)
{
    for (const auto& c : checks) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

}  // namespace svk
