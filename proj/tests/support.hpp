#pragma once

#include "svk/catalog.hpp"
#include "svk/expr.hpp"
#include "svk/classify.hpp"
#include "svk/geometry.hpp"
#include "svk/manifold_spec.hpp"
#include "svk/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svk::test {

inline catalog::CatalogEntry entry(std::string_view name) { return catalog::load_builtin(name); }

inline Sample entry_sample(const catalog::CatalogEntry& e, std::size_t count, std::uint64_t seed)
{
    return sample_points(e.sample_box, count, seed);
}

struct Fixture {
    std::string name;
    ManifoldSpec spec;
    SampleBox box;
};

/// The catalog plus `random3` seeded random structures on 3-charts, cycling
/// through the four (ε, μ) sign pairs.
inline std::vector<Fixture> property_fixtures(std::size_t random3, std::uint64_t seed = 77)
{
    std::vector<Fixture> out;
    for (auto& e : catalog::load_all()) out.push_back({e.name, e.spec, e.sample_box});
    Rng rng(seed);
    const std::array<Sign, 2> signs{Sign::plus, Sign::minus};
    for (std::size_t k = 0; k < random3; ++k) {
        const Sign eps = signs[k % 2];
        const Sign mu = signs[(k / 2) % 2];
        out.push_back({"random3-" + std::to_string(k), classify::random_dim3_structure(rng, eps, mu), default_box(3)});
    }
    return out;
}

/// Message of the exception `f` throws, or "" when it does not throw.
inline std::string thrown_message(const std::function<void()>& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

inline bool contains(std::string_view haystack, std::string_view needle)
{
    return haystack.find(needle) != std::string_view::npos;
}

inline std::vector<double> shifted(std::span<const double> p, std::size_t k, double h)
{
    std::vector<double> q(p.begin(), p.end());
    q[k] += h;
    return q;
}

/// Christoffel symbols from central differences of the metric values only.
inline TensorValue fd_christoffel(const ManifoldSpec& spec, std::span<const double> p, double h = 1e-5)
{
    const std::size_t n = spec.dimension;
    TensorValue dg(n, slots({Slot::down, Slot::down, Slot::down}));  // dg(i, j, l) = ∂_l g_ij
    for (std::size_t l = 0; l < n; ++l) {
        const auto plus = geometry::metric_frame(spec, shifted(p, l, h)).metric;
        const auto minus = geometry::metric_frame(spec, shifted(p, l, -h)).metric;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) dg(i, j, l) = (plus(i, j) - minus(i, j)) / (2 * h);
        }
    }
    const auto gi = geometry::metric_frame(spec, p).inverse_metric;
    TensorValue gamma(n, slots({Slot::up, Slot::down, Slot::down}));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += gi(k, l) * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
                gamma(k, i, j) = 0.5 * acc;
            }
        }
    }
    return gamma;
}

/// R from Γ and central differences of Γ (coarse oracle for the curvature assembly).
inline TensorValue fd_riemann(const ManifoldSpec& spec, std::span<const double> p, double h = 1e-4)
{
    const std::size_t n = spec.dimension;
    const auto gamma = geometry::christoffel(spec, p).gamma;
    std::vector<TensorValue> dgamma;
    for (std::size_t l = 0; l < n; ++l) {
        const auto plus = geometry::christoffel(spec, shifted(p, l, h)).gamma;
        const auto minus = geometry::christoffel(spec, shifted(p, l, -h)).gamma;
        dgamma.push_back((plus - minus) * (1.0 / (2 * h)));
    }
    TensorValue op(n, slots({Slot::up, Slot::down, Slot::down, Slot::down}));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    double acc = dgamma[i](l, j, k) - dgamma[j](l, i, k);
                    for (std::size_t m = 0; m < n; ++m) {
                        acc += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
                    }
                    op(l, i, j, k) = acc;
                }
            }
        }
    }
    return op;
}

inline const std::vector<std::string> kGeneratedCoordinates{"t", "x", "y"};

inline std::string number_text(Rng& rng)
{
    switch (static_cast<int>(rng.uniform() * 4)) {
    case 0: return std::to_string(static_cast<int>(rng.uniform() * 10));
    case 1: return expr::format_number(std::round(rng.uniform(0.0, 100.0)) / 8.0);
    case 2: return "1e-3";
    default: return "2.5";
    }
}

inline std::string space(Rng& rng) { return rng.uniform() < 0.3 ? " " : ""; }

/// Random grammar-valid expression over t, x, y.
inline std::string random_text(Rng& rng, int depth)
{
    static const std::array<const char*, 7> funcs{"sin", "cos", "sinh", "cosh", "exp", "log", "sqrt"};
    static const std::array<const char*, 4> ops{"+", "-", "*", "/"};
    const double u = rng.uniform();
    if (depth == 0 || u < 0.2) {
        const double v = rng.uniform();
        if (v < 0.4) return number_text(rng);
        if (v < 0.9) return kGeneratedCoordinates[static_cast<std::size_t>(rng.uniform() * 3)];
        return "pi";
    }
    if (u < 0.55) {
        const char* op = ops[static_cast<std::size_t>(rng.uniform() * ops.size())];
        return random_text(rng, depth - 1) + space(rng) + op + space(rng) + random_text(rng, depth - 1);
    }
    if (u < 0.7) return std::string(funcs[static_cast<std::size_t>(rng.uniform() * funcs.size())]) + "(" +
                        random_text(rng, depth - 1) + ")";
    if (u < 0.8) return "-" + random_text(rng, depth - 1);
    if (u < 0.9) return "(" + random_text(rng, depth - 1) + ")^" + (rng.uniform() < 0.5 ? "2" : "-3");
    return "(" + random_text(rng, depth - 1) + ")";
}

}  // namespace svk::test
