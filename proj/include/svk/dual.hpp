#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace svk {

/// Largest chart dimension the engine supports. Derivative arrays are fixed
/// size so jets stay allocation free.
inline constexpr std::size_t kMaxDim = 9;

using Gradient = std::array<double, kMaxDim>;

/// First-order forward-mode number: a value together with its partial
/// derivatives with respect to the chart coordinates.
struct Dual {
    double v = 0.0;
    Gradient d{};

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
    Dual(double value, const Gradient& grad) : v(value), d(grad) {}

    Dual& operator+=(const Dual& o)
    {
        v += o.v;
        for (std::size_t i = 0; i < kMaxDim; ++i) d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o)
    {
        v -= o.v;
        for (std::size_t i = 0; i < kMaxDim; ++i) d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o)
    {
        for (std::size_t i = 0; i < kMaxDim; ++i) d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator*=(double s)
    {
        v *= s;
        for (auto& x : d) x *= s;
        return *this;
    }
};

inline Dual operator-(Dual a)
{
    a *= -1.0;
    return a;
}
inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator*(Dual a, double s) { return a *= s; }
inline Dual operator*(double s, Dual a) { return a *= s; }
inline Dual operator/(Dual a, const Dual& b)
{
    const double inv = 1.0 / b.v;
    Dual r(a.v * inv);
    for (std::size_t i = 0; i < kMaxDim; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
    return r;
}

/// Uniform access to the value of a double or a Dual in templated kernels.
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

}  // namespace svk
