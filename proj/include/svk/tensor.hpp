#pragma once

#include "svk/dual.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace svk {

enum class Slot : std::uint8_t { up, down };

/// Point-wise multi-index array over a chart of dimension n. Every slot has
/// extent n; components are stored row major.
template <class T>
class Tensor {
public:
    Tensor() = default;
    Tensor(std::size_t dim, std::vector<Slot> variance)
        : dim_(dim), variance_(std::move(variance)), data_(power(dim, variance_.size()), T{})
    {
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t rank() const { return variance_.size(); }
    [[nodiscard]] const std::vector<Slot>& variance() const { return variance_; }
    [[nodiscard]] std::size_t size() const { return data_.size(); }

    [[nodiscard]] std::span<T> components() { return data_; }
    [[nodiscard]] std::span<const T> components() const { return data_; }

    template <class... I>
    T& operator()(I... idx)
    {
        return data_[flat(idx...)];
    }
    template <class... I>
    const T& operator()(I... idx) const
    {
        return data_[flat(idx...)];
    }

    T& at_flat(std::size_t k) { return data_[k]; }
    [[nodiscard]] const T& at_flat(std::size_t k) const { return data_[k]; }

    /// Multi-index of a flat position.
    [[nodiscard]] std::vector<std::size_t> unflatten(std::size_t k) const
    {
        std::vector<std::size_t> idx(rank());
        for (std::size_t s = rank(); s-- > 0;) {
            idx[s] = k % dim_;
            k /= dim_;
        }
        return idx;
    }

    Tensor& operator+=(const Tensor& o)
    {
        check_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Tensor& operator-=(const Tensor& o)
    {
        check_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Tensor& operator*=(double s)
    {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, double s) { return a *= s; }
    friend Tensor operator*(double s, Tensor a) { return a *= s; }

private:
    static std::size_t power(std::size_t b, std::size_t e)
    {
        std::size_t r = 1;
        while (e--) r *= b;
        return r;
    }

    template <class... I>
    [[nodiscard]] std::size_t flat(I... idx) const
    {
        assert(sizeof...(I) == variance_.size());
        std::size_t k = 0;
        ((k = k * dim_ + static_cast<std::size_t>(idx)), ...);
        return k;
    }

    void check_shape(const Tensor& o) const
    {
        if (o.dim_ != dim_ || o.variance_ != variance_) throw std::invalid_argument("tensor shape mismatch");
    }

    std::size_t dim_ = 0;
    std::vector<Slot> variance_;
    std::vector<T> data_;
};

using TensorValue = Tensor<double>;
/// Tensor whose components carry exact first partial derivatives.
using TensorJet = Tensor<Dual>;

inline std::vector<Slot> slots(std::initializer_list<Slot> s) { return s; }

/// Component values of a jet tensor.
inline TensorValue values(const TensorJet& t)
{
    TensorValue out(t.dim(), t.variance());
    for (std::size_t k = 0; k < t.size(); ++k) out.at_flat(k) = t.at_flat(k).v;
    return out;
}

/// Partial derivatives of a jet tensor: one extra trailing covariant slot.
inline TensorValue partials(const TensorJet& t)
{
    auto var = t.variance();
    var.push_back(Slot::down);
    TensorValue out(t.dim(), var);
    const std::size_t n = t.dim();
    for (std::size_t k = 0; k < t.size(); ++k) {
        for (std::size_t l = 0; l < n; ++l) out.at_flat(k * n + l) = t.at_flat(k).d[l];
    }
    return out;
}

inline double max_abs(const TensorValue& t)
{
    double m = 0.0;
    for (double x : t.components()) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(const TensorValue& a, const TensorValue& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("tensor size mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.at_flat(k) - b.at_flat(k)));
    return m;
}

/// Raise one covariant slot with the inverse metric.
template <class T>
Tensor<T> raise(const Tensor<T>& t, std::size_t slot, const Tensor<T>& g_inv)
{
    if (t.variance().at(slot) != Slot::down) throw std::invalid_argument("raise: slot is not covariant");
    auto var = t.variance();
    var[slot] = Slot::up;
    Tensor<T> out(t.dim(), var);
    const std::size_t n = t.dim();
    for (std::size_t k = 0; k < t.size(); ++k) {
        auto idx = t.unflatten(k);
        const std::size_t a = idx[slot];
        T acc{};
        for (std::size_t b = 0; b < n; ++b) {
            idx[slot] = b;
            std::size_t f = 0;
            for (auto i : idx) f = f * n + i;
            acc += g_inv(a, b) * t.at_flat(f);
        }
        out.at_flat(k) = acc;
    }
    return out;
}

/// Lower one contravariant slot with the metric.
template <class T>
Tensor<T> lower(const Tensor<T>& t, std::size_t slot, const Tensor<T>& g)
{
    if (t.variance().at(slot) != Slot::up) throw std::invalid_argument("lower: slot is not contravariant");
    auto var = t.variance();
    var[slot] = Slot::down;
    Tensor<T> out(t.dim(), var);
    const std::size_t n = t.dim();
    for (std::size_t k = 0; k < t.size(); ++k) {
        auto idx = t.unflatten(k);
        const std::size_t a = idx[slot];
        T acc{};
        for (std::size_t b = 0; b < n; ++b) {
            idx[slot] = b;
            std::size_t f = 0;
            for (auto i : idx) f = f * n + i;
            acc += g(a, b) * t.at_flat(f);
        }
        out.at_flat(k) = acc;
    }
    return out;
}

}  // namespace svk
