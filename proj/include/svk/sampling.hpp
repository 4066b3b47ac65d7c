#pragma once

#include "svk/manifold_spec.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace svk {

/// Seeded stream used for every random draw in the engine: mt19937_64, with
/// each 64-bit output mapped to [0, 1) as (x >> 11) * 2^-53. Both steps are
/// fully specified, so samples are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::vector<double> vector(std::size_t n, double lo = -1.0, double hi = 1.0)
    {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 engine_;
};

using Point = std::vector<double>;

struct Sample {
    std::vector<Point> points;
};

/// Box used when neither the spec nor the caller supplies one.
SampleBox default_box(std::size_t dim);

/// `count` points uniform in `box`, in draw order.
Sample sample_points(const SampleBox& box, std::size_t count, std::uint64_t seed);

}  // namespace svk
