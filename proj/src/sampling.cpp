#include "svk/sampling.hpp"

#include <stdexcept>

namespace svk {

SampleBox default_box(std::size_t dim) { return SampleBox(dim, Interval{-1.0, 1.0}); }

Sample sample_points(const SampleBox& box, std::size_t count, std::uint64_t seed)
{
    if (count == 0) throw std::invalid_argument("sample needs at least one point");
    Rng rng(seed);
    Sample s;
    s.points.reserve(count);
    for (std::size_t p = 0; p < count; ++p) {
        Point x(box.size());
        for (std::size_t i = 0; i < box.size(); ++i) x[i] = rng.uniform(box[i].lo, box[i].hi);
        s.points.push_back(std::move(x));
    }
    return s;
}

}  // namespace svk
