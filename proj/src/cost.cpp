#include "emdd/cost.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "emdd/errors.hpp"

namespace emdd {

Composition::Composition(std::vector<std::int64_t> bins) : bins_(std::move(bins)) {
    if (bins_.empty()) throw std::invalid_argument("composition needs at least one bin");
    for (auto b : bins_) {
        if (b < 0) throw std::invalid_argument("composition bins must be nonnegative");
    }
    mass_ = std::accumulate(bins_.begin(), bins_.end(), std::int64_t{0});
}

BinShape::BinShape(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw std::invalid_argument("shape needs at least one axis");
    for (auto n : sizes_) {
        if (n < 1) throw std::invalid_argument("shape sizes must be positive");
    }
}

BinShape BinShape::cube(int d, int n) {
    if (d < 1) throw std::invalid_argument("cube shape needs d >= 1");
    return BinShape(std::vector<int>(static_cast<std::size_t>(d), n));
}

long long BinShape::total() const {
    return std::accumulate(sizes_.begin(), sizes_.end(), 0LL);
}

std::optional<std::int64_t> BinShape::entry_count(std::int64_t cap) const {
    std::int64_t prod = 1;
    for (auto n : sizes_) {
        if (prod > cap / n) return std::nullopt;
        prod *= n;
    }
    return prod;
}

MultiIndex::MultiIndex(std::vector<int> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw std::invalid_argument("multi-index needs at least one axis");
    for (auto c : coords_) {
        if (c < 1) throw std::invalid_argument("multi-index coordinates are 1-based positives");
    }
}

bool MultiIndex::in_shape(const BinShape& shape) const {
    if (d() != shape.d()) return false;
    for (int i = 1; i <= d(); ++i) {
        if (coord(i) > shape.size(i)) return false;
    }
    return true;
}

CostArray::CostArray(BinShape shape, std::vector<std::int64_t> entries)
    : shape_(std::move(shape)), entries_(std::move(entries)) {
    auto expect = shape_.entry_count(static_cast<std::int64_t>(entries_.size()) + 1);
    if (!expect || *expect != static_cast<std::int64_t>(entries_.size()))
        throw std::invalid_argument("entry count does not match the shape");
}

std::size_t CostArray::flat_index(const MultiIndex& m) const {
    if (!m.in_shape(shape_)) throw std::invalid_argument("position outside the array");
    std::size_t flat = 0;
    for (int i = 1; i <= shape_.d(); ++i) {
        flat = flat * static_cast<std::size_t>(shape_.size(i)) +
               static_cast<std::size_t>(m.coord(i) - 1);
    }
    return flat;
}

MultiIndex CostArray::unflatten(std::int64_t flat) const {
    std::vector<int> coords(static_cast<std::size_t>(shape_.d()));
    for (int i = shape_.d(); i >= 1; --i) {
        int n = shape_.size(i);
        coords[static_cast<std::size_t>(i - 1)] = static_cast<int>(flat % n) + 1;
        flat /= n;
    }
    return MultiIndex(std::move(coords));
}

MultiIndex sort_coords(const MultiIndex& m) {
    std::vector<int> c = m.coords();
    std::sort(c.begin(), c.end());
    return MultiIndex(std::move(c));
}

std::int64_t cost_min_form(const MultiIndex& m) {
    const auto& c = m.coords();
    std::int64_t best = -1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            sum += std::abs(static_cast<std::int64_t>(c[i]) - c[j]);
        }
        if (best < 0 || sum < best) best = sum;
    }
    return best;
}

std::int64_t cost_sorted_form(const MultiIndex& m) {
    std::vector<int> c = m.coords();
    std::sort(c.begin(), c.end());
    const std::size_t d = c.size();
    std::int64_t total = 0;
    for (std::size_t i = 0; i < d / 2; ++i) {
        total += c[d - 1 - i] - c[i];
    }
    return total;
}

std::int64_t cost_range(const MultiIndex& m) {
    auto [lo, hi] = std::minmax_element(m.coords().begin(), m.coords().end());
    return *hi - *lo;
}

int cost_increment_case(const MultiIndex& m, int axis) {
    const int d = m.d();
    if (axis < 1 || axis > d) throw std::invalid_argument("axis out of range");
    if (d == 1) return 0;

    std::vector<int> sorted = m.coords();
    std::sort(sorted.begin(), sorted.end());
    // M is the first index past the "median": floor((d+1)/2) + 1, 1-based.
    const int big = (d + 1) / 2 + 1;
    const int mi = m.coord(axis);

    if (mi >= sorted[static_cast<std::size_t>(big - 1)]) return +1;
    if (d % 2 == 0) return -1;  // even d: mi below the upper half
    if (mi < sorted[static_cast<std::size_t>(big - 2)]) return -1;
    return 0;  // odd d: mi sits at the free median slot
}

CostArray build_cost_array(const BinShape& shape, std::int64_t max_entries) {
    auto count = shape.entry_count(max_entries);
    if (!count)
        throw CapacityError("dense cost array for this shape exceeds " +
                            std::to_string(max_entries) + " entries");
    std::vector<std::int64_t> entries;
    entries.reserve(static_cast<std::size_t>(*count));
    std::vector<int> coords(static_cast<std::size_t>(shape.d()), 1);
    for (std::int64_t flat = 0; flat < *count; ++flat) {
        entries.push_back(cost_sorted_form(MultiIndex(coords)));
        for (int i = shape.d(); i >= 1; --i) {
            auto& c = coords[static_cast<std::size_t>(i - 1)];
            if (c < shape.size(i)) {
                ++c;
                break;
            }
            c = 1;
        }
    }
    return CostArray(shape, std::move(entries));
}

std::int64_t max_cost_in_box(const BinShape& shape) {
    std::vector<int> sizes = shape.sizes();
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < sizes.size() / 2; ++i) {
        total += sizes[i] - 1;
    }
    return total;
}

}  // namespace emdd
