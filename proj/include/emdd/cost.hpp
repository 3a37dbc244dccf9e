#ifndef EMDD_COST_HPP
#define EMDD_COST_HPP

#include <cstdint>

#include "emdd/types.hpp"

namespace emdd {

inline constexpr std::int64_t kDefaultDenseCap = 10'000'000;

// Coordinates of m rearranged in nondecreasing order.
MultiIndex sort_coords(const MultiIndex& m);

// min over i of sum_{j != i} |m_i - m_j|; the taxicab distance from m to the
// main diagonal.  Quadratic in d; kept as the independent route against
// cost_sorted_form.
std::int64_t cost_min_form(const MultiIndex& m);

// Sum of the outside-in pairwise gaps of the sorted coordinates.  Equals
// cost_min_form everywhere and is the canonical O(d log d) implementation.
std::int64_t cost_sorted_form(const MultiIndex& m);

// Canonical cost function.
inline std::int64_t cost(const MultiIndex& m) { return cost_sorted_form(m); }

// max{m_i} - min{m_i}.  Agrees with cost() for d <= 3 only; provided for
// comparison, never used in EMD computation.
std::int64_t cost_range(const MultiIndex& m);

// Effect of adding 1 to coordinate `axis` (1-based) on cost(m): +1, -1 or 0,
// classified from the rank of m_axis among the sorted coordinates and the
// parity of d.
int cost_increment_case(const MultiIndex& m, int axis);

// Dense table of cost() over the whole box.  Throws CapacityError when the
// entry count exceeds max_entries.
CostArray build_cost_array(const BinShape& shape, std::int64_t max_entries = kDefaultDenseCap);

// Largest cost() value attained on the box [n_1] x ... x [n_d].
std::int64_t max_cost_in_box(const BinShape& shape);

}  // namespace emdd

#endif
