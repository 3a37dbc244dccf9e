#ifndef EMDD_MONGE_HPP
#define EMDD_MONGE_HPP

#include <optional>
#include <utility>

#include "emdd/types.hpp"

namespace emdd {

struct MongeResult {
    bool monge = true;
    // A pair (x, y) violating A(min(x,y)) + A(max(x,y)) <= A(x) + A(y),
    // present iff monge is false.  Ordered so that x < y lexicographically.
    std::optional<std::pair<MultiIndex, MultiIndex>> counterexample;
};

// Checks the componentwise min/max exchange inequality over every pair of
// positions.  Quadratic in the array size; the reference oracle.
MongeResult monge_check_full(const CostArray& a);

// Checks only adjacent 2x2 subarrays in every axis-pair plane.  Equivalent
// to the full check and the canonical implementation.
MongeResult monge_check_planes(const CostArray& a);

}  // namespace emdd

#endif
