#ifndef EMDD_TRANSPORT_HPP
#define EMDD_TRANSPORT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "emdd/rational.hpp"
#include "emdd/types.hpp"

namespace emdd {

// A d-tuple of histograms sharing one total mass s.  The members may have
// different bin counts n_i.
class DistTuple {
  public:
    explicit DistTuple(std::vector<Composition> members);

    int d() const { return static_cast<int>(members_.size()); }
    std::int64_t mass() const { return mass_; }
    // Member i, i in [1, d].
    const Composition& member(int i) const { return members_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<Composition>& members() const { return members_; }
    BinShape shape() const;

  private:
    std::vector<Composition> members_;
    std::int64_t mass_ = 0;
};

// The nondecreasing length-s sequence listing bin k with multiplicity mu(k).
std::vector<int> rsk_word(const Composition& mu);

// The d x s stack of the members' words.
class WordMatrix {
  public:
    explicit WordMatrix(std::vector<std::vector<int>> rows);

    int d() const { return static_cast<int>(rows_.size()); }
    std::int64_t s() const { return s_; }
    const std::vector<int>& row(int i) const { return rows_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    // Column j, j in [1, s].
    MultiIndex column(std::int64_t j) const;

  private:
    std::vector<std::vector<int>> rows_;
    std::int64_t s_ = 0;
};

WordMatrix word_matrix(const DistTuple& t);

// A sparse transport plan: distinct positions with positive integer weights.
class JointArray {
  public:
    using Entry = std::pair<MultiIndex, std::int64_t>;

    JointArray(BinShape shape, std::vector<Entry> support);

    const BinShape& shape() const { return shape_; }
    const std::vector<Entry>& support() const { return support_; }
    std::int64_t total_weight() const;
    // Sums of weights in the coordinate hyperplanes of one axis (1-based),
    // indexed by bin - 1.
    std::vector<std::int64_t> marginal(int axis) const;
    bool satisfies_marginals(const DistTuple& t) const;
    // True iff the support is totally ordered under the product order.
    bool is_chain() const;

  private:
    BinShape shape_;
    std::vector<Entry> support_;
};

// The plan whose weight at m counts the columns of word_matrix(t) equal
// to m.  Its support is a chain and it attains the optimum.
JointArray rsk_joint(const DistTuple& t);

std::int64_t total_cost(const JointArray& j);

// Optimal total cost, streamed over the word-matrix columns without
// materializing them.
std::int64_t discrete_emd(const DistTuple& t);

// Northwest-corner greedy plan: repeatedly saturate the componentwise
// smallest active cell and advance the exhausted axes.
JointArray greedy_joint(const DistTuple& t);

inline constexpr std::int64_t kDefaultSearchBudget = 2'000'000;

// Exact minimum over ALL integer plans with the prescribed marginals, not
// only chain-supported ones.  Enumerates column arrangements of the words;
// throws CapacityError when the arrangement count exceeds the budget.
std::int64_t brute_force_emd(const DistTuple& t, std::int64_t budget = kDefaultSearchBudget);

// EMD2(mu1,mu2) + EMD2(mu1,mu3) + EMD2(mu2,mu3); requires d == 3.  Twice
// the three-distribution EMD.
std::int64_t pairwise_emd_sum(const DistTuple& t);

// Largest possible EMD per unit mass on n bins: floor(d/2) * (n - 1).
std::int64_t max_emd(int d, int n);

// discrete_emd(t) / s, exactly.
Rational continuous_emd(const DistTuple& t);

// continuous_emd(t) / max_emd(d, n), in [0, 1].  Requires a common bin
// count; returns 0 for the degenerate n == 1 case.
Rational unit_normalized_emd(const DistTuple& t);

}  // namespace emdd

#endif
