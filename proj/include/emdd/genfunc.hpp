#ifndef EMDD_GENFUNC_HPP
#define EMDD_GENFUNC_HPP

#include <map>
#include <mutex>
#include <vector>

#include "emdd/poly.hpp"
#include "emdd/rational.hpp"
#include "emdd/types.hpp"

namespace emdd {

// Number of permutations of the multiset {1^(n_1-1), ..., d^(n_d-1)} with
// exactly i descents, by the alternating binomial sum.
Int newcomb_coefficient(const BinShape& shape, long long i);

// Numerator polynomial W of the counting series: sum over s of
// prod binom(s+n_i-1, n_i-1) t^s times (1-t)^(|n|-d+1).
RationalPoly w_poly(const BinShape& shape);

// W evaluated at 1: (|n|-d)! / prod (n_i-1)!.
Int w_at_one(const BinShape& shape);

// Number of tuples of mass s: prod binom(s+n_i-1, n_i-1).
Int h_coeff(const BinShape& shape, long long s);

// Numerator polynomial N of the EMD-sum series, by the subset recursion
// N_n = sum_A (t-1)^(|A|-1) N_(n-e(A)) + t C(n) W_n.  Memoized over the
// sublattice below the shape.
RationalPoly n_poly(const BinShape& shape);

// Sum of the EMD over all tuples of mass s: [t^s] N(t)/(1-t)^(|n|-d+2).
Int hprime_coeff(const BinShape& shape, long long s);

// Mean EMD over tuples of mass s, exactly.
Rational discrete_expected(const BinShape& shape, long long s);

// Memo table for the mean of the continuous EMD over random distribution
// tuples.  Entries are written once; concurrent lookups may duplicate work
// but always produce identical values.
class ExpectedValueCache {
  public:
    // Shape entries may be zero here (the recursion walks below the unit
    // shape); any zero coordinate yields 0.
    Rational value(std::vector<int> shape);

  private:
    std::map<std::vector<int>, Rational> memo_;
    std::mutex mu_;
};

// Mean of the continuous EMD on random d-tuples of distributions, by the
// lattice recursion  E_n = [ sum_i (n_i-1) E_(n-e(i)) + C(n) ] / (|n|-d+1).
Rational continuous_expected(const BinShape& shape);

// continuous_expected((n^d)) / (floor(d/2) * (n-1)); requires d, n >= 2.
Rational unit_normalized_expected(int d, int n);

inline constexpr std::int64_t kDefaultSeriesBudget = 10'000'000;

// The bivariate series H(z,t) truncated at t-order s_max: [z^r t^s] counts
// mass-s tuples whose EMD is r.  Computed by the subset recursion with the
// denominator 1 - z^C(n) t unrolled slice by slice.
BivariateSeries h_bivariate(const BinShape& shape, long long s_max,
                            std::int64_t budget = kDefaultSeriesBudget);

}  // namespace emdd

#endif
