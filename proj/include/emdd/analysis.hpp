#ifndef EMDD_ANALYSIS_HPP
#define EMDD_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "emdd/genfunc.hpp"
#include "emdd/rational.hpp"
#include "emdd/transport.hpp"
#include "emdd/types.hpp"

namespace emdd {

// |C(s, n)| = binom(s+n-1, n-1).
Int composition_count(std::int64_t s, int n);

// All compositions of s into n parts, in decreasing lexicographic order:
// (s,0,...,0) first, (0,...,0,s) last.
std::vector<Composition> enumerate_compositions(std::int64_t s, int n);

// In-place successor in the same order; false once the last composition has
// been passed.
bool next_composition(std::vector<std::int64_t>& bins);

inline constexpr std::int64_t kDefaultEnumBudget = 1'000'000;

// Visits every tuple in C(s,n_1) x ... x C(s,n_d), axis d fastest.  Throws
// CapacityError when the product count exceeds the budget.
void for_each_tuple(const BinShape& shape, std::int64_t s,
                    const std::function<void(const std::vector<Composition>&)>& fn,
                    std::int64_t budget = kDefaultEnumBudget);

struct EmdHistogram {
    int d = 0;
    int n = 0;
    std::int64_t s = 0;
    // counts[r] = number of tuples with EMD value r.
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
    std::int64_t weighted_sum() const;  // sum of r * counts[r]
    Rational mean() const;
    std::int64_t max_value() const;  // largest r with a nonzero count
};

// Histogram of EMD values over the full d-fold product of C(s,n), by
// exhaustive enumeration.
EmdHistogram emd_histogram(int d, int n, std::int64_t s,
                           std::int64_t budget = kDefaultEnumBudget);

// Same histogram read off the bivariate series instead of enumeration.
EmdHistogram emd_histogram_genfunc(int d, int n, std::int64_t s,
                                   std::int64_t budget = kDefaultSeriesBudget);

struct SkewnessResult {
    double value = 0.0;
    bool degenerate = false;  // variance was zero
};

// Population skewness (biased third standardized moment) of the EMD-value
// distribution; the histogram is the whole population, not a sample.
SkewnessResult skewness(const EmdHistogram& h);

// Named raw histograms over a common list of category labels; masses may
// differ between sections.
struct GradeTable {
    std::vector<std::string> labels;
    std::vector<std::string> section_names;
    std::vector<Composition> sections;

    int n() const { return static_cast<int>(labels.size()); }
    int d() const { return static_cast<int>(sections.size()); }
};

// CSV with header "label,<cat-1>,...,<cat-n>" and one "name,c1,...,cn" line
// per section.  Throws DataError on malformed input.
GradeTable parse_grade_csv(std::istream& in);
GradeTable load_grade_csv(const std::string& path);

// Scales every section to the maximum section mass, rounding by largest
// remainder (ties to the lower bin index) so each section sums exactly to
// the target.
DistTuple rescale_common_mass(const std::vector<Composition>& sections);
DistTuple rescale_common_mass(const GradeTable& g);

struct EmdReport {
    int d = 0;
    int n = 0;
    std::int64_t common_mass = 0;
    std::vector<std::string> section_names;
    std::vector<Composition> rescaled;
    std::int64_t discrete = 0;
    Rational continuous;
    Rational normalized;
    Rational expected_normalized;
    Rational ratio_to_expected;
    bool degenerate = false;  // d < 2 or n < 2: normalization is undefined
    std::string warning;
};

EmdReport grade_report(const GradeTable& g);

}  // namespace emdd

#endif
