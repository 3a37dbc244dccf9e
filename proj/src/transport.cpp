#include "emdd/transport.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "emdd/cost.hpp"
#include "emdd/errors.hpp"

namespace emdd {

DistTuple::DistTuple(std::vector<Composition> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("tuple needs at least one distribution");
    mass_ = members_.front().mass();
    for (const auto& m : members_) {
        if (m.mass() != mass_)
            throw MassMismatchError("distributions disagree on total mass: " +
                                    std::to_string(m.mass()) + " vs " + std::to_string(mass_));
    }
}

BinShape DistTuple::shape() const {
    std::vector<int> sizes;
    sizes.reserve(members_.size());
    for (const auto& m : members_) sizes.push_back(m.n());
    return BinShape(std::move(sizes));
}

std::vector<int> rsk_word(const Composition& mu) {
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(mu.mass()));
    for (int k = 1; k <= mu.n(); ++k) {
        word.insert(word.end(), static_cast<std::size_t>(mu.count(k)), k);
    }
    return word;
}

WordMatrix::WordMatrix(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("word matrix needs at least one row");
    s_ = static_cast<std::int64_t>(rows_.front().size());
    for (const auto& r : rows_) {
        if (static_cast<std::int64_t>(r.size()) != s_)
            throw MassMismatchError("word rows have unequal lengths");
    }
}

MultiIndex WordMatrix::column(std::int64_t j) const {
    std::vector<int> coords;
    coords.reserve(rows_.size());
    for (const auto& r : rows_) coords.push_back(r[static_cast<std::size_t>(j - 1)]);
    return MultiIndex(std::move(coords));
}

WordMatrix word_matrix(const DistTuple& t) {
    std::vector<std::vector<int>> rows;
    rows.reserve(static_cast<std::size_t>(t.d()));
    for (const auto& m : t.members()) rows.push_back(rsk_word(m));
    return WordMatrix(std::move(rows));
}

JointArray::JointArray(BinShape shape, std::vector<Entry> support)
    : shape_(std::move(shape)), support_(std::move(support)) {
    for (const auto& [m, w] : support_) {
        if (w <= 0) throw std::invalid_argument("plan weights must be positive");
        if (!m.in_shape(shape_)) throw std::invalid_argument("plan position outside the shape");
    }
    for (std::size_t i = 0; i + 1 < support_.size(); ++i) {
        for (std::size_t j = i + 1; j < support_.size(); ++j) {
            if (support_[i].first == support_[j].first)
                throw std::invalid_argument("plan positions must be distinct");
        }
    }
}

std::int64_t JointArray::total_weight() const {
    std::int64_t total = 0;
    for (const auto& [m, w] : support_) total += w;
    return total;
}

std::vector<std::int64_t> JointArray::marginal(int axis) const {
    std::vector<std::int64_t> sums(static_cast<std::size_t>(shape_.size(axis)), 0);
    for (const auto& [m, w] : support_) sums[static_cast<std::size_t>(m.coord(axis) - 1)] += w;
    return sums;
}

bool JointArray::satisfies_marginals(const DistTuple& t) const {
    if (t.shape() != shape_) return false;
    for (int i = 1; i <= t.d(); ++i) {
        if (marginal(i) != t.member(i).bins()) return false;
    }
    return true;
}

bool JointArray::is_chain() const {
    auto leq = [](const MultiIndex& a, const MultiIndex& b) {
        for (int i = 1; i <= a.d(); ++i) {
            if (a.coord(i) > b.coord(i)) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < support_.size(); ++i) {
        for (std::size_t j = i + 1; j < support_.size(); ++j) {
            const auto& a = support_[i].first;
            const auto& b = support_[j].first;
            if (!leq(a, b) && !leq(b, a)) return false;
        }
    }
    return true;
}

namespace {

// Walks the word-matrix columns without materializing them: one cursor per
// row, grouping the runs of equal columns.  Calls fn(position, run length).
template <typename Fn>
void stream_rsk_columns(const DistTuple& t, Fn&& fn) {
    const int d = t.d();
    std::vector<int> bin(static_cast<std::size_t>(d), 1);
    std::vector<std::int64_t> left(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) left[static_cast<std::size_t>(i)] = t.member(i + 1).count(1);

    std::int64_t remaining = t.mass();
    while (remaining > 0) {
        std::int64_t run = remaining;
        for (int i = 0; i < d; ++i) {
            auto& b = bin[static_cast<std::size_t>(i)];
            auto& l = left[static_cast<std::size_t>(i)];
            while (l == 0) {
                ++b;
                l = t.member(i + 1).count(b);
            }
            run = std::min(run, l);
        }
        fn(bin, run);
        for (int i = 0; i < d; ++i) left[static_cast<std::size_t>(i)] -= run;
        remaining -= run;
    }
}

}  // namespace

JointArray rsk_joint(const DistTuple& t) {
    std::vector<JointArray::Entry> support;
    stream_rsk_columns(t, [&](const std::vector<int>& bin, std::int64_t run) {
        support.emplace_back(MultiIndex(bin), run);
    });
    return JointArray(t.shape(), std::move(support));
}

std::int64_t total_cost(const JointArray& j) {
    std::int64_t total = 0;
    for (const auto& [m, w] : j.support()) total += cost_sorted_form(m) * w;
    return total;
}

std::int64_t discrete_emd(const DistTuple& t) {
    std::int64_t total = 0;
    stream_rsk_columns(t, [&](const std::vector<int>& bin, std::int64_t run) {
        total += cost_sorted_form(MultiIndex(bin)) * run;
    });
    return total;
}

JointArray greedy_joint(const DistTuple& t) {
    const int d = t.d();
    std::vector<int> pos(static_cast<std::size_t>(d), 1);
    std::vector<std::vector<std::int64_t>> left;
    left.reserve(static_cast<std::size_t>(d));
    for (const auto& m : t.members()) left.push_back(m.bins());

    std::vector<JointArray::Entry> support;
    std::int64_t remaining = t.mass();
    while (remaining > 0) {
        std::int64_t w = remaining;
        for (int i = 0; i < d; ++i) {
            w = std::min(w, left[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(pos[static_cast<std::size_t>(i)] - 1)]);
        }
        if (w > 0) {
            support.emplace_back(MultiIndex(pos), w);
            remaining -= w;
            for (int i = 0; i < d; ++i) {
                left[static_cast<std::size_t>(i)]
                    [static_cast<std::size_t>(pos[static_cast<std::size_t>(i)] - 1)] -= w;
            }
            if (remaining == 0) break;
        }
        // Advance every axis whose current bin is used up.
        for (int i = 0; i < d; ++i) {
            auto& p = pos[static_cast<std::size_t>(i)];
            if (left[static_cast<std::size_t>(i)][static_cast<std::size_t>(p - 1)] == 0) ++p;
        }
    }
    return JointArray(t.shape(), std::move(support));
}

namespace {

// Distinct arrangements of a word: s! / prod (multiplicities!), saturating
// at cap + 1.
std::int64_t arrangement_count(const Composition& mu, std::int64_t cap) {
    Int count = factorial(mu.mass());
    for (int k = 1; k <= mu.n(); ++k) count /= factorial(mu.count(k));
    Int capped = std::min(count, Int(cap) + 1);
    return capped.convert_to<std::int64_t>();
}

}  // namespace

std::int64_t brute_force_emd(const DistTuple& t, std::int64_t budget) {
    const int d = t.d();
    const std::int64_t s = t.mass();
    if (s == 0) return 0;

    // Any integer plan rearranges the columns of the word matrix, so the
    // arrangement-tuple count of the words bounds the number of feasible
    // plans and serves as the capacity guard.
    std::int64_t plans = 1;
    for (int i = 2; i <= t.d(); ++i) {
        std::int64_t c = arrangement_count(t.member(i), budget);
        if (c > budget / std::max<std::int64_t>(plans, 1) || plans * c > budget)
            throw CapacityError("plan search space exceeds budget " + std::to_string(budget));
        plans *= c;
    }

    BinShape shape = t.shape();
    const std::int64_t cells = *shape.entry_count(kDefaultDenseCap);

    std::vector<std::vector<std::int64_t>> residual;
    residual.reserve(static_cast<std::size_t>(d));
    for (const auto& m : t.members()) residual.push_back(m.bins());

    // Cells in lexicographic order, with the position after which an axis-1
    // bin can never be served again.
    std::vector<MultiIndex> positions;
    std::vector<std::int64_t> costs;
    positions.reserve(static_cast<std::size_t>(cells));
    std::vector<int> coords(static_cast<std::size_t>(d), 1);
    for (std::int64_t f = 0; f < cells; ++f) {
        positions.emplace_back(coords);
        costs.push_back(cost_sorted_form(positions.back()));
        for (int i = d; i >= 1; --i) {
            auto& c = coords[static_cast<std::size_t>(i - 1)];
            if (c < shape.size(i)) {
                ++c;
                break;
            }
            c = 1;
        }
    }

    std::int64_t best = -1;
    std::int64_t remaining = s;
    auto dfs = [&](auto&& self, std::int64_t cell, std::int64_t partial) -> void {
        if (best >= 0 && partial >= best) return;
        if (remaining == 0) {
            best = partial;
            return;
        }
        if (cell == cells) return;
        const MultiIndex& m = positions[static_cast<std::size_t>(cell)];
        std::int64_t wmax = remaining;
        for (int i = 1; i <= d; ++i) {
            wmax = std::min(wmax, residual[static_cast<std::size_t>(i - 1)]
                                          [static_cast<std::size_t>(m.coord(i) - 1)]);
        }
        // Past the last cell of this axis-1 slab the first marginal can no
        // longer change, so its residual must be spent here.
        bool slab_end = true;
        for (int i = 2; i <= d; ++i) slab_end = slab_end && m.coord(i) == shape.size(i);
        std::int64_t wmin = 0;
        if (slab_end) {
            wmin = residual[0][static_cast<std::size_t>(m.coord(1) - 1)];
            if (wmin > wmax) return;
        }
        const std::int64_t c = costs[static_cast<std::size_t>(cell)];
        for (std::int64_t w = wmax; w >= wmin; --w) {
            for (int i = 1; i <= d; ++i)
                residual[static_cast<std::size_t>(i - 1)]
                        [static_cast<std::size_t>(m.coord(i) - 1)] -= w;
            remaining -= w;
            self(self, cell + 1, partial + c * w);
            for (int i = 1; i <= d; ++i)
                residual[static_cast<std::size_t>(i - 1)]
                        [static_cast<std::size_t>(m.coord(i) - 1)] += w;
            remaining += w;
        }
    };
    dfs(dfs, 0, 0);
    return best;
}

std::int64_t pairwise_emd_sum(const DistTuple& t) {
    if (t.d() != 3)
        throw std::invalid_argument("pairwise sum is defined for exactly three distributions");
    std::int64_t total = 0;
    for (int i = 1; i <= 3; ++i) {
        for (int j = i + 1; j <= 3; ++j) {
            total += discrete_emd(DistTuple({t.member(i), t.member(j)}));
        }
    }
    return total;
}

std::int64_t max_emd(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("max_emd needs d >= 1 and n >= 1");
    return static_cast<std::int64_t>(d / 2) * (n - 1);
}

Rational continuous_emd(const DistTuple& t) {
    if (t.mass() == 0) return Rational(0);
    return Rational(discrete_emd(t), t.mass());
}

Rational unit_normalized_emd(const DistTuple& t) {
    const int n = t.member(1).n();
    for (const auto& m : t.members()) {
        if (m.n() != n)
            throw ShapeMismatchError("unit normalization needs a common bin count");
    }
    std::int64_t cap = max_emd(t.d(), n);
    if (cap == 0) return Rational(0);  // n == 1 or d == 1: EMD is identically 0
    return continuous_emd(t) / cap;
}

}  // namespace emdd
