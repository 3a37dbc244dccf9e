#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "emdd/analysis.hpp"
#include "emdd/errors.hpp"
#include "emdd/transport.hpp"

using namespace emdd;

namespace {

const DistTuple kTriple({Composition{4, 0, 1}, Composition{1, 2, 2}, Composition{0, 5, 0}});
const DistTuple kPair({Composition{1, 2, 3, 4}, Composition{5, 0, 2, 3}});

Composition random_composition(std::mt19937& rng, int n, std::int64_t s) {
    std::vector<std::int64_t> bins(static_cast<std::size_t>(n), 0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::int64_t u = 0; u < s; ++u) ++bins[static_cast<std::size_t>(pick(rng))];
    return Composition(bins);
}

}  // namespace

TEST_CASE("rsk_word") {
    CHECK(rsk_word(Composition{1, 2, 3, 4}) == std::vector<int>{1, 2, 2, 3, 3, 3, 4, 4, 4, 4});
    CHECK(rsk_word(Composition{5, 0, 2, 3}) == std::vector<int>{1, 1, 1, 1, 1, 3, 3, 4, 4, 4});
    CHECK(rsk_word(Composition{0, 5, 0}) == std::vector<int>{2, 2, 2, 2, 2});
}

TEST_CASE("word_matrix") {
    WordMatrix m = word_matrix(kTriple);
    CHECK(m.row(1) == std::vector<int>{1, 1, 1, 1, 3});
    CHECK(m.row(2) == std::vector<int>{1, 2, 2, 3, 3});
    CHECK(m.row(3) == std::vector<int>{2, 2, 2, 2, 2});
    CHECK(m.column(4) == MultiIndex{1, 3, 2});

    WordMatrix single = word_matrix(DistTuple({Composition{2, 0}}));
    CHECK(single.rows() == std::vector<std::vector<int>>{{1, 1}});

    WordMatrix pair = word_matrix(kPair);
    CHECK(pair.row(1) == std::vector<int>{1, 2, 2, 3, 3, 3, 4, 4, 4, 4});
    CHECK(pair.row(2) == std::vector<int>{1, 1, 1, 1, 1, 3, 3, 4, 4, 4});
}

TEST_CASE("rsk_joint reproduces the worked 4x4 plan") {
    JointArray j = rsk_joint(kPair);
    std::vector<JointArray::Entry> want{
        {MultiIndex{1, 1}, 1}, {MultiIndex{2, 1}, 2}, {MultiIndex{3, 1}, 2},
        {MultiIndex{3, 3}, 1}, {MultiIndex{4, 3}, 1}, {MultiIndex{4, 4}, 3},
    };
    CHECK(j.support() == want);
    CHECK(j.satisfies_marginals(kPair));
    CHECK(j.is_chain());
}

TEST_CASE("rsk_joint diagonal and triple support") {
    DistTuple same({Composition{2, 1, 3}, Composition{2, 1, 3}, Composition{2, 1, 3}});
    JointArray diag = rsk_joint(same);
    for (const auto& [m, w] : diag.support()) {
        CHECK(m.coord(1) == m.coord(2));
        CHECK(m.coord(2) == m.coord(3));
    }
    CHECK(total_cost(diag) == 0);

    JointArray j = rsk_joint(kTriple);
    std::vector<JointArray::Entry> want{
        {MultiIndex{1, 1, 2}, 1},
        {MultiIndex{1, 2, 2}, 2},
        {MultiIndex{1, 3, 2}, 1},
        {MultiIndex{3, 3, 2}, 1},
    };
    CHECK(j.support() == want);
}

TEST_CASE("total_cost") {
    JointArray diag(BinShape{3, 3}, {{MultiIndex{1, 1}, 4}, {MultiIndex{2, 2}, 6}});
    CHECK(total_cost(diag) == 0);

    // Worked three-distribution plan with costs 0,1,2,1,0.
    JointArray handmade(BinShape{3, 3, 3}, {{MultiIndex{1, 1, 1}, 5},
                                            {MultiIndex{2, 2, 1}, 1},
                                            {MultiIndex{3, 2, 1}, 1},
                                            {MultiIndex{3, 3, 2}, 2},
                                            {MultiIndex{3, 3, 3}, 1}});
    CHECK(total_cost(handmade) == 5);
    CHECK(total_cost(rsk_joint(kTriple)) == 6);
}

TEST_CASE("discrete_emd worked examples") {
    CHECK(discrete_emd(kTriple) == 6);
    CHECK(discrete_emd(DistTuple({Composition{3, 3, 4}, Composition{1, 0, 9}})) == 7);
    CHECK(discrete_emd(DistTuple({Composition{2, 5}, Composition{2, 5}})) == 0);
}

TEST_CASE("greedy_joint") {
    DistTuple same({Composition{1, 2}, Composition{1, 2}});
    JointArray diag = greedy_joint(same);
    CHECK(total_cost(diag) == 0);
    CHECK(diag.satisfies_marginals(same));

    for (const DistTuple& t : {kPair, kTriple}) {
        JointArray g = greedy_joint(t);
        CHECK(g.satisfies_marginals(t));
        CHECK(g.is_chain());
        CHECK(total_cost(g) == discrete_emd(t));
    }
}

TEST_CASE("brute_force_emd") {
    CHECK(brute_force_emd(DistTuple({Composition{3, 3, 4}, Composition{1, 0, 9}})) == 7);
    CHECK(brute_force_emd(DistTuple({Composition{1, 1}, Composition{1, 1}})) == 0);
    // A plan given by inspection costs 5; the search may do no better.
    DistTuple scaled({Composition{5, 1, 4}, Composition{5, 2, 3}, Composition{7, 2, 1}});
    CHECK(brute_force_emd(scaled) == 5);
    CHECK(brute_force_emd(scaled) == discrete_emd(scaled));
    CHECK(brute_force_emd(scaled) <= 5);

    std::mt19937 rng(123);
    DistTuple big({random_composition(rng, 6, 40), random_composition(rng, 6, 40),
                   random_composition(rng, 6, 40)});
    CHECK_THROWS_AS(brute_force_emd(big, 1000), CapacityError);
}

TEST_CASE("oracle equivalence on a small exhaustive block") {
    for (int d = 2; d <= 3; ++d) {
        for (int n = 2; n <= 3; ++n) {
            for (std::int64_t s = 0; s <= 3; ++s) {
                for_each_tuple(BinShape::cube(d, n), s, [&](const std::vector<Composition>& ms) {
                    DistTuple t(ms);
                    const std::int64_t via_rsk = discrete_emd(t);
                    CHECK(via_rsk == brute_force_emd(t));
                    CHECK(via_rsk == total_cost(greedy_joint(t)));
                    CHECK(via_rsk == total_cost(rsk_joint(t)));
                });
            }
        }
    }
}

TEST_CASE("pairwise_emd_sum") {
    CHECK(pairwise_emd_sum(kTriple) == 12);
    CHECK(2 * discrete_emd(kTriple) == 12);
    DistTuple same({Composition{1, 2}, Composition{1, 2}, Composition{1, 2}});
    CHECK(pairwise_emd_sum(same) == 0);
    DistTuple tiny({Composition{1, 0}, Composition{0, 1}, Composition{1, 0}});
    CHECK(pairwise_emd_sum(tiny) == 2);
    CHECK(discrete_emd(tiny) == 1);
    CHECK_THROWS_AS(pairwise_emd_sum(kPair), std::invalid_argument);
}

TEST_CASE("half-sum identity holds for random triples") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> bins(1, 4);
    std::uniform_int_distribution<std::int64_t> mass(0, 5);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = bins(rng);
        const std::int64_t s = mass(rng);
        DistTuple t({random_composition(rng, n, s), random_composition(rng, n, s),
                     random_composition(rng, n, s)});
        CHECK(2 * discrete_emd(t) == pairwise_emd_sum(t));
    }
}

TEST_CASE("max_emd") {
    CHECK(max_emd(7, 5) == 12);
    CHECK(max_emd(2, 1) == 0);
    CHECK(max_emd(5, 3) == 4);
    CHECK_THROWS_AS(max_emd(0, 3), std::invalid_argument);
}

TEST_CASE("extreme tuples attain the bound") {
    for (int d = 2; d <= 5; ++d) {
        for (int n = 2; n <= 4; ++n) {
            const std::int64_t s = 3;
            std::vector<Composition> members;
            std::vector<std::int64_t> low(static_cast<std::size_t>(n), 0), high = low;
            low.front() = s;
            high.back() = s;
            for (int i = 0; i < (d + 1) / 2; ++i) members.emplace_back(low);
            for (int i = 0; i < d / 2; ++i) members.emplace_back(high);
            DistTuple t(members);
            CHECK(discrete_emd(t) == s * max_emd(d, n));
        }
    }
}

TEST_CASE("random tuples stay under the bound and vanish only when equal") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dims(2, 4), bins(1, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = dims(rng), n = bins(rng);
        const std::int64_t s = 4;
        std::vector<Composition> members;
        for (int i = 0; i < d; ++i) members.push_back(random_composition(rng, n, s));
        DistTuple t(members);
        const std::int64_t emd = discrete_emd(t);
        CHECK(emd <= s * max_emd(d, n));
        const bool all_equal =
            std::all_of(members.begin(), members.end(),
                        [&](const Composition& m) { return m == members.front(); });
        CHECK((emd == 0) == all_equal);
    }
}

TEST_CASE("discrete_emd is symmetric in the members") {
    std::vector<Composition> members = kTriple.members();
    std::sort(members.begin(), members.end(), [](const Composition& a, const Composition& b) {
        return a.bins() < b.bins();
    });
    const std::int64_t reference = discrete_emd(kTriple);
    do {
        CHECK(discrete_emd(DistTuple(members)) == reference);
    } while (std::next_permutation(members.begin(), members.end(),
                                   [](const Composition& a, const Composition& b) {
                                       return a.bins() < b.bins();
                                   }));
}

TEST_CASE("continuous and unit-normalized values") {
    DistTuple two({Composition{3, 3, 4}, Composition{1, 0, 9}});
    CHECK(continuous_emd(two) == Rational(7, 10));
    CHECK(continuous_emd(DistTuple({Composition{4, 4}, Composition{4, 4}})) == 0);

    DistTuple spring({Composition{7, 6, 5, 7, 6}, Composition{12, 6, 8, 3, 2},
                      Composition{4, 6, 6, 10, 5}, Composition{6, 5, 10, 6, 4},
                      Composition{6, 9, 8, 6, 2}, Composition{6, 7, 8, 5, 5},
                      Composition{8, 6, 5, 8, 4}});
    CHECK(continuous_emd(spring) == Rational(49, 31));
    CHECK(decimal_string(continuous_emd(spring), 5) == "1.58065");
    CHECK(unit_normalized_emd(spring) == Rational(49, 372));

    CHECK(unit_normalized_emd(DistTuple({Composition{2}, Composition{2}})) == 0);
    CHECK_THROWS_AS(unit_normalized_emd(DistTuple({Composition{1, 1}, Composition{2}})),
                    ShapeMismatchError);
    CHECK_THROWS_AS(DistTuple({Composition{1, 1}, Composition{3, 0}}), MassMismatchError);
}
