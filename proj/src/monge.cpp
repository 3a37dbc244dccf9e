#include "emdd/monge.hpp"

#include <algorithm>
#include <vector>

namespace emdd {

namespace {

MongeResult violation(MultiIndex x, MultiIndex y) {
    if (y < x) std::swap(x, y);
    return MongeResult{false, std::make_pair(std::move(x), std::move(y))};
}

}  // namespace

MongeResult monge_check_full(const CostArray& a) {
    const std::int64_t size = a.size();
    const int d = a.shape().d();
    // Decode all coordinates once; the pair loop only mixes them.
    std::vector<std::vector<int>> coords;
    coords.reserve(static_cast<std::size_t>(size));
    for (std::int64_t f = 0; f < size; ++f) coords.push_back(a.unflatten(f).coords());

    std::vector<int> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (std::int64_t x = 0; x < size; ++x) {
        for (std::int64_t y = x + 1; y < size; ++y) {
            bool comparable = true;
            for (int i = 0; i < d; ++i) {
                int cx = coords[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)];
                int cy = coords[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)];
                lo[static_cast<std::size_t>(i)] = std::min(cx, cy);
                hi[static_cast<std::size_t>(i)] = std::max(cx, cy);
                comparable = comparable && (cx <= cy);
            }
            // x on the lex-earlier side: y componentwise above x makes the
            // inequality an identity.
            if (comparable) continue;
            std::int64_t lhs = a.at(MultiIndex(lo)) + a.at(MultiIndex(hi));
            std::int64_t rhs = a.at_flat(x) + a.at_flat(y);
            if (lhs > rhs) {
                return violation(MultiIndex(coords[static_cast<std::size_t>(x)]),
                                 MultiIndex(coords[static_cast<std::size_t>(y)]));
            }
        }
    }
    return MongeResult{};
}

MongeResult monge_check_planes(const CostArray& a) {
    const auto& shape = a.shape();
    const int d = shape.d();
    const std::int64_t size = a.size();

    for (int i = 1; i <= d; ++i) {
        for (int j = i + 1; j <= d; ++j) {
            // Every position with room to step +1 along both axes anchors
            // one adjacent 2x2 condition.
            for (std::int64_t f = 0; f < size; ++f) {
                MultiIndex m = a.unflatten(f);
                if (m.coord(i) >= shape.size(i) || m.coord(j) >= shape.size(j)) continue;
                std::vector<int> ci = m.coords(), cj = m.coords(), cij = m.coords();
                ci[static_cast<std::size_t>(i - 1)]++;
                cj[static_cast<std::size_t>(j - 1)]++;
                cij[static_cast<std::size_t>(i - 1)]++;
                cij[static_cast<std::size_t>(j - 1)]++;
                MultiIndex mi(std::move(ci)), mj(std::move(cj)), mij(std::move(cij));
                if (a.at(m) + a.at(mij) > a.at(mi) + a.at(mj)) {
                    return violation(std::move(mi), std::move(mj));
                }
            }
        }
    }
    return MongeResult{};
}

}  // namespace emdd
