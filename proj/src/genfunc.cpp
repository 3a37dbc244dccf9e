#include "emdd/genfunc.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "emdd/cost.hpp"
#include "emdd/errors.hpp"
#include "emdd/transport.hpp"

namespace emdd {

namespace {

std::vector<int> canonical(std::vector<int> shape) {
    std::sort(shape.begin(), shape.end());
    return shape;
}

std::int64_t shape_cost(const std::vector<int>& shape) {
    return cost_sorted_form(MultiIndex(shape));
}

long long shape_total(const std::vector<int>& shape) {
    long long t = 0;
    for (int n : shape) t += n;
    return t;
}

bool all_ones(const std::vector<int>& shape) {
    return std::all_of(shape.begin(), shape.end(), [](int n) { return n == 1; });
}

bool any_zero(const std::vector<int>& shape) {
    return std::any_of(shape.begin(), shape.end(), [](int n) { return n == 0; });
}

}  // namespace

Int newcomb_coefficient(const BinShape& shape, long long i) {
    if (i < 0) throw std::invalid_argument("descent count must be nonnegative");
    const long long dims = shape.d();
    const long long letters = shape.total() - dims + 1;
    Int sum = 0;
    for (long long j = 0; j <= i; ++j) {
        Int term = binomial(letters, j);
        for (int k = 1; k <= shape.d(); ++k) {
            term *= binomial(i - j + shape.size(k) - 1, shape.size(k) - 1);
        }
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

RationalPoly w_poly(const BinShape& shape) {
    // Maximum descent count of the multiset {1^(n_1-1),...,d^(n_d-1)}:
    // (|n|-d) - max(n_i - 1).
    int max_part = *std::max_element(shape.sizes().begin(), shape.sizes().end());
    long long deg = shape.total() - shape.d() - (max_part - 1);
    std::vector<Rational> coeffs;
    for (long long i = 0; i <= std::max<long long>(deg, 0); ++i) {
        coeffs.emplace_back(newcomb_coefficient(shape, i));
    }
    return RationalPoly(std::move(coeffs));
}

Int w_at_one(const BinShape& shape) {
    Int r = factorial(shape.total() - shape.d());
    for (int i = 1; i <= shape.d(); ++i) r /= factorial(shape.size(i) - 1);
    return r;
}

Int h_coeff(const BinShape& shape, long long s) {
    if (s < 0) throw std::invalid_argument("mass must be nonnegative");
    Int prod = 1;
    for (int i = 1; i <= shape.d(); ++i) {
        prod *= binomial(s + shape.size(i) - 1, shape.size(i) - 1);
    }
    return prod;
}

namespace {

class NPolyCache {
  public:
    RationalPoly value(std::vector<int> shape) {
        if (any_zero(shape)) return RationalPoly();
        shape = canonical(std::move(shape));
        if (all_ones(shape)) return RationalPoly();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(shape);
            if (it != memo_.end()) return it->second;
        }

        const int d = static_cast<int>(shape.size());
        if (d > 20) throw CapacityError("subset recursion is limited to 20 distributions");
        RationalPoly sum;
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            std::vector<int> sub = shape;
            int bits = 0;
            for (int i = 0; i < d; ++i) {
                if (mask & (1u << i)) {
                    --sub[static_cast<std::size_t>(i)];
                    ++bits;
                }
            }
            if (any_zero(sub)) continue;
            RationalPoly term = value(std::move(sub));
            if (term.is_zero()) continue;
            sum += term.times_t_minus_one_pow(bits - 1);
        }
        BinShape bs(shape);
        sum += w_poly(bs).shifted(1).scaled(Rational(shape_cost(shape)));

        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(std::move(shape), std::move(sum)).first->second;
    }

  private:
    std::map<std::vector<int>, RationalPoly> memo_;
    std::mutex mu_;
};

NPolyCache& n_poly_cache() {
    static NPolyCache cache;
    return cache;
}

}  // namespace

RationalPoly n_poly(const BinShape& shape) { return n_poly_cache().value(shape.sizes()); }

Int hprime_coeff(const BinShape& shape, long long s) {
    if (s < 0) throw std::invalid_argument("mass must be nonnegative");
    Rational c = series_coeff_over_one_minus_t(n_poly(shape), shape.total() - shape.d() + 2, s);
    if (denominator(c) != 1 || c < 0)
        throw std::logic_error("EMD sums must be nonnegative integers");
    return numerator(c);
}

Rational discrete_expected(const BinShape& shape, long long s) {
    if (s == 0) return Rational(0);
    return Rational(hprime_coeff(shape, s)) / Rational(h_coeff(shape, s));
}

Rational ExpectedValueCache::value(std::vector<int> shape) {
    if (any_zero(shape)) return Rational(0);
    shape = canonical(std::move(shape));
    if (all_ones(shape)) return Rational(0);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(shape);
        if (it != memo_.end()) return it->second;
    }

    Rational sum(shape_cost(shape));
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (shape[i] <= 1) continue;  // weight n_i - 1 vanishes
        std::vector<int> sub = shape;
        --sub[i];
        sum += Rational(shape[i] - 1) * value(std::move(sub));
    }
    long long denom = shape_total(shape) - static_cast<long long>(shape.size()) + 1;
    Rational result = sum / denom;

    std::lock_guard<std::mutex> lock(mu_);
    return memo_.emplace(std::move(shape), std::move(result)).first->second;
}

Rational continuous_expected(const BinShape& shape) {
    static ExpectedValueCache cache;
    return cache.value(shape.sizes());
}

Rational unit_normalized_expected(int d, int n) {
    if (d < 2 || n < 2)
        throw std::invalid_argument("normalized expected value needs d >= 2 and n >= 2");
    return continuous_expected(BinShape::cube(d, n)) / max_emd(d, n);
}

namespace {

// One t-slice: z-exponent -> coefficient.
using Slice = std::map<long long, Rational>;

struct HSeriesContext {
    long long s_max;
    std::int64_t budget;
    std::int64_t used = 0;
    std::map<std::vector<int>, std::vector<Slice>> memo;

    void charge(std::int64_t amount) {
        used += amount;
        if (used > budget)
            throw CapacityError("bivariate series exceeds budget " + std::to_string(budget));
    }

    const std::vector<Slice>& slices(std::vector<int> shape) {
        shape = canonical(std::move(shape));
        auto it = memo.find(shape);
        if (it != memo.end()) return it->second;

        std::vector<Slice> h(static_cast<std::size_t>(s_max) + 1);
        if (all_ones(shape)) {
            for (auto& slice : h) slice[0] = 1;  // one tuple per mass, EMD 0
        } else {
            const int d = static_cast<int>(shape.size());
            // Numerator: inclusion-exclusion over coordinate decrements.
            std::vector<Slice> numer(static_cast<std::size_t>(s_max) + 1);
            for (unsigned mask = 1; mask < (1u << d); ++mask) {
                std::vector<int> sub = shape;
                int bits = 0;
                for (int i = 0; i < d; ++i) {
                    if (mask & (1u << i)) {
                        --sub[static_cast<std::size_t>(i)];
                        ++bits;
                    }
                }
                if (any_zero(sub)) continue;
                const auto& part = slices(std::move(sub));
                const int sign = (bits % 2 == 1) ? 1 : -1;
                for (long long s = 0; s <= s_max; ++s) {
                    for (const auto& [r, c] : part[static_cast<std::size_t>(s)]) {
                        auto& dst = numer[static_cast<std::size_t>(s)][r];
                        dst += sign * c;
                        if (dst == 0) numer[static_cast<std::size_t>(s)].erase(r);
                    }
                }
            }
            // Divide by 1 - z^C t:  H[s] = numer[s] + z^C * H[s-1].
            const std::int64_t c_here = shape_cost(shape);
            for (long long s = 0; s <= s_max; ++s) {
                h[static_cast<std::size_t>(s)] = std::move(numer[static_cast<std::size_t>(s)]);
                if (s > 0) {
                    for (const auto& [r, c] : h[static_cast<std::size_t>(s - 1)]) {
                        auto& dst = h[static_cast<std::size_t>(s)][r + c_here];
                        dst += c;
                        if (dst == 0) h[static_cast<std::size_t>(s)].erase(r + c_here);
                    }
                }
                charge(static_cast<std::int64_t>(h[static_cast<std::size_t>(s)].size()) + 1);
            }
        }
        return memo.emplace(std::move(shape), std::move(h)).first->second;
    }
};

}  // namespace

BivariateSeries h_bivariate(const BinShape& shape, long long s_max, std::int64_t budget) {
    if (s_max < 0) throw std::invalid_argument("truncation order must be nonnegative");
    HSeriesContext ctx{s_max, budget};
    const auto& slices = ctx.slices(shape.sizes());

    std::map<long long, std::vector<Rational>> by_z;
    for (long long s = 0; s <= s_max; ++s) {
        for (const auto& [r, c] : slices[static_cast<std::size_t>(s)]) {
            auto& col = by_z[r];
            col.resize(static_cast<std::size_t>(s_max) + 1, Rational(0));
            col[static_cast<std::size_t>(s)] = c;
        }
    }
    std::map<long long, RationalPoly> terms;
    for (auto& [r, coeffs] : by_z) terms.emplace(r, RationalPoly(std::move(coeffs)));
    return BivariateSeries(s_max, std::move(terms));
}

}  // namespace emdd
