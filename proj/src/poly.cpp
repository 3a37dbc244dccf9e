#include "emdd/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace emdd {

std::string decimal_string(const Rational& x, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be nonnegative");
    const bool neg = x < 0;
    Rational ax = neg ? Rational(-x) : x;
    Int pow10 = 1;
    for (int i = 0; i < digits; ++i) pow10 *= 10;
    // floor(|x| * 10^digits + 1/2)
    Int scaled = (numerator(ax) * pow10 * 2 + denominator(ax)) / (denominator(ax) * 2);
    std::string s = scaled.str();
    std::string out;
    if (digits == 0) {
        out = s;
    } else {
        if (static_cast<int>(s.size()) <= digits)
            s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(s.size())), '0');
        out = s.substr(0, s.size() - static_cast<std::size_t>(digits)) + "." +
              s.substr(s.size() - static_cast<std::size_t>(digits));
    }
    if (neg && scaled != 0) out.insert(0, 1, '-');
    return out;
}

std::string significant_string(const Rational& x, int sig) {
    if (sig < 1) throw std::invalid_argument("need at least one significant figure");
    if (x == 0) return decimal_string(x, sig - 1);
    Rational ax = x < 0 ? Rational(-x) : x;
    // exponent e with 10^e <= |x| < 10^(e+1)
    int e = 0;
    Rational p(1);
    if (ax >= 1) {
        while (ax >= p * 10) {
            p *= 10;
            ++e;
        }
    } else {
        while (ax < p) {
            p /= 10;
            --e;
        }
    }
    int decimals = sig - 1 - e;
    if (decimals >= 0) return decimal_string(x, decimals);
    // Round to a positive power of ten.
    Int step = 1;
    for (int i = 0; i < -decimals; ++i) step *= 10;
    Int q = (numerator(ax) * 2 + denominator(ax) * step) / (denominator(ax) * step * 2);
    Int rounded = q * step;
    std::string out = rounded.str();
    if (x < 0) out.insert(0, 1, '-');
    return out;
}

Int factorial(long long n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    Int r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

Int binomial(long long n, long long k) {
    if (n < 0) throw std::invalid_argument("binomial needs n >= 0");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

RationalPoly RationalPoly::constant(Rational c) { return RationalPoly({std::move(c)}); }

RationalPoly RationalPoly::monomial(long long k, Rational c) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
    v.back() = std::move(c);
    return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPoly::coeff(long long i) const {
    if (i < 0 || i >= static_cast<long long>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    RationalPoly r = *this;
    r += o;
    return r;
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
    RationalPoly r = *this;
    r -= o;
    return r;
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (is_zero() || o.is_zero()) return RationalPoly();
    std::vector<Rational> prod(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return RationalPoly(std::move(prod));
}

RationalPoly RationalPoly::scaled(const Rational& c) const {
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= c;
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::shifted(long long k) const {
    if (is_zero()) return RationalPoly();
    std::vector<Rational> v(static_cast<std::size_t>(k), Rational(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::times_t_minus_one_pow(int k) const {
    RationalPoly r = *this;
    RationalPoly t_minus_one({Rational(-1), Rational(1)});
    for (int i = 0; i < k; ++i) r = r * t_minus_one;
    return r;
}

RationalPoly RationalPoly::truncated(long long max_degree) const {
    if (degree() <= max_degree) return *this;
    std::vector<Rational> v(c_.begin(), c_.begin() + static_cast<long>(max_degree) + 1);
    return RationalPoly(std::move(v));
}

Rational RationalPoly::eval_one() const {
    Rational sum(0);
    for (const auto& c : c_) sum += c;
    return sum;
}

Rational series_coeff_over_one_minus_t(const RationalPoly& p, long long e, long long s) {
    if (e < 0) throw std::invalid_argument("denominator exponent must be nonnegative");
    // 1/(1-t)^e = sum_k binom(k+e-1, e-1) t^k
    Rational sum(0);
    const long long top = std::min(s, p.degree());
    for (long long j = 0; j <= top; ++j) {
        if (p.coeff(j) == 0) continue;
        sum += p.coeff(j) * Rational(binomial(s - j + e - 1, e - 1));
    }
    return sum;
}

BivariateSeries::BivariateSeries(long long t_order, std::map<long long, RationalPoly> terms)
    : t_order_(t_order), terms_(std::move(terms)) {
    if (t_order_ < 0) throw std::invalid_argument("t-order must be nonnegative");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.degree() > t_order_)
            throw std::invalid_argument("term exceeds the declared truncation order");
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

Rational BivariateSeries::coeff(long long z_exp, long long t_exp) const {
    auto it = terms_.find(z_exp);
    if (it == terms_.end()) return Rational(0);
    return it->second.coeff(t_exp);
}

std::map<long long, Rational> BivariateSeries::t_slice(long long t_exp) const {
    std::map<long long, Rational> slice;
    for (const auto& [r, poly] : terms_) {
        Rational c = poly.coeff(t_exp);
        if (c != 0) slice.emplace(r, std::move(c));
    }
    return slice;
}

RationalPoly BivariateSeries::at_z_one() const {
    RationalPoly sum;
    for (const auto& [r, poly] : terms_) sum += poly;
    return sum;
}

long long BivariateSeries::max_z_exponent() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first;
}

}  // namespace emdd
