#ifndef EMDD_POLY_HPP
#define EMDD_POLY_HPP

#include <map>
#include <vector>

#include "emdd/rational.hpp"

namespace emdd {

// Dense univariate polynomial in t over exact rationals; also used as a
// truncated power series.  Trailing zero coefficients are trimmed.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);
    static RationalPoly constant(Rational c);
    static RationalPoly monomial(long long k, Rational c = 1);

    bool is_zero() const { return c_.empty(); }
    // Highest nonzero index; -1 for the zero polynomial.
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    Rational coeff(long long i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly scaled(const Rational& c) const;
    // Multiplication by t^k.
    RationalPoly shifted(long long k) const;
    // Multiplication by (t - 1)^k.
    RationalPoly times_t_minus_one_pow(int k) const;
    RationalPoly truncated(long long max_degree) const;

    Rational eval_one() const;

    bool operator==(const RationalPoly&) const = default;

  private:
    void normalize();
    std::vector<Rational> c_;
};

// [t^s] of p(t) / (1-t)^e, computed exactly from the binomial series.
Rational series_coeff_over_one_minus_t(const RationalPoly& p, long long e, long long s);

// A polynomial in z whose coefficients are t-polynomials, truncated at a
// fixed t order.  Houses the bivariate tuple-counting series.
class BivariateSeries {
  public:
    BivariateSeries(long long t_order, std::map<long long, RationalPoly> terms);

    long long t_order() const { return t_order_; }
    const std::map<long long, RationalPoly>& terms() const { return terms_; }
    Rational coeff(long long z_exp, long long t_exp) const;
    // All nonzero z-coefficients of t^s.
    std::map<long long, Rational> t_slice(long long t_exp) const;
    // Specialization z = 1, as a t-polynomial truncated at t_order.
    RationalPoly at_z_one() const;
    long long max_z_exponent() const;

  private:
    long long t_order_;
    std::map<long long, RationalPoly> terms_;
};

}  // namespace emdd

#endif
