#ifndef EMDD_RATIONAL_HPP
#define EMDD_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace emdd {

// All exact arithmetic in this library runs on arbitrary-precision
// integers and rationals; doubles appear only at the presentation layer.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& r) { return numerator(r); }
inline Int rational_den(const Rational& r) { return denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Fixed-point rendering with `digits` places after the point,
// rounding half away from zero.  decimal_string(49/372, 6) == "0.131720".
std::string decimal_string(const Rational& x, int digits);

// Rendering to `sig` significant figures, e.g. 49/31 -> "1.58065" at sig=6.
std::string significant_string(const Rational& x, int sig);

Int factorial(long long n);

// binom(n, k) for n >= 0; zero outside 0 <= k <= n.
Int binomial(long long n, long long k);

}  // namespace emdd

#endif
