#pragma once

// Exact integer/rational arithmetic and decidable comparison against
// rational multiples of Euler's number e. Everything in the mathematical
// core of this library runs on these types; no floating point is involved.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace matchcover {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// num/den in lowest terms with positive denominator.
inline BigRat ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  return BigRat(num) / BigRat(den);
}

inline BigInt factorial(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt result = 1;
  for (std::int64_t i = 2; i <= m; ++i) result *= i;
  return result;
}

// C(m, r), with C(m, r) = 0 whenever r < 0, m < 0 or r > m.
inline BigInt binomial(std::int64_t m, std::int64_t r) {
  if (r < 0 || m < 0 || r > m) return 0;
  if (m - r < r) r = m - r;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= (m - r + i);
    result /= i;  // exact: result is C(m-r+i, i) at each step
  }
  return result;
}

// m!! for odd m; by convention 0!! = 1!! = 1. Even m > 1 is rejected.
inline BigInt double_factorial_odd(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("double_factorial_odd: negative argument");
  if (m > 1 && m % 2 == 0)
    throw std::invalid_argument("double_factorial_odd: even argument " + std::to_string(m));
  BigInt result = 1;
  for (std::int64_t i = m; i >= 2; i -= 2) result *= i;
  return result;
}

// floor of an exact rational.
inline BigInt floor_ratio(const BigRat& r) {
  BigInt num = numerator(r), den = denominator(r);  // den > 0
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

// Largest integer strictly below r.
inline BigInt floor_strict(const BigRat& r) {
  BigInt f = floor_ratio(r);
  return (BigRat(f) == r) ? f - 1 : f;
}

// Rational enclosure lo < e < hi with hi - lo = 1/(terms! * terms).
// lo is the partial sum of 1/i! up to i = terms; the tail of the series is
// strictly between 0 and 1/(terms! * terms).
struct EInterval {
  BigRat lo;
  BigRat hi;
  std::int64_t terms = 0;

  BigRat width() const { return hi - lo; }
};

inline EInterval e_enclosure(std::int64_t terms) {
  if (terms < 1) throw std::invalid_argument("e_enclosure: terms must be >= 1");
  // sum_{i=0..t} 1/i! = (sum_{i=0..t} t!/i!) / t!
  BigInt partial = 1;  // t!/i! running from i = t down
  BigInt num = 1;      // i = t term
  for (std::int64_t i = terms - 1; i >= 0; --i) {
    partial *= (i + 1);
    num += partial;
  }
  BigInt t_fact = partial;  // = t!
  EInterval enc;
  enc.lo = ratio(num, t_fact);
  enc.hi = enc.lo + ratio(1, t_fact * terms);
  enc.terms = terms;
  return enc;
}

enum class EOrder { less, greater };

// Exact order of a*e versus b for rational a > 0, b. Refines the enclosure
// of e until it separates; terminates because a*e is irrational, so it can
// never equal b.
inline EOrder cmp_times_e(const BigRat& a, const BigRat& b) {
  if (a <= 0) throw std::invalid_argument("cmp_times_e: requires a > 0");
  for (std::int64_t terms = 8;; terms *= 2) {
    EInterval enc = e_enclosure(terms);
    if (a * enc.hi < b) return EOrder::less;
    if (a * enc.lo > b) return EOrder::greater;
  }
}

}  // namespace matchcover
