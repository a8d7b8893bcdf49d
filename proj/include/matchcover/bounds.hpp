#pragma once

// Closed-form covering bounds for families of perfect matchings of K_2n:
// the two union-bound thresholds on the family size s, the W-pattern count,
// and the local-lemma threshold on the edge-frequency parameter k. All
// values are exact; the e-comparisons are decided by interval refinement.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "matchcover/exact.hpp"

namespace matchcover {

enum class Theorem { t1, t2, main, conjecture };

inline const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::t1: return "T1";
    case Theorem::t2: return "T2";
    case Theorem::main: return "MAIN";
    case Theorem::conjecture: return "CONJECTURE";
  }
  return "?";
}

// One computed threshold. For t1 the hypothesis is "s <= bound", so the
// integer threshold is floor(exact_value); for t2 it is "s < bound", so the
// threshold is the largest integer strictly below; for main/conjecture the
// threshold is the largest frequency k passing the local-lemma condition,
// and exact_value just mirrors it (the true cutoff is irrational).
// vacuous is set when even the minimal parameter fails the hypothesis.
struct BoundReport {
  int n = 0;
  int x = 0;
  int t = 2;  // edge size; 2 for the graph case
  Theorem theorem = Theorem::t1;
  BigRat exact_value;
  BigInt integer_threshold;
  bool vacuous = false;
};

namespace detail {
inline void require_x_range(int n, int x, const char* where) {
  if (x < 1 || x > n)
    throw std::invalid_argument(std::string(where) + ": requires 1 <= x <= n, got n=" +
                                std::to_string(n) + " x=" + std::to_string(x));
}
}  // namespace detail

// (2n)! / (2^n n!) = (2n-1)!!, the number of perfect matchings of K_2n.
inline BigInt pm_count(int n) {
  if (n < 0) throw std::invalid_argument("pm_count: negative n");
  return factorial(2 * n) / (BigInt(1) << n) / factorial(n);
}

// Probability that a uniform perfect matching of K_2n contains x fixed
// disjoint edges: pm_count(n-x) / pm_count(n).
inline BigRat agreement_probability(int n, int x) {
  if (x < 0 || x > n)
    throw std::invalid_argument("agreement_probability: requires 0 <= x <= n");
  return ratio(pm_count(n - x), pm_count(n));
}

// x! * C(2n-x, x) / C(n, x); equivalently 2^x / (C(2n,x) * agreement_probability).
inline BoundReport thm1_bound(int n, int x) {
  detail::require_x_range(n, x, "thm1_bound");
  BoundReport report;
  report.n = n;
  report.x = x;
  report.theorem = Theorem::t1;
  report.exact_value = ratio(factorial(x) * binomial(2 * n - x, x), binomial(n, x));
  report.integer_threshold = floor_ratio(report.exact_value);
  report.vacuous = report.integer_threshold == 0;
  return report;
}

// (x!/2^x) * C(2n,x) * C(2n-x,x) / C(n,x)^2; the hypothesis is strict, so
// the integer threshold sits strictly below the exact value.
inline BoundReport thm2_bound(int n, int x) {
  detail::require_x_range(n, x, "thm2_bound");
  BoundReport report;
  report.n = n;
  report.x = x;
  report.theorem = Theorem::t2;
  report.exact_value = ratio(factorial(x) * binomial(2 * n, x) * binomial(2 * n - x, x),
                             (BigInt(1) << x) * binomial(n, x) * binomial(n, x));
  report.integer_threshold = floor_strict(report.exact_value);
  report.vacuous = report.integer_threshold == 0;
  return report;
}

// Number of partitions of 2x labeled vertices into singletons and doubletons
// with at most n blocks: sum over j doubletons of C(2x,2j) * (2j)!/(j! 2^j),
// the lower limit max(0, 2x-n) realizing the zero-binomial convention.
inline BigInt w_count(int n, int x) {
  detail::require_x_range(n, x, "w_count");
  BigInt total = 0;
  for (int j = std::max(0, 2 * x - n); j <= x; ++j)
    total += binomial(2 * x, 2 * j) * factorial(2 * j) / (factorial(j) * (BigInt(1) << j));
  return total;
}

struct LllParams {
  BigInt d;  // dependency-degree bound k * 2x * (2n-1) * C(n-1, x-1)
  BigRat p;  // conditional event probability bound 1 / w_count(n, x)
};

inline LllParams lll_params(int n, int x, const BigInt& k) {
  detail::require_x_range(n, x, "lll_params");
  if (k < 0) throw std::invalid_argument("lll_params: negative k");
  LllParams params;
  params.d = k * 2 * x * (2 * n - 1) * binomial(n - 1, x - 1);
  params.p = ratio(1, w_count(n, x));
  return params;
}

// The symmetric local-lemma condition e*p*(d+1) <= 1, i.e. e*(d+1) <= w_count,
// decided exactly. Equality never occurs (the left side is irrational).
inline bool lll_condition_holds(int n, int x, const BigInt& k) {
  LllParams params = lll_params(n, x, k);
  return cmp_times_e(BigRat(params.d + 1), BigRat(1) / params.p) == EOrder::less;
}

// Largest k >= 0 with e*(c*k + 1) <= total, or 0 when none qualifies
// (second member of the pair false). The condition is monotone in k, so
// doubling plus binary search suffices.
inline std::pair<BigInt, bool> largest_k_satisfying(const BigInt& c, const BigInt& total) {
  if (c <= 0) throw std::invalid_argument("largest_k_satisfying: requires c > 0");
  auto holds = [&](const BigInt& k) {
    return cmp_times_e(BigRat(c * k + 1), BigRat(total)) == EOrder::less;
  };
  if (!holds(0)) return {0, false};
  BigInt lo = 0, hi = 1;
  while (holds(hi)) {
    lo = hi;
    hi <<= 1;
  }
  // invariant: holds(lo), !holds(hi)
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {lo, true};
}

// Largest frequency parameter k for which the local-lemma condition holds at
// (n, x); equals floor((w_count - e) / (e * 2x(2n-1)C(n-1,x-1))) when that is
// nonnegative. vacuous when no positive k qualifies.
inline BoundReport main_k_bound(int n, int x) {
  detail::require_x_range(n, x, "main_k_bound");
  BigInt c = BigInt(2 * x) * (2 * n - 1) * binomial(n - 1, x - 1);
  auto [k, any] = largest_k_satisfying(c, w_count(n, x));
  BoundReport report;
  report.n = n;
  report.x = x;
  report.theorem = Theorem::main;
  report.integer_threshold = k;
  report.exact_value = BigRat(k);
  report.vacuous = k == 0;
  (void)any;
  return report;
}

}  // namespace matchcover
