#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "matchcover/exact.hpp"

namespace oracle {

using matchcover::BigInt;
using matchcover::BigRat;

// Euler's number bracketed to 49 decimal places.
inline BigRat e_reference_lo() {
  BigInt num("27182818284590452353602874713526624977572470936999");
  BigInt den = 1;
  for (int i = 0; i < 49; ++i) den *= 10;
  return matchcover::ratio(num, den);
}

inline BigRat e_reference_hi() {
  BigInt num("27182818284590452353602874713526624977572470937000");
  BigInt den = 1;
  for (int i = 0; i < 49; ++i) den *= 10;
  return matchcover::ratio(num, den);
}

// (2n)! / (2^n n!), the quotient form of the odd double factorial.
inline BigInt double_factorial_quotient(int n) {
  BigInt num = matchcover::factorial(2 * n);
  BigInt den = (BigInt(1) << n) * matchcover::factorial(n);
  return num / den;
}

// Number of partitions of m labeled points into singletons and doubletons
// with at most max_blocks blocks, by direct recursion on the smallest point.
inline BigInt count_singleton_doubleton_partitions(int m, int max_blocks) {
  if (max_blocks < 0) return 0;
  if (m == 0) return 1;
  BigInt total = count_singleton_doubleton_partitions(m - 1, max_blocks - 1);  // singleton
  if (m >= 2)
    total += BigInt(m - 1) * count_singleton_doubleton_partitions(m - 2, max_blocks - 1);
  return total;
}

// Number of set partitions of m labeled points with every block of size at
// most t: the smallest point's block picks j - 1 companions from the rest.
inline BigInt count_partitions_block_size_at_most(int m, int t) {
  if (m == 0) return 1;
  BigInt total = 0;
  for (int j = 1; j <= std::min(m, t); ++j)
    total += matchcover::binomial(m - 1, j - 1) * count_partitions_block_size_at_most(m - j, t);
  return total;
}

}  // namespace oracle
