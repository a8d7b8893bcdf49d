#pragma once

// Perfect matchings of the complete t-uniform hypergraph on tn vertices:
// canonical representation, enumeration, sampling, composition vectors and
// the conjectured frequency bound generalizing the graph case (t = 2).

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "matchcover/bounds.hpp"
#include "matchcover/errors.hpp"
#include "matchcover/exact.hpp"
#include "matchcover/matchings.hpp"
#include "matchcover/rng.hpp"

namespace matchcover {

struct HyperEdge {
  std::vector<int> vertices;  // strictly increasing, length t
  friend auto operator<=>(const HyperEdge&, const HyperEdge&) = default;
};

// n disjoint t-edges partitioning {1, ..., tn}, sorted by smallest vertex.
struct HyperMatching {
  int t = 0;
  int n = 0;
  std::vector<HyperEdge> edges;
  friend auto operator<=>(const HyperMatching&, const HyperMatching&) = default;
};

struct HyperFamily {
  int t = 0;
  int n = 0;
  std::vector<HyperMatching> members;

  std::size_t size() const { return members.size(); }
};

inline constexpr std::int64_t hyper_enumeration_guard = 10'000'000;

// (tn)! / ((t!)^n n!), the number of perfect matchings of the complete
// t-uniform hypergraph of order tn. At t = 2 this is pm_count(n).
inline BigInt hyper_pm_count(int t, int n) {
  if (t < 1 || n < 0) throw std::invalid_argument("hyper_pm_count: requires t >= 1, n >= 0");
  BigInt t_fact_pow = 1;
  BigInt t_fact = factorial(t);
  for (int i = 0; i < n; ++i) t_fact_pow *= t_fact;
  return factorial(t * n) / t_fact_pow / factorial(n);
}

inline HyperMatching hyper_canonicalize(const std::vector<std::vector<int>>& edges, int t, int n) {
  if (t < 1 || n < 0) throw std::invalid_argument("hyper_canonicalize: bad shape");
  if (static_cast<int>(edges.size()) != n)
    throw std::invalid_argument("hyper_canonicalize: expected " + std::to_string(n) +
                                " edges, got " + std::to_string(edges.size()));
  std::vector<char> seen(t * n + 1, 0);
  HyperMatching m;
  m.t = t;
  m.n = n;
  m.edges.reserve(n);
  for (const auto& raw : edges) {
    if (static_cast<int>(raw.size()) != t)
      throw std::invalid_argument("hyper_canonicalize: edge of size " +
                                  std::to_string(raw.size()) + ", expected " + std::to_string(t));
    HyperEdge e;
    e.vertices = raw;
    std::sort(e.vertices.begin(), e.vertices.end());
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      int v = e.vertices[i];
      if (v < 1 || v > t * n)
        throw std::invalid_argument("hyper_canonicalize: vertex " + std::to_string(v) +
                                    " out of range 1.." + std::to_string(t * n));
      if (i > 0 && e.vertices[i] == e.vertices[i - 1])
        throw std::invalid_argument("hyper_canonicalize: vertex " + std::to_string(v) +
                                    " repeated inside an edge");
      if (seen[v])
        throw std::invalid_argument("hyper_canonicalize: vertex " + std::to_string(v) + " repeated");
      seen[v] = 1;
    }
    m.edges.push_back(std::move(e));
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

namespace detail {

template <class Visit>
bool hpm_enumerate_rec(int t, int n, std::vector<int>& free_vertices,
                       std::vector<HyperEdge>& edges, Visit& visit) {
  if (free_vertices.empty()) {
    HyperMatching m{t, n, edges};
    return invoke_visit(visit, m);
  }
  // group the smallest free vertex with each (t-1)-subset of the larger
  // ones, subsets in lexicographic order
  int u = free_vertices.front();
  std::vector<int> rest(free_vertices.begin() + 1, free_vertices.end());
  int r = t - 1;
  int m_avail = static_cast<int>(rest.size());
  std::vector<int> pick(r);
  for (int i = 0; i < r; ++i) pick[i] = i;
  for (;;) {
    HyperEdge e;
    e.vertices.reserve(t);
    e.vertices.push_back(u);
    for (int i : pick) e.vertices.push_back(rest[i]);
    std::vector<int> remaining;
    remaining.reserve(rest.size() - r);
    {
      std::size_t pi = 0;
      for (int i = 0; i < m_avail; ++i) {
        if (pi < pick.size() && pick[pi] == i) {
          ++pi;
        } else {
          remaining.push_back(rest[i]);
        }
      }
    }
    edges.push_back(std::move(e));
    bool keep_going = hpm_enumerate_rec(t, n, remaining, edges, visit);
    edges.pop_back();
    if (!keep_going) return false;
    int i = r - 1;
    while (i >= 0 && pick[i] == m_avail - r + i) --i;
    if (i < 0) return true;
    ++pick[i];
    for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

// Visits every perfect matching of the complete t-uniform hypergraph on tn
// vertices exactly once, in lexicographic order of the canonical form.
// At t = 2 the stream coincides with for_each_pm.
template <class Visit>
bool for_each_hpm(int t, int n, Visit&& visit, bool override_guard = false) {
  if (t < 1 || n < 1) throw std::invalid_argument("for_each_hpm: requires t >= 1, n >= 1");
  if (!override_guard && hyper_pm_count(t, n) > hyper_enumeration_guard)
    throw guard_error("for_each_hpm: " + hyper_pm_count(t, n).str() +
                      " matchings exceed the enumeration guard (override to proceed)");
  std::vector<int> free_vertices(t * n);
  for (int v = 1; v <= t * n; ++v) free_vertices[v - 1] = v;
  std::vector<HyperEdge> edges;
  edges.reserve(n);
  return detail::hpm_enumerate_rec(t, n, free_vertices, edges, visit);
}

inline std::vector<HyperMatching> all_hpms(int t, int n, bool override_guard = false) {
  std::vector<HyperMatching> out;
  for_each_hpm(
      t, n, [&](const HyperMatching& m) { out.push_back(m); }, override_guard);
  return out;
}

// Uniform over all hyper_pm_count(t, n) matchings: the smallest uncovered
// vertex is grouped with a uniformly random (t-1)-subset of the others.
inline HyperMatching random_hpm(int t, int n, Rng& rng) {
  if (t < 1 || n < 1) throw std::invalid_argument("random_hpm: requires t >= 1, n >= 1");
  std::vector<int> free_vertices(t * n);
  for (int v = 1; v <= t * n; ++v) free_vertices[v - 1] = v;
  HyperMatching m;
  m.t = t;
  m.n = n;
  m.edges.reserve(n);
  while (!free_vertices.empty()) {
    HyperEdge e;
    e.vertices.reserve(t);
    e.vertices.push_back(free_vertices.front());
    free_vertices.erase(free_vertices.begin());
    for (int pick = 0; pick < t - 1; ++pick) {
      std::size_t idx = uniform_below(rng, free_vertices.size());
      e.vertices.push_back(free_vertices[idx]);
      free_vertices.erase(free_vertices.begin() + idx);
    }
    std::sort(e.vertices.begin(), e.vertices.end());
    m.edges.push_back(std::move(e));
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

// |M ∩ M'| as t-edge sets.
inline int hyper_agreement(const HyperMatching& m1, const HyperMatching& m2) {
  if (m1.t != m2.t || m1.n != m2.n)
    throw std::invalid_argument("hyper_agreement: mismatched shape");
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < m1.edges.size() && j < m2.edges.size()) {
    if (m1.edges[i] == m2.edges[j]) {
      ++count;
      ++i;
      ++j;
    } else if (m1.edges[i] < m2.edges[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

// All (a_1, ..., a_t) with sum i*a_i = t*x and sum a_i <= n, lexicographic.
inline std::vector<std::vector<int>> composition_vectors(int t, int n, int x) {
  if (t < 1) throw std::invalid_argument("composition_vectors: requires t >= 1");
  detail::require_x_range(n, x, "composition_vectors");
  std::vector<std::vector<int>> out;
  std::vector<int> acc(t, 0);
  auto rec = [&](auto&& self, int i, int weight_left, int blocks) -> void {
    if (i == t) {
      if (weight_left == 0 && blocks <= n) out.push_back(acc);
      return;
    }
    int size = i + 1;  // block size this component counts
    for (int a = 0; a * size <= weight_left; ++a) {
      acc[i] = a;
      self(self, i + 1, weight_left - a * size, blocks + a);
    }
    acc[i] = 0;
  };
  rec(rec, 0, t * x, 0);
  return out;
}

// (tx)! / prod_i ((i!)^{a_i} a_i!), the number of ways to partition tx
// labeled vertices into a_i blocks of size i.
inline BigInt block_partition_count(const std::vector<int>& a, int t, int x) {
  if (static_cast<int>(a.size()) != t)
    throw std::invalid_argument("block_partition_count: vector has " +
                                std::to_string(a.size()) + " components, expected " +
                                std::to_string(t));
  std::int64_t weight = 0;
  for (int i = 0; i < t; ++i) {
    if (a[i] < 0) throw std::invalid_argument("block_partition_count: negative component");
    weight += static_cast<std::int64_t>(i + 1) * a[i];
  }
  if (weight != static_cast<std::int64_t>(t) * x)
    throw std::invalid_argument("block_partition_count: weights sum to " +
                                std::to_string(weight) + ", expected " + std::to_string(t * x));
  BigInt result = factorial(static_cast<std::int64_t>(t) * x);
  for (int i = 0; i < t; ++i) {
    BigInt size_fact = factorial(i + 1);
    for (int c = 0; c < a[i]; ++c) result /= size_fact;
    result /= factorial(a[i]);
  }
  return result;
}

// Total W-analogue pattern count: sum of block_partition_count over all
// composition vectors. At t = 2 this equals w_count(n, x).
inline BigInt n_value(int t, int n, int x) {
  BigInt total = 0;
  for (const auto& v : composition_vectors(t, n, x)) total += block_partition_count(v, t, x);
  return total;
}

// Largest k >= 0 with e*(k * tx * C(tn-1, t-1) * C(n-1, x-1) + 1) <= N.
inline BoundReport conjecture_k_bound(int t, int n, int x) {
  if (t < 2) throw std::invalid_argument("conjecture_k_bound: requires t >= 2");
  detail::require_x_range(n, x, "conjecture_k_bound");
  BigInt c = BigInt(t) * x * binomial(t * n - 1, t - 1) * binomial(n - 1, x - 1);
  auto [k, any] = largest_k_satisfying(c, n_value(t, n, x));
  BoundReport report;
  report.n = n;
  report.x = x;
  report.t = t;
  report.theorem = Theorem::conjecture;
  report.integer_threshold = k;
  report.exact_value = BigRat(k);
  report.vacuous = k == 0;
  (void)any;
  return report;
}

struct HyperEdgeFrequency {
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t max_frequency = 0;
};

inline HyperEdgeFrequency hyper_edge_frequency(const HyperFamily& family) {
  HyperEdgeFrequency freq;
  for (const auto& m : family.members) {
    for (const auto& e : m.edges) {
      std::uint64_t c = ++freq.counts[e.vertices];
      if (c > freq.max_frequency) freq.max_frequency = c;
    }
  }
  return freq;
}

}  // namespace matchcover
