#pragma once

// Perfect matchings of the complete graph on 2n labeled vertices (1-based):
// canonical representation, lexicographic enumeration, uniform sampling,
// and agreement statistics between matchings.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "matchcover/errors.hpp"
#include "matchcover/rng.hpp"

namespace matchcover {

struct Edge {
  int a = 0;
  int b = 0;  // invariant: a < b
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// n disjoint edges covering {1, ..., 2n}, sorted by first endpoint.
// The representation is unique per matching.
struct PerfectMatching {
  int n = 0;
  std::vector<Edge> edges;
  friend auto operator<=>(const PerfectMatching&, const PerfectMatching&) = default;
};

// A matching of size x (not necessarily perfect), edges sorted.
struct XMatching {
  int x = 0;
  std::vector<Edge> edges;
  friend auto operator<=>(const XMatching&, const XMatching&) = default;
};

// Ordered collection of perfect matchings over the same vertex set.
// Duplicates are permitted.
struct MatchingFamily {
  int n = 0;
  std::vector<PerfectMatching> members;

  std::size_t size() const { return members.size(); }
};

// Exhaustive enumeration is refused above this n unless overridden:
// (2n-1)!! grows past desk scale right afterwards.
inline constexpr int enumeration_guard_n = 8;

inline PerfectMatching canonicalize(const std::vector<std::pair<int, int>>& pairs, int n) {
  if (n < 0) throw std::invalid_argument("canonicalize: negative n");
  if (static_cast<int>(pairs.size()) != n)
    throw std::invalid_argument("canonicalize: expected " + std::to_string(n) + " pairs, got " +
                                std::to_string(pairs.size()));
  std::vector<char> seen(2 * n + 1, 0);
  PerfectMatching m;
  m.n = n;
  m.edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    for (int w : {u, v}) {
      if (w < 1 || w > 2 * n)
        throw std::invalid_argument("canonicalize: vertex " + std::to_string(w) +
                                    " out of range 1.." + std::to_string(2 * n));
      if (seen[w]) throw std::invalid_argument("canonicalize: vertex " + std::to_string(w) + " repeated");
      seen[w] = 1;
    }
    if (u == v) throw std::invalid_argument("canonicalize: loop at vertex " + std::to_string(u));
    m.edges.push_back(u < v ? Edge{u, v} : Edge{v, u});
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

namespace detail {

// Visitors may return void (visit everything) or bool (false = stop).
template <class Visit, class Item>
bool invoke_visit(Visit& visit, const Item& item) {
  if constexpr (std::is_void_v<std::invoke_result_t<Visit&, const Item&>>) {
    visit(item);
    return true;
  } else {
    return visit(item);
  }
}

template <class Visit>
bool pm_enumerate_rec(int two_n, int n, std::vector<char>& used, std::vector<Edge>& edges,
                      Visit& visit) {
  int u = 1;
  while (u <= two_n && used[u]) ++u;
  if (u > two_n) {
    PerfectMatching m{n, edges};
    return invoke_visit(visit, m);
  }
  used[u] = 1;
  for (int w = u + 1; w <= two_n; ++w) {
    if (used[w]) continue;
    used[w] = 1;
    edges.push_back({u, w});
    bool keep_going = pm_enumerate_rec(two_n, n, used, edges, visit);
    edges.pop_back();
    used[w] = 0;
    if (!keep_going) {
      used[u] = 0;
      return false;
    }
  }
  used[u] = 0;
  return true;
}

}  // namespace detail

// Visits every perfect matching of K_2n exactly once, in lexicographic order
// of the canonical form (the smallest uncovered vertex is paired with each
// larger uncovered vertex in increasing order). Returns false if the visitor
// stopped the stream early.
template <class Visit>
bool for_each_pm(int n, Visit&& visit, bool override_guard = false) {
  if (n < 1) throw std::invalid_argument("for_each_pm: n must be >= 1");
  if (n > enumeration_guard_n && !override_guard)
    throw guard_error("for_each_pm: n = " + std::to_string(n) + " exceeds enumeration guard " +
                      std::to_string(enumeration_guard_n) + " (override to proceed)");
  std::vector<char> used(2 * n + 1, 0);
  std::vector<Edge> edges;
  edges.reserve(n);
  return detail::pm_enumerate_rec(2 * n, n, used, edges, visit);
}

// Shard of the enumeration with the first edge pinned to (1, partner).
// The 2n-1 shards partition the stream; concatenating them in increasing
// partner order reproduces for_each_pm exactly.
template <class Visit>
bool for_each_pm_first_partner(int n, int partner, Visit&& visit, bool override_guard = false) {
  if (n < 1) throw std::invalid_argument("for_each_pm_first_partner: n must be >= 1");
  if (partner < 2 || partner > 2 * n)
    throw std::invalid_argument("for_each_pm_first_partner: partner out of range");
  if (n > enumeration_guard_n && !override_guard)
    throw guard_error("for_each_pm_first_partner: n exceeds enumeration guard");
  std::vector<char> used(2 * n + 1, 0);
  std::vector<Edge> edges;
  edges.reserve(n);
  used[1] = used[partner] = 1;
  edges.push_back({1, partner});
  return detail::pm_enumerate_rec(2 * n, n, used, edges, visit);
}

inline std::vector<PerfectMatching> all_pms(int n, bool override_guard = false) {
  std::vector<PerfectMatching> out;
  for_each_pm(
      n, [&](const PerfectMatching& m) { out.push_back(m); }, override_guard);
  return out;
}

// Uniform over all (2n-1)!! perfect matchings: repeatedly pair the smallest
// uncovered vertex with a uniformly random other uncovered vertex.
inline PerfectMatching random_pm(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_pm: n must be >= 1");
  std::vector<int> free_vertices(2 * n);
  for (int v = 1; v <= 2 * n; ++v) free_vertices[v - 1] = v;
  PerfectMatching m;
  m.n = n;
  m.edges.reserve(n);
  while (!free_vertices.empty()) {
    int u = free_vertices.front();
    std::size_t idx = 1 + uniform_below(rng, free_vertices.size() - 1);
    int w = free_vertices[idx];
    m.edges.push_back({u, w});  // u is the minimum, so u < w
    free_vertices.erase(free_vertices.begin() + idx);
    free_vertices.erase(free_vertices.begin());
  }
  return m;  // edges already sorted: first endpoints increase by construction
}

// |M ∩ M'| as edge sets.
inline int agreement(const PerfectMatching& m1, const PerfectMatching& m2) {
  if (m1.n != m2.n) throw std::invalid_argument("agreement: mismatched n");
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

// True iff sub's edges (sorted) all occur in m.
inline bool contains_edges(const PerfectMatching& m, const std::vector<Edge>& sub) {
  std::size_t i = 0, j = 0;
  while (i < m.edges.size() && j < sub.size()) {
    if (m.edges[i] == sub[j]) {
      ++i;
      ++j;
    } else if (m.edges[i] < sub[j]) {
      ++i;
    } else {
      return false;
    }
  }
  return j == sub.size();
}

// All C(n, x) size-x subsets of M's edges, in lexicographic index order.
template <class Visit>
void for_each_x_submatching(const PerfectMatching& m, int x, Visit&& visit) {
  if (x < 0 || x > m.n) throw std::invalid_argument("x_submatchings: x out of range");
  std::vector<int> pick(x);
  for (int i = 0; i < x; ++i) pick[i] = i;
  for (;;) {
    XMatching sub;
    sub.x = x;
    sub.edges.reserve(x);
    for (int i : pick) sub.edges.push_back(m.edges[i]);
    if (!detail::invoke_visit(visit, sub)) return;
    int i = x - 1;
    while (i >= 0 && pick[i] == m.n - x + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < x; ++j) pick[j] = pick[j - 1] + 1;
  }
}

inline std::vector<XMatching> x_submatchings(const PerfectMatching& m, int x) {
  std::vector<XMatching> out;
  for_each_x_submatching(m, x, [&](const XMatching& s) { out.push_back(s); });
  return out;
}

// All x-matchings of K_2n (x pairwise disjoint edges), emitted in
// lexicographic order of the sorted edge list.
template <class Visit>
void for_each_x_matching(int n, int x, Visit&& visit) {
  if (x < 0 || x > n) throw std::invalid_argument("for_each_x_matching: x out of range");
  std::vector<char> used(2 * n + 1, 0);
  std::vector<Edge> edges;
  edges.reserve(x);
  bool stopped = false;
  auto rec = [&](auto&& self, Edge last) -> void {
    if (stopped) return;
    if (static_cast<int>(edges.size()) == x) {
      XMatching xm{x, edges};
      if (!detail::invoke_visit(visit, xm)) stopped = true;
      return;
    }
    int a_start = last.a;
    for (int a = a_start; a <= 2 * n - 1 && !stopped; ++a) {
      if (used[a]) continue;
      int b_start = (a == last.a) ? last.b + 1 : a + 1;
      for (int b = b_start; b <= 2 * n && !stopped; ++b) {
        if (used[b]) continue;
        used[a] = used[b] = 1;
        edges.push_back({a, b});
        self(self, {a, b});
        edges.pop_back();
        used[a] = used[b] = 0;
      }
    }
  };
  rec(rec, Edge{1, 1});
}

struct EdgeFrequency {
  std::map<Edge, std::uint64_t> counts;
  std::uint64_t max_frequency = 0;
};

// Occurrence count of each edge across the family; max is 0 for an empty
// family. The sum of all counts is s*n.
inline EdgeFrequency edge_frequency(const MatchingFamily& family) {
  EdgeFrequency freq;
  for (const auto& m : family.members) {
    for (const auto& e : m.edges) {
      std::uint64_t c = ++freq.counts[e];
      if (c > freq.max_frequency) freq.max_frequency = c;
    }
  }
  return freq;
}

// A vertex set U is good w.r.t. M iff |U| <= n and no two vertices of U are
// matched to each other by M.
inline bool is_good_vertex_set(const std::vector<int>& vertices, const PerfectMatching& m) {
  std::vector<char> in_set(2 * m.n + 1, 0);
  for (int v : vertices) {
    if (v < 1 || v > 2 * m.n)
      throw std::invalid_argument("is_good_vertex_set: vertex " + std::to_string(v) +
                                  " out of range");
    in_set[v] = 1;
  }
  int distinct = 0;
  for (int v = 1; v <= 2 * m.n; ++v) distinct += in_set[v];
  if (distinct > m.n) return false;
  for (const auto& e : m.edges)
    if (in_set[e.a] && in_set[e.b]) return false;
  return true;
}

}  // namespace matchcover
