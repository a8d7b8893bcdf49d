#pragma once

// Ground-truth covering oracles and executable verification of the covering
// theorems: exhaustive min-max agreement, the exact threshold f(n, x),
// randomized local search for covering matchings, the tau/Gamma injection
// of the main proof, the B_W partition of the matching space, and
// bounded-frequency family samplers for randomized theorem checks.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matchcover/bounds.hpp"
#include "matchcover/errors.hpp"
#include "matchcover/hypermatchings.hpp"
#include "matchcover/matchings.hpp"
#include "matchcover/parallel.hpp"
#include "matchcover/rng.hpp"

namespace matchcover {

enum class SearchMethod { exhaustive, local_search };

struct SearchEffort {
  std::uint64_t candidates = 0;
  std::uint64_t restarts = 0;
  std::uint64_t steps = 0;
};

// Outcome of a witness search. If a witness is present, its max agreement
// over the family equals `value`; otherwise `value` is the best (smallest)
// max agreement seen, which for the exhaustive method is the exact min-max.
struct CoverResult {
  std::optional<PerfectMatching> witness;
  int value = 0;
  SearchMethod method = SearchMethod::exhaustive;
  SearchEffort effort;
};

// Partition of an x-matching's 2x support vertices into singletons and
// doubletons. Valid patterns have an even singleton count and at most n
// blocks in the ambient K_2n.
struct WPattern {
  std::vector<int> singletons;   // sorted
  std::vector<Edge> doubletons;  // sorted

  int blocks() const { return static_cast<int>(singletons.size() + doubletons.size()); }
};

struct Counterexample {
  MatchingFamily family;
  int min_max_agreement = 0;
};

struct HyperCounterexample {
  HyperFamily family;
  int min_max_agreement = 0;
};

struct ClaimViolation {
  std::string kind;  // "count" | "injectivity" | "membership"
  XMatching x_matching;
  std::vector<XMatching> conditioned_on;  // the sampled set S
  WPattern pattern;
  std::int64_t b_count = 0;
  std::int64_t a_count = 0;
};

struct VerificationReport {
  std::string check;  // "T1" | "T2" | "MAIN" | "counting_claim"
  int n = 0;
  int x = 0;
  std::string mode;  // "exhaustive" | "random"
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t cases_tested = 0;
  BigInt threshold = 0;  // family size s for T1/T2, frequency cap k for MAIN
  bool vacuous = false;
  std::uint64_t family_size_target = 0;  // MAIN only
  std::vector<Counterexample> counterexamples;
  // counting-claim specifics
  std::vector<ClaimViolation> claim_violations;
  std::uint64_t patterns_checked = 0;
  std::uint64_t injections_checked = 0;
  std::uint64_t partition_checks = 0;
  std::uint64_t partition_failures = 0;

  bool passed() const {
    return counterexamples.empty() && claim_violations.empty() && partition_failures == 0;
  }
};

struct ConjectureReport {
  int t = 0;
  int n = 0;
  int x = 0;
  BigInt k = 0;
  BigInt pattern_total = 0;  // the conjecture's N
  bool vacuous = false;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t families_tested = 0;
  std::uint64_t family_size_target = 0;
  std::vector<HyperCounterexample> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

// ---------------------------------------------------------------------------
// Agreement oracles

inline int max_agreement(const PerfectMatching& m, const MatchingFamily& family) {
  if (!family.members.empty() && family.n != m.n)
    throw std::invalid_argument("max_agreement: mismatched n");
  int best = 0;
  for (const auto& member : family.members) best = std::max(best, agreement(m, member));
  return best;
}

inline int hyper_max_agreement(const HyperMatching& m, const HyperFamily& family) {
  if (!family.members.empty() && (family.n != m.n || family.t != m.t))
    throw std::invalid_argument("hyper_max_agreement: mismatched shape");
  int best = 0;
  for (const auto& member : family.members) best = std::max(best, hyper_agreement(m, member));
  return best;
}

// Exhaustive min-max agreement over the given candidate list (must be the
// full lexicographic enumeration for the exact value). Ties resolve to the
// lexicographically first candidate.
inline CoverResult min_max_agreement_scan(const MatchingFamily& family,
                                          const std::vector<PerfectMatching>& candidates) {
  CoverResult result;
  result.method = SearchMethod::exhaustive;
  int best = std::numeric_limits<int>::max();
  for (const auto& candidate : candidates) {
    ++result.effort.candidates;
    int value = max_agreement(candidate, family);
    if (value < best) {
      best = value;
      result.witness = candidate;
      if (best == 0) break;  // cannot improve
    }
  }
  result.value = best == std::numeric_limits<int>::max() ? 0 : best;
  return result;
}

inline CoverResult min_max_agreement(const MatchingFamily& family, bool override_guard = false) {
  if (family.n < 1) throw std::invalid_argument("min_max_agreement: family has no vertex set");
  return min_max_agreement_scan(family, all_pms(family.n, override_guard));
}

// Covering radius n - mu under the distance n - agreement. Undefined for an
// empty family.
inline int covering_radius(const MatchingFamily& family, bool override_guard = false) {
  if (family.members.empty())
    throw std::invalid_argument("covering_radius: empty family has no covering radius");
  return family.n - min_max_agreement(family, override_guard).value;
}

// Scans candidates in order for the first witness with max agreement <= x-1;
// if none exists the result carries the exact min-max value instead.
inline CoverResult exists_good_pm_scan(const MatchingFamily& family, int x,
                                       const std::vector<PerfectMatching>& candidates) {
  if (x < 1 || x > family.n) throw std::invalid_argument("exists_good_pm: x out of range");
  CoverResult result;
  result.method = SearchMethod::exhaustive;
  int best = std::numeric_limits<int>::max();
  PerfectMatching best_m;
  for (const auto& candidate : candidates) {
    ++result.effort.candidates;
    int value = max_agreement(candidate, family);
    if (value < best) {
      best = value;
      best_m = candidate;
    }
    if (value <= x - 1) {
      result.witness = candidate;
      result.value = value;
      return result;
    }
  }
  result.value = best == std::numeric_limits<int>::max() ? 0 : best;
  return result;
}

// Fast yes/no version of the scan above.
inline bool family_has_witness(const MatchingFamily& family, int x,
                               const std::vector<PerfectMatching>& candidates) {
  for (const auto& candidate : candidates) {
    bool good = true;
    for (const auto& member : family.members) {
      if (agreement(candidate, member) >= x) {
        good = false;
        break;
      }
    }
    if (good) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Local search

// Starts from uniform random matchings and repairs violations with 2-edge
// rotations: a shared edge (a,b) and another current edge (c,d) are rewired
// to (a,c)(b,d) or (a,d)(b,c) on a coin flip. Heuristic: absence of a
// witness in the result is not a proof that none exists.
inline CoverResult local_search(const MatchingFamily& family, int x, std::uint64_t seed,
                                std::uint64_t max_restarts = 100, std::uint64_t max_steps = 500) {
  if (x < 1 || x > family.n) throw std::invalid_argument("local_search: x out of range");
  Rng rng = make_rng(seed);
  CoverResult result;
  result.method = SearchMethod::local_search;
  int best = std::numeric_limits<int>::max();
  PerfectMatching best_m;
  std::vector<std::size_t> violators;
  std::vector<Edge> shared;
  for (std::uint64_t restart = 0; restart < max_restarts; ++restart) {
    ++result.effort.restarts;
    PerfectMatching current = random_pm(family.n, rng);
    for (std::uint64_t step = 0;; ++step) {
      violators.clear();
      int worst = 0;
      for (std::size_t i = 0; i < family.members.size(); ++i) {
        int value = agreement(current, family.members[i]);
        worst = std::max(worst, value);
        if (value >= x) violators.push_back(i);
      }
      if (worst < best) {
        best = worst;
        best_m = current;
      }
      if (violators.empty()) {
        result.witness = current;
        result.value = worst;
        return result;
      }
      if (step >= max_steps) break;
      ++result.effort.steps;
      const PerfectMatching& target =
          family.members[violators[uniform_below(rng, violators.size())]];
      shared.clear();
      std::size_t i = 0, j = 0;
      while (i < current.edges.size() && j < target.edges.size()) {
        if (current.edges[i] == target.edges[j]) {
          shared.push_back(current.edges[i]);
          ++i;
          ++j;
        } else if (current.edges[i] < target.edges[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      Edge ab = shared[uniform_below(rng, shared.size())];
      std::size_t ab_pos = 0;
      while (current.edges[ab_pos] != ab) ++ab_pos;
      std::size_t cd_pos = uniform_below(rng, current.edges.size() - 1);
      if (cd_pos >= ab_pos) ++cd_pos;
      Edge cd = current.edges[cd_pos];
      Edge e1, e2;
      if (coin_flip(rng)) {
        e1 = Edge{std::min(ab.a, cd.a), std::max(ab.a, cd.a)};
        e2 = Edge{std::min(ab.b, cd.b), std::max(ab.b, cd.b)};
      } else {
        e1 = Edge{std::min(ab.a, cd.b), std::max(ab.a, cd.b)};
        e2 = Edge{std::min(ab.b, cd.a), std::max(ab.b, cd.a)};
      }
      current.edges[ab_pos] = e1;
      current.edges[cd_pos] = e2;
      std::sort(current.edges.begin(), current.edges.end());
    }
  }
  result.value = best == std::numeric_limits<int>::max() ? 0 : best;
  return result;
}

// Exhaustive witness search below the enumeration guard; beyond it the
// search falls back to seeded local search.
inline CoverResult exists_good_pm(const MatchingFamily& family, int x,
                                  bool override_guard = false) {
  if (x < 1 || x > family.n) throw std::invalid_argument("exists_good_pm: x out of range");
  if (family.n <= enumeration_guard_n || override_guard)
    return exists_good_pm_scan(family, x, all_pms(family.n, override_guard));
  return local_search(family, x, /*seed=*/0);
}

// ---------------------------------------------------------------------------
// Exact threshold f(n, x)

namespace detail {

inline bool next_combination(std::vector<int>& pick, int n_items) {
  int s = static_cast<int>(pick.size());
  int i = s - 1;
  while (i >= 0 && pick[i] == n_items - s + i) --i;
  if (i < 0) return false;
  ++pick[i];
  for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
  return true;
}

}  // namespace detail

// Largest s such that every family of s distinct perfect matchings of K_2n
// admits a witness agreeing with each member in at most x-1 edges. Families
// with duplicates reduce to their support, so scanning distinct sets is
// complete. Iterates s upward; the full family always fails (any witness
// would have to avoid itself), so the scan terminates.
inline std::int64_t f_exact(int n, int x, bool override_guard = false) {
  if (x < 1 || x > n) throw std::invalid_argument("f_exact: x out of range");
  if (n > 3 && !override_guard)
    throw guard_error("f_exact: n = " + std::to_string(n) +
                      " exceeds the exhaustive-family guard (override to proceed)");
  std::vector<PerfectMatching> candidates = all_pms(n, override_guard);
  const int total = static_cast<int>(candidates.size());
  MatchingFamily family;
  family.n = n;
  for (int s = 1; s <= total; ++s) {
    std::vector<int> pick(s);
    for (int i = 0; i < s; ++i) pick[i] = i;
    do {
      family.members.clear();
      for (int i : pick) family.members.push_back(candidates[i]);
      if (!family_has_witness(family, x, candidates)) return s - 1;
    } while (detail::next_combination(pick, total));
  }
  return total;  // unreachable: the full family never has a witness
}

// ---------------------------------------------------------------------------
// Bounded-frequency family samplers

struct FamilySample {
  MatchingFamily family;
  bool reached_target = false;
  std::uint64_t draws = 0;
};

struct HyperFamilySample {
  HyperFamily family;
  bool reached_target = false;
  std::uint64_t draws = 0;
};

// Greedy rejection sampler: uniform draws are accepted while no edge count
// would exceed k, until target_s members are accepted or the draw budget
// (1000 * target_s) runs out. The result always satisfies the frequency cap;
// reached_target reports whether the target size was attained.
inline FamilySample random_family_bounded_frequency(int n, std::uint64_t k,
                                                    std::uint64_t target_s, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_family_bounded_frequency: n must be >= 1");
  if (k < 1) throw std::invalid_argument("random_family_bounded_frequency: k must be >= 1");
  // s*n edge slots never exceed k * n(2n-1) total capacity
  if (target_s > k * static_cast<std::uint64_t>(2 * n - 1))
    throw std::invalid_argument("random_family_bounded_frequency: target_s exceeds the counting bound k*(2n-1)");
  FamilySample sample;
  sample.family.n = n;
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  counts.reserve(static_cast<std::size_t>(n) * (2 * n - 1));
  auto key = [n](const Edge& e) {
    return static_cast<std::uint64_t>(e.a) * (2 * n + 1) + e.b;
  };
  const std::uint64_t budget = 1000 * target_s;
  while (sample.family.size() < target_s && sample.draws < budget) {
    ++sample.draws;
    PerfectMatching m = random_pm(n, rng);
    bool ok = true;
    for (const auto& e : m.edges) {
      auto it = counts.find(key(e));
      if (it != counts.end() && it->second >= k) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto& e : m.edges) ++counts[key(e)];
    sample.family.members.push_back(std::move(m));
  }
  sample.reached_target = sample.family.size() == target_s;
  return sample;
}

inline HyperFamilySample random_hyper_family_bounded_frequency(int t, int n, std::uint64_t k,
                                                               std::uint64_t target_s, Rng& rng) {
  if (t < 1 || n < 1)
    throw std::invalid_argument("random_hyper_family_bounded_frequency: bad shape");
  if (k < 1) throw std::invalid_argument("random_hyper_family_bounded_frequency: k must be >= 1");
  HyperFamilySample sample;
  sample.family.t = t;
  sample.family.n = n;
  const bool use_masks = t * n <= 22;
  std::vector<std::uint32_t> mask_counts;
  if (use_masks) mask_counts.assign(std::size_t{1} << (t * n), 0);
  std::map<std::vector<int>, std::uint32_t> map_counts;
  auto mask_of = [](const HyperEdge& e) {
    std::uint32_t m = 0;
    for (int v : e.vertices) m |= std::uint32_t{1} << (v - 1);
    return m;
  };
  const std::uint64_t budget = 1000 * target_s;
  while (sample.family.size() < target_s && sample.draws < budget) {
    ++sample.draws;
    HyperMatching m = random_hpm(t, n, rng);
    bool ok = true;
    for (const auto& e : m.edges) {
      std::uint32_t c = use_masks ? mask_counts[mask_of(e)] : map_counts[e.vertices];
      if (c >= k) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto& e : m.edges) {
      if (use_masks)
        ++mask_counts[mask_of(e)];
      else
        ++map_counts[e.vertices];
    }
    sample.family.members.push_back(std::move(m));
  }
  sample.reached_target = sample.family.size() == target_s;
  return sample;
}

// Uniform x-matching of K_2n: a uniform perfect matching restricted to a
// uniform x-subset of its edges (every x-matching arises with equal weight).
inline XMatching random_x_matching(int n, int x, Rng& rng) {
  if (x < 0 || x > n) throw std::invalid_argument("random_x_matching: x out of range");
  PerfectMatching m = random_pm(n, rng);
  std::vector<int> idx(m.edges.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  for (int i = 0; i < x; ++i) {
    std::size_t j = i + uniform_below(rng, idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  XMatching result;
  result.x = x;
  for (int i = 0; i < x; ++i) result.edges.push_back(m.edges[idx[i]]);
  std::sort(result.edges.begin(), result.edges.end());
  return result;
}

// ---------------------------------------------------------------------------
// W patterns, the tau normalization and the Gamma injection

// Edges of M outside X, each directed small-to-large, ordered by first
// component. Injective on the matchings containing X.
inline std::vector<std::pair<int, int>> tau_normalize(const PerfectMatching& m,
                                                      const XMatching& x_matching) {
  if (!contains_edges(m, x_matching.edges))
    throw std::invalid_argument("tau_normalize: X is not contained in M");
  std::vector<std::pair<int, int>> out;
  out.reserve(m.edges.size() - x_matching.edges.size());
  std::size_t j = 0;
  for (const auto& e : m.edges) {
    if (j < x_matching.edges.size() && e == x_matching.edges[j]) {
      ++j;
      continue;
    }
    out.emplace_back(e.a, e.b);  // already a < b; m.edges sorted by first
  }
  return out;
}

inline std::vector<int> support_of(const std::vector<Edge>& edges) {
  std::vector<int> vertices;
  vertices.reserve(2 * edges.size());
  for (const auto& e : edges) {
    vertices.push_back(e.a);
    vertices.push_back(e.b);
  }
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

inline std::vector<int> w_support(const WPattern& w) {
  std::vector<int> vertices = w.singletons;
  for (const auto& e : w.doubletons) {
    vertices.push_back(e.a);
    vertices.push_back(e.b);
  }
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}

// M realizes pattern W: all doubletons of W are edges of M and no edge of M
// joins two singletons of W.
inline bool matches_w_pattern(const PerfectMatching& m, const WPattern& w) {
  if (!contains_edges(m, w.doubletons)) return false;
  if (w.singletons.empty()) return true;
  for (const auto& e : m.edges) {
    bool a_single = std::binary_search(w.singletons.begin(), w.singletons.end(), e.a);
    bool b_single = std::binary_search(w.singletons.begin(), w.singletons.end(), e.b);
    if (a_single && b_single) return false;
  }
  return true;
}

// All singleton/doubleton partitions of the given support with at most
// ambient_n blocks, i.e. every pattern a perfect matching of K_{2*ambient_n}
// can realize on that support.
template <class Visit>
void for_each_w_pattern(const std::vector<int>& support, int ambient_n, Visit&& visit) {
  std::vector<int> remaining = support;
  std::sort(remaining.begin(), remaining.end());
  std::vector<int> singles;
  std::vector<Edge> doubles;
  bool stopped = false;
  auto rec = [&](auto&& self) -> void {
    if (stopped) return;
    if (remaining.empty()) {
      if (static_cast<int>(singles.size() + doubles.size()) <= ambient_n) {
        WPattern w{singles, doubles};
        if (!detail::invoke_visit(visit, w)) stopped = true;
      }
      return;
    }
    int u = remaining.front();
    remaining.erase(remaining.begin());
    // u as a singleton
    singles.push_back(u);
    self(self);
    singles.pop_back();
    // u paired with each later vertex
    for (std::size_t i = 0; i < remaining.size() && !stopped; ++i) {
      int w_vertex = remaining[i];
      remaining.erase(remaining.begin() + i);
      doubles.push_back({u, w_vertex});
      self(self);
      doubles.pop_back();
      remaining.insert(remaining.begin() + i, w_vertex);
    }
    remaining.insert(remaining.begin(), u);
  };
  rec(rec);
}

inline std::vector<WPattern> w_patterns_on(const std::vector<int>& support, int ambient_n) {
  std::vector<WPattern> out;
  for_each_w_pattern(support, ambient_n, [&](const WPattern& w) {
    WPattern copy = w;
    std::sort(copy.doubletons.begin(), copy.doubletons.end());
    out.push_back(std::move(copy));
  });
  return out;
}

// The injection from matchings containing X into the realizers of W: flatten
// tau(M \ X) into a vertex string, pair its first 2p vertices with W's
// singletons in natural order, refold the remainder into its original edges,
// and adjoin W's doubletons. When W's doubletons are exactly X's edges the
// map is the identity.
inline PerfectMatching gamma_map(const PerfectMatching& m, const XMatching& x_matching,
                                 const WPattern& w) {
  if (!contains_edges(m, x_matching.edges))
    throw std::invalid_argument("gamma_map: X is not contained in M");
  if (w_support(w) != support_of(x_matching.edges))
    throw std::invalid_argument("gamma_map: W does not partition X's support");
  if (w.singletons.size() % 2 != 0)
    throw std::invalid_argument("gamma_map: odd singleton count");
  std::vector<std::pair<int, int>> tau = tau_normalize(m, x_matching);
  std::vector<int> string;
  string.reserve(2 * tau.size());
  for (const auto& [a, b] : tau) {
    string.push_back(a);
    string.push_back(b);
  }
  if (w.singletons.size() > string.size())
    throw std::invalid_argument("gamma_map: W has more singletons than M \\ X can absorb");
  PerfectMatching out;
  out.n = m.n;
  out.edges = w.doubletons;
  for (std::size_t i = 0; i < w.singletons.size(); ++i) {
    int u = w.singletons[i], v = string[i];
    out.edges.push_back(u < v ? Edge{u, v} : Edge{v, u});
  }
  for (std::size_t i = w.singletons.size(); i < string.size(); i += 2) {
    // positions past the absorbed prefix still align with original edges
    out.edges.push_back({string[i], string[i + 1]});
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

// ---------------------------------------------------------------------------
// Proof-claim verifiers

inline constexpr int claim_guard_n = 5;

// Every perfect matching of K_2n realizes exactly one pattern over X's
// support, the number of patterns equals w_count(n, x), and the pattern
// class sizes add up to pm_count(n).
inline bool b_w_partition_check(int n, int x, const XMatching& x_matching,
                                bool override_guard = false) {
  if (x < 1 || x > n) throw std::invalid_argument("b_w_partition_check: x out of range");
  if (n > claim_guard_n && !override_guard)
    throw guard_error("b_w_partition_check: n exceeds the claim guard (override to proceed)");
  std::vector<WPattern> patterns = w_patterns_on(support_of(x_matching.edges), n);
  if (BigInt(static_cast<std::int64_t>(patterns.size())) != w_count(n, x)) return false;
  BigInt seen = 0;
  bool ok = true;
  for_each_pm(n, [&](const PerfectMatching& m) {
    int hits = 0;
    for (const auto& w : patterns)
      if (matches_w_pattern(m, w)) ++hits;
    if (hits != 1) {
      ok = false;
      return false;
    }
    ++seen;
    return true;
  });
  return ok && seen == pm_count(n);
}

namespace detail {

struct ClaimTrialResult {
  std::vector<ClaimViolation> violations;
  std::uint64_t patterns_checked = 0;
  std::uint64_t injections_checked = 0;
  bool partition_ok = true;
};

inline ClaimTrialResult run_claim_trial(int n, int x, std::uint64_t trial_seed,
                                        const std::vector<PerfectMatching>& pms) {
  ClaimTrialResult result;
  Rng rng = make_rng(trial_seed);
  XMatching x_matching = random_x_matching(n, x, rng);

  // Condition on a set S of x-matchings vertex-disjoint from X (the events
  // outside the dependency neighbourhood); possible only when 2x <= n.
  std::vector<XMatching> s_set;
  if (2 * x <= n) {
    std::vector<int> complement;
    std::vector<char> in_support(2 * n + 1, 0);
    for (const auto& e : x_matching.edges) in_support[e.a] = in_support[e.b] = 1;
    for (int v = 1; v <= 2 * n; ++v)
      if (!in_support[v]) complement.push_back(v);
    std::uint64_t want = uniform_below(rng, 4);  // 0..3 conditioned events
    for (std::uint64_t i = 0; i < want; ++i) {
      XMatching virt = random_x_matching(n - x, x, rng);
      XMatching mapped;
      mapped.x = x;
      for (const auto& e : virt.edges)
        mapped.edges.push_back({complement[e.a - 1], complement[e.b - 1]});
      std::sort(mapped.edges.begin(), mapped.edges.end());
      s_set.push_back(std::move(mapped));
    }
    std::sort(s_set.begin(), s_set.end());
    s_set.erase(std::unique(s_set.begin(), s_set.end()), s_set.end());
  }

  std::vector<char> in_e(pms.size(), 1);
  for (std::size_t i = 0; i < pms.size(); ++i)
    for (const auto& forbidden : s_set)
      if (contains_edges(pms[i], forbidden.edges)) {
        in_e[i] = 0;
        break;
      }

  std::vector<std::size_t> a_members;
  for (std::size_t i = 0; i < pms.size(); ++i)
    if (in_e[i] && contains_edges(pms[i], x_matching.edges)) a_members.push_back(i);

  auto find_index = [&](const PerfectMatching& m) -> std::size_t {
    auto it = std::lower_bound(pms.begin(), pms.end(), m);
    return static_cast<std::size_t>(it - pms.begin());  // pms is sorted and complete
  };

  for (const WPattern& w : w_patterns_on(support_of(x_matching.edges), n)) {
    ++result.patterns_checked;
    std::int64_t b_count = 0;
    for (std::size_t i = 0; i < pms.size(); ++i)
      if (in_e[i] && matches_w_pattern(pms[i], w)) ++b_count;
    if (b_count < static_cast<std::int64_t>(a_members.size()))
      result.violations.push_back({"count", x_matching, s_set, w, b_count,
                                   static_cast<std::int64_t>(a_members.size())});
    std::set<std::size_t> images;
    for (std::size_t i : a_members) {
      PerfectMatching image = gamma_map(pms[i], x_matching, w);
      std::size_t idx = find_index(image);
      ++result.injections_checked;
      if (idx >= pms.size() || pms[idx] != image || !in_e[idx] ||
          !matches_w_pattern(image, w)) {
        result.violations.push_back({"membership", x_matching, s_set, w, b_count,
                                     static_cast<std::int64_t>(a_members.size())});
        continue;
      }
      if (!images.insert(idx).second)
        result.violations.push_back({"injectivity", x_matching, s_set, w, b_count,
                                     static_cast<std::int64_t>(a_members.size())});
    }
  }
  result.partition_ok = b_w_partition_check(n, x, x_matching);
  return result;
}

}  // namespace detail

// Randomized check of the proof's counting claim |B_W ∩ E| >= |A_X ∩ E|,
// including membership and injectivity of the Gamma map, plus the B_W
// partition property, for `trials` sampled (X, S) configurations.
inline VerificationReport verify_counting_claim(int n, int x, std::uint64_t trials,
                                                std::uint64_t seed, bool override_guard = false) {
  if (x < 1 || x > n) throw std::invalid_argument("verify_counting_claim: x out of range");
  if (n > claim_guard_n && !override_guard)
    throw guard_error("verify_counting_claim: n exceeds the claim guard (override to proceed)");
  VerificationReport report;
  report.check = "counting_claim";
  report.n = n;
  report.x = x;
  report.mode = "random";
  report.seed = seed;
  report.samples = trials;
  const std::vector<PerfectMatching> pms = all_pms(n, override_guard);
  auto trial_results = parallel_map<detail::ClaimTrialResult>(trials, [&](std::size_t i) {
    return detail::run_claim_trial(n, x, substream_seed(seed, i), pms);
  });
  for (const auto& tr : trial_results) {
    ++report.cases_tested;
    report.patterns_checked += tr.patterns_checked;
    report.injections_checked += tr.injections_checked;
    ++report.partition_checks;
    if (!tr.partition_ok) ++report.partition_failures;
    for (const auto& v : tr.violations) report.claim_violations.push_back(v);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Theorem verification

enum class VerifyMode { exhaustive, random };

inline constexpr std::uint64_t family_enumeration_guard = 2'000'000;

namespace detail {

inline std::uint64_t to_u64(const BigInt& v, const char* what) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
    throw guard_error(std::string(what) + " does not fit a 64-bit count: " + v.str());
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

// T1/T2: checks that every family (exhaustive mode: every set of s distinct
// matchings; random mode: `samples` sampled families of size s) at the
// theorem's threshold s admits a witness. MAIN: samples bounded-frequency
// families at the frequency threshold k and checks each. Counterexamples are
// recorded verbatim; none are expected.
inline VerificationReport verify_theorem(Theorem theorem, int n, int x, VerifyMode mode,
                                         std::uint64_t samples, std::uint64_t seed,
                                         bool override_guard = false,
                                         std::optional<std::uint64_t> frequency_cap = {}) {
  if (x < 1 || x > n) throw std::invalid_argument("verify_theorem: x out of range");
  VerificationReport report;
  report.check = theorem_name(theorem);
  report.n = n;
  report.x = x;
  report.mode = mode == VerifyMode::exhaustive ? "exhaustive" : "random";
  report.seed = seed;
  report.samples = mode == VerifyMode::random ? samples : 0;

  const std::vector<PerfectMatching> candidates = all_pms(n, override_guard);

  if (theorem == Theorem::main) {
    if (mode != VerifyMode::random)
      throw std::invalid_argument(
          "verify_theorem: MAIN admits random mode only (families are unbounded)");
    BoundReport bound = main_k_bound(n, x);
    std::uint64_t k =
        frequency_cap ? *frequency_cap : detail::to_u64(bound.integer_threshold, "main k bound");
    report.threshold = k;
    report.vacuous = !frequency_cap && bound.vacuous;
    if (report.vacuous) return report;  // nothing non-trivial to test; reported, not passed silently
    if (k < 1) throw std::invalid_argument("verify_theorem: frequency cap must be >= 1");
    const std::uint64_t target_s = k * static_cast<std::uint64_t>(2 * n - 1);
    report.family_size_target = target_s;
    auto failures =
        parallel_map<std::optional<MatchingFamily>>(samples, [&](std::size_t i) {
          Rng rng = make_rng(substream_seed(seed, i));
          FamilySample sample = random_family_bounded_frequency(n, k, target_s, rng);
          if (family_has_witness(sample.family, x, candidates))
            return std::optional<MatchingFamily>{};
          return std::optional<MatchingFamily>{std::move(sample.family)};
        });
    for (auto& failure : failures) {
      ++report.cases_tested;
      if (failure)
        report.counterexamples.push_back(
            {std::move(*failure), exists_good_pm_scan(*failure, x, candidates).value});
    }
    return report;
  }

  BoundReport bound = theorem == Theorem::t1 ? thm1_bound(n, x) : thm2_bound(n, x);
  report.threshold = bound.integer_threshold;
  report.vacuous = bound.vacuous;
  if (report.vacuous) return report;
  const std::uint64_t s = detail::to_u64(bound.integer_threshold, "family size threshold");

  if (mode == VerifyMode::exhaustive) {
    // Distinct sets suffice: duplicates never change the max agreement, and a
    // failing smaller support extends to a failing set of size s.
    if (s > candidates.size()) return report;  // no family of that size exists
    BigInt family_count =
        binomial(static_cast<std::int64_t>(candidates.size()), static_cast<std::int64_t>(s));
    if (family_count > family_enumeration_guard && !override_guard)
      throw guard_error("verify_theorem: " + family_count.str() +
                        " families exceed the exhaustive guard (override to proceed)");
    MatchingFamily family;
    family.n = n;
    std::vector<int> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = static_cast<int>(i);
    do {
      family.members.clear();
      for (int i : pick) family.members.push_back(candidates[i]);
      ++report.cases_tested;
      if (!family_has_witness(family, x, candidates))
        report.counterexamples.push_back(
            {family, exists_good_pm_scan(family, x, candidates).value});
    } while (detail::next_combination(pick, static_cast<int>(candidates.size())));
    return report;
  }

  if (s > family_enumeration_guard && !override_guard)
    throw guard_error("verify_theorem: sampled family size " + std::to_string(s) +
                      " exceeds the guard (override to proceed)");
  auto failures = parallel_map<std::optional<MatchingFamily>>(samples, [&](std::size_t i) {
    Rng rng = make_rng(substream_seed(seed, i));
    MatchingFamily family;
    family.n = n;
    family.members.reserve(s);
    for (std::uint64_t j = 0; j < s; ++j) family.members.push_back(random_pm(n, rng));
    if (family_has_witness(family, x, candidates)) return std::optional<MatchingFamily>{};
    return std::optional<MatchingFamily>{std::move(family)};
  });
  for (auto& failure : failures) {
    ++report.cases_tested;
    if (failure)
      report.counterexamples.push_back(
          {std::move(*failure), exists_good_pm_scan(*failure, x, candidates).value});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Conjecture harness (t-uniform hypergraphs)

// Samples bounded-frequency hyper-families at the conjectured threshold k and
// searches each exhaustively for a hyper-matching agreeing with every member
// in at most x-1 edges. A counterexample here would refute the conjecture;
// it is recorded in full.
inline ConjectureReport verify_conjecture(int t, int n, int x, std::uint64_t samples,
                                          std::uint64_t seed, bool override_guard = false,
                                          std::optional<std::uint64_t> frequency_cap = {}) {
  BoundReport bound = conjecture_k_bound(t, n, x);
  ConjectureReport report;
  report.t = t;
  report.n = n;
  report.x = x;
  report.pattern_total = n_value(t, n, x);
  report.seed = seed;
  report.samples = samples;
  std::uint64_t k =
      frequency_cap ? *frequency_cap : detail::to_u64(bound.integer_threshold, "conjecture k bound");
  report.k = k;
  report.vacuous = !frequency_cap && bound.vacuous;
  if (report.vacuous) return report;
  if (k < 1) throw std::invalid_argument("verify_conjecture: frequency cap must be >= 1");

  const std::vector<HyperMatching> candidates = all_hpms(t, n, override_guard);
  // s*n edge slots against k * C(tn, t) capacity
  const std::uint64_t target_s =
      detail::to_u64(BigInt(k) * binomial(t * n, t) / n, "conjecture family size");
  report.family_size_target = target_s;

  auto failures = parallel_map<std::optional<HyperFamily>>(samples, [&](std::size_t i) {
    Rng rng = make_rng(substream_seed(seed, i));
    HyperFamilySample sample = random_hyper_family_bounded_frequency(t, n, k, target_s, rng);
    for (const auto& candidate : candidates) {
      bool good = true;
      for (const auto& member : sample.family.members) {
        if (hyper_agreement(candidate, member) >= x) {
          good = false;
          break;
        }
      }
      if (good) return std::optional<HyperFamily>{};
    }
    return std::optional<HyperFamily>{std::move(sample.family)};
  });
  for (auto& failure : failures) {
    ++report.families_tested;
    if (failure) {
      int best = std::numeric_limits<int>::max();
      for (const auto& candidate : candidates)
        best = std::min(best, hyper_max_agreement(candidate, *failure));
      report.counterexamples.push_back({std::move(*failure), best});
    }
  }
  return report;
}

}  // namespace matchcover
