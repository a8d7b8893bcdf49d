#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "matchcover/covering.hpp"

using namespace matchcover;

namespace {

PerfectMatching pm(int n, std::vector<std::pair<int, int>> pairs) {
  return canonicalize(pairs, n);
}

XMatching xm(std::vector<Edge> edges) {
  XMatching x;
  x.x = static_cast<int>(edges.size());
  x.edges = std::move(edges);
  std::sort(x.edges.begin(), x.edges.end());
  return x;
}

}  // namespace

TEST_CASE("max_agreement over a family") {
  auto pms = all_pms(2);
  PerfectMatching m = pms[0];
  CHECK(max_agreement(m, MatchingFamily{2, {m}}) == 2);
  CHECK(max_agreement(m, MatchingFamily{2, {pms[1], pms[2]}}) == 0);
  CHECK(max_agreement(m, MatchingFamily{2, {}}) == 0);
}

TEST_CASE("min_max_agreement exhaustive oracle") {
  auto pms = all_pms(2);

  SECTION("all three matchings of K4 force mu = 2") {
    CoverResult r = min_max_agreement(MatchingFamily{2, pms});
    CHECK(r.value == 2);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == pms[0]);  // lexicographic-first tie-break
  }

  SECTION("a single matching of K4 admits a disjoint cover") {
    CoverResult r = min_max_agreement(MatchingFamily{2, {pms[0]}});
    CHECK(r.value == 0);
    REQUIRE(r.witness.has_value());
    CHECK(agreement(*r.witness, pms[0]) == 0);
  }

  SECTION("all 15 matchings of K6 force mu = 3") {
    CoverResult r = min_max_agreement(MatchingFamily{3, all_pms(3)});
    CHECK(r.value == 3);
  }
}

TEST_CASE("covering_radius identities") {
  auto pms = all_pms(2);
  CHECK(covering_radius(MatchingFamily{2, pms}) == 0);
  CHECK(covering_radius(MatchingFamily{2, {pms[0]}}) == 2);
  CHECK(covering_radius(MatchingFamily{3, {pm(3, {{1, 2}, {3, 4}, {5, 6}})}}) == 3);
  CHECK_THROWS_AS(covering_radius(MatchingFamily{2, {}}), std::invalid_argument);

  SECTION("radius + mu = n for nonempty families") {
    Rng rng = make_rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + static_cast<int>(uniform_below(rng, 3));
      MatchingFamily family{n, {}};
      std::uint64_t s = 1 + uniform_below(rng, 5);
      for (std::uint64_t i = 0; i < s; ++i) family.members.push_back(random_pm(n, rng));
      REQUIRE(covering_radius(family) + min_max_agreement(family).value == n);
    }
  }
}

TEST_CASE("exists_good_pm witness search") {
  auto pms = all_pms(2);

  SECTION("two matchings of K4 at x = 1: the third matching is the witness") {
    CoverResult r = exists_good_pm(MatchingFamily{2, {pms[0], pms[1]}}, 1);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == pms[2]);
    CHECK(r.value == 0);
  }

  SECTION("all three at x = 1: no witness, value is the exact min-max") {
    CoverResult r = exists_good_pm(MatchingFamily{2, pms}, 1);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.value == 2);
  }

  SECTION("the full family at x = n never has a witness") {
    for (int n = 2; n <= 3; ++n) {
      CoverResult r = exists_good_pm(MatchingFamily{n, all_pms(n)}, n);
      REQUIRE_FALSE(r.witness.has_value());
      REQUIRE(r.value == n);  // every candidate self-agrees
    }
  }

  SECTION("agrees with min_max_agreement over random families at n <= 4") {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      int n = 2 + static_cast<int>(uniform_below(rng, 3));
      MatchingFamily family{n, {}};
      std::uint64_t s = 1 + uniform_below(rng, 6);
      for (std::uint64_t i = 0; i < s; ++i) family.members.push_back(random_pm(n, rng));
      int x = 1 + static_cast<int>(uniform_below(rng, n));
      int mu = min_max_agreement(family).value;
      CoverResult r = exists_good_pm(family, x);
      REQUIRE(r.witness.has_value() == (mu <= x - 1));
      if (r.witness) REQUIRE(max_agreement(*r.witness, family) == r.value);
    }
  }

  SECTION("witness exists iff mu <= x-1 over the full family lattice of K4") {
    auto pms = all_pms(2);
    for (int mask = 1; mask < 8; ++mask) {
      MatchingFamily family{2, {}};
      for (int i = 0; i < 3; ++i)
        if (mask & (1 << i)) family.members.push_back(pms[i]);
      int mu = min_max_agreement(family).value;
      for (int x = 1; x <= 2; ++x)
        REQUIRE(exists_good_pm(family, x).witness.has_value() == (mu <= x - 1));
    }
  }
}

TEST_CASE("f_exact thresholds") {
  CHECK(f_exact(2, 1) == 2);
  CHECK(f_exact(2, 2) == 2);
  CHECK(f_exact(3, 3) == 14);
  CHECK_THROWS_AS(f_exact(4, 1), guard_error);

  SECTION("failure exactly at the full family on the diagonal") {
    for (int n = 2; n <= 3; ++n) REQUIRE(BigInt(f_exact(n, n)) == pm_count(n) - 1);
  }

  SECTION("f dominates both union-bound thresholds for n in {2, 3}") {
    for (int n = 2; n <= 3; ++n)
      for (int x = 1; x <= n; ++x) {
        BigInt f(f_exact(n, x));
        REQUIRE(f >= thm1_bound(n, x).integer_threshold);
        REQUIRE(f >= thm2_bound(n, x).integer_threshold);
      }
  }
}

TEST_CASE("local_search") {
  auto pms2 = all_pms(2);

  SECTION("no witness exists: returns the best non-witness value") {
    CoverResult r = local_search(MatchingFamily{2, pms2}, 1, /*seed=*/3, 10, 50);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.value == 2);
    CHECK(r.method == SearchMethod::local_search);
  }

  SECTION("finds witnesses whenever the exhaustive oracle does (200 random n=3 families)") {
    Rng rng = make_rng(2024);
    auto pms3 = all_pms(3);
    int solvable = 0, found = 0;
    for (int trial = 0; trial < 200; ++trial) {
      MatchingFamily family{3, {}};
      std::uint64_t s = 1 + uniform_below(rng, 6);
      for (std::uint64_t i = 0; i < s; ++i) family.members.push_back(random_pm(3, rng));
      int x = 1 + static_cast<int>(uniform_below(rng, 3));
      if (!exists_good_pm_scan(family, x, pms3).witness) continue;
      ++solvable;
      CoverResult r = local_search(family, x, /*seed=*/1000 + trial, 100, 200);
      if (r.witness) {
        ++found;
        REQUIRE(max_agreement(*r.witness, family) <= x - 1);
      }
    }
    REQUIRE(solvable > 100);
    REQUIRE(found >= solvable * 99 / 100);
  }

  SECTION("single-member family at n=5: witness within one restart in >= 95% of 1000 runs") {
    Rng rng = make_rng(77);
    int hits = 0;
    for (int run = 0; run < 1000; ++run) {
      MatchingFamily family{5, {random_pm(5, rng)}};
      CoverResult r = local_search(family, 1, /*seed=*/run, /*max_restarts=*/1, /*max_steps=*/200);
      if (r.witness) {
        ++hits;
        REQUIRE(agreement(*r.witness, family.members[0]) == 0);
        REQUIRE(r.effort.restarts == 1);
      }
    }
    REQUIRE(hits >= 950);
  }

  SECTION("deterministic per seed") {
    MatchingFamily family{4, {}};
    Rng rng = make_rng(8);
    for (int i = 0; i < 6; ++i) family.members.push_back(random_pm(4, rng));
    CoverResult a = local_search(family, 2, 5, 20, 100);
    CoverResult b = local_search(family, 2, 5, 20, 100);
    REQUIRE(a.witness == b.witness);
    REQUIRE(a.value == b.value);
    REQUIRE(a.effort.steps == b.effort.steps);
  }
}

TEST_CASE("random_family_bounded_frequency") {
  SECTION("k at least target_s: the constraint never binds") {
    Rng rng = make_rng(21);
    FamilySample sample = random_family_bounded_frequency(3, 10, 10, rng);
    CHECK(sample.reached_target);
    CHECK(sample.draws == 10);
    CHECK(sample.family.size() == 10);
  }

  SECTION("n=2, k=1, target 3: exactly the three pairwise-disjoint matchings") {
    Rng rng = make_rng(33);
    FamilySample sample = random_family_bounded_frequency(2, 1, 3, rng);
    REQUIRE(sample.reached_target);
    std::set<PerfectMatching> got(sample.family.members.begin(), sample.family.members.end());
    std::set<PerfectMatching> want;
    for (const auto& m : all_pms(2)) want.insert(m);
    CHECK(got == want);
  }

  SECTION("output always satisfies the frequency cap") {
    Rng rng = make_rng(55);
    for (int trial = 0; trial < 10; ++trial) {
      std::uint64_t k = 1 + uniform_below(rng, 3);
      FamilySample sample = random_family_bounded_frequency(4, k, k * 7, rng);
      REQUIRE(edge_frequency(sample.family).max_frequency <= k);
    }
  }

  SECTION("target above the counting bound is rejected") {
    Rng rng = make_rng(1);
    CHECK_THROWS_AS(random_family_bounded_frequency(3, 2, 11, rng), std::invalid_argument);
  }
}

TEST_CASE("tau_normalize directs and orders the edges outside X") {
  PerfectMatching m = pm(4, {{1, 5}, {2, 6}, {3, 7}, {4, 8}});
  CHECK(tau_normalize(m, xm({{1, 5}, {2, 6}})) ==
        std::vector<std::pair<int, int>>{{3, 7}, {4, 8}});

  PerfectMatching m3 = pm(3, {{1, 2}, {3, 4}, {5, 6}});
  CHECK(tau_normalize(m3, xm({{1, 2}})) == std::vector<std::pair<int, int>>{{3, 4}, {5, 6}});
  CHECK(tau_normalize(m3, xm({{1, 2}, {3, 4}, {5, 6}})).empty());
  CHECK_THROWS_AS(tau_normalize(m3, xm({{1, 3}})), std::invalid_argument);
}

TEST_CASE("gamma_map") {
  SECTION("spec-level worked example") {
    PerfectMatching m = pm(3, {{1, 2}, {3, 4}, {5, 6}});
    WPattern w;
    w.singletons = {1, 2};
    PerfectMatching image = gamma_map(m, xm({{1, 2}}), w);
    CHECK(image == pm(3, {{1, 3}, {2, 4}, {5, 6}}));
  }

  SECTION("identity when W's doubletons are X's edges") {
    Rng rng = make_rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
      int n = 2 + static_cast<int>(uniform_below(rng, 4));  // 2..5
      PerfectMatching m = random_pm(n, rng);
      int x = 1 + static_cast<int>(uniform_below(rng, n));
      auto subs = x_submatchings(m, x);
      const XMatching& x_matching = subs[uniform_below(rng, subs.size())];
      WPattern w;
      w.doubletons = x_matching.edges;
      REQUIRE(gamma_map(m, x_matching, w) == m);
    }
  }

  SECTION("image always realizes the pattern") {
    Rng rng = make_rng(18);
    for (int trial = 0; trial < 300; ++trial) {
      int n = 2 + static_cast<int>(uniform_below(rng, 3));  // 2..4
      PerfectMatching m = random_pm(n, rng);
      int x = 1 + static_cast<int>(uniform_below(rng, n));
      auto subs = x_submatchings(m, x);
      const XMatching& x_matching = subs[uniform_below(rng, subs.size())];
      auto patterns = w_patterns_on(support_of(x_matching.edges), n);
      const WPattern& w = patterns[uniform_below(rng, patterns.size())];
      PerfectMatching image = gamma_map(m, x_matching, w);
      REQUIRE(matches_w_pattern(image, w));
      // a valid perfect matching: canonicalize must accept it
      std::vector<std::pair<int, int>> pairs;
      for (const auto& e : image.edges) pairs.emplace_back(e.a, e.b);
      REQUIRE(canonicalize(pairs, n) == image);
    }
  }

  SECTION("structural mismatch is rejected") {
    PerfectMatching m = pm(3, {{1, 2}, {3, 4}, {5, 6}});
    WPattern w;
    w.singletons = {1, 3};  // support {1,3} != support of X = {1,2}
    CHECK_THROWS_AS(gamma_map(m, xm({{1, 2}}), w), std::invalid_argument);
    CHECK_THROWS_AS(gamma_map(m, xm({{1, 3}}), w), std::invalid_argument);  // X not in M
  }

  SECTION("exhaustively injective: all X, all W, all containing M at n <= 3") {
    for (int n = 2; n <= 3; ++n) {
      auto pms = all_pms(n);
      for (int x = 1; x <= n; ++x)
        for_each_x_matching(n, x, [&](const XMatching& x_matching) {
          std::vector<const PerfectMatching*> containing;
          for (const auto& m : pms)
            if (contains_edges(m, x_matching.edges)) containing.push_back(&m);
          for (const WPattern& w : w_patterns_on(support_of(x_matching.edges), n)) {
            std::set<PerfectMatching> images;
            for (const PerfectMatching* m : containing) {
              PerfectMatching image = gamma_map(*m, x_matching, w);
              REQUIRE(matches_w_pattern(image, w));
              REQUIRE(images.insert(image).second);
            }
          }
        });
    }
  }
}

TEST_CASE("w pattern enumeration matches w_count") {
  SECTION("support of four vertices in K6: nine patterns") {
    auto patterns = w_patterns_on({1, 2, 3, 4}, 3);
    CHECK(patterns.size() == 9);
    int all_doubleton = 0, one_doubleton = 0;
    for (const auto& w : patterns) {
      if (w.singletons.empty()) ++all_doubleton;
      if (w.doubletons.size() == 1) ++one_doubleton;
      REQUIRE(w.singletons.size() % 2 == 0);
      REQUIRE(w.blocks() <= 3);
    }
    CHECK(all_doubleton == 3);
    CHECK(one_doubleton == 6);
  }

  SECTION("pattern counts equal w_count(n, x) for x <= n <= 5") {
    for (int n = 1; n <= 5; ++n)
      for (int x = 1; x <= n; ++x) {
        std::vector<int> support(2 * x);
        for (int i = 0; i < 2 * x; ++i) support[i] = i + 1;
        REQUIRE(BigInt(static_cast<std::int64_t>(w_patterns_on(support, n).size())) ==
                w_count(n, x));
      }
  }

  SECTION("matches_w_pattern on the textbook example") {
    PerfectMatching m = pm(3, {{1, 2}, {3, 4}, {5, 6}});
    WPattern w;
    w.doubletons = {{1, 2}};
    w.singletons = {3, 6};
    CHECK(matches_w_pattern(m, w));
    WPattern bad;
    bad.doubletons = {{1, 2}};
    bad.singletons = {3, 4};  // 3 and 4 are matched together
    CHECK_FALSE(matches_w_pattern(m, bad));
  }
}

TEST_CASE("b_w_partition_check") {
  SECTION("(2, 1): classes of sizes 1 and 2 partition the three matchings") {
    XMatching x = xm({{1, 2}});
    CHECK(b_w_partition_check(2, 1, x));
    auto patterns = w_patterns_on({1, 2}, 2);
    REQUIRE(patterns.size() == 2);
    std::map<std::size_t, int> sizes;
    for (const auto& m : all_pms(2))
      for (std::size_t i = 0; i < patterns.size(); ++i)
        if (matches_w_pattern(m, patterns[i])) ++sizes[i];
    std::multiset<int> got;
    for (auto& [i, c] : sizes) got.insert(c);
    CHECK(got == std::multiset<int>{1, 2});
  }

  SECTION("(3, 2) and every x-matching at n <= 3") {
    CHECK(b_w_partition_check(3, 2, xm({{1, 2}, {3, 4}})));
    for (int n = 1; n <= 3; ++n)
      for (int x = 1; x <= n; ++x)
        for_each_x_matching(n, x, [&](const XMatching& x_matching) {
          REQUIRE(b_w_partition_check(n, x, x_matching));
        });
  }

  SECTION("guard") {
    CHECK_THROWS_AS(b_w_partition_check(6, 1, xm({{1, 2}})), guard_error);
  }
}

TEST_CASE("verify_counting_claim finds no violations") {
  for (auto [n, x] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
    VerificationReport report = verify_counting_claim(n, x, 25, /*seed=*/7);
    INFO("n=" << n << " x=" << x);
    CHECK(report.cases_tested == 25);
    CHECK(report.claim_violations.empty());
    CHECK(report.partition_failures == 0);
    CHECK(report.patterns_checked == 25 * static_cast<std::uint64_t>(w_count(n, x)));
    CHECK(report.passed());
  }
}

TEST_CASE("verify_theorem T1/T2") {
  SECTION("T2 (3,2) exhaustive: 1365 families, none fail") {
    VerificationReport report =
        verify_theorem(Theorem::t2, 3, 2, VerifyMode::exhaustive, 0, 0);
    CHECK(report.cases_tested == 1365);
    CHECK(report.threshold == 4);
    CHECK(report.counterexamples.empty());
  }

  SECTION("T1 (2,1) exhaustive: three singleton families") {
    VerificationReport report =
        verify_theorem(Theorem::t1, 2, 1, VerifyMode::exhaustive, 0, 0);
    CHECK(report.cases_tested == 3);
    CHECK(report.threshold == 1);
    CHECK(report.counterexamples.empty());
  }

  SECTION("T1/T2 random sampling at (4,2)") {
    for (Theorem thm : {Theorem::t1, Theorem::t2}) {
      VerificationReport report = verify_theorem(thm, 4, 2, VerifyMode::random, 50, 123);
      REQUIRE(report.cases_tested == 50);
      REQUIRE(report.counterexamples.empty());
    }
  }

  SECTION("n = 1 boundary: the single matching of K2 self-agrees, so the size-1 family fails") {
    VerificationReport report =
        verify_theorem(Theorem::t1, 1, 1, VerifyMode::exhaustive, 0, 0);
    CHECK(report.threshold == 1);
    REQUIRE(report.cases_tested == 1);
    REQUIRE(report.counterexamples.size() == 1);
    CHECK(report.counterexamples[0].min_max_agreement == 1);
  }
}

TEST_CASE("verify_theorem MAIN") {
  SECTION("vacuous parameters are reported, not silently passed") {
    VerificationReport report =
        verify_theorem(Theorem::main, 3, 2, VerifyMode::random, 10, 0);
    CHECK(report.vacuous);
    CHECK(report.cases_tested == 0);
  }

  SECTION("exhaustive mode is rejected") {
    CHECK_THROWS_AS(verify_theorem(Theorem::main, 5, 5, VerifyMode::exhaustive, 0, 0),
                    std::invalid_argument);
  }

  SECTION("(5,5) random: bounded-frequency families all admit witnesses") {
    VerificationReport report =
        verify_theorem(Theorem::main, 5, 5, VerifyMode::random, 30, 9);
    CHECK(report.threshold == 3);
    CHECK(report.family_size_target == 27);
    CHECK(report.cases_tested == 30);
    CHECK(report.counterexamples.empty());
  }
}

TEST_CASE("verify_conjecture") {
  SECTION("vacuous at (3,3,3)") {
    ConjectureReport report = verify_conjecture(3, 3, 3, 5, 0);
    CHECK(report.vacuous);
    CHECK(report.families_tested == 0);
  }

  SECTION("t = 2 at (5,5) mirrors the proved theorem") {
    ConjectureReport report = verify_conjecture(2, 5, 5, 10, 4);
    CHECK(report.k == 3);
    CHECK(report.family_size_target == 27);
    CHECK(report.families_tested == 10);
    CHECK(report.counterexamples.empty());
  }

  SECTION("(3,4,4) small sample") {
    ConjectureReport report = verify_conjecture(3, 4, 4, 5, 11);
    CHECK(report.k == 8);
    CHECK(report.pattern_total == 15400);
    CHECK(report.families_tested == 5);
    CHECK(report.counterexamples.empty());
  }
}

TEST_CASE("random_x_matching produces valid x-matchings") {
  Rng rng = make_rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(uniform_below(rng, 4));
    int x = 1 + static_cast<int>(uniform_below(rng, n));
    XMatching x_matching = random_x_matching(n, x, rng);
    REQUIRE(static_cast<int>(x_matching.edges.size()) == x);
    std::set<int> support;
    for (const auto& e : x_matching.edges) {
      REQUIRE(e.a < e.b);
      REQUIRE(support.insert(e.a).second);
      REQUIRE(support.insert(e.b).second);
    }
    REQUIRE(std::is_sorted(x_matching.edges.begin(), x_matching.edges.end()));
  }
}
