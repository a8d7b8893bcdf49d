// matchcover: exact covering bounds for families of perfect matchings, with
// enumeration oracles, randomized verification and a hypergraph conjecture
// harness. All randomness is seeded (default 0); identical invocations
// produce byte-identical reports regardless of MATCHCOVER_THREADS.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matchcover/matchcover.hpp"

namespace {

using namespace matchcover;

constexpr int exit_ok = 0;
constexpr int exit_counterexample = 1;
constexpr int exit_usage = 2;

struct IntRange {
  int lo = 0;
  int hi = 0;
};

IntRange parse_range(const std::string& text) {
  IntRange range;
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      range.lo = range.hi = std::stoi(text);
    } else {
      range.lo = std::stoi(text.substr(0, colon));
      range.hi = std::stoi(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected an integer or lo:hi range, got '" + text + "'");
  }
  if (range.lo > range.hi) throw CLI::ValidationError("empty range '" + text + "'");
  return range;
}

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string format = "structured";
  bool override_guards = false;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed = true) {
  if (with_seed) cmd->add_option("--seed", opts.seed, "RNG seed (default 0, reproducible)");
  cmd->add_option("--format", opts.format, "Output format: structured | csv")
      ->check(CLI::IsMember({"structured", "csv"}));
  cmd->add_flag("--override-guards", opts.override_guards, "Lift desk-scale enumeration guards");
  cmd->add_option("--out", opts.out_path, "Write the report to this file instead of stdout");
}

void emit(const std::string& text, const CommonOpts& opts) {
  if (opts.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw format_error(opts.out_path + ": cannot open for writing");
    out << text;
  }
}

void emit_json(json doc, const std::string& command, const CommonOpts& opts) {
  doc["command"] = command;
  emit(doc.dump(2) + "\n", opts);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string bool_str(bool value) { return value ? "true" : "false"; }

// --- bounds -----------------------------------------------------------------

int run_bounds(const IntRange& n_range, std::optional<IntRange> x_range,
               const CommonOpts& opts) {
  json rows = json::array();
  std::string csv =
      csv_line({"n", "x", "thm1_exact", "thm1_threshold", "thm1_vacuous", "thm2_exact",
                "thm2_threshold", "thm2_vacuous", "w_count", "main_k", "main_vacuous"});
  for (int n = std::max(1, n_range.lo); n <= n_range.hi; ++n) {
    IntRange xs = x_range ? *x_range : IntRange{1, n};
    for (int x = std::max(1, xs.lo); x <= std::min(n, xs.hi); ++x) {
      BoundReport t1 = thm1_bound(n, x);
      BoundReport t2 = thm2_bound(n, x);
      BoundReport mk = main_k_bound(n, x);
      BigInt w = w_count(n, x);
      json row;
      row["n"] = n;
      row["x"] = x;
      row["thm1_exact"] = rat_str(t1.exact_value);
      row["thm1_threshold"] = int_str(t1.integer_threshold);
      row["thm1_vacuous"] = t1.vacuous;
      row["thm2_exact"] = rat_str(t2.exact_value);
      row["thm2_threshold"] = int_str(t2.integer_threshold);
      row["thm2_vacuous"] = t2.vacuous;
      row["w_count"] = int_str(w);
      row["main_k"] = int_str(mk.integer_threshold);
      row["main_vacuous"] = mk.vacuous;
      rows.push_back(row);
      csv += csv_line({std::to_string(n), std::to_string(x), rat_str(t1.exact_value),
                       int_str(t1.integer_threshold), bool_str(t1.vacuous),
                       rat_str(t2.exact_value), int_str(t2.integer_threshold),
                       bool_str(t2.vacuous), int_str(w), int_str(mk.integer_threshold),
                       bool_str(mk.vacuous)});
    }
  }
  if (opts.format == "csv") {
    emit(csv, opts);
  } else {
    json doc;
    doc["rows"] = rows;
    emit_json(doc, "bounds", opts);
  }
  return exit_ok;
}

int run_hyperbounds(int t, const IntRange& n_range, std::optional<IntRange> x_range,
                    const CommonOpts& opts) {
  json rows = json::array();
  std::string csv = csv_line({"n", "x", "t", "pattern_total", "conjecture_k", "vacuous"});
  for (int n = std::max(1, n_range.lo); n <= n_range.hi; ++n) {
    IntRange xs = x_range ? *x_range : IntRange{1, n};
    for (int x = std::max(1, xs.lo); x <= std::min(n, xs.hi); ++x) {
      BoundReport ck = conjecture_k_bound(t, n, x);
      BigInt total = n_value(t, n, x);
      json row;
      row["t"] = t;
      row["n"] = n;
      row["x"] = x;
      row["pattern_total"] = int_str(total);
      row["conjecture_k"] = int_str(ck.integer_threshold);
      row["vacuous"] = ck.vacuous;
      rows.push_back(row);
      csv += csv_line({std::to_string(n), std::to_string(x), std::to_string(t), int_str(total),
                       int_str(ck.integer_threshold), bool_str(ck.vacuous)});
    }
  }
  if (opts.format == "csv") {
    emit(csv, opts);
  } else {
    json doc;
    doc["rows"] = rows;
    emit_json(doc, "hyperbounds", opts);
  }
  return exit_ok;
}

// --- verify -----------------------------------------------------------------

std::string report_csv(const VerificationReport& report) {
  std::string csv = csv_line({"check", "n", "x", "mode", "seed", "samples", "cases_tested",
                              "threshold", "vacuous", "counterexamples", "passed"});
  csv += csv_line({report.check, std::to_string(report.n), std::to_string(report.x), report.mode,
                   std::to_string(report.seed), std::to_string(report.samples),
                   std::to_string(report.cases_tested), int_str(report.threshold),
                   bool_str(report.vacuous), std::to_string(report.counterexamples.size()),
                   bool_str(report.passed())});
  return csv;
}

int run_verify(const std::string& theorem_arg, int n, int x, const std::string& mode_arg,
               std::uint64_t samples, std::optional<std::uint64_t> k_override,
               const CommonOpts& opts) {
  Theorem theorem;
  if (theorem_arg == "T1")
    theorem = Theorem::t1;
  else if (theorem_arg == "T2")
    theorem = Theorem::t2;
  else if (theorem_arg == "MAIN")
    theorem = Theorem::main;
  else
    throw CLI::ValidationError("theorem must be T1, T2 or MAIN");
  VerifyMode mode = mode_arg == "random" ? VerifyMode::random : VerifyMode::exhaustive;
  VerificationReport report = verify_theorem(theorem, n, x, mode, samples, opts.seed,
                                             opts.override_guards, k_override);
  if (report.vacuous)
    std::cerr << "warning: threshold is vacuous at n=" << n << " x=" << x
              << "; nothing to verify\n";
  if (opts.format == "csv")
    emit(report_csv(report), opts);
  else
    emit_json(verification_report_to_json(report), "verify", opts);
  return report.counterexamples.empty() ? exit_ok : exit_counterexample;
}

// --- oracle -----------------------------------------------------------------

int run_oracle(const std::string& family_path, int x, const CommonOpts& opts) {
  MatchingFamily family = load_family_file(family_path);
  if (x < 1 || x > family.n)
    throw CLI::ValidationError("--x must satisfy 1 <= x <= n = " + std::to_string(family.n));
  std::vector<PerfectMatching> candidates = all_pms(family.n, opts.override_guards);
  CoverResult mu = min_max_agreement_scan(family, candidates);
  CoverResult goal = exists_good_pm_scan(family, x, candidates);
  json doc;
  doc["family_file"] = family_path;
  doc["n"] = family.n;
  doc["x"] = x;
  doc["family_size"] = family.size();
  doc["min_max_agreement"] = mu.value;
  doc["covering_radius"] =
      family.members.empty() ? json(nullptr) : json(family.n - mu.value);
  doc["witness_found"] = goal.witness.has_value();
  doc["witness"] = goal.witness ? pm_to_json(*goal.witness) : json(nullptr);
  doc["witness_max_agreement"] = goal.value;
  json agreements = json::array();
  const PerfectMatching& shown = goal.witness ? *goal.witness : *mu.witness;
  for (const auto& member : family.members) agreements.push_back(agreement(shown, member));
  doc["witness_agreements"] = agreements;
  if (opts.format == "csv") {
    std::string csv = csv_line({"n", "x", "family_size", "min_max_agreement", "covering_radius",
                                "witness_found", "witness_max_agreement"});
    csv += csv_line({std::to_string(family.n), std::to_string(x), std::to_string(family.size()),
                     std::to_string(mu.value),
                     family.members.empty() ? "" : std::to_string(family.n - mu.value),
                     bool_str(goal.witness.has_value()), std::to_string(goal.value)});
    emit(csv, opts);
  } else {
    emit_json(doc, "oracle", opts);
  }
  return exit_ok;
}

// --- ftable -----------------------------------------------------------------

int run_ftable(int n_max, const CommonOpts& opts) {
  json rows = json::array();
  std::string csv =
      csv_line({"n", "x", "f_exact", "thm1_threshold", "thm2_threshold", "bound_exceeds_f"});
  for (int n = 1; n <= n_max; ++n)
    for (int x = 1; x <= n; ++x) {
      std::int64_t f = f_exact(n, x, opts.override_guards);
      BoundReport t1 = thm1_bound(n, x);
      BoundReport t2 = thm2_bound(n, x);
      bool exceeds = t1.integer_threshold > f || t2.integer_threshold > f;
      json row;
      row["n"] = n;
      row["x"] = x;
      row["f_exact"] = f;
      row["thm1_threshold"] = int_str(t1.integer_threshold);
      row["thm2_threshold"] = int_str(t2.integer_threshold);
      row["bound_exceeds_f"] = exceeds;
      rows.push_back(row);
      csv += csv_line({std::to_string(n), std::to_string(x), std::to_string(f),
                       int_str(t1.integer_threshold), int_str(t2.integer_threshold),
                       bool_str(exceeds)});
    }
  if (opts.format == "csv") {
    emit(csv, opts);
  } else {
    json doc;
    doc["rows"] = rows;
    emit_json(doc, "ftable", opts);
  }
  return exit_ok;
}

// --- claimcheck / conjecture --------------------------------------------------

int run_claimcheck(int n, int x, std::uint64_t trials, const CommonOpts& opts) {
  VerificationReport report =
      verify_counting_claim(n, x, trials, opts.seed, opts.override_guards);
  if (opts.format == "csv") {
    std::string csv = csv_line({"n", "x", "trials", "seed", "violations", "partition_checks",
                                "partition_failures", "passed"});
    csv += csv_line({std::to_string(n), std::to_string(x), std::to_string(report.cases_tested),
                     std::to_string(report.seed), std::to_string(report.claim_violations.size()),
                     std::to_string(report.partition_checks),
                     std::to_string(report.partition_failures), bool_str(report.passed())});
    emit(csv, opts);
  } else {
    emit_json(verification_report_to_json(report), "claimcheck", opts);
  }
  return report.passed() ? exit_ok : exit_counterexample;
}

int run_conjecture(int t, int n, int x, std::uint64_t samples,
                   std::optional<std::uint64_t> k_override, const CommonOpts& opts) {
  ConjectureReport report =
      verify_conjecture(t, n, x, samples, opts.seed, opts.override_guards, k_override);
  if (report.vacuous)
    std::cerr << "warning: conjectured threshold is vacuous at t=" << t << " n=" << n
              << " x=" << x << "; nothing to verify\n";
  if (opts.format == "csv") {
    std::string csv = csv_line({"n", "x", "t", "k", "pattern_total", "vacuous", "samples",
                                "families_tested", "counterexamples", "passed"});
    csv += csv_line({std::to_string(n), std::to_string(x), std::to_string(t), int_str(report.k),
                     int_str(report.pattern_total), bool_str(report.vacuous),
                     std::to_string(report.samples), std::to_string(report.families_tested),
                     std::to_string(report.counterexamples.size()), bool_str(report.passed())});
    emit(csv, opts);
  } else {
    emit_json(conjecture_report_to_json(report), "conjecture", opts);
  }
  return report.passed() ? exit_ok : exit_counterexample;
}

// --- enumerate / search --------------------------------------------------------

int run_enumerate(int n, int t, const CommonOpts& opts) {
  if (t == 2) {
    MatchingFamily family;
    family.n = n;
    family.members = all_pms(n, opts.override_guards);
    if (opts.format == "csv") {
      std::string csv;
      for (const auto& m : family.members) {
        std::vector<std::string> cells;
        for (const auto& e : m.edges) {
          cells.push_back(std::to_string(e.a));
          cells.push_back(std::to_string(e.b));
        }
        csv += csv_line(cells);
      }
      emit(csv, opts);
    } else {
      emit(family_to_json(family).dump(2) + "\n", opts);
    }
  } else {
    HyperFamily family;
    family.t = t;
    family.n = n;
    family.members = all_hpms(t, n, opts.override_guards);
    if (opts.format == "csv") {
      std::string csv;
      for (const auto& m : family.members) {
        std::vector<std::string> cells;
        for (const auto& e : m.edges)
          for (int v : e.vertices) cells.push_back(std::to_string(v));
        csv += csv_line(cells);
      }
      emit(csv, opts);
    } else {
      emit(hyper_family_to_json(family).dump(2) + "\n", opts);
    }
  }
  return exit_ok;
}

int run_search(const std::string& family_path, int x, std::uint64_t restarts,
               const CommonOpts& opts) {
  MatchingFamily family = load_family_file(family_path);
  if (x < 1 || x > family.n)
    throw CLI::ValidationError("--x must satisfy 1 <= x <= n = " + std::to_string(family.n));
  CoverResult result = local_search(family, x, opts.seed, restarts);
  json doc = cover_result_to_json(result);
  doc["family_file"] = family_path;
  doc["n"] = family.n;
  doc["x"] = x;
  doc["seed"] = opts.seed;
  if (opts.format == "csv") {
    std::string csv = csv_line({"n", "x", "witness_found", "value", "restarts", "steps"});
    csv += csv_line({std::to_string(family.n), std::to_string(x),
                     bool_str(result.witness.has_value()), std::to_string(result.value),
                     std::to_string(result.effort.restarts), std::to_string(result.effort.steps)});
    emit(csv, opts);
  } else {
    emit_json(doc, "search", opts);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering bounds and verification for families of perfect matchings"};
  app.require_subcommand(1);

  // bounds
  std::string bounds_n, bounds_x;
  CommonOpts bounds_opts;
  CLI::App* bounds = app.add_subcommand("bounds", "Tabulate the covering thresholds");
  bounds->add_option("--n", bounds_n, "n or lo:hi range")->required();
  bounds->add_option("--x", bounds_x, "x or lo:hi range (default 1:n)");
  add_common(bounds, bounds_opts, /*with_seed=*/false);

  // hyperbounds
  std::string hb_n, hb_x;
  int hb_t = 3;
  CommonOpts hb_opts;
  CLI::App* hyperbounds =
      app.add_subcommand("hyperbounds", "Tabulate the hypergraph conjecture thresholds");
  hyperbounds->add_option("--t", hb_t, "edge size t >= 2 (default 3)");
  hyperbounds->add_option("--n", hb_n, "n or lo:hi range")->required();
  hyperbounds->add_option("--x", hb_x, "x or lo:hi range (default 1:n)");
  add_common(hyperbounds, hb_opts, /*with_seed=*/false);

  // verify
  std::string verify_theorem_arg, verify_mode = "exhaustive";
  int verify_n = 0, verify_x = 0;
  std::uint64_t verify_samples = 1000;
  std::optional<std::uint64_t> verify_k;
  CommonOpts verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "Verify a theorem's conclusion on families");
  verify->add_option("theorem", verify_theorem_arg, "T1 | T2 | MAIN")->required();
  verify->add_option("--n", verify_n, "number of edges per matching")->required();
  verify->add_option("--x", verify_x, "agreement parameter")->required();
  verify->add_option("--mode", verify_mode, "exhaustive | random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--samples", verify_samples, "families to sample in random mode");
  verify->add_option("--k", verify_k, "override the frequency cap (MAIN only)");
  add_common(verify, verify_opts);

  // oracle
  std::string oracle_family;
  int oracle_x = 0;
  CommonOpts oracle_opts;
  CLI::App* oracle = app.add_subcommand("oracle", "Exact min-max agreement for a family file");
  oracle->add_option("--family", oracle_family, "family file (JSON)")->required();
  oracle->add_option("--x", oracle_x, "agreement parameter")->required();
  add_common(oracle, oracle_opts, /*with_seed=*/false);

  // ftable
  int ftable_n = 3;
  CommonOpts ftable_opts;
  CLI::App* ftable = app.add_subcommand("ftable", "Exact f(n, x) against the thresholds");
  ftable->add_option("--n", ftable_n, "maximum n (default 3)");
  add_common(ftable, ftable_opts, /*with_seed=*/false);

  // claimcheck
  int claim_n = 0, claim_x = 0;
  std::uint64_t claim_trials = 100;
  CommonOpts claim_opts;
  CLI::App* claimcheck =
      app.add_subcommand("claimcheck", "Check the counting claim and the pattern partition");
  claimcheck->add_option("--n", claim_n, "number of edges per matching")->required();
  claimcheck->add_option("--x", claim_x, "agreement parameter")->required();
  claimcheck->add_option("--samples", claim_trials, "trials (default 100)");
  add_common(claimcheck, claim_opts);

  // conjecture
  int conj_t = 3, conj_n = 0, conj_x = 0;
  std::uint64_t conj_samples = 1000;
  std::optional<std::uint64_t> conj_k;
  CommonOpts conj_opts;
  CLI::App* conjecture =
      app.add_subcommand("conjecture", "Sample hyper-families at the conjectured threshold");
  conjecture->add_option("--t", conj_t, "edge size t >= 2 (default 3)");
  conjecture->add_option("--n", conj_n, "number of edges per matching")->required();
  conjecture->add_option("--x", conj_x, "agreement parameter")->required();
  conjecture->add_option("--samples", conj_samples, "families to sample (default 1000)");
  conjecture->add_option("--k", conj_k, "override the frequency cap");
  add_common(conjecture, conj_opts);

  // enumerate
  int enum_n = 0, enum_t = 2;
  CommonOpts enum_opts;
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "Stream all canonical matchings as a family document");
  enumerate->add_option("--n", enum_n, "number of edges per matching")->required();
  enumerate->add_option("--t", enum_t, "edge size (default 2 = graph)");
  add_common(enumerate, enum_opts, /*with_seed=*/false);

  // search
  std::string search_family;
  int search_x = 0;
  std::uint64_t search_restarts = 100;
  CommonOpts search_opts;
  CLI::App* search = app.add_subcommand("search", "Local search for a covering matching");
  search->add_option("--family", search_family, "family file (JSON)")->required();
  search->add_option("--x", search_x, "agreement parameter")->required();
  search->add_option("--samples", search_restarts, "restarts (default 100)");
  add_common(search, search_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (bounds->parsed())
      return run_bounds(parse_range(bounds_n),
                        bounds_x.empty() ? std::nullopt
                                         : std::optional<IntRange>(parse_range(bounds_x)),
                        bounds_opts);
    if (hyperbounds->parsed()) {
      if (hb_t < 2) throw CLI::ValidationError("--t must be >= 2");
      return run_hyperbounds(hb_t, parse_range(hb_n),
                             hb_x.empty() ? std::nullopt
                                          : std::optional<IntRange>(parse_range(hb_x)),
                             hb_opts);
    }
    if (verify->parsed())
      return run_verify(verify_theorem_arg, verify_n, verify_x, verify_mode, verify_samples,
                        verify_k, verify_opts);
    if (oracle->parsed()) return run_oracle(oracle_family, oracle_x, oracle_opts);
    if (ftable->parsed()) return run_ftable(ftable_n, ftable_opts);
    if (claimcheck->parsed()) return run_claimcheck(claim_n, claim_x, claim_trials, claim_opts);
    if (conjecture->parsed())
      return run_conjecture(conj_t, conj_n, conj_x, conj_samples, conj_k, conj_opts);
    if (enumerate->parsed()) return run_enumerate(enum_n, enum_t, enum_opts);
    if (search->parsed()) return run_search(search_family, search_x, search_restarts, search_opts);
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_usage;
  } catch (const guard_error& err) {
    std::cerr << "guard: " << err.what() << "\n";
    return exit_usage;
  } catch (const format_error& err) {
    std::cerr << "input: " << err.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_usage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
