#pragma once

// JSON document formats: family files (the interchange format between the
// CLI commands) and report serialization. All rationals render as exact
// "p/q" strings; big integers render as decimal strings.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "matchcover/bounds.hpp"
#include "matchcover/covering.hpp"
#include "matchcover/errors.hpp"
#include "matchcover/hypermatchings.hpp"
#include "matchcover/matchings.hpp"

namespace matchcover {

using json = nlohmann::json;

inline std::string rat_str(const BigRat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string int_str(const BigInt& v) { return v.str(); }

inline json pm_to_json(const PerfectMatching& m) {
  json edges = json::array();
  for (const auto& e : m.edges) edges.push_back(json::array({e.a, e.b}));
  return edges;
}

inline json family_to_json(const MatchingFamily& family) {
  json doc;
  doc["type"] = "matching_family";
  doc["n"] = family.n;
  json matchings = json::array();
  for (const auto& m : family.members) matchings.push_back(pm_to_json(m));
  doc["matchings"] = matchings;
  return doc;
}

inline json hpm_to_json(const HyperMatching& m) {
  json edges = json::array();
  for (const auto& e : m.edges) edges.push_back(json(e.vertices));
  return edges;
}

inline json hyper_family_to_json(const HyperFamily& family) {
  json doc;
  doc["type"] = "hyper_family";
  doc["t"] = family.t;
  doc["n"] = family.n;
  json matchings = json::array();
  for (const auto& m : family.members) matchings.push_back(hpm_to_json(m));
  doc["matchings"] = matchings;
  return doc;
}

inline MatchingFamily family_from_json(const json& doc) {
  if (!doc.is_object()) throw format_error("family document: expected a JSON object");
  if (doc.value("type", "") != "matching_family")
    throw format_error("family document: type must be \"matching_family\"");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw format_error("family document: missing integer field \"n\"");
  MatchingFamily family;
  family.n = doc["n"].get<int>();
  if (family.n < 1) throw format_error("family document: n must be >= 1");
  if (!doc.contains("matchings") || !doc["matchings"].is_array())
    throw format_error("family document: missing array field \"matchings\"");
  std::size_t index = 0;
  for (const auto& entry : doc["matchings"]) {
    if (!entry.is_array())
      throw format_error("matching " + std::to_string(index) + ": expected an array of pairs");
    std::vector<std::pair<int, int>> pairs;
    for (const auto& pair : entry) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer())
        throw format_error("matching " + std::to_string(index) +
                           ": each edge must be a pair of integers");
      pairs.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    try {
      family.members.push_back(canonicalize(pairs, family.n));
    } catch (const std::invalid_argument& err) {
      throw format_error("matching " + std::to_string(index) + ": " + err.what());
    }
    ++index;
  }
  return family;
}

inline HyperFamily hyper_family_from_json(const json& doc) {
  if (!doc.is_object()) throw format_error("hyper family document: expected a JSON object");
  if (doc.value("type", "") != "hyper_family")
    throw format_error("hyper family document: type must be \"hyper_family\"");
  for (const char* field : {"t", "n"})
    if (!doc.contains(field) || !doc[field].is_number_integer())
      throw format_error(std::string("hyper family document: missing integer field \"") + field +
                         "\"");
  HyperFamily family;
  family.t = doc["t"].get<int>();
  family.n = doc["n"].get<int>();
  if (family.t < 1 || family.n < 1) throw format_error("hyper family document: bad shape");
  if (!doc.contains("matchings") || !doc["matchings"].is_array())
    throw format_error("hyper family document: missing array field \"matchings\"");
  std::size_t index = 0;
  for (const auto& entry : doc["matchings"]) {
    if (!entry.is_array())
      throw format_error("matching " + std::to_string(index) + ": expected an array of edges");
    std::vector<std::vector<int>> edges;
    for (const auto& edge : entry) {
      if (!edge.is_array())
        throw format_error("matching " + std::to_string(index) + ": each edge must be an array");
      std::vector<int> vertices;
      for (const auto& v : edge) {
        if (!v.is_number_integer())
          throw format_error("matching " + std::to_string(index) + ": vertices must be integers");
        vertices.push_back(v.get<int>());
      }
      edges.push_back(std::move(vertices));
    }
    try {
      family.members.push_back(hyper_canonicalize(edges, family.t, family.n));
    } catch (const std::invalid_argument& err) {
      throw format_error("matching " + std::to_string(index) + ": " + err.what());
    }
    ++index;
  }
  return family;
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw format_error(origin + ": " + err.what());
  }
}

inline MatchingFamily load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error(path + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return family_from_json(parse_json_text(buffer.str(), path));
}

inline HyperFamily load_hyper_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error(path + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return hyper_family_from_json(parse_json_text(buffer.str(), path));
}

inline json cover_result_to_json(const CoverResult& result) {
  json doc;
  doc["witness_found"] = result.witness.has_value();
  doc["witness"] = result.witness ? pm_to_json(*result.witness) : json(nullptr);
  doc["value"] = result.value;
  doc["method"] = result.method == SearchMethod::exhaustive ? "exhaustive" : "local_search";
  doc["candidates_scanned"] = result.effort.candidates;
  doc["restarts"] = result.effort.restarts;
  doc["steps"] = result.effort.steps;
  return doc;
}

inline json x_matching_to_json(const XMatching& x) {
  json edges = json::array();
  for (const auto& e : x.edges) edges.push_back(json::array({e.a, e.b}));
  return edges;
}

inline json w_pattern_to_json(const WPattern& w) {
  json doc;
  doc["singletons"] = w.singletons;
  json doubles = json::array();
  for (const auto& e : w.doubletons) doubles.push_back(json::array({e.a, e.b}));
  doc["doubletons"] = doubles;
  return doc;
}

inline json verification_report_to_json(const VerificationReport& report) {
  json doc;
  doc["check"] = report.check;
  doc["n"] = report.n;
  doc["x"] = report.x;
  doc["mode"] = report.mode;
  doc["seed"] = report.seed;
  doc["samples"] = report.samples;
  doc["cases_tested"] = report.cases_tested;
  doc["threshold"] = int_str(report.threshold);
  doc["vacuous"] = report.vacuous;
  if (report.check == "MAIN") doc["family_size_target"] = report.family_size_target;
  json counterexamples = json::array();
  for (const auto& ce : report.counterexamples) {
    json entry;
    entry["family"] = family_to_json(ce.family);
    entry["min_max_agreement"] = ce.min_max_agreement;
    counterexamples.push_back(entry);
  }
  doc["counterexamples"] = counterexamples;
  if (report.check == "counting_claim") {
    doc["patterns_checked"] = report.patterns_checked;
    doc["injections_checked"] = report.injections_checked;
    doc["partition_checks"] = report.partition_checks;
    doc["partition_failures"] = report.partition_failures;
    json violations = json::array();
    for (const auto& v : report.claim_violations) {
      json entry;
      entry["kind"] = v.kind;
      entry["x_matching"] = x_matching_to_json(v.x_matching);
      json s_set = json::array();
      for (const auto& s : v.conditioned_on) s_set.push_back(x_matching_to_json(s));
      entry["conditioned_on"] = s_set;
      entry["pattern"] = w_pattern_to_json(v.pattern);
      entry["b_count"] = v.b_count;
      entry["a_count"] = v.a_count;
      violations.push_back(entry);
    }
    doc["violations"] = violations;
  }
  doc["passed"] = report.passed();
  return doc;
}

inline json conjecture_report_to_json(const ConjectureReport& report) {
  json doc;
  doc["check"] = "CONJECTURE";
  doc["t"] = report.t;
  doc["n"] = report.n;
  doc["x"] = report.x;
  doc["k"] = int_str(report.k);
  doc["pattern_total"] = int_str(report.pattern_total);
  doc["vacuous"] = report.vacuous;
  doc["seed"] = report.seed;
  doc["samples"] = report.samples;
  doc["families_tested"] = report.families_tested;
  doc["family_size_target"] = report.family_size_target;
  json counterexamples = json::array();
  for (const auto& ce : report.counterexamples) {
    json entry;
    entry["family"] = hyper_family_to_json(ce.family);
    entry["min_max_agreement"] = ce.min_max_agreement;
    counterexamples.push_back(entry);
  }
  doc["counterexamples"] = counterexamples;
  doc["passed"] = report.passed();
  return doc;
}

}  // namespace matchcover
