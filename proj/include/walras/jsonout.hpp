#pragma once

#include <string>

#include "json.hpp"
#include "walras/auction.hpp"
#include "walras/equilibrium.hpp"
#include "walras/selftest.hpp"
#include "walras/unitdemand.hpp"

// Stable machine-readable renderings of the report types. Keys are part of
// the tool's output contract; add, never rename.

namespace walras {

inline nlohmann::json set_to_json(ItemSet s) { return nlohmann::json(set_items(s)); }

inline nlohmann::json trace_to_json(const AuctionTrace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : trace.rounds) {
    nlohmann::json round = {{"price", r.price},
                            {"set", set_to_json(r.chosen)},
                            {"L_before", r.l_before},
                            {"L_after", r.l_after}};
    if (trace.unchecked) {
      round["in_demand_class"] = r.in_demand_class;
      if (r.culprit) round["culprit"] = set_to_json(*r.culprit);
    }
    rounds.push_back(std::move(round));
  }
  nlohmann::json out = {
      {"direction", trace.direction == Direction::Ascending ? "ascending" : "descending"},
      {"policy", trace.policy},
      {"seed", trace.seed},
      {"rounds", std::move(rounds)},
      {"final_price", trace.final_price}};
  if (trace.unchecked) out["unchecked"] = true;
  return out;
}

inline nlohmann::json classification_to_json(const SetClassification& c) {
  return {{"set", set_to_json(c.set)},     {"cardinality", c.cardinality},
          {"l", c.l},                      {"h", c.h},
          {"over_demanded", c.over},       {"weakly_over_demanded", c.weakly_over},
          {"under_demanded", c.under},     {"weakly_under_demanded", c.weakly_under}};
}

inline nlohmann::json verdict_to_json(const CharacterizationVerdict& v) {
  nlohmann::json out = {{"walrasian", v.walrasian}, {"minimum", v.minimum}, {"maximum", v.maximum}};
  if (v.walras_evidence) out["walras_evidence"] = classification_to_json(*v.walras_evidence);
  if (v.min_evidence) out["min_evidence"] = classification_to_json(*v.min_evidence);
  if (v.max_evidence) out["max_evidence"] = classification_to_json(*v.max_evidence);
  return out;
}

inline nlohmann::json suite_to_json(const SuiteResult& s) {
  nlohmann::json out = {{"name", s.name},
                        {"premise_free", s.premise_free},
                        {"skipped", s.skipped},
                        {"checked", s.checked},
                        {"failures", s.failures}};
  if (!s.note.empty()) out["note"] = s.note;
  if (s.first)
    out["first_counterexample"] = {{"operation", s.first->operation},
                                   {"details", s.first->details}};
  return out;
}

inline nlohmann::json sweep_report_to_json(const SweepReport& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : r.suites) suites.push_back(suite_to_json(s));
  nlohmann::json out = {{"digest", r.digest},   {"m", r.m},
                        {"n", r.n},             {"vmax", r.vmax},
                        {"premise_ok", r.premise_ok}, {"passed", r.passed()},
                        {"suites", std::move(suites)}};
  if (r.forced) out["forced"] = true;
  return out;
}

inline nlohmann::json comparison_to_json(const unitdemand::ComparisonReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"set", set_to_json(row.set)},
                    {"mt_over", row.mt_over},
                    {"general_over", row.general_over},
                    {"mt_under", row.mt_under},
                    {"general_under", row.general_under},
                    {"andersson_excess", row.andersson},
                    {"general_excess", row.general_excess}});
  return {{"price", rep.price},
          {"rows", std::move(rows)},
          {"over_agreements", rep.over_agreements},
          {"under_agreements", rep.under_agreements},
          {"excess_agreements", rep.excess_agreements}};
}

}  // namespace walras
