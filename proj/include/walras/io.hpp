#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "walras/instance.hpp"

namespace walras {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Document shape:
//   { "m": 2,
//     "bidders": [ { "kind": "additive", "values": [1,1] }, ... ],
//     "labels": { "items": ["a","b"], "bidders": ["alice"] } }
//
// additive / unit_demand carry the m per-item values; table carries all 2^m
// bundle values indexed by bitmask. Tables are accepted un-normalized and
// non-monotone here so that `validate` can report witnesses; the make_*
// factories are the strict route.
inline Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("bidders"))
    throw ParseError("document must be an object with \"m\" and \"bidders\"");
  if (!doc["m"].is_number_integer()) throw ParseError("\"m\" must be an integer");
  const int m = doc["m"].get<int>();
  if (m < 1 || m > kMaxItems)
    throw ParseError("m out of range [1," + std::to_string(kMaxItems) + "]");
  if (!doc["bidders"].is_array() || doc["bidders"].empty() ||
      doc["bidders"].size() > kMaxBidders)
    throw ParseError("\"bidders\" must be a non-empty array of at most " +
                     std::to_string(kMaxBidders));

  auto read_values = [](const nlohmann::json& arr, std::size_t want, const char* ctx) {
    if (!arr.is_array() || arr.size() != want)
      throw ParseError(std::string(ctx) + ": expected " + std::to_string(want) + " values");
    std::vector<Value> out;
    out.reserve(want);
    for (const auto& x : arr) {
      if (!x.is_number_integer() || x.is_number_float())
        throw ParseError(std::string(ctx) + ": values must be integers");
      const Value v = x.get<Value>();
      if (v < 0) throw ParseError(std::string(ctx) + ": values must be non-negative");
      if (v > kMaxValue) throw ParseError(std::string(ctx) + ": value exceeds cap");
      out.push_back(v);
    }
    return out;
  };

  Instance inst;
  inst.m = m;
  int idx = 0;
  for (const auto& b : doc["bidders"]) {
    const std::string ctx = "bidder " + std::to_string(idx++);
    if (!b.is_object() || !b.contains("kind") || !b.contains("values"))
      throw ParseError(ctx + ": expected object with \"kind\" and \"values\"");
    const std::string kind = b["kind"].get<std::string>();
    if (kind == "additive") {
      inst.bidders.push_back(make_additive(read_values(b["values"], static_cast<std::size_t>(m), ctx.c_str())));
    } else if (kind == "unit_demand") {
      inst.bidders.push_back(make_unit_demand(read_values(b["values"], static_cast<std::size_t>(m), ctx.c_str())));
    } else if (kind == "table") {
      Valuation v{m, ValuationKind::Table,
                  read_values(b["values"], std::size_t{1} << m, ctx.c_str())};
      inst.bidders.push_back(std::move(v));
    } else {
      throw ParseError(ctx + ": unknown kind \"" + kind + "\"");
    }
  }

  if (doc.contains("labels")) {
    const auto& lab = doc["labels"];
    if (!lab.is_object()) throw ParseError("\"labels\" must be an object");
    if (lab.contains("items")) {
      inst.item_labels = lab["items"].get<std::vector<std::string>>();
      if (inst.item_labels.size() != static_cast<std::size_t>(m))
        throw ParseError("item label count must equal m");
    }
    if (lab.contains("bidders")) {
      inst.bidder_labels = lab["bidders"].get<std::vector<std::string>>();
      if (inst.bidder_labels.size() != inst.bidders.size())
        throw ParseError("bidder label count must equal bidder count");
    }
  }
  return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json doc;
  doc["m"] = inst.m;
  doc["bidders"] = nlohmann::json::array();
  for (const auto& b : inst.bidders) {
    nlohmann::json jb;
    jb["kind"] = kind_name(b.kind);
    if (b.kind == ValuationKind::Table) {
      jb["values"] = b.values;
    } else {
      // Per-item values are recoverable from singleton bundles.
      std::vector<Value> items(static_cast<std::size_t>(inst.m));
      for (int j = 0; j < inst.m; ++j)
        items[static_cast<std::size_t>(j)] = b.values[ItemSet{1} << j];
      jb["values"] = items;
    }
    doc["bidders"].push_back(std::move(jb));
  }
  if (!inst.item_labels.empty() || !inst.bidder_labels.empty()) {
    nlohmann::json lab;
    if (!inst.item_labels.empty()) lab["items"] = inst.item_labels;
    if (!inst.bidder_labels.empty()) lab["bidders"] = inst.bidder_labels;
    doc["labels"] = std::move(lab);
  }
  return doc;
}

inline std::string serialize_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

}  // namespace walras
