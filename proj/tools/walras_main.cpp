// walras: inspect combinatorial-auction instances, classify demand, run
// price-adjustment auctions, and sweep the library's invariant suites.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "walras/walras.hpp"

namespace {

using namespace walras;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitContract = 2;
constexpr int kExitCheckFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) { return parse_instance(slurp(path)); }

std::vector<std::string> split_commas(std::string text) {
  for (char& c : text)
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == ' ') c = ',';
  std::vector<std::string> out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

PriceVector parse_price(const std::string& text, const Instance& inst) {
  const auto toks = split_commas(text);
  if (static_cast<int>(toks.size()) != inst.m)
    throw UsageError("price needs exactly " + std::to_string(inst.m) +
                     " comma-separated values, got \"" + text + "\"");
  PriceVector p;
  for (const auto& t : toks) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw UsageError("price component \"" + t + "\" is not an integer");
    }
    if (used != t.size() || v < 0) throw UsageError("price component \"" + t + "\" must be a non-negative integer");
    p.push_back(static_cast<Value>(v));
  }
  return p;
}

int item_from_token(const std::string& tok, const Instance& inst) {
  for (int j = 0; j < inst.m; ++j)
    if (!inst.item_labels.empty() && inst.item_labels[static_cast<std::size_t>(j)] == tok)
      return j;
  if (tok.size() == 1 && tok[0] >= 'a' && tok[0] < 'a' + inst.m && inst.item_labels.empty())
    return tok[0] - 'a';
  if (tok.size() == 1 && tok[0] >= 'a' && tok[0] < 'a' + inst.m) return tok[0] - 'a';
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used == tok.size() && v >= 0 && v < inst.m) return static_cast<int>(v);
  } catch (const std::exception&) {
  }
  throw UsageError("unknown item \"" + tok + "\"");
}

ItemSet parse_set(const std::string& text, const Instance& inst) {
  if (text.empty() || text == "none" || text == "empty") return 0;
  ItemSet s = 0;
  for (const auto& tok : split_commas(text)) s |= ItemSet{1} << item_from_token(tok, inst);
  return s;
}

std::string pretty_set(ItemSet s, const Instance& inst) { return format_set(s, inst.item_labels); }

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

// ---- commands --------------------------------------------------------------

std::string issue_text(const ValuationIssue& issue) {
  if (issue.what == "normalization")
    return "bidder " + std::to_string(issue.bidder) + ": v({}) must be 0";
  return "bidder " + std::to_string(issue.bidder) + ": not monotone, v(" +
         format_set(issue.smaller) + ") > v(" + format_set(issue.larger) + ")";
}

int cmd_validate(const std::string& path, const std::string& format) {
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("not valid JSON: ") + e.what());
  }
  Instance inst;
  try {
    inst = parse_instance(raw.dump());
  } catch (const ParseError& e) {
    if (format == "json")
      emit({{"well_formed", false}, {"issues", {e.what()}}});
    else
      std::cout << "not well-formed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  const ValidationReport rep = validate(inst);
  nlohmann::json issues = nlohmann::json::array();
  for (const auto& issue : rep.issues) issues.push_back(issue_text(issue));
  if (format == "json") {
    emit({{"well_formed", rep.well_formed},
          {"issues", std::move(issues)},
          {"m", inst.m},
          {"n", inst.n()},
          {"vmax", rep.vmax},
          {"grid_bound", rep.bound}});
  } else {
    std::cout << "instance: " << inst.m << " items, " << inst.n() << " bidders\n";
    if (rep.well_formed) {
      std::cout << "well-formed: yes (vmax=" << rep.vmax << ", grid bound=" << rep.bound << ")\n";
    } else {
      std::cout << "well-formed: no\n";
      for (const auto& issue : rep.issues) std::cout << "  - " << issue_text(issue) << "\n";
    }
  }
  return rep.well_formed ? kExitOk : kExitCheckFailed;
}

int cmd_demand(const Instance& inst, const PriceVector& p, int bidder, const std::string& format) {
  if (bidder >= inst.n()) throw UsageError("bidder index out of range");
  nlohmann::json rows = nlohmann::json::array();
  const int lo = bidder < 0 ? 0 : bidder;
  const int hi = bidder < 0 ? inst.n() - 1 : bidder;
  for (int i = lo; i <= hi; ++i) {
    const Valuation& v = inst.bidders[static_cast<std::size_t>(i)];
    const auto dem = demand_sets(v, p);
    if (format == "json") {
      nlohmann::json ss = nlohmann::json::array();
      for (ItemSet s : dem.sets) ss.push_back(set_items(s));
      rows.push_back({{"bidder", i}, {"max_utility", dem.max_utility}, {"sets", std::move(ss)}});
    } else {
      std::cout << "bidder " << i << ": max utility " << dem.max_utility << ", demand";
      for (ItemSet s : dem.sets) std::cout << " " << pretty_set(s, inst);
      std::cout << "\n";
    }
  }
  if (format == "json") emit({{"price", p}, {"bidders", std::move(rows)}});
  return kExitOk;
}

int cmd_classify(const Instance& inst, const PriceVector& p, ItemSet s, const std::string& format) {
  const SetClassification c = classify_set(inst, p, s);
  if (format == "json") {
    emit(classification_to_json(c));
    return kExitOk;
  }
  std::cout << "set " << pretty_set(s, inst) << " at " << format_price(p) << ": |S|="
            << c.cardinality << ", l=" << c.l << ", h=" << c.h << "\n";
  std::vector<std::string> tags;
  if (c.over) tags.push_back("over-demanded");
  else if (c.weakly_over) tags.push_back("weakly-over-demanded");
  if (c.under) tags.push_back("under-demanded");
  else if (c.weakly_under) tags.push_back("weakly-under-demanded");
  if (tags.empty()) tags.push_back("neither");
  std::cout << "classification:";
  for (const auto& t : tags) std::cout << " " << t;
  std::cout << "\n";
  return kExitOk;
}

int cmd_gs_check(const Instance& inst, int bidder, int cap, const std::string& format) {
  if (bidder >= inst.n()) throw UsageError("bidder index out of range");
  const int lo = bidder < 0 ? 0 : bidder;
  const int hi = bidder < 0 ? inst.n() - 1 : bidder;
  bool all_pass = true;
  nlohmann::json rows = nlohmann::json::array();
  for (int i = lo; i <= hi; ++i) {
    const auto w = is_gross_substitute(inst.bidders[static_cast<std::size_t>(i)], cap);
    if (format == "json") {
      nlohmann::json row = {{"bidder", i}, {"gross_substitute", !w}};
      if (w)
        row["witness"] = {{"price", w->price}, {"set", set_items(w->set)},
                          {"lhs", w->lhs}, {"rhs", w->rhs}};
      rows.push_back(std::move(row));
    } else if (!w) {
      std::cout << "bidder " << i << ": gross substitutes\n";
    } else {
      std::cout << "bidder " << i << ": VIOLATION at " << format_price(w->price) << ", S="
                << pretty_set(w->set, inst) << ": u(p)=" << w->lhs
                << ", u(p+1_S)+l=" << w->rhs << "\n";
    }
    all_pass = all_pass && !w;
  }
  if (format == "json") emit({{"all_pass", all_pass}, {"bidders", std::move(rows)}});
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_lyapunov(const Instance& inst, const PriceVector& p, const std::string& format) {
  const LyapunovReport rep = lyapunov(inst, p);
  if (format == "json") {
    emit({{"price", p}, {"value", rep.value}, {"bidder_utilities", rep.bidder_utilities},
          {"price_mass", rep.price_mass}});
  } else {
    std::cout << "L" << format_price(p) << " = " << rep.value << "  (utilities";
    for (Value u : rep.bidder_utilities) std::cout << " " << u;
    std::cout << ", price mass " << rep.price_mass << ")\n";
  }
  return kExitOk;
}

int cmd_lyapunov_min(const Instance& inst, const std::string& format) {
  const GridMinimum gm = grid_minimize_lyapunov(inst);
  if (format == "json") {
    emit({{"min_value", gm.min_value}, {"minimizers", gm.minimizers}});
  } else {
    std::cout << "min L = " << gm.min_value << " over {0.." << grid_vmax(inst) << "}^" << inst.m
              << "\nminimizers:";
    for (const auto& q : gm.minimizers) std::cout << " " << format_price(q);
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_characterize(const Instance& inst, const PriceVector& p, bool force, int cap,
                     const std::string& format) {
  const CharacterizationVerdict v = characterize(inst, p, !force, cap);
  if (format == "json") {
    nlohmann::json out = verdict_to_json(v);
    out["price"] = p;
    if (force) out["premise_checked"] = false;
    emit(out);
    return kExitOk;
  }
  std::cout << "price " << format_price(p) << ":";
  if (v.walrasian) {
    std::cout << " walrasian";
    if (v.minimum) std::cout << ", minimum";
    if (v.maximum) std::cout << ", maximum";
    std::cout << "\n";
    auto explain = [&](const char* label, const std::optional<SetClassification>& e) {
      if (!e) return;
      std::cout << "  not " << label << ": " << pretty_set(e->set, inst)
                << (e->weakly_under ? " weakly under-demanded (h=" : " weakly over-demanded (l=")
                << (e->weakly_under ? e->h : e->l) << " vs |S|=" << e->cardinality << ")\n";
    };
    if (!v.minimum) explain("minimum", v.min_evidence);
    if (!v.maximum) explain("maximum", v.max_evidence);
  } else {
    std::cout << " not walrasian\n";
    if (v.walras_evidence) {
      const auto& e = *v.walras_evidence;
      std::cout << "  evidence: " << pretty_set(e.set, inst)
                << (e.over ? " over-demanded (l=" : " under-demanded (h=")
                << (e.over ? e.l : e.h) << " vs |S|=" << e.cardinality << ")\n";
    }
  }
  return kExitOk;
}

int cmd_equilibrium(const Instance& inst, const std::string& format) {
  const Allocation alloc = max_welfare(inst);
  const auto mn = min_walrasian(inst);
  const auto mx = max_walrasian(inst);
  if (format == "json") {
    nlohmann::json bundles = nlohmann::json::array();
    for (ItemSet s : alloc.bundles) bundles.push_back(set_items(s));
    nlohmann::json out = {{"welfare", alloc.welfare}, {"allocation", std::move(bundles)}};
    out["min"] = mn ? nlohmann::json(mn->price) : nlohmann::json();
    out["max"] = mx ? nlohmann::json(mx->price) : nlohmann::json();
    emit(out);
    return kExitOk;
  }
  std::cout << "max welfare " << alloc.welfare << " via allocation:";
  for (int i = 0; i < inst.n(); ++i)
    std::cout << " bidder" << i << "=" << pretty_set(alloc.bundles[static_cast<std::size_t>(i)], inst);
  std::cout << "\n";
  if (mn && mx)
    std::cout << "min walrasian " << format_price(mn->price) << ", max walrasian "
              << format_price(mx->price) << "\n";
  else
    std::cout << "no walrasian price vector on the grid\n";
  return kExitOk;
}

int cmd_auction(const Instance& inst, const std::string& direction, const std::string& policy_name,
                std::uint64_t seed, bool unchecked, const std::string& trace_path,
                const std::string& format) {
  Policy pol;
  if (policy_name == "minimal-minimizer") pol.kind = PolicyKind::Minimizer;
  else if (policy_name == "lex-first") pol.kind = PolicyKind::LexFirst;
  else if (policy_name == "random") pol.kind = PolicyKind::Random;
  else if (policy_name == "largest") pol.kind = PolicyKind::Largest;
  else throw UsageError("unknown policy \"" + policy_name + "\"");
  pol.seed = seed;

  RunOptions opts;
  opts.unchecked = unchecked;
  const AuctionTrace trace = direction == "asc" ? run_ascending(inst, pol, opts)
                                                : run_descending(inst, pol, opts);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw UsageError("cannot write " + trace_path);
    out << trace_to_json(trace).dump(2) << "\n";
  }
  if (format == "json") {
    emit(trace_to_json(trace));
    return kExitOk;
  }
  std::cout << (trace.direction == Direction::Ascending ? "ascending" : "descending")
            << " auction, policy " << trace.policy;
  if (pol.kind == PolicyKind::Random) std::cout << ", seed " << trace.seed;
  std::cout << "\n";
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    const auto& round = trace.rounds[r];
    std::cout << "round " << r << ": " << format_price(round.price)
              << (trace.direction == Direction::Ascending ? " raise " : " lower ")
              << pretty_set(round.chosen, inst) << "  L " << round.l_before << " -> "
              << round.l_after;
    if (!round.in_demand_class) {
      std::cout << "  [outside demand class";
      if (round.culprit) std::cout << "; leaves " << pretty_set(*round.culprit, inst) << " behind";
      std::cout << "]";
    }
    std::cout << "\n";
  }
  std::cout << "final price " << format_price(trace.final_price) << " after "
            << trace.rounds.size() << " rounds\n";
  return kExitOk;
}

int cmd_unitdemand(const Instance& inst, const PriceVector& p, const std::string& format) {
  const auto rep = unitdemand::compare_with_general(inst, p);
  if (format == "json") {
    emit(comparison_to_json(rep));
    return kExitOk;
  }
  if (format == "csv") {
    std::cout << "set,mt_over,general_over,mt_under,general_under,andersson_excess,general_excess\n";
    for (const auto& row : rep.rows)
      std::cout << '"' << pretty_set(row.set, inst) << "\"," << row.mt_over << ','
                << row.general_over << ',' << row.mt_under << ',' << row.general_under << ','
                << row.andersson << ',' << row.general_excess << "\n";
    return kExitOk;
  }
  std::cout << "price " << format_price(p) << " (item-level vs bundle-level demand classes)\n";
  std::cout << "set           mt_over gen_over mt_under gen_under andersson gen_excess\n";
  for (const auto& row : rep.rows) {
    std::string name = pretty_set(row.set, inst);
    name.resize(std::max<std::size_t>(name.size(), 13), ' ');
    std::cout << name << " " << row.mt_over << "       " << row.general_over << "        "
              << row.mt_under << "        " << row.general_under << "         " << row.andersson
              << "         " << row.general_excess << "\n";
  }
  std::cout << "agreements: over " << rep.over_agreements << ", under " << rep.under_agreements
            << ", excess " << rep.excess_agreements << " of " << rep.rows.size() << "\n";
  return kExitOk;
}

int cmd_selftest(const Instance& inst, unsigned jobs, bool force, const std::string& format) {
  SelftestOptions opts;
  opts.jobs = jobs;
  opts.force = force;
  const SweepReport rep = selftest(inst, opts);
  if (format == "json") {
    emit(sweep_report_to_json(rep));
  } else {
    std::cout << "instance " << rep.digest << ": m=" << rep.m << ", n=" << rep.n
              << ", vmax=" << rep.vmax << "\n";
    std::cout << "substitutes premise: " << (rep.premise_ok ? "holds" : "FAILS") << "\n";
    for (const auto& s : rep.suites) {
      const char* tag = s.skipped ? "skip" : (s.failures ? "FAIL" : "pass");
      std::cout << "  [" << tag << "] " << s.name;
      for (std::size_t pad = s.name.size(); pad < 28; ++pad) std::cout << ' ';
      if (s.skipped) {
        std::cout << s.note;
      } else {
        std::cout << "checked " << s.checked;
        if (s.failures) std::cout << ", failures " << s.failures;
        if (!s.note.empty()) std::cout << "  (" << s.note << ")";
      }
      std::cout << "\n";
      if (s.first)
        std::cout << "        first counterexample via " << s.first->operation << ": "
                  << s.first->details.dump() << "\n";
    }
    std::cout << "result: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
  }
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_generate(int m, int n, Value max_value, const std::string& mix, std::uint64_t seed,
                 const std::string& out_path) {
  GenSpec spec;
  spec.m = m;
  spec.n = n;
  spec.max_value = max_value;
  if (mix == "additive") spec.mix = KindMix::Additive;
  else if (mix == "unit-demand") spec.mix = KindMix::UnitDemand;
  else if (mix == "mixed") spec.mix = KindMix::Mixed;
  else throw UsageError("unknown mix \"" + mix + "\"");
  spec.seed = seed;
  const Instance inst = generate_instance(spec);
#ifndef NDEBUG
  for (const auto& v : inst.bidders)
    if (v.m <= kDefaultGsCheckCap && is_gross_substitute(v))
      throw std::logic_error("generated bidder fails the substitutes check");
#endif
  const std::string text = serialize_instance(inst);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walrasian price analysis for monotone combinatorial auctions"};
  app.require_subcommand(1);

  std::string path, price_text, set_text, format = "text", direction = "asc";
  std::string policy = "lex-first", trace_path, mix = "mixed", out_path;
  int bidder = -1, cap = walras::kDefaultGsCheckCap;
  int gen_m = 2, gen_n = 2;
  long long max_value = 4;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool force = false, unchecked = false;

  const auto formats = CLI::IsMember({"text", "json"});
  auto add_common = [&](CLI::App* sub, bool with_price) {
    sub->add_option("file", path, "instance JSON file")->required();
    if (with_price)
      sub->add_option("--price", price_text, "comma-separated item prices, e.g. 1,0")->required();
    sub->add_option("--format", format, "output format")->check(formats);
    return sub;
  };

  auto* validate_cmd = app.add_subcommand("validate", "check instance well-formedness");
  validate_cmd->add_option("file", path)->required();
  validate_cmd->add_option("--format", format)->check(formats);

  auto* demand_cmd = add_common(app.add_subcommand("demand", "demand sets and max utility"), true);
  demand_cmd->add_option("--bidder", bidder, "restrict to one bidder");

  auto* classify_cmd = add_common(app.add_subcommand("classify", "demand-class flags for a set"), true);
  classify_cmd->add_option("--set", set_text, "item set, e.g. a,b or 0,1")->required();

  auto* gs_cmd = app.add_subcommand("gs-check", "verify the substitutes condition per bidder");
  gs_cmd->add_option("file", path)->required();
  gs_cmd->add_option("--bidder", bidder);
  gs_cmd->add_option("--cap", cap, "max items for the grid check");
  gs_cmd->add_option("--format", format)->check(formats);

  add_common(app.add_subcommand("lyapunov", "potential value at a price"), true);

  auto* lyapmin_cmd = app.add_subcommand("lyapunov-min", "grid minimum of the potential");
  lyapmin_cmd->add_option("file", path)->required();
  lyapmin_cmd->add_option("--format", format)->check(formats);

  auto* char_cmd = add_common(app.add_subcommand("characterize", "walrasian / minimum / maximum verdict"), true);
  char_cmd->add_flag("--force", force, "classify even if the substitutes premise fails");
  char_cmd->add_option("--cap", cap, "max items for the premise check");

  auto* eq_cmd = app.add_subcommand("equilibrium", "welfare optimum and extreme walrasian prices");
  eq_cmd->add_option("file", path)->required();
  eq_cmd->add_option("--format", format)->check(formats);

  auto* auction_cmd = app.add_subcommand("auction", "run the price-adjustment auction");
  auction_cmd->add_option("file", path)->required();
  auction_cmd->add_option("--direction", direction)->check(CLI::IsMember({"asc", "desc"}));
  auction_cmd->add_option("--policy", policy)
      ->check(CLI::IsMember({"minimal-minimizer", "lex-first", "random", "largest"}));
  auction_cmd->add_option("--seed", seed, "seed for the random policy");
  auction_cmd->add_flag("--unchecked", unchecked,
                        "offer all over-/under-demanded sets and skip the premise");
  auction_cmd->add_option("--trace", trace_path, "write the round-by-round trace JSON here");
  auction_cmd->add_option("--format", format)->check(formats);

  auto* ud_cmd = app.add_subcommand("unitdemand", "item-level vs bundle-level demand classes");
  ud_cmd->add_option("file", path)->required();
  ud_cmd->add_option("--price", price_text, "comma-separated item prices")->required();
  ud_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));

  auto* selftest_cmd = app.add_subcommand("selftest", "exhaustive invariant sweep");
  selftest_cmd->add_option("file", path)->required();
  selftest_cmd->add_option("--jobs", jobs, "worker threads (never affects results)");
  selftest_cmd->add_flag("--force", force, "run premise-dependent suites on non-substitute instances");
  selftest_cmd->add_option("--format", format)->check(formats);

  auto* gen_cmd = app.add_subcommand("generate", "deterministic pseudo-random instance");
  gen_cmd->add_option("--items", gen_m, "number of items")->required();
  gen_cmd->add_option("--bidders", gen_n, "number of bidders")->required();
  gen_cmd->add_option("--max-value", max_value, "value scale");
  gen_cmd->add_option("--mix", mix)->check(CLI::IsMember({"additive", "unit-demand", "mixed"}));
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--out", out_path, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(validate_cmd)) return cmd_validate(path, format);
    if (app.got_subcommand(gen_cmd))
      return cmd_generate(gen_m, gen_n, static_cast<walras::Value>(max_value), mix, seed, out_path);

    const Instance inst = load_instance(path);
    if (app.got_subcommand(demand_cmd))
      return cmd_demand(inst, parse_price(price_text, inst), bidder, format);
    if (app.got_subcommand(classify_cmd))
      return cmd_classify(inst, parse_price(price_text, inst), parse_set(set_text, inst), format);
    if (app.got_subcommand(gs_cmd)) return cmd_gs_check(inst, bidder, cap, format);
    if (app.got_subcommand("lyapunov"))
      return cmd_lyapunov(inst, parse_price(price_text, inst), format);
    if (app.got_subcommand(lyapmin_cmd)) return cmd_lyapunov_min(inst, format);
    if (app.got_subcommand(char_cmd))
      return cmd_characterize(inst, parse_price(price_text, inst), force, cap, format);
    if (app.got_subcommand(eq_cmd)) return cmd_equilibrium(inst, format);
    if (app.got_subcommand(auction_cmd))
      return cmd_auction(inst, direction, policy, seed, unchecked, trace_path, format);
    if (app.got_subcommand("unitdemand"))
      return cmd_unitdemand(inst, parse_price(price_text, inst), format);
    if (app.got_subcommand(selftest_cmd)) return cmd_selftest(inst, jobs, force, format);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PremiseError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitContract;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitContract;
  }
}
