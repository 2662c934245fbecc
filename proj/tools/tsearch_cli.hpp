#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsearch/analysis.hpp"
#include "tsearch/bounds.hpp"
#include "tsearch/formula.hpp"
#include "tsearch/oracle.hpp"
#include "tsearch/ordering.hpp"
#include "tsearch/search.hpp"
#include "tsearch/solvers.hpp"

namespace tsearch::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kPromise = 1, kUsage = 2, kLimit = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand needs, filled from the command line.
struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string gen;
  std::optional<std::size_t> t;
  bool min = false;
  std::string alpha;
  double c = kDefaultThreshold;
  std::string sign = "auto";
  std::string order = "canonical";
  std::string edge_order = "random";
  std::optional<std::uint64_t> seed;
  std::size_t trials = 0;
  bool stats = false;
  bool per_leaf = false;
  std::size_t node_cap = analysis::kDefaultNodeLimit;
  std::size_t oracle_limit = oracle::kDefaultWeightLimit;
  std::string table;
  int dmax = 8;
  std::optional<int> ymax;
  bool constants = false;
};

// ---------------------------------------------------------------------------
// Inputs

inline std::map<std::string, std::string> parse_kv(const std::string& body, const std::string& spec) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("bad generator parameter '" + item + "' in '" + spec + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

inline std::uint64_t kv_uint(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& spec,
                             std::optional<std::uint64_t> fallback = std::nullopt) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw UsageError("generator '" + spec + "' needs " + key + "=");
  }
  try {
    std::size_t used = 0;
    auto v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw UsageError("generator parameter " + key + "='" + it->second + "' is not a non-negative integer");
  }
}

/// maj:n=8,k=3 | disjoint:t=3,n=6 | random:n=10,m=20,k=3,seed=1[,monotone=1]
inline CnfFormula generate(const std::string& spec) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const auto kv = parse_kv(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
  if (kind == "maj") return gen_maj(kv_uint(kv, "n", spec), kv_uint(kv, "k", spec, 3));
  if (kind == "disjoint") return gen_disjoint_2cnf(kv_uint(kv, "t", spec), kv_uint(kv, "n", spec));
  if (kind == "random")
    return gen_random_cnf(kv_uint(kv, "n", spec), kv_uint(kv, "m", spec), kv_uint(kv, "k", spec, 3),
                          kv_uint(kv, "monotone", spec, 0) != 0, kv_uint(kv, "seed", spec, 0));
  throw UsageError("unknown generator '" + kind + "' (expected maj, disjoint or random)");
}

inline CnfFormula load_formula(const RunConfig& cfg) {
  if (cfg.input.empty() == cfg.gen.empty()) throw UsageError("exactly one of --input or --gen is required");
  if (!cfg.gen.empty()) return generate(cfg.gen);
  std::ifstream in(cfg.input);
  if (!in) throw UsageError("cannot open " + cfg.input);
  return parse_dimacs(in);
}

inline VarSet parse_alpha(const std::string& bits, std::size_t n) {
  VarSet a(n);
  if (bits.empty()) return a;
  if (bits.size() != n) throw UsageError("--alpha must have exactly " + std::to_string(n) + " characters");
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] == '1') a.insert(static_cast<Var>(i + 1));
    else if (bits[i] != '0') throw UsageError("--alpha must contain only 0 and 1");
  }
  return a;
}

inline OrderingMode ordering_mode(const RunConfig& cfg, const CnfFormula& f) {
  if (cfg.order == "canonical") return f.monotone() ? OrderingMode::monotone_canonical : OrderingMode::general_canonical;
  if (cfg.order == "monotone") return OrderingMode::monotone_canonical;
  if (cfg.order == "general") return OrderingMode::general_canonical;
  return OrderingMode::as_given;
}

inline EdgeOrderPolicy edge_policy(RunConfig& cfg, std::ostream& err) {
  if (cfg.edge_order == "fixed") return EdgeOrderPolicy::fixed();
  if (!cfg.seed) {
    std::random_device rd;
    cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  err << "c seed " << *cfg.seed << '\n';
  return EdgeOrderPolicy::random(*cfg.seed);
}

inline Json seed_json(const RunConfig& cfg) { return cfg.edge_order == "fixed" || !cfg.seed ? Json(nullptr) : Json(*cfg.seed); }

inline Json members_json(const VarSet& s) { return Json(s.members()); }

inline std::string witness_text(const VarSet& s) { return s.empty() ? std::string("∅") : "{" + s.to_string() + "}"; }

inline void print_sets(std::ostream& out, std::vector<VarSet> sets) {
  std::sort(sets.begin(), sets.end());
  for (const auto& s : sets) out << s.to_string() << '\n';
}

inline Json solve_report_json(const std::string& command, const SolveReport& r, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["satisfiable"] = r.satisfiable ? Json(*r.satisfiable) : Json(nullptr);
  j["count"] = r.assignments.size();
  Json a = Json::array();
  for (const auto& s : r.assignments) a.push_back(members_json(s));
  j["assignments"] = a;
  j["t"] = r.t ? Json(*r.t) : Json(nullptr);
  j["alpha"] = r.alpha ? members_json(*r.alpha) : Json(nullptr);
  j["c"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
  j["leaves_visited"] = r.stats.leaves_visited;
  j["nodes_expanded"] = r.stats.nodes_expanded;
  j["edges_pruned"] = r.stats.edges_pruned;
  j["runs"] = r.stats.runs;
  j["seed"] = seed_json(cfg);
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_enum(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = load_formula(cfg);
  const auto alpha = parse_alpha(cfg.alpha, f.num_vars());
  const auto policy = edge_policy(cfg, err);
  const SolverConfig scfg{ordering_mode(cfg, f), policy};
  SearchOutcome o;
  std::size_t t = 0;
  if (cfg.min) {
    const auto g = flip_literals(f, alpha);
    auto [tau_value, outcome] = enumerate_min(g, canonical_ordering(g, scfg.ordering), policy);
    for (auto& s : outcome.transversals) s = s ^ alpha;
    t = tau_value;
    o = std::move(outcome);
  } else {
    t = *cfg.t;
    o = enum_ball(f, alpha, t, scfg);
  }
  print_sets(out, o.transversals);
  if (cfg.stats) {
    Json j;
    j["tau"] = t;
    j["count"] = o.transversals.size();
    j["leaves_visited"] = o.leaves_visited;
    j["nodes_expanded"] = o.nodes_expanded;
    j["edges_pruned"] = o.edges_pruned;
    j["seed"] = seed_json(cfg);
    out << j.dump() << '\n';
  }
  return kOk;
}

inline int cmd_oracle(RunConfig& cfg, std::ostream& out) {
  const auto f = load_formula(cfg);
  const auto alpha = parse_alpha(cfg.alpha, f.num_vars());
  const auto g = flip_literals(f, alpha);
  std::set<VarSet> sets;
  std::size_t t = 0;
  if (cfg.min) {
    auto [tv, s] = oracle::brute_min_transversals(g, cfg.oracle_limit);
    t = tv;
    sets = std::move(s);
  } else {
    t = *cfg.t;
    for (std::size_t w = 0; w < t; ++w)
      if (!oracle::brute_models_at_weight(g, w, cfg.oracle_limit).empty()) {
        for (const auto& s : oracle::brute_models_at_weight(g, w, cfg.oracle_limit))
          throw PromiseViolation(s ^ alpha, t);
      }
    sets = oracle::brute_models_at_weight(g, t, cfg.oracle_limit);
  }
  std::vector<VarSet> translated;
  for (const auto& s : sets) translated.push_back(s ^ alpha);
  print_sets(out, translated);
  if (cfg.stats) {
    Json j;
    j["tau"] = t;
    j["count"] = translated.size();
    out << j.dump() << '\n';
  }
  return kOk;
}

inline int cmd_tau(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = load_formula(cfg);
  const auto policy = edge_policy(cfg, err);
  auto [t, o] = enumerate_min(f, canonical_ordering(f, ordering_mode(cfg, f)), policy);
  out << t << '\n';
  if (cfg.stats) {
    Json j;
    j["tau"] = t;
    j["count"] = o.transversals.size();
    j["leaves_visited"] = o.leaves_visited;
    j["nodes_expanded"] = o.nodes_expanded;
    j["edges_pruned"] = o.edges_pruned;
    j["seed"] = seed_json(cfg);
    out << j.dump() << '\n';
  }
  return kOk;
}

inline void print_verdict(std::ostream& out, const SolveReport& r) {
  out << (r.satisfiable.value_or(false) ? "SATISFIABLE" : "UNSATISFIABLE") << '\n';
}

inline int cmd_ball_sat(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = load_formula(cfg);
  const auto alpha = parse_alpha(cfg.alpha, f.num_vars());
  const SolverConfig scfg{ordering_mode(cfg, f), edge_policy(cfg, err)};
  auto r = ball_sat(f, alpha, *cfg.t, scfg);
  print_verdict(out, r);
  if (cfg.stats) out << solve_report_json("ball-sat", r, cfg).dump() << '\n';
  return kOk;
}

inline int cmd_sat3(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = load_formula(cfg);
  const SolverConfig scfg{ordering_mode(cfg, f), edge_policy(cfg, err)};
  auto r = sat3(f, scfg);
  print_verdict(out, r);
  if (cfg.stats) out << solve_report_json("sat3", r, cfg).dump() << '\n';
  return kOk;
}

inline int cmd_minimal_models(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = load_formula(cfg);
  const SolverConfig scfg{ordering_mode(cfg, f), edge_policy(cfg, err)};
  SignMode mode = cfg.sign == "pos" ? SignMode::positive : cfg.sign == "neg" ? SignMode::negative : SignMode::automatic;
  auto r = minimal_models_bounded_neg(f, cfg.c, mode, scfg);
  print_sets(out, r.assignments);
  if (cfg.stats) out << solve_report_json("minimal-models", r, cfg).dump() << '\n';
  return kOk;
}

inline std::size_t node_cap(const RunConfig& cfg) {
  if (const char* env = std::getenv("ENUM_NODE_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("ENUM_NODE_CAP='") + env + "' is not a number");
    }
  }
  return cfg.node_cap;
}

inline Json histogram_json(const std::map<long, std::size_t>& h) {
  Json j = Json::object();
  for (auto [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

inline int cmd_analyze(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace analysis;
  const auto f = load_formula(cfg);
  const auto mode = ordering_mode(cfg, f);
  const auto ordering = canonical_ordering(f, mode);
  const std::size_t n = f.num_vars();
  std::size_t t = 0;
  if (cfg.min) t = enumerate_min(f, ordering, EdgeOrderPolicy::fixed()).first;
  else t = *cfg.t;

  const auto tree = build_tree(f, ordering, t, node_cap(cfg));
  const auto marks = compute_markings(tree);
  const auto exact = survival_exact(tree, marks);
  const auto pess_mono = survival_pessimistic(tree, marks, PessimisticMode::monotone);
  const auto pess_gen = survival_pessimistic(tree, marks, PessimisticMode::general);

  bool three_uniform_monotone = f.monotone() && f.num_clauses() > 0;
  for (const auto& c : f.clauses()) three_uniform_monotone = three_uniform_monotone && c.size() == 3;

  std::map<long, std::size_t> h_path, h_shoot, h_uniform, h_double, h_full;
  bool shoot_lb = true, uniform_lb = true, fullness_ok = true, dom_mono = true, dom_gen = true;
  std::map<VarSet, Rational> gamma_mass;
  std::size_t valid = 0;
  Json per_leaf = Json::array();
  for (std::size_t i = 0; i < exact.leaves.size(); ++i) {
    const NodeId leaf = exact.leaves[i];
    const auto& node = tree.node(leaf);
    const auto st = path_stats(tree, marks, leaf);
    const auto label = tree.label_set(leaf);
    const bool is_valid = !node.bottom && node.depth == t && is_model(f, label);
    if (is_valid) {
      ++valid;
      gamma_mass[label] += exact.per_leaf[i];
    }
    ++h_path[static_cast<long>(st.path_weight)];
    ++h_shoot[static_cast<long>(st.shoot_weight)];
    ++h_uniform[st.uniform_weight];
    ++h_double[static_cast<long>(st.double_weight)];
    ++h_full[static_cast<long>(st.fullness)];
    const long floor = 3 * static_cast<long>(st.length) - static_cast<long>(n);
    shoot_lb = shoot_lb && static_cast<long>(st.shoot_weight) >= floor;
    uniform_lb = uniform_lb && st.uniform_weight >= floor;
    fullness_ok = fullness_ok && st.fullness <= 2 * tree.prefix_len;
    const double sigma = exact.per_leaf[i].convert_to<double>();
    dom_mono = dom_mono && sigma <= pess_mono.per_leaf[i] * (1 + 1e-12);
    dom_gen = dom_gen && sigma <= pess_gen.per_leaf[i] * (1 + 1e-12);
    if (cfg.per_leaf) {
      Json l;
      l["label"] = members_json(label);
      l["depth"] = node.depth;
      l["bottom"] = node.bottom;
      l["valid"] = is_valid;
      l["sigma"] = exact.per_leaf[i].str();
      l["sigma_value"] = sigma;
      l["sigma_monotone"] = pess_mono.per_leaf[i];
      l["sigma_general"] = pess_gen.per_leaf[i];
      l["path_weight"] = st.path_weight;
      l["shoot_weight"] = st.shoot_weight;
      l["uniform_weight"] = st.uniform_weight;
      l["double_weight"] = st.double_weight;
      l["fullness"] = st.fullness;
      per_leaf.push_back(l);
    }
  }
  bool gamma_ok = !gamma_mass.empty();
  for (const auto& [label, mass] : gamma_mass) gamma_ok = gamma_ok && mass == Rational(1);
  std::size_t flagged = 0;
  for (const auto& v : check_disjoint_marking(tree, marks))
    if (!v.holds()) ++flagged;

  Json j;
  j["n"] = n;
  j["t"] = t;
  j["ordering"] = to_string(mode);
  j["m"] = tree.prefix_len;
  j["x_d"] = members_json(tree.prefix_vars);
  j["nodes"] = tree.size();
  j["leaves"] = exact.leaves.size();
  j["valid_leaves"] = valid;
  j["distinct_transversals"] = gamma_mass.size();
  j["sigma_exact"] = Json{{"rational", exact.total.str()}, {"value", exact.total_value()}};
  j["sigma_pessimistic"] = Json{{"monotone", pess_mono.total}, {"general", pess_gen.total}};
  j["per_leaf"] = per_leaf;
  j["weight_histograms"] = Json{{"path_weight", histogram_json(h_path)},
                                {"shoot_weight", histogram_json(h_shoot)},
                                {"uniform_weight", histogram_json(h_uniform)},
                                {"double_weight", histogram_json(h_double)},
                                {"fullness", histogram_json(h_full)}};
  j["structural_checks"] = Json{
      {"shoot_weight_lower_bound", Json{{"applicable", three_uniform_monotone}, {"holds", shoot_lb}}},
      {"uniform_weight_lower_bound", uniform_lb},
      {"fullness_at_most_2m", fullness_ok},
      {"disjoint_marking_flagged_nodes", flagged},
      {"pessimistic_dominance_monotone", dom_mono},
      {"pessimistic_dominance_general", dom_gen},
      {"transversal_survival_sums_to_one", gamma_ok},
  };
  if (cfg.trials > 0) {
    const auto policy = edge_policy(cfg, err);
    auto mc = monte_carlo_leaves(f, t, ordering, cfg.trials, policy.seed);
    j["monte_carlo"] = Json{{"trials", mc.trials},
                            {"seed", *cfg.seed},
                            {"mean", mc.mean},
                            {"std_error", mc.std_error ? Json(*mc.std_error) : Json(nullptr)}};
  }
  out << j.dump(2) << '\n';
  return kOk;
}

inline int cmd_bounds(RunConfig& cfg, std::ostream& out) {
  using namespace bounds;
  if (cfg.constants) {
    const auto h = headline_constants(cfg.c);
    Json j;
    j["lambda"] = kLambda;
    j["regime2"] = Json{{"base_n", h.regime2_n}, {"base_t", h.regime2_t}};
    j["regime3"] = Json{{"base_n", h.regime3_n}, {"base_t", h.regime3_t}};
    j["per_variable_base"] = h.per_variable_base;
    j["majority_lower_bound_base"] = h.majority_base;
    j["maj_count_base"] = h.maj_count_base;
    j["trivial_base"] = h.trivial_base;
    j["bounded_negation"] = Json{{"c", h.threshold},
                                 {"entropy", h.entropy},
                                 {"entropy_base", h.entropy_base},
                                 {"tree_base", h.tree_base},
                                 {"balanced", std::abs(h.entropy_base - h.tree_base) <= 1e-3}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  if (cfg.table.empty()) throw UsageError("bounds needs --table or --constants");
  if (cfg.dmax < 0) throw UsageError("--dmax must be non-negative");
  BoundGrid grid;
  auto fmt = [](double x) {
    std::ostringstream s;
    s.precision(12);
    s << x;
    return s.str();
  };
  auto rel_equal = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); };
  auto leq = [](double a, double b) { return a <= b * (1 + 1e-9) + 1e-12; };
  const std::string& tab = cfg.table;
  if (tab == "mprime" || tab == "m2" || tab == "g") {
    out << "w,d,value,closed_form,ok\n";
    for (int d = 0; d <= cfg.dmax; ++d)
      for (int w = 0; w <= 3 * d; ++w) {
        double value = 0, closed = 0;
        bool ok = false;
        if (tab == "mprime") {
          value = grid.mprime_dp(w, d);
          closed = mprime_closed(w, d);
          ok = rel_equal(value, closed);
        } else if (tab == "m2") {
          value = grid.m2_rec(w, d);
          closed = grid.l_rec(w, d, 0);
          ok = leq(value, closed);
        } else {
          value = grid.l_rec(w, d, 0);
          closed = g_closed(w, d);
          ok = leq(value, closed);
        }
        out << w << ',' << d << ',' << fmt(value) << ',' << fmt(closed) << ',' << (ok ? "true" : "false") << '\n';
      }
    return kOk;
  }
  if (tab == "l" || tab == "h") {
    out << "w,d,y,value,closed_form,ok\n";
    for (int d = 0; d <= cfg.dmax; ++d) {
      const int ymax = tab == "h" ? d : cfg.ymax.value_or(d + 2);
      for (int y = 0; y <= ymax; ++y)
        for (int w = 0; w <= 3 * d; ++w) {
          const double value = grid.l_rec(w, d, y);
          const double closed = y <= d ? h_closed(w, d, y) : mprime_closed(w, d);
          out << w << ',' << d << ',' << y << ',' << fmt(value) << ',' << fmt(closed) << ','
              << (leq(value, closed) ? "true" : "false") << '\n';
        }
    }
    return kOk;
  }
  throw UsageError("unknown table '" + tab + "' (expected mprime, l, m2, h or g)");
}

// ---------------------------------------------------------------------------

inline void add_input_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "DIMACS CNF file");
  sub->add_option("--gen", cfg.gen, "generator: maj:n=N,k=K | disjoint:t=T,n=N | random:n=N,m=M,k=K,seed=S[,monotone=1]");
  sub->add_option("--order", cfg.order, "clause ordering")
      ->check(CLI::IsMember({"canonical", "monotone", "general", "as-given"}));
}

inline void add_search_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--edge-order", cfg.edge_order, "child ordering policy")->check(CLI::IsMember({"random", "fixed"}));
  sub->add_option("--seed", cfg.seed, "seed for random child ordering");
  sub->add_flag("--stats", cfg.stats, "print a JSON statistics line");
}

/// Runs one command line. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Minimum-transversal enumeration by randomized pruned tree search", "tsearch"};
  app.require_subcommand(1);

  auto* en = app.add_subcommand("enum", "enumerate models at distance t (or the minimum distance) from alpha");
  add_input_options(en, cfg);
  add_search_options(en, cfg);
  auto* en_t = en->add_option("--t", cfg.t, "distance");
  auto* en_min = en->add_flag("--min", cfg.min, "use the minimum distance");
  en_t->excludes(en_min);
  en->add_option("--alpha", cfg.alpha, "centre as a 0/1 string of length n");

  auto* orc = app.add_subcommand("oracle", "brute-force counterpart of enum");
  add_input_options(orc, cfg);
  orc->add_flag("--stats", cfg.stats, "print a JSON statistics line");
  auto* orc_t = orc->add_option("--t", cfg.t, "distance");
  auto* orc_min = orc->add_flag("--min", cfg.min, "use the minimum distance");
  orc_t->excludes(orc_min);
  orc->add_option("--alpha", cfg.alpha, "centre as a 0/1 string of length n");
  orc->add_option("--limit", cfg.oracle_limit, "maximum number of variables");

  auto* ta = app.add_subcommand("tau", "minimum model weight");
  add_input_options(ta, cfg);
  add_search_options(ta, cfg);

  auto* bs = app.add_subcommand("ball-sat", "is there a model within distance t of alpha");
  add_input_options(bs, cfg);
  add_search_options(bs, cfg);
  bs->add_option("--t", cfg.t, "radius")->required();
  bs->add_option("--alpha", cfg.alpha, "centre as a 0/1 string of length n");

  auto* s3 = app.add_subcommand("sat3", "decide a 3-CNF");
  add_input_options(s3, cfg);
  add_search_options(s3, cfg);

  auto* mm = app.add_subcommand("minimal-models", "enumerate minimal models of a sign-bounded CNF");
  add_input_options(mm, cfg);
  add_search_options(mm, cfg);
  mm->add_option("--c", cfg.c, "fraction of n searched by the tree")->check(CLI::Range(0.0, 1.0));
  mm->add_option("--sign", cfg.sign, "which literal sign is bounded by 3")->check(CLI::IsMember({"pos", "neg", "auto"}));

  auto* an = app.add_subcommand("analyze", "materialize the transversal tree and report survival statistics");
  add_input_options(an, cfg);
  auto* an_t = an->add_option("--t", cfg.t, "tree depth");
  auto* an_min = an->add_flag("--min", cfg.min, "depth = minimum model weight");
  an_t->excludes(an_min);
  an->add_option("--trials", cfg.trials, "Monte Carlo runs of the search");
  an->add_option("--seed", cfg.seed, "Monte Carlo seed");
  an->add_option("--node-cap", cfg.node_cap, "tree node limit (ENUM_NODE_CAP overrides)");
  an->add_flag("--per-leaf", cfg.per_leaf, "include per-leaf statistics");

  auto* bo = app.add_subcommand("bounds", "recurrence tables and headline constants");
  bo->add_option("--table", cfg.table, "mprime | l | m2 | h | g");
  bo->add_option("--dmax", cfg.dmax, "largest depth in the table");
  bo->add_option("--ymax", cfg.ymax, "largest y for the l table (default d+2)");
  bo->add_flag("--constants", cfg.constants, "print headline constants as JSON");
  bo->add_option("--c", cfg.c, "bounded-negation threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    auto needs_depth = [&](const char* name) {
      if (!cfg.t && !cfg.min) throw UsageError(std::string(name) + " needs --t N or --min");
    };
    if (en->parsed()) {
      needs_depth("enum");
      return cmd_enum(cfg, out, err);
    }
    if (orc->parsed()) {
      needs_depth("oracle");
      return cmd_oracle(cfg, out);
    }
    if (ta->parsed()) return cmd_tau(cfg, out, err);
    if (bs->parsed()) return cmd_ball_sat(cfg, out, err);
    if (s3->parsed()) return cmd_sat3(cfg, out, err);
    if (mm->parsed()) return cmd_minimal_models(cfg, out, err);
    if (an->parsed()) {
      needs_depth("analyze");
      return cmd_analyze(cfg, out, err);
    }
    if (bo->parsed()) return cmd_bounds(cfg, out);
  } catch (const PromiseViolation& pv) {
    err << pv.what() << "\nwitness " << witness_text(pv.witness()) << '\n';
    return kPromise;
  } catch (const Unsatisfiable& e) {
    err << "unsatisfiable: " << e.what() << '\n';
    return kPromise;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kLimit;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormulaError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tsearch::cli
