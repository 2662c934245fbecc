#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <vector>

#include "tsearch/errors.hpp"
#include "tsearch/formula.hpp"
#include "tsearch/ordering.hpp"
#include "tsearch/search.hpp"

namespace tsearch {

struct SolverConfig {
  OrderingMode ordering = OrderingMode::general_canonical;
  EdgeOrderPolicy policy = EdgeOrderPolicy::random(0);
};

struct SearchTotals {
  std::uint64_t leaves_visited = 0;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t edges_pruned = 0;
  std::uint64_t runs = 0;

  void add(const SearchOutcome& o) {
    leaves_visited += o.leaves_visited;
    nodes_expanded += o.nodes_expanded;
    edges_pruned += o.edges_pruned;
    ++runs;
  }
};

struct SolveReport {
  std::optional<bool> satisfiable;
  std::vector<VarSet> assignments;  ///< sorted by (size, members)
  SearchTotals stats;
  std::optional<std::size_t> t;
  std::optional<VarSet> alpha;
  std::optional<double> threshold;
};

/// Minimum weight of a model, by iterative deepening.
inline std::size_t tau(const CnfFormula& f, const SolverConfig& cfg = {}) {
  return enumerate_min(f, canonical_ordering(f, cfg.ordering), cfg.policy).first;
}

/// Models at distance exactly t from alpha, each once. The ordering is made
/// canonical for the flipped formula.
inline SearchOutcome enum_ball(const CnfFormula& f, const VarSet& alpha, std::size_t t, const SolverConfig& cfg) {
  const CnfFormula g = flip_literals(f, alpha);
  const auto ordering = canonical_ordering(g, cfg.ordering);
  try {
    auto out = enumerate_at_depth(g, t, ordering, cfg.policy);
    for (auto& s : out.transversals) s = s ^ alpha;
    return out;
  } catch (const PromiseViolation& pv) {
    throw PromiseViolation(pv.witness() ^ alpha, t);
  }
}

/// Enum(k, t): every model at distance exactly t from alpha, under the
/// promise that none is closer.
inline SolveReport enum_kt(const CnfFormula& f, const VarSet& alpha, std::size_t t, const SolverConfig& cfg = {}) {
  SolveReport r;
  auto out = enum_ball(f, alpha, t, cfg);
  r.stats.add(out);
  r.assignments = std::move(out.transversals);
  std::sort(r.assignments.begin(), r.assignments.end());
  r.satisfiable = !r.assignments.empty();
  r.t = t;
  r.alpha = alpha;
  return r;
}

/// Is there a model within distance t of alpha? Radii are tried in
/// increasing order, so the promise holds at every call.
inline SolveReport ball_sat(const CnfFormula& f, const VarSet& alpha, std::size_t t, const SolverConfig& cfg = {}) {
  SolveReport r;
  r.t = t;
  r.alpha = alpha;
  r.satisfiable = false;
  for (std::size_t radius = 0; radius <= std::min(t, f.num_vars()); ++radius) {
    auto out = enum_ball(f, alpha, radius, cfg);
    r.stats.add(out);
    if (!out.transversals.empty()) {
      r.satisfiable = true;
      std::sort(out.transversals.begin(), out.transversals.end());
      r.assignments.push_back(out.transversals.front());
      break;
    }
  }
  return r;
}

/// 3-SAT via two balls of radius ceil(n/2) around all-0 and all-1.
inline SolveReport sat3(const CnfFormula& f, const SolverConfig& cfg = {}) {
  if (f.max_width() > 3) throw PreconditionError("sat3: formula has a clause of width " + std::to_string(f.max_width()));
  const std::size_t n = f.num_vars();
  const std::size_t radius = (n + 1) / 2;
  auto low = std::async(std::launch::async, [&] { return ball_sat(f, VarSet(n), radius, cfg); });
  auto high = ball_sat(f, VarSet::full(n), radius, cfg);
  auto lo = low.get();
  SolveReport r;
  r.t = radius;
  r.stats = lo.stats;
  r.stats.leaves_visited += high.stats.leaves_visited;
  r.stats.nodes_expanded += high.stats.nodes_expanded;
  r.stats.edges_pruned += high.stats.edges_pruned;
  r.stats.runs += high.stats.runs;
  r.satisfiable = *lo.satisfiable || *high.satisfiable;
  if (*lo.satisfiable) r.assignments = lo.assignments;
  else if (*high.satisfiable) r.assignments = high.assignments;
  return r;
}

enum class SignMode {
  positive,   ///< every clause has at most 3 positive literals
  negative,   ///< every clause has at most 3 negative literals; search runs on the negated formula
  automatic,  ///< positive when it applies, otherwise negative
};

inline constexpr double kDefaultThreshold = 0.71347;
inline constexpr std::size_t kSignBudget = 3;

/// Minimal models of a CNF with at most three positive literals per clause.
///
/// Candidates are the capped tree search to weight ceil(c*n) plus every
/// heavier model by exhaustive scan; the result keeps the candidates with no
/// proper subset in the pool.
///
/// In negative mode the search runs on the literal-negated formula G and the
/// results are complements of G's minimal models, i.e. the maximal models of F.
inline SolveReport minimal_models_bounded_neg(const CnfFormula& f, double c = kDefaultThreshold,
                                              SignMode sign = SignMode::automatic, const SolverConfig& cfg = {}) {
  auto max_over = [&](bool positive) {
    std::size_t worst = 0;
    for (const auto& cl : f.clauses()) {
      auto p = positive_count(cl);
      worst = std::max(worst, positive ? p : cl.size() - p);
    }
    return worst;
  };
  if (sign == SignMode::automatic) {
    if (max_over(true) <= kSignBudget) sign = SignMode::positive;
    else if (max_over(false) <= kSignBudget) sign = SignMode::negative;
    else throw PreconditionError("minimal-models: some clause has more than 3 positive and more than 3 negative literals");
  }
  if (sign == SignMode::positive && max_over(true) > kSignBudget)
    throw PreconditionError("minimal-models: a clause has more than 3 positive literals");
  if (sign == SignMode::negative && max_over(false) > kSignBudget)
    throw PreconditionError("minimal-models: a clause has more than 3 negative literals");

  const CnfFormula g = sign == SignMode::positive ? f : negate_literals(f);
  const std::size_t n = g.num_vars();
  const auto cap = std::min(n, static_cast<std::size_t>(std::ceil(c * static_cast<double>(n) - 1e-12)));

  SolveReport r;
  r.threshold = c;
  std::vector<VarSet> pool = enumerate_models_capped(g, cap, canonical_ordering(g, cfg.ordering), cfg.policy);
  std::vector<Var> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Var>(i + 1);
  for (std::size_t w = cap + 1; w <= n; ++w)
    detail::for_each_combination(all, w, [&](const std::vector<Var>& combo) {
      auto s = VarSet::from_range(n, combo);
      if (is_model(g, s)) pool.push_back(std::move(s));
    });
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  // pool is sorted by size, so any proper subset precedes its superset
  std::vector<VarSet> minimal;
  for (const auto& s : pool) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const VarSet& m) { return m.is_subset_of(s); });
    if (!dominated) minimal.push_back(s);
  }
  if (sign == SignMode::negative)
    for (auto& s : minimal) s = s.complement();
  std::sort(minimal.begin(), minimal.end());
  r.assignments = std::move(minimal);
  r.satisfiable = !r.assignments.empty();
  return r;
}

}  // namespace tsearch
