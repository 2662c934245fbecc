#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tsearch/errors.hpp"
#include "tsearch/formula.hpp"

// Exhaustive ground truth. Shares nothing with the search engine except
// is_model().

namespace tsearch::oracle {

inline constexpr std::size_t kDefaultWeightLimit = 20;
inline constexpr std::size_t kDefaultMinimalLimit = 14;

inline void require_small(const CnfFormula& f, std::size_t limit) {
  if (f.num_vars() > limit)
    throw LimitExceeded("oracle limited to " + std::to_string(limit) + " variables, formula has " +
                        std::to_string(f.num_vars()));
}

/// Every model with exactly t variables set, by iterating all t-subsets.
inline std::set<VarSet> brute_models_at_weight(const CnfFormula& f, std::size_t t, std::size_t limit = kDefaultWeightLimit) {
  require_small(f, limit);
  std::set<VarSet> out;
  std::vector<Var> all(f.num_vars());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Var>(i + 1);
  if (t > all.size()) return out;
  detail::for_each_combination(all, t, [&](const std::vector<Var>& combo) {
    auto s = VarSet::from_range(f.num_vars(), combo);
    if (is_model(f, s)) out.insert(std::move(s));
  });
  return out;
}

/// (tau, Gamma): the least weight with a model, and all models of that weight.
inline std::pair<std::size_t, std::set<VarSet>> brute_min_transversals(const CnfFormula& f,
                                                                       std::size_t limit = kDefaultWeightLimit) {
  require_small(f, limit);
  for (std::size_t t = 0; t <= f.num_vars(); ++t) {
    auto s = brute_models_at_weight(f, t, limit);
    if (!s.empty()) return {t, std::move(s)};
  }
  throw Unsatisfiable("formula has no model");
}

/// All models with no model among their proper subsets.
///
/// Scans all 2^n assignments, then propagates "contains a model" upward over
/// the subset lattice so each candidate is tested against every proper
/// subset, not just its one-smaller neighbours (models are not upward closed
/// when negative literals are present).
inline std::set<VarSet> brute_minimal_models(const CnfFormula& f, std::size_t limit = kDefaultMinimalLimit) {
  require_small(f, std::min<std::size_t>(limit, 30));
  const std::size_t n = f.num_vars();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint8_t> model(total), below(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) model[mask] = is_model(f, VarSet::from_mask(n, mask)) ? 1 : 0;
  // below[S] = some subset of S (S included) is a model
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint8_t b = model[mask];
    for (std::size_t i = 0; i < n && !b; ++i)
      if (mask & (std::uint64_t{1} << i)) b = below[mask & ~(std::uint64_t{1} << i)];
    below[mask] = b;
  }
  std::set<VarSet> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!model[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < n && minimal; ++i)
      if ((mask & (std::uint64_t{1} << i)) && below[mask & ~(std::uint64_t{1} << i)]) minimal = false;
    if (minimal) out.insert(VarSet::from_mask(n, mask));
  }
  return out;
}

/// Every model of F (n small). Used for ball and satisfiability cross-checks.
inline std::vector<VarSet> brute_all_models(const CnfFormula& f, std::size_t limit = kDefaultWeightLimit) {
  require_small(f, limit);
  const std::size_t n = f.num_vars();
  std::vector<VarSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto s = VarSet::from_mask(n, mask);
    if (is_model(f, s)) out.push_back(std::move(s));
  }
  return out;
}

inline bool brute_satisfiable(const CnfFormula& f, std::size_t limit = kDefaultWeightLimit) {
  require_small(f, limit);
  const std::size_t n = f.num_vars();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    if (is_model(f, VarSet::from_mask(n, mask))) return true;
  return false;
}

}  // namespace tsearch::oracle
