#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsearch/formula.hpp"
#include "tsearch/residual.hpp"

namespace tsearch {

enum class OrderingMode {
  monotone_canonical,  ///< maximal disjoint monotone width-k prefix, then the rest
  general_canonical,   ///< disjoint width-3 prefix, other monotone width-3, then the rest; avoidance rule below the prefix
  as_given,            ///< file order, no prefix
};

inline std::string to_string(OrderingMode m) {
  switch (m) {
    case OrderingMode::monotone_canonical: return "monotone";
    case OrderingMode::general_canonical: return "general";
    case OrderingMode::as_given: return "as-given";
  }
  return "?";
}

/// Clause permutation plus the disjoint-prefix metadata the search and the
/// analysis need.
struct ClauseOrdering {
  std::vector<std::size_t> permutation;
  std::size_t prefix_len = 0;  ///< m: number of pairwise disjoint prefix clauses
  VarSet prefix_vars;          ///< X_D: union of the prefix clauses' variables
  std::size_t prefix_width = 0;
  OrderingMode mode = OrderingMode::as_given;
};

/// Width of the clauses eligible for the disjoint prefix in a given mode.
inline std::size_t prefix_clause_width(const CnfFormula& f, OrderingMode mode) {
  switch (mode) {
    case OrderingMode::monotone_canonical: return f.max_width();
    case OrderingMode::general_canonical: return 3;
    case OrderingMode::as_given: return 0;
  }
  return 0;
}

/// Builds the canonical clause order. The prefix is a greedy maximal set of
/// pairwise variable-disjoint clauses that are monotone in F and have the
/// mode's prefix width, scanned by ascending clause index. Within every tier
/// clauses keep their original relative order.
inline ClauseOrdering canonical_ordering(const CnfFormula& f, OrderingMode mode) {
  ClauseOrdering o;
  o.mode = mode;
  o.prefix_vars = VarSet(f.num_vars());
  const std::size_t mc = f.num_clauses();
  if (mode == OrderingMode::as_given) {
    o.permutation.resize(mc);
    for (std::size_t i = 0; i < mc; ++i) o.permutation[i] = i;
    return o;
  }
  const std::size_t width = prefix_clause_width(f, mode);
  o.prefix_width = width;
  auto eligible = [&](std::size_t ci) {
    const auto& c = f.clause(ci);
    return width > 0 && c.size() == width && is_monotone(c);
  };

  std::vector<char> placed(mc, 0);
  for (std::size_t ci = 0; ci < mc; ++ci) {
    if (!eligible(ci)) continue;
    const auto& c = f.clause(ci);
    bool disjoint = std::none_of(c.begin(), c.end(), [&](const Literal& l) { return o.prefix_vars.contains(l.var); });
    if (!disjoint) continue;
    for (const auto& l : c) o.prefix_vars.insert(l.var);
    o.permutation.push_back(ci);
    placed[ci] = 1;
  }
  o.prefix_len = o.permutation.size();

  if (mode == OrderingMode::general_canonical) {
    for (std::size_t ci = 0; ci < mc; ++ci)
      if (!placed[ci] && eligible(ci)) {
        o.permutation.push_back(ci);
        placed[ci] = 1;
      }
  }
  for (std::size_t ci = 0; ci < mc; ++ci)
    if (!placed[ci]) o.permutation.push_back(ci);
  return o;
}

/// Chooses the clause that develops the current node.
///
/// `shoot_counts[v]` is how often v labels a child edge of a strict ancestor
/// of the node (the node's shoot so far). Returns nullopt iff the all-0
/// completion already satisfies the residual formula.
inline std::optional<std::size_t> select_branch_clause(const Residual& residual, const ClauseOrdering& ordering,
                                                       std::size_t depth, std::span<const std::uint32_t> shoot_counts) {
  if (residual.satisfied_by_zero()) return std::nullopt;
  const auto& perm = ordering.permutation;

  if (depth < ordering.prefix_len && residual.open_monotone(perm[depth])) return perm[depth];

  if (ordering.mode == OrderingMode::general_canonical && depth >= ordering.prefix_len) {
    for (std::size_t ci : perm) {
      if (!residual.open_monotone(ci) || residual.residual_width(ci) != 3) continue;
      bool crowded = false;
      for (const auto& l : residual.formula().clause(ci)) {
        if (l.positive && ordering.prefix_vars.contains(l.var) && shoot_counts[l.var] >= 2) {
          crowded = true;
          break;
        }
      }
      if (!crowded) return ci;
    }
  }
  for (std::size_t ci : perm)
    if (residual.open_monotone(ci)) return ci;
  return std::nullopt;  // unreachable: satisfied_by_zero() was false
}

// ---------------------------------------------------------------------------
// Tree-edge ordering

enum class EdgeOrderKind { fixed, seeded_random };

struct EdgeOrderPolicy {
  EdgeOrderKind kind = EdgeOrderKind::fixed;
  std::uint64_t seed = 0;

  static EdgeOrderPolicy fixed() { return {EdgeOrderKind::fixed, 0}; }
  static EdgeOrderPolicy random(std::uint64_t seed) { return {EdgeOrderKind::seeded_random, seed}; }
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Identity of a tree node: a hash of the edge-label sequence from the root.
class PathKey {
 public:
  PathKey() = default;
  static PathKey from_path(std::span<const Var> path) {
    PathKey k;
    for (Var v : path) k = k.child(v);
    return k;
  }
  PathKey child(Var v) const {
    std::uint64_t s = hash_ ^ (0xd6e8feb86659fd93ULL * (static_cast<std::uint64_t>(v) + 1));
    PathKey k;
    k.hash_ = splitmix64(s);
    return k;
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0x6a09e667f3bcc909ULL;
};

/// Left-to-right order of a node's children. Fixed policy: ascending
/// variable index. Seeded policy: a uniform permutation that is a pure
/// function of (seed, node).
inline std::vector<Var> edge_permutation(std::span<const Var> clause_vars, const EdgeOrderPolicy& policy, PathKey node) {
  std::vector<Var> out(clause_vars.begin(), clause_vars.end());
  std::sort(out.begin(), out.end());
  if (policy.kind == EdgeOrderKind::fixed || out.size() < 2) return out;
  std::uint64_t state = policy.seed;
  std::uint64_t mixed = splitmix64(state) ^ node.value();
  state = mixed;
  for (std::size_t i = out.size() - 1; i > 0; --i) {
    auto bound = static_cast<unsigned __int128>(i + 1);
    auto j = static_cast<std::size_t>((static_cast<unsigned __int128>(splitmix64(state)) * bound) >> 64);
    std::swap(out[i], out[j]);
  }
  return out;
}

inline std::vector<Var> edge_permutation(std::span<const Var> clause_vars, const EdgeOrderPolicy& policy,
                                         std::span<const Var> node_path) {
  return edge_permutation(clause_vars, policy, PathKey::from_path(node_path));
}

}  // namespace tsearch
