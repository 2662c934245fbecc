#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tsearch/errors.hpp"
#include "tsearch/formula.hpp"
#include "tsearch/ordering.hpp"
#include "tsearch/residual.hpp"
#include "tsearch/search.hpp"

namespace tsearch::analysis {

using Rational = boost::multiprecision::cpp_rational;
using NodeId = std::uint32_t;

inline constexpr std::size_t kDefaultNodeLimit = 1'000'000;
inline const double kLambda = 1.0 / std::sqrt(3.0);

struct TreeNode {
  NodeId parent = 0;
  std::uint32_t depth = 0;
  Var label = 0;           ///< label of the edge from the parent; 0 at the root
  bool bottom = false;     ///< residual holds an empty clause
  bool satisfied = false;  ///< all-0 completion satisfies the residual
  std::optional<std::size_t> branch_clause;
  std::vector<NodeId> children;  ///< ascending by edge label
};

/// Fully materialized (unpruned) transversal tree.
class ExplicitTree {
 public:
  std::vector<TreeNode> nodes;
  std::size_t depth_cap = 0;
  std::size_t num_vars = 0;
  std::size_t prefix_len = 0;  ///< m
  VarSet prefix_vars;          ///< X_D

  static constexpr NodeId root() { return 0; }
  const TreeNode& node(NodeId id) const { return nodes[id]; }
  bool is_leaf(NodeId id) const { return nodes[id].children.empty(); }
  std::size_t size() const { return nodes.size(); }

  std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes.size(); ++i)
      if (nodes[i].children.empty()) out.push_back(i);
    return out;
  }

  /// Nodes from the root to `id`, inclusive.
  std::vector<NodeId> path(NodeId id) const {
    std::vector<NodeId> out(nodes[id].depth + 1);
    for (NodeId cur = id;; cur = nodes[cur].parent) {
      out[nodes[cur].depth] = cur;
      if (cur == root()) break;
    }
    return out;
  }

  /// Q_v without the bottom marker.
  VarSet label_set(NodeId id) const {
    VarSet s(num_vars);
    for (NodeId cur = id; cur != root(); cur = nodes[cur].parent) s.insert(nodes[cur].label);
    return s;
  }

  bool has_child_label(NodeId id, Var label) const {
    for (NodeId c : nodes[id].children)
      if (nodes[c].label == label) return true;
    return false;
  }
};

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(const CnfFormula& f, const ClauseOrdering& ordering, std::size_t depth_cap, std::size_t node_limit)
      : ordering_{ordering}, residual_{f}, shoot_(f.num_vars() + 1, 0), limit_{node_limit} {
    tree_.depth_cap = depth_cap;
    tree_.num_vars = f.num_vars();
    tree_.prefix_len = ordering.prefix_len;
    tree_.prefix_vars = ordering.prefix_vars;
  }

  ExplicitTree build() {
    tree_.nodes.push_back(TreeNode{});
    expand(ExplicitTree::root());
    return std::move(tree_);
  }

 private:
  void expand(NodeId id) {
    TreeNode& self = tree_.nodes[id];
    self.bottom = residual_.has_empty_clause();
    self.satisfied = !self.bottom && residual_.satisfied_by_zero();
    const std::size_t depth = self.depth;
    if (self.bottom || self.satisfied || depth == tree_.depth_cap) return;

    auto ci = select_branch_clause(residual_, ordering_, depth, shoot_);
    tree_.nodes[id].branch_clause = ci;
    auto vars = residual_.open_positive_vars(*ci);
    std::sort(vars.begin(), vars.end());
    for (Var v : vars) ++shoot_[v];
    for (Var v : vars) {
      if (tree_.nodes.size() >= limit_)
        throw LimitExceeded("transversal tree exceeds " + std::to_string(limit_) + " nodes");
      auto child = static_cast<NodeId>(tree_.nodes.size());
      TreeNode c;
      c.parent = id;
      c.depth = static_cast<std::uint32_t>(depth + 1);
      c.label = v;
      tree_.nodes.push_back(std::move(c));
      tree_.nodes[id].children.push_back(child);
      residual_.assign(v);
      expand(child);
      residual_.unassign(v);
    }
    for (Var v : vars) --shoot_[v];
  }

  const ClauseOrdering& ordering_;
  Residual residual_;
  std::vector<std::uint32_t> shoot_;
  std::size_t limit_;
  ExplicitTree tree_;
};

}  // namespace detail

/// The full transversal tree of F to depth `depth_cap`, developed with the
/// same branch-clause rule as the search. Leaves are depth-cap nodes, bottom
/// nodes, and nodes whose residual is already satisfied by all-0.
inline ExplicitTree build_tree(const CnfFormula& f, const ClauseOrdering& ordering, std::size_t depth_cap,
                               std::size_t node_limit = kDefaultNodeLimit) {
  return detail::TreeBuilder(f, ordering, depth_cap, node_limit).build();
}

/// Marking sets M(e), one per edge; the edge into node v is stored at index v.
struct EdgeMarking {
  std::vector<std::vector<NodeId>> marks;

  const std::vector<NodeId>& of(NodeId child) const { return marks[child]; }
  bool marked(NodeId child) const { return !marks[child].empty(); }
};

/// M(e) for e = (u, v): the strict ancestors of u that have a child edge with e's label.
inline EdgeMarking compute_markings(const ExplicitTree& t) {
  EdgeMarking m;
  m.marks.resize(t.size());
  for (NodeId v = 1; v < t.size(); ++v) {
    const Var label = t.node(v).label;
    NodeId u = t.node(v).parent;
    for (NodeId w = u; w != ExplicitTree::root();) {
      w = t.node(w).parent;
      if (t.has_child_label(w, label)) m.marks[v].push_back(w);
    }
  }
  return m;
}

/// |N_u(v)| for every node v on the root path of `leaf`, indexed by depth of v.
inline std::vector<std::uint32_t> path_mark_counts(const ExplicitTree& t, const EdgeMarking& m, NodeId leaf) {
  std::vector<std::uint32_t> counts(t.node(leaf).depth + 1, 0);
  for (NodeId cur = leaf; cur != ExplicitTree::root(); cur = t.node(cur).parent)
    for (NodeId w : m.of(cur)) ++counts[t.node(w).depth];
  return counts;
}

struct SurvivalReport {
  std::vector<NodeId> leaves;
  std::vector<Rational> per_leaf;
  Rational total;
  double total_value() const { return total.convert_to<double>(); }
};

/// Exact survival probability of every leaf under a uniformly random
/// independent child order at each node: product over path nodes v of
/// 1 / (|N_u(v)| + 1). The total sums valid and invalid leaves.
inline SurvivalReport survival_exact(const ExplicitTree& t, const EdgeMarking& m) {
  SurvivalReport r;
  r.leaves = t.leaves();
  r.per_leaf.reserve(r.leaves.size());
  for (NodeId leaf : r.leaves) {
    boost::multiprecision::cpp_int denom = 1;
    for (auto c : path_mark_counts(t, m, leaf)) denom *= (c + 1);
    Rational s(1, denom);
    r.total += s;
    r.per_leaf.push_back(std::move(s));
  }
  return r;
}

enum class PessimisticMode {
  monotone,  ///< lambda^W(P)
  general,   ///< lambda^(W(P) + W>=2(P))
};

struct PessimisticReport {
  std::vector<NodeId> leaves;
  std::vector<double> per_leaf;
  double total = 0;
};

/// Pessimistic survival of the leaves below `from` (root by default), taking
/// only the path edges from `from` down into account. Markings are those of
/// the whole tree.
inline PessimisticReport survival_pessimistic(const ExplicitTree& t, const EdgeMarking& m, PessimisticMode mode,
                                              NodeId from = ExplicitTree::root()) {
  PessimisticReport r;
  const auto from_depth = t.node(from).depth;
  std::vector<NodeId> stack{from};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (!t.is_leaf(id)) {
      for (auto it = t.node(id).children.rbegin(); it != t.node(id).children.rend(); ++it) stack.push_back(*it);
      continue;
    }
    int exponent = 0;
    for (NodeId cur = id; t.node(cur).depth > from_depth; cur = t.node(cur).parent) {
      const auto size = m.of(cur).size();
      if (size >= 1) ++exponent;
      if (mode == PessimisticMode::general && size >= 2) ++exponent;
    }
    double s = std::pow(kLambda, exponent);
    r.leaves.push_back(id);
    r.per_leaf.push_back(s);
    r.total += s;
  }
  return r;
}

struct PathStats {
  std::size_t length = 0;          ///< l: edges on the root path
  std::size_t shoot_edges = 0;     ///< a: child edges of the path nodes above the leaf
  std::size_t path_weight = 0;     ///< marked edges on the path
  std::size_t shoot_weight = 0;    ///< W: marked edges in the shoot
  long uniform_weight = 0;         ///< W+ = W + 3l - a
  std::size_t double_weight = 0;   ///< W>=2: path edges with |M(e)| >= 2
  std::size_t fullness = 0;        ///< Y, root-relative; 0 above level m
};

/// Weight statistics of the root-to-`leaf` path and its shoot.
inline PathStats path_stats(const ExplicitTree& t, const EdgeMarking& m, NodeId leaf) {
  PathStats s;
  const auto path = t.path(leaf);
  s.length = path.size() - 1;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto size = m.of(path[i]).size();
    if (size >= 1) ++s.path_weight;
    if (size >= 2) ++s.double_weight;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    for (NodeId c : t.node(path[i]).children) {
      ++s.shoot_edges;
      if (m.marked(c)) ++s.shoot_weight;
    }
  s.uniform_weight = static_cast<long>(s.shoot_weight) + 3 * static_cast<long>(s.length) - static_cast<long>(s.shoot_edges);

  const std::size_t mlev = t.prefix_len;
  if (s.length >= mlev) {
    VarSet early(t.num_vars);  // Q at level m
    for (std::size_t i = 1; i <= mlev; ++i) early.insert(t.node(path[i]).label);
    VarSet seen(t.num_vars);
    for (std::size_t i = mlev; i + 1 < path.size(); ++i)
      for (NodeId c : t.node(path[i]).children) {
        Var x = t.node(c).label;
        if (t.prefix_vars.contains(x) && !early.contains(x)) seen.insert(x);
      }
    s.fullness = seen.size();
  }
  return s;
}

struct DisjointMarkingVerdict {
  NodeId node = 0;
  bool few_children = false;          ///< at most two outgoing edges
  bool double_marked = false;         ///< an outgoing edge with |M(e)| >= 2
  bool prefix_single_marked = false;  ///< an outgoing edge labelled in X_D with |M(e)| = 1
  bool holds() const { return few_children || double_marked || prefix_single_marked; }
};

/// Which alternative of the below-prefix marking property holds at every
/// internal node deeper than level m.
inline std::vector<DisjointMarkingVerdict> check_disjoint_marking(const ExplicitTree& t, const EdgeMarking& m) {
  std::vector<DisjointMarkingVerdict> out;
  for (NodeId id = 0; id < t.size(); ++id) {
    const auto& node = t.node(id);
    if (node.depth <= t.prefix_len || node.children.empty()) continue;
    DisjointMarkingVerdict v;
    v.node = id;
    v.few_children = node.children.size() <= 2;
    for (NodeId c : node.children) {
      const auto size = m.of(c).size();
      if (size >= 2) v.double_marked = true;
      if (size == 1 && t.prefix_vars.contains(t.node(c).label)) v.prefix_single_marked = true;
    }
    out.push_back(v);
  }
  return out;
}

struct MonteCarloResult {
  double mean = 0;
  std::optional<double> std_error;  ///< absent for a single trial
  std::size_t trials = 0;
};

/// Runs the search `trials` times with independent derived seeds and reports
/// the sample mean and standard error of leaves visited.
inline MonteCarloResult monte_carlo_leaves(const CnfFormula& f, std::size_t t, const ClauseOrdering& ordering,
                                           std::size_t trials, std::uint64_t seed) {
  MonteCarloResult r;
  r.trials = trials;
  if (trials == 0) return r;
  std::uint64_t state = seed;
  double sum = 0, sum_sq = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    auto out = enumerate_at_depth(f, t, ordering, EdgeOrderPolicy::random(splitmix64(state)));
    auto x = static_cast<double>(out.leaves_visited);
    sum += x;
    sum_sq += x * x;
  }
  const auto n = static_cast<double>(trials);
  r.mean = sum / n;
  if (trials > 1) {
    double var = std::max(0.0, (sum_sq - n * r.mean * r.mean) / (n - 1));
    r.std_error = std::sqrt(var / n);
  }
  return r;
}

}  // namespace tsearch::analysis
