#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tsearch/errors.hpp"
#include "tsearch/formula.hpp"
#include "tsearch/ordering.hpp"
#include "tsearch/residual.hpp"

namespace tsearch {

/// Per-variable "cut" flags with an undo log.
///
/// A flag is set while some left sibling of the current path, at an
/// ancestor, carries that variable as its edge label. Children with a set
/// flag are pruned.
class CutFlagStack {
 public:
  using Mark = std::size_t;

  explicit CutFlagStack(std::size_t num_vars) : flags_(num_vars + 1, 0) {}

  bool is_cut(Var v) const { return flags_[v] != 0; }

  void set(Var v) {
    log_.emplace_back(v, flags_[v]);
    flags_[v] = 1;
  }

  Mark mark() const { return log_.size(); }

  void rollback(Mark m) {
    while (log_.size() > m) {
      auto [v, prior] = log_.back();
      flags_[v] = prior;
      log_.pop_back();
    }
  }

  bool all_clear() const {
    return log_.empty() && std::all_of(flags_.begin(), flags_.end(), [](std::uint8_t f) { return f == 0; });
  }

 private:
  std::vector<std::uint8_t> flags_;
  std::vector<std::pair<Var, std::uint8_t>> log_;
};

struct SearchOutcome {
  std::vector<VarSet> transversals;
  std::uint64_t leaves_visited = 0;
  std::uint64_t nodes_expanded = 0;
  std::uint64_t edges_pruned = 0;
  std::size_t depth = 0;
  EdgeOrderPolicy policy;
};

namespace detail {

/// Depth-first walk of the implicit transversal tree with left-sibling pruning.
///
/// In exact mode a node is a leaf at depth t, or when its residual holds an
/// empty clause; an all-0-satisfied node above depth t breaks the promise.
/// In capped mode every all-0-satisfied node is emitted and not expanded.
class TreeWalker {
 public:
  enum class Mode { exact_depth, capped };

  TreeWalker(const CnfFormula& f, const ClauseOrdering& ordering, const EdgeOrderPolicy& policy, std::size_t depth, Mode mode)
      : f_{f},
        ordering_{ordering},
        policy_{policy},
        target_{depth},
        mode_{mode},
        residual_{f},
        cuts_{f.num_vars()},
        shoot_(f.num_vars() + 1, 0),
        path_(f.num_vars()) {
    out_.depth = depth;
    out_.policy = policy;
  }

  SearchOutcome run() {
    visit(0, PathKey{});
    return std::move(out_);
  }

  const CutFlagStack& cuts() const { return cuts_; }

 private:
  void visit(std::size_t depth, PathKey key) {
    if (residual_.has_empty_clause()) {
      ++out_.leaves_visited;
      return;
    }
    const bool satisfied = residual_.satisfied_by_zero();
    if (mode_ == Mode::exact_depth) {
      if (depth == target_) {
        ++out_.leaves_visited;
        if (satisfied) out_.transversals.push_back(path_);
        return;
      }
      if (satisfied) throw PromiseViolation(path_, target_);
    } else {
      if (satisfied) {
        ++out_.leaves_visited;
        out_.transversals.push_back(path_);
        return;
      }
      if (depth == target_) {
        ++out_.leaves_visited;
        return;
      }
    }

    auto ci = select_branch_clause(residual_, ordering_, depth, shoot_);
    ++out_.nodes_expanded;
    const auto vars = residual_.open_positive_vars(*ci);
    const auto order = edge_permutation(vars, policy_, key);
    for (Var v : order) ++shoot_[v];

    const auto mark = cuts_.mark();
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Var a = order[i];
      if (i > 0) cuts_.set(order[i - 1]);
      if (cuts_.is_cut(a)) {
        ++out_.edges_pruned;
        continue;
      }
      residual_.assign(a);
      path_.insert(a);
      visit(depth + 1, key.child(a));
      path_.erase(a);
      residual_.unassign(a);
    }
    cuts_.rollback(mark);
    for (Var v : order) --shoot_[v];
  }

  const CnfFormula& f_;
  const ClauseOrdering& ordering_;
  EdgeOrderPolicy policy_;
  std::size_t target_;
  Mode mode_;
  Residual residual_;
  CutFlagStack cuts_;
  std::vector<std::uint32_t> shoot_;
  VarSet path_;
  SearchOutcome out_;
};

}  // namespace detail

/// All weight-t models of F, each exactly once, assuming F has no model of
/// weight below t. Throws PromiseViolation (with the lighter model) otherwise.
inline SearchOutcome enumerate_at_depth(const CnfFormula& f, std::size_t t, const ClauseOrdering& ordering,
                                        const EdgeOrderPolicy& policy) {
  detail::TreeWalker walker(f, ordering, policy, t, detail::TreeWalker::Mode::exact_depth);
  return walker.run();
}

/// Iterative deepening over t = 0, 1, ... until the first non-empty level.
/// Returns (tau, outcome of that level).
inline std::pair<std::size_t, SearchOutcome> enumerate_min(const CnfFormula& f, const ClauseOrdering& ordering,
                                                          const EdgeOrderPolicy& policy) {
  for (std::size_t t = 0; t <= f.num_vars(); ++t) {
    auto out = enumerate_at_depth(f, t, ordering, policy);
    if (!out.transversals.empty()) return {t, std::move(out)};
  }
  throw Unsatisfiable("formula has no model");
}

/// Models at Hamming distance exactly t from alpha, via the literal flip.
inline SearchOutcome enum_ball(const CnfFormula& f, const VarSet& alpha, std::size_t t, const ClauseOrdering& ordering,
                               const EdgeOrderPolicy& policy) {
  const CnfFormula g = flip_literals(f, alpha);
  try {
    auto out = enumerate_at_depth(g, t, ordering, policy);
    for (auto& s : out.transversals) s = s ^ alpha;
    return out;
  } catch (const PromiseViolation& pv) {
    throw PromiseViolation(pv.witness() ^ alpha, t);
  }
}

/// Candidate models of weight at most `cap`: every node whose residual is
/// satisfied by all-0 is emitted and not expanded. Every minimal model of
/// weight <= cap is among the results; other models may be too.
inline std::vector<VarSet> enumerate_models_capped(const CnfFormula& f, std::size_t cap, const ClauseOrdering& ordering,
                                                   const EdgeOrderPolicy& policy) {
  detail::TreeWalker walker(f, ordering, policy, cap, detail::TreeWalker::Mode::capped);
  return walker.run().transversals;
}

}  // namespace tsearch
