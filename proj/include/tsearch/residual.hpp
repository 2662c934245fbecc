#pragma once

#include <cstdint>
#include <vector>

#include "tsearch/formula.hpp"

namespace tsearch {

/// Formula simplified by setting a set of path variables to 1.
///
/// Every other variable is treated as unset; the search asks whether the
/// all-0 completion satisfies what is left. Per clause we keep the number of
/// satisfied positive literals and the number of still-open positive and
/// negative literals, so assign/unassign cost O(occurrences of the variable).
class Residual {
 public:
  explicit Residual(const CnfFormula& f)
      : f_{&f},
        assigned_(f.num_vars() + 1, 0),
        pos_occ_(f.num_vars() + 1),
        neg_occ_(f.num_vars() + 1),
        sat_(f.num_clauses(), 0),
        pos_open_(f.num_clauses(), 0),
        neg_open_(f.num_clauses(), 0) {
    for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
      for (const auto& l : f.clause(ci)) {
        if (l.positive) {
          pos_occ_[l.var].push_back(static_cast<std::uint32_t>(ci));
          ++pos_open_[ci];
        } else {
          neg_occ_[l.var].push_back(static_cast<std::uint32_t>(ci));
          ++neg_open_[ci];
        }
      }
      if (open_monotone(ci)) ++monotone_open_;
      if (empty(ci)) ++empty_;
    }
  }

  const CnfFormula& formula() const { return *f_; }

  /// Sets v to 1.
  void assign(Var v) {
    assigned_[v] = 1;
    for (auto ci : pos_occ_[v]) {
      leave(ci);
      ++sat_[ci];
      --pos_open_[ci];
      enter(ci);
    }
    for (auto ci : neg_occ_[v]) {
      leave(ci);
      --neg_open_[ci];
      enter(ci);
    }
  }

  /// Reverts assign(v); calls must nest.
  void unassign(Var v) {
    assigned_[v] = 0;
    for (auto ci : pos_occ_[v]) {
      leave(ci);
      --sat_[ci];
      ++pos_open_[ci];
      enter(ci);
    }
    for (auto ci : neg_occ_[v]) {
      leave(ci);
      ++neg_open_[ci];
      enter(ci);
    }
  }

  bool assigned(Var v) const { return assigned_[v] != 0; }

  /// The all-0 completion satisfies the residual formula.
  bool satisfied_by_zero() const { return monotone_open_ == 0; }
  /// Some clause lost all its literals without being satisfied.
  bool has_empty_clause() const { return empty_ > 0; }

  /// Clause is unsatisfied and every remaining literal is positive.
  bool open_monotone(std::size_t ci) const { return sat_[ci] == 0 && neg_open_[ci] == 0; }
  /// Number of remaining (positive) literals of an open monotone clause.
  std::size_t residual_width(std::size_t ci) const { return pos_open_[ci]; }

  /// Remaining positive variables of clause ci, in clause order.
  std::vector<Var> open_positive_vars(std::size_t ci) const {
    std::vector<Var> out;
    for (const auto& l : f_->clause(ci))
      if (l.positive && !assigned_[l.var]) out.push_back(l.var);
    return out;
  }

 private:
  bool empty(std::size_t ci) const { return open_monotone(ci) && pos_open_[ci] == 0; }
  void leave(std::uint32_t ci) {
    if (open_monotone(ci)) --monotone_open_;
    if (empty(ci)) --empty_;
  }
  void enter(std::uint32_t ci) {
    if (open_monotone(ci)) ++monotone_open_;
    if (empty(ci)) ++empty_;
  }

  const CnfFormula* f_;
  std::vector<std::uint8_t> assigned_;
  std::vector<std::vector<std::uint32_t>> pos_occ_, neg_occ_;
  std::vector<std::uint32_t> sat_, pos_open_, neg_open_;
  std::size_t monotone_open_ = 0;
  std::size_t empty_ = 0;
};

}  // namespace tsearch
