#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tsearch/errors.hpp"
#include "tsearch/varset.hpp"

namespace tsearch {

struct Literal {
  Var var = 0;
  bool positive = true;

  int to_dimacs() const { return positive ? static_cast<int>(var) : -static_cast<int>(var); }
  static Literal from_dimacs(int lit) {
    return lit > 0 ? Literal{static_cast<Var>(lit), true} : Literal{static_cast<Var>(-lit), false};
  }
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

inline bool is_monotone(const Clause& c) {
  return std::all_of(c.begin(), c.end(), [](const Literal& l) { return l.positive; });
}

inline std::size_t positive_count(const Clause& c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const Literal& l) { return l.positive; }));
}

/// A CNF over variables 1..n. The clause list order is significant and never
/// changed; orderings permute indices into it.
class CnfFormula {
 public:
  CnfFormula() = default;

  /// Validates and normalizes: duplicate literals are collapsed, tautologies
  /// and out-of-range variables are rejected.
  CnfFormula(std::size_t num_vars, std::vector<Clause> clauses) : n_{num_vars} {
    clauses_.reserve(clauses.size());
    for (std::size_t i = 0; i < clauses.size(); ++i) clauses_.push_back(normalize(std::move(clauses[i]), i));
  }

  std::size_t num_vars() const { return n_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_.at(i); }

  /// Maximum clause width.
  std::size_t max_width() const {
    std::size_t k = 0;
    for (const auto& c : clauses_) k = std::max(k, c.size());
    return k;
  }
  bool monotone() const {
    return std::all_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return is_monotone(c); });
  }
  bool has_empty_clause() const {
    return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  Clause normalize(Clause c, std::size_t index) const {
    Clause out;
    out.reserve(c.size());
    for (const Literal& l : c) {
      if (l.var < 1 || l.var > n_)
        throw FormulaError("clause " + std::to_string(index) + ": literal " + std::to_string(l.to_dimacs()) +
                               " out of range 1.." + std::to_string(n_),
                           index);
      auto same = std::find_if(out.begin(), out.end(), [&](const Literal& o) { return o.var == l.var; });
      if (same == out.end()) {
        out.push_back(l);
      } else if (same->positive != l.positive) {
        throw FormulaError("clause " + std::to_string(index) + ": tautological (contains " +
                               std::to_string(l.var) + " and -" + std::to_string(l.var) + ")",
                           index);
      }
    }
    return out;
  }

  std::size_t n_ = 0;
  std::vector<Clause> clauses_;
};

// ---------------------------------------------------------------------------
// DIMACS

/// Parses DIMACS CNF. Comment lines start with 'c'; a '%' line ends the input.
/// A clause may span lines. The declared clause count must match.
inline CnfFormula parse_dimacs(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Clause> clauses;
  Clause pending;
  bool pending_open = false;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;
    if (lead == 'p') {
      if (have_header) throw FormulaError("line " + std::to_string(line_no) + ": duplicate header");
      std::istringstream hs(line.substr(first + 1));
      std::string fmt;
      long long hn = -1, hm = -1;
      if (!(hs >> fmt >> hn >> hm) || fmt != "cnf" || hn < 0 || hm < 0)
        throw FormulaError("line " + std::to_string(line_no) + ": malformed header, expected 'p cnf <vars> <clauses>'");
      std::string extra;
      if (hs >> extra) throw FormulaError("line " + std::to_string(line_no) + ": trailing tokens in header");
      n = static_cast<std::size_t>(hn);
      m = static_cast<std::size_t>(hm);
      have_header = true;
      continue;
    }
    if (!have_header) throw FormulaError("line " + std::to_string(line_no) + ": clause data before 'p cnf' header");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      long long lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw FormulaError("line " + std::to_string(line_no) + ": bad token '" + tok + "'");
      }
      if (lit == 0) {
        clauses.push_back(std::move(pending));
        pending.clear();
        pending_open = false;
        continue;
      }
      auto var = static_cast<unsigned long long>(lit < 0 ? -lit : lit);
      if (var > n)
        throw FormulaError("clause " + std::to_string(clauses.size()) + ": literal " + tok + " out of range 1.." +
                               std::to_string(n),
                           clauses.size());
      pending.push_back(Literal::from_dimacs(static_cast<int>(lit)));
      pending_open = true;
    }
  }
  if (!have_header) throw FormulaError("missing 'p cnf' header");
  if (pending_open) clauses.push_back(std::move(pending));
  if (clauses.size() != m)
    throw FormulaError("clause count mismatch: header declares " + std::to_string(m) + ", found " +
                       std::to_string(clauses.size()));
  return CnfFormula(n, std::move(clauses));
}

inline CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& c : f.clauses()) {
    for (const auto& l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

inline std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  write_dimacs(out, f);
  return out.str();
}

// ---------------------------------------------------------------------------
// Semantics and reductions

/// True iff the assignment setting exactly the members of `s` to 1 satisfies every clause.
inline bool is_model(const CnfFormula& f, const VarSet& s) {
  for (const auto& c : f.clauses()) {
    bool sat = false;
    for (const auto& l : c) {
      if (s.contains(l.var) == l.positive) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

/// Swaps the polarity of every literal on a member of `alpha`, so that
/// G(y) = F(y xor alpha).
inline CnfFormula flip_literals(const CnfFormula& f, const VarSet& alpha) {
  std::vector<Clause> out = f.clauses();
  for (auto& c : out)
    for (auto& l : c)
      if (alpha.contains(l.var)) l.positive = !l.positive;
  return CnfFormula(f.num_vars(), std::move(out));
}

/// Negates every literal of every clause.
inline CnfFormula negate_literals(const CnfFormula& f) { return flip_literals(f, VarSet::full(f.num_vars())); }

inline constexpr std::size_t kDefaultPadLimit = 1'000'000;

namespace detail {
// Calls fn(combination) for every `r`-subset of `pool` in lexicographic order.
template <typename Fn>
void for_each_combination(const std::vector<Var>& pool, std::size_t r, Fn&& fn) {
  if (r > pool.size()) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Var> combo(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) combo[i] = pool[idx[i]];
    fn(combo);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == pool.size() - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t b = 1;
  for (std::uint64_t i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}
}  // namespace detail

/// Replaces every clause of width k' < k by the clauses C + (k-k' positive
/// literals on variables outside C), for every choice of those variables.
///
/// Transversals of the input stay transversals; any new transversal has size
/// at least n-k+1, so the minimum transversals are unchanged when tau <= n-k.
/// The caller is responsible for that condition.
inline CnfFormula pad_to_uniform_width(const CnfFormula& f, std::size_t k, std::size_t clause_limit = kDefaultPadLimit) {
  const std::size_t n = f.num_vars();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < f.num_clauses(); ++i) {
    const auto& c = f.clause(i);
    if (c.size() > k)
      throw FormulaError("clause " + std::to_string(i) + " has width " + std::to_string(c.size()) + " > " + std::to_string(k), i);
    if (c.size() == k) {
      ++total;
    } else {
      if (n < k) throw FormulaError("cannot pad to width " + std::to_string(k) + " with only " + std::to_string(n) + " variables");
      total += detail::binomial(n - c.size(), k - c.size());
    }
    if (total > clause_limit)
      throw LimitExceeded("padding would produce more than " + std::to_string(clause_limit) + " clauses");
  }

  std::vector<Clause> out;
  out.reserve(static_cast<std::size_t>(total));
  for (const auto& c : f.clauses()) {
    if (c.size() == k) {
      out.push_back(c);
      continue;
    }
    std::vector<Var> outside;
    for (Var v = 1; v <= n; ++v)
      if (std::none_of(c.begin(), c.end(), [v](const Literal& l) { return l.var == v; })) outside.push_back(v);
    detail::for_each_combination(outside, k - c.size(), [&](const std::vector<Var>& extra) {
      Clause padded = c;
      for (Var v : extra) padded.push_back(Literal{v, true});
      out.push_back(std::move(padded));
    });
  }
  return CnfFormula(n, std::move(out));
}

// ---------------------------------------------------------------------------
// Generators

/// Maj_{n,k}: consecutive blocks of 2(k-1) variables, all positive k-subsets of each block.
inline CnfFormula gen_maj(std::size_t n, std::size_t k) {
  if (k < 2) throw FormulaError("gen_maj: k must be at least 2");
  const std::size_t block = 2 * (k - 1);
  if (n == 0 || n % block != 0)
    throw FormulaError("gen_maj: n=" + std::to_string(n) + " is not a positive multiple of 2(k-1)=" + std::to_string(block));
  std::vector<Clause> clauses;
  for (std::size_t start = 1; start <= n; start += block) {
    std::vector<Var> vars(block);
    std::iota(vars.begin(), vars.end(), static_cast<Var>(start));
    detail::for_each_combination(vars, k, [&](const std::vector<Var>& combo) {
      Clause c;
      for (Var v : combo) c.push_back(Literal{v, true});
      clauses.push_back(std::move(c));
    });
  }
  return CnfFormula(n, std::move(clauses));
}

/// t pairwise disjoint positive 2-clauses {2i-1, 2i} over n variables.
inline CnfFormula gen_disjoint_2cnf(std::size_t t, std::size_t n) {
  if (2 * t > n) throw FormulaError("gen_disjoint_2cnf: 2t=" + std::to_string(2 * t) + " exceeds n=" + std::to_string(n));
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < t; ++i)
    clauses.push_back({Literal{static_cast<Var>(2 * i + 1), true}, Literal{static_cast<Var>(2 * i + 2), true}});
  return CnfFormula(n, std::move(clauses));
}

/// m clauses of width exactly k with distinct variables per clause and
/// uniform signs (all positive when `monotone`). Deterministic in `seed`.
inline CnfFormula gen_random_cnf(std::size_t n, std::size_t m, std::size_t k, bool monotone, std::uint64_t seed) {
  if (k > n) throw FormulaError("gen_random_cnf: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::vector<Var> pool(n);
  std::iota(pool.begin(), pool.end(), Var{1});
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    // partial Fisher-Yates with explicit draws, so output does not depend on the library's shuffle
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t pick = j + static_cast<std::size_t>(rng() % (n - j));
      std::swap(pool[j], pool[pick]);
    }
    Clause c;
    for (std::size_t j = 0; j < k; ++j) c.push_back(Literal{pool[j], monotone ? true : static_cast<bool>(rng() & 1u)});
    clauses.push_back(std::move(c));
  }
  return CnfFormula(n, std::move(clauses));
}

}  // namespace tsearch
