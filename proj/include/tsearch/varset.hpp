#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsearch {

/// Variable index, 1-based as in DIMACS.
using Var = std::uint32_t;

/// Subset of the variables {1..n} with dense bitset storage.
///
/// Used for assignments-as-sets (the variables set to 1), transversals,
/// node labels and the flip vector of the ball reduction.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::size_t universe) : n_{universe}, words_((universe + 64) / 64, 0) {}
  VarSet(std::size_t universe, std::initializer_list<Var> members) : VarSet(universe) {
    for (Var v : members) insert(v);
  }
  template <typename Range>
  static VarSet from_range(std::size_t universe, const Range& members) {
    VarSet s(universe);
    for (auto v : members) s.insert(static_cast<Var>(v));
    return s;
  }
  /// Set whose members are the bits of `mask` (bit i-1 is variable i).
  static VarSet from_mask(std::size_t universe, std::uint64_t mask) {
    VarSet s(universe);
    if (!s.words_.empty()) s.words_[0] = mask << 1;
    return s;
  }
  static VarSet full(std::size_t universe) {
    VarSet s(universe);
    for (Var v = 1; v <= universe; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const { return n_; }

  bool contains(Var v) const { return v >= 1 && v <= n_ && ((words_[v / 64] >> (v % 64)) & 1u); }

  void insert(Var v) {
    check(v);
    words_[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  void erase(Var v) {
    check(v);
    words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
  }
  void toggle(Var v) {
    check(v);
    words_[v / 64] ^= std::uint64_t{1} << (v % 64);
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Members in ascending order.
  std::vector<Var> members() const {
    std::vector<Var> out;
    out.reserve(size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        out.push_back(static_cast<Var>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  bool is_subset_of(const VarSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t ow = i < o.words_.size() ? o.words_[i] : 0;
      if (words_[i] & ~ow) return false;
    }
    return true;
  }

  /// Symmetric difference; used to translate between a ball centre and the origin.
  VarSet operator^(const VarSet& o) const {
    VarSet r = *this;
    if (r.words_.size() < o.words_.size()) r.words_.resize(o.words_.size(), 0);
    for (std::size_t i = 0; i < o.words_.size(); ++i) r.words_[i] ^= o.words_[i];
    r.n_ = std::max(n_, o.n_);
    return r;
  }

  std::size_t distance(const VarSet& o) const { return (*this ^ o).size(); }

  /// Complement within {1..n}.
  VarSet complement() const {
    VarSet r(n_);
    for (Var v = 1; v <= n_; ++v)
      if (!contains(v)) r.insert(v);
    return r;
  }

  friend bool operator==(const VarSet& a, const VarSet& b) { return a.n_ == b.n_ && a.words_ == b.words_; }
  /// Orders by size first, then lexicographically by sorted members.
  friend bool operator<(const VarSet& a, const VarSet& b) {
    auto sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    return a.members() < b.members();
  }

  std::string to_string() const {
    std::string s;
    for (Var v : members()) {
      if (!s.empty()) s += ' ';
      s += std::to_string(v);
    }
    return s;
  }

 private:
  void check(Var v) const {
    if (v < 1 || v > n_) throw std::out_of_range("variable " + std::to_string(v) + " outside 1.." + std::to_string(n_));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tsearch
