#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tsearch::bounds {

/// Per-marked-edge survival factor of the pessimistic process.
inline const double kLambda = 1.0 / std::sqrt(3.0);

namespace constants {
inline const double lam = kLambda;
inline const double two_plus_lam = 2.0 + lam;             // one marked child of three
inline const double one_plus_two_lam = 1.0 + 2.0 * lam;   // two marked children
inline const double three_lam = 3.0 * lam;                // three marked children
inline const double two_plus_lam2 = 2.0 + lam * lam;
inline const double one_plus_lam_lam2 = 1.0 + lam + lam * lam;
inline const double two_lam_plus_lam2 = 2.0 * lam + lam * lam;
}  // namespace constants

inline void check_weight_range(double w, double d, const char* fn) {
  if (d < 0 || w < 0 || w > 3 * d + 1e-12)
    throw std::out_of_range(std::string(fn) + ": need 0 <= w <= 3d, got w=" + std::to_string(w) + " d=" + std::to_string(d));
}

/// Best pessimistic survival value of a depth-d ternary tree whose every
/// root-to-leaf shoot carries at least w marked edges. Real arguments are
/// accepted so asymptotic exponents can be evaluated directly.
inline double mprime_closed(double w, double d) {
  using namespace constants;
  check_weight_range(w, d, "mprime_closed");
  if (w <= d) return std::pow(two_plus_lam, w) * std::pow(3.0, d - w);
  if (w <= 2 * d) return std::pow(one_plus_two_lam, w - d) * std::pow(two_plus_lam, 2 * d - w);
  return std::pow(three_lam, w - 2 * d) * std::pow(one_plus_two_lam, 3 * d - w);
}

/// Region-selected piece of the bound on L(w, d, 0).
inline double g_closed(double w, double d) {
  using namespace constants;
  check_weight_range(w, d, "g_closed");
  if (w <= d) return std::pow(two_plus_lam2, d);
  if (w <= 2 * d) return std::pow(two_plus_lam2, 2 * d - w) * std::pow(one_plus_lam_lam2, w - d);
  return std::pow(one_plus_lam_lam2, 3 * d - w) * std::pow(two_lam_plus_lam2, w - 2 * d);
}

/// The five pieces H1..H5 of the bound on L(w, d, y), y <= d.
inline std::array<double, 5> h_pieces(double w, double d, double y) {
  using namespace constants;
  return {
      std::pow(two_plus_lam, y) * std::pow(two_plus_lam2, d - y),
      std::pow(two_plus_lam, y - (w - d)) * std::pow(one_plus_two_lam, w - d) * std::pow(two_plus_lam2, d - y),
      std::pow(one_plus_two_lam, y) * std::pow(two_plus_lam2, 2 * d - w) * std::pow(one_plus_lam_lam2, w - d - y),
      std::pow(one_plus_two_lam, y - (w - 2 * d)) * std::pow(three_lam, w - 2 * d) * std::pow(one_plus_lam_lam2, d - y),
      std::pow(three_lam, y) * std::pow(one_plus_lam_lam2, 3 * d - w) * std::pow(two_lam_plus_lam2, w - 2 * d - y),
  };
}

/// Index (0-based) of the H piece that applies at w, with breakpoints d, d+y, 2d, 2d+y.
inline int h_region(double w, double d, double y) {
  if (w <= d) return 0;
  if (w <= d + y) return 1;
  if (w <= 2 * d) return 2;
  if (w <= 2 * d + y) return 3;
  return 4;
}

inline double h_closed(double w, double d, double y) {
  check_weight_range(w, d, "h_closed");
  if (y < 0 || y > d) throw std::out_of_range("h_closed: need 0 <= y <= d");
  return h_pieces(w, d, y)[h_region(w, d, y)];
}

/// Memoized recurrence tables. Values depend only on the arguments, so a
/// grid can be shared once filled.
class BoundGrid {
 public:
  double lambda() const { return kLambda; }

  /// max over l in {0..3} marked children of (3 - l + l*lambda) * DP(w - l, d - 1).
  double mprime_dp(int w, int d) {
    if (d == 0) return w <= 0 ? 1.0 : 0.0;
    if (w < 0) w = 0;  // weight requirements below zero are vacuous
    auto key = std::make_tuple(w, d, 0);
    if (auto it = mprime_.find(key); it != mprime_.end()) return it->second;
    double best = 0;
    for (int l = 0; l <= 3; ++l) best = std::max(best, (3 - l + l * kLambda) * mprime_dp(w - l, d - 1));
    mprime_.emplace(key, best);
    return best;
  }

  /// The L(w, d, y) recurrence: branch factors for y >= 1 are those of a
  /// ternary node with 1..3 marked children; for y = 0 the doubly-marked variants.
  double l_rec(int w, int d, int y) {
    using namespace constants;
    if (d == 0) return w <= 0 ? 1.0 : 0.0;
    auto key = std::make_tuple(w, d, y);
    if (auto it = l_.find(key); it != l_.end()) return it->second;
    double best;
    if (y >= 1) {
      best = std::max({two_plus_lam * l_rec(w - 1, d - 1, y - 1), one_plus_two_lam * l_rec(w - 2, d - 1, y - 1),
                       three_lam * l_rec(w - 3, d - 1, y - 1)});
    } else {
      best = std::max({two_plus_lam2 * l_rec(w - 1, d - 1, 0), one_plus_lam_lam2 * l_rec(w - 2, d - 1, 0),
                       two_lam_plus_lam2 * l_rec(w - 3, d - 1, 0)});
    }
    l_.emplace(key, best);
    return best;
  }

  /// Surviving-leaf bound for 2-CNF trees under uniform weight.
  double m2_rec(int w, int d) {
    if (d == 0) return w <= 0 ? 1.0 : 0.0;
    auto key = std::make_tuple(w, d, 0);
    if (auto it = m2_.find(key); it != m2_.end()) return it->second;
    double best = std::max({2.0 * m2_rec(w - 1, d - 1), (1.0 + kLambda) * m2_rec(w - 2, d - 1),
                            2.0 * kLambda * m2_rec(w - 3, d - 1)});
    m2_.emplace(key, best);
    return best;
  }

 private:
  std::map<std::tuple<int, int, int>, double> mprime_, l_, m2_;
};

namespace detail {
inline BoundGrid& shared_grid() {
  thread_local BoundGrid grid;
  return grid;
}
}  // namespace detail

inline double mprime_dp(int w, int d) { return detail::shared_grid().mprime_dp(w, d); }
inline double l_rec(int w, int d, int y) { return detail::shared_grid().l_rec(w, d, y); }
inline double m2_rec(int w, int d) { return detail::shared_grid().m2_rec(w, d); }

// ---------------------------------------------------------------------------
// Running-time bounds and headline constants

struct LeafCountBound {
  int regime = 0;           ///< 1: t <= n/3, 2: n/3 < t <= 3n/7, 3: 3n/7 < t <= n/2
  double value = 0;         ///< the exact expression at (n, t)
  double base_n = 1;        ///< value = base_n^n * base_t^t
  double base_t = 1;
};

inline double regime2_base_n() { return 3.0 / constants::two_plus_lam; }
inline double regime2_base_t() { return std::pow(constants::two_plus_lam, 3) / 9.0; }
inline double regime3_base_n() { return constants::two_plus_lam / constants::one_plus_two_lam; }
inline double regime3_base_t() {
  return std::cbrt(3.0 * std::pow(constants::one_plus_two_lam, 7) / std::pow(constants::two_plus_lam, 5));
}

/// Expected leaves bound for depth-t enumeration on n variables, 0 <= t <= n/2.
inline LeafCountBound leaf_count_bound(double n, double t) {
  if (t < 0 || n <= 0 || t > n / 2)
    throw std::out_of_range("leaf_count_bound: need 0 <= t <= n/2");
  LeafCountBound b;
  if (t <= n / 3) {
    b.regime = 1;
    b.base_t = 3.0;
  } else if (t <= 3 * n / 7) {
    b.regime = 2;
    b.base_n = regime2_base_n();
    b.base_t = regime2_base_t();
  } else {
    b.regime = 3;
    b.base_n = regime3_base_n();
    b.base_t = regime3_base_t();
  }
  b.value = std::pow(b.base_n, n) * std::pow(b.base_t, t);
  return b;
}

inline double binary_entropy(double x) {
  if (x <= 0 || x >= 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

inline constexpr double kBoundedNegationThreshold = 0.71347;

struct HeadlineConstants {
  double per_variable_base;    ///< regime-3 bound at t = n/2, per variable
  double majority_base;        ///< 2 / per_variable_base
  double maj_count_base;       ///< 6^(1/4)
  double trivial_base;         ///< 3^(1/2)
  double threshold;            ///< c
  double entropy;              ///< H2(c)
  double entropy_base;         ///< 2^H2(c): exhaustive tail
  double tree_base;            ///< (1+2l)^(2c-1) (2+l)^(1-c): capped tree search
  double regime2_n, regime2_t, regime3_n, regime3_t;
};

inline HeadlineConstants headline_constants(double c = kBoundedNegationThreshold) {
  using namespace constants;
  HeadlineConstants h{};
  h.regime2_n = regime2_base_n();
  h.regime2_t = regime2_base_t();
  h.regime3_n = regime3_base_n();
  h.regime3_t = regime3_base_t();
  h.per_variable_base = h.regime3_n * std::sqrt(h.regime3_t);
  h.majority_base = 2.0 / h.per_variable_base;
  h.maj_count_base = std::pow(6.0, 0.25);
  h.trivial_base = std::sqrt(3.0);
  h.threshold = c;
  h.entropy = binary_entropy(c);
  h.entropy_base = std::pow(2.0, h.entropy);
  h.tree_base = std::pow(one_plus_two_lam, 2 * c - 1) * std::pow(two_plus_lam, 1 - c);
  return h;
}

}  // namespace tsearch::bounds
