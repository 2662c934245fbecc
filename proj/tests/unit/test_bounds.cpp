#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "tsearch/analysis.hpp"
#include "tsearch/bounds.hpp"

using namespace tsearch;
using namespace tsearch::bounds;

namespace {

const double lam = 1.0 / std::sqrt(3.0);

void expect_rel(double a, double b, double tol = 1e-9) {
  EXPECT_LE(std::abs(a - b), tol * std::max({1.0, std::abs(a), std::abs(b)})) << a << " vs " << b;
}

}  // namespace

TEST(MPrime, ClosedFormExamples) {
  expect_rel(mprime_closed(0, 2), 9);
  expect_rel(mprime_closed(1, 1), 2 + lam);
  expect_rel(mprime_closed(3, 1), std::sqrt(3.0));
  EXPECT_THROW(mprime_closed(4, 1), std::out_of_range);
  EXPECT_THROW(mprime_closed(-1, 1), std::out_of_range);
}

TEST(MPrime, DpExamples) {
  for (int d = 0; d <= 10; ++d) expect_rel(mprime_dp(0, d), std::pow(3.0, d));
  expect_rel(mprime_dp(3, 1), std::sqrt(3.0));
  EXPECT_EQ(mprime_dp(4, 1), 0.0);
}

TEST(MPrime, DpEqualsClosedForm) {
  BoundGrid g;
  for (int d = 0; d <= 15; ++d)
    for (int w = 0; w <= 3 * d; ++w) expect_rel(g.mprime_dp(w, d), mprime_closed(w, d));
}

TEST(LRec, Examples) {
  EXPECT_EQ(l_rec(0, 0, 5), 1.0);
  EXPECT_EQ(l_rec(1, 0, 0), 0.0);
  expect_rel(l_rec(1, 1, 0), 2 + 1.0 / 3);
  expect_rel(l_rec(0, 1, 1), 2 + lam);
}

TEST(LRec, BoundedByMPrimeWhenFullnessIsSlack) {
  BoundGrid g;
  for (int d = 0; d <= 12; ++d)
    for (int y = d; y <= d + 3; ++y)
      for (int w = 0; w <= 3 * d; ++w) EXPECT_LE(g.l_rec(w, d, y), g.mprime_dp(w, d) * (1 + 1e-12));
}

TEST(GClosed, Examples) {
  expect_rel(g_closed(0, 3), std::pow(2 + 1.0 / 3, 3));
  expect_rel(g_closed(0, 3), 12.7037037037, 1e-6);
}

TEST(HClosed, CollapsesToGAtZeroFullness) {
  for (int d = 0; d <= 12; ++d)
    for (int w = 0; w <= 3 * d; ++w) expect_rel(h_closed(w, d, 0), g_closed(w, d));
}

TEST(HClosed, PiecesAgreeAtBreakpoints) {
  for (int d = 0; d <= 12; ++d)
    for (int y = 0; y <= d; ++y) {
      const double breaks[] = {double(d), double(d + y), double(2 * d), double(2 * d + y)};
      for (int i = 0; i < 4; ++i) {
        auto p = h_pieces(breaks[i], d, y);
        expect_rel(p[i], p[i + 1]);
      }
    }
}

TEST(HClosed, RegionPieceIsTheSmallest) {
  for (int d = 0; d <= 12; ++d)
    for (int y = 0; y <= d; ++y)
      for (int w = 0; w <= 3 * d; ++w) {
        auto p = h_pieces(w, d, y);
        EXPECT_LE(h_closed(w, d, y), *std::min_element(p.begin(), p.end()) * (1 + 1e-12));
      }
}

TEST(Recurrences, DominatedByClosedForms) {
  BoundGrid g;
  for (int d = 0; d <= 12; ++d)
    for (int w = 0; w <= 3 * d; ++w) {
      for (int y = 0; y <= d; ++y) EXPECT_LE(g.l_rec(w, d, y), h_closed(w, d, y) * (1 + 1e-9)) << w << ',' << d << ',' << y;
      EXPECT_LE(g.l_rec(w, d, 0), g_closed(w, d) * (1 + 1e-9));
      EXPECT_LE(g.m2_rec(w, d), g.l_rec(w, d, 0) * (1 + 1e-9));
    }
}

TEST(M2Rec, Examples) {
  for (int d = 0; d <= 10; ++d) expect_rel(m2_rec(0, d), std::pow(2.0, d));
  // one level: max{2 * M2(0,0), (1+lambda) * M2(-1,0), 2 lambda * M2(-2,0)}
  expect_rel(m2_rec(1, 1), 2.0);
  expect_rel(m2_rec(2, 1), 1 + lam);
  expect_rel(m2_rec(3, 1), 2 * lam);
}

TEST(LeafCountBound, Regimes) {
  EXPECT_EQ(leaf_count_bound(30, 10).regime, 1);
  expect_rel(leaf_count_bound(30, 10).value, std::pow(3.0, 10));
  EXPECT_EQ(leaf_count_bound(70, 30).regime, 2);
  EXPECT_EQ(leaf_count_bound(70, 35).regime, 3);
  EXPECT_THROW(leaf_count_bound(10, 6), std::out_of_range);
}

TEST(LeafCountBound, ClosedFormMatchesMPrimeExpression) {
  for (double n : {42.0, 84.0, 210.0})
    for (double t = std::ceil(n / 3); t <= n / 2; t += 3) {
      const double direct = std::pow(3.0, t / 3) * mprime_closed(3 * t - n, 2 * t / 3);
      expect_rel(leaf_count_bound(n, t).value, direct, 1e-7);
    }
}

TEST(LeafCountBound, SurvivalOfSmallTreesIsBelowBound) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 9 + seed % 5;
    auto f = gen_random_cnf(n, n + 4, 3, true, 2000 + seed);
    auto ord = canonical_ordering(f, OrderingMode::monotone_canonical);
    const auto t = enumerate_min(f, ord, EdgeOrderPolicy::fixed()).first;
    if (3 * t < n || 2 * t > n) continue;
    auto tree = analysis::build_tree(f, ord, t);
    const double sigma = analysis::survival_exact(tree, analysis::compute_markings(tree)).total_value();
    const double bound = std::pow(3.0, t / 3.0) * mprime_closed(3.0 * t - n, 2.0 * t / 3);
    EXPECT_LE(sigma, bound * (1 + 1e-9));
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}

TEST(LeafCountBound, BelowPrefixSurvivalIsBoundedByL) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 10 + seed % 4;
    auto f = gen_random_cnf(n, 3 * n, 3, false, 3000 + seed);
    auto ord = canonical_ordering(f, OrderingMode::general_canonical);
    std::size_t t = 0;
    try {
      t = enumerate_min(f, ord, EdgeOrderPolicy::fixed()).first;
    } catch (const Unsatisfiable&) {
      continue;
    }
    if (3 * t < n) continue;
    auto tree = analysis::build_tree(f, ord, t);
    auto marks = analysis::compute_markings(tree);
    const auto m = tree.prefix_len;
    for (analysis::NodeId u = 0; u < tree.size(); ++u) {
      if (tree.node(u).depth != m) continue;
      auto p = analysis::survival_pessimistic(tree, marks, analysis::PessimisticMode::general, u);
      EXPECT_LE(p.total, l_rec(3 * int(t) - int(n), int(t - m), 2 * int(m)) * (1 + 1e-9));
      ++checked;
    }
  }
  EXPECT_GT(checked, 20u);
}

TEST(Headline, Constants) {
  auto h = headline_constants();
  EXPECT_NEAR(h.regime2_n, 1.164, 1e-3);
  EXPECT_NEAR(h.regime2_t, 1.9023, 1e-3);
  EXPECT_NEAR(h.regime3_n, 1.1962, 1e-3);
  EXPECT_NEAR(h.regime3_t, 1.7851, 1e-3);
  EXPECT_NEAR(h.per_variable_base, 1.598, 1e-3);
  EXPECT_NEAR(h.majority_base, 1.251, 1e-3);
  EXPECT_NEAR(h.maj_count_base, 1.565, 1e-3);
  EXPECT_NEAR(h.entropy_base, 1.8204, 1e-3);
  EXPECT_NEAR(h.tree_base, 1.8204, 1e-3);
  EXPECT_NEAR(h.trivial_base, 1.732, 1e-3);
}

TEST(Headline, IndependentArithmetic) {
  const double a = 2 + lam, b = 1 + 2 * lam;
  expect_rel(regime2_base_n(), 3 / a);
  expect_rel(regime2_base_t(), a * a * a / 9);
  expect_rel(regime3_base_n(), a / b);
  expect_rel(std::pow(regime3_base_t(), 3), 3 * std::pow(b, 7) / std::pow(a, 5));
  const double c = 0.71347;
  expect_rel(binary_entropy(c), -c * std::log2(c) - (1 - c) * std::log2(1 - c));
  expect_rel(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
}

TEST(Headline, ThresholdBalancesBothSides) {
  auto h = headline_constants(kBoundedNegationThreshold);
  EXPECT_NEAR(h.entropy_base, h.tree_base, 1e-3);
  auto lo = headline_constants(0.65), hi = headline_constants(0.78);
  EXPECT_GT(lo.entropy_base, lo.tree_base);
  EXPECT_LT(hi.entropy_base, hi.tree_base);
}
