#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "corpus.hpp"
#include "ordering_oracle.hpp"
#include "tsearch/analysis.hpp"
#include "tsearch/oracle.hpp"

using namespace tsearch;
using namespace tsearch::analysis;

namespace {

Clause pos(std::initializer_list<Var> vs) {
  Clause c;
  for (Var v : vs) c.push_back(Literal{v, true});
  return c;
}

struct Built {
  CnfFormula f;
  ExplicitTree tree;
  EdgeMarking marks;
  std::size_t t;
};

Built build(const CnfFormula& f, OrderingMode mode, std::optional<std::size_t> depth = std::nullopt) {
  auto ord = canonical_ordering(f, mode);
  std::size_t t = depth ? *depth : enumerate_min(f, ord, EdgeOrderPolicy::fixed()).first;
  auto tree = build_tree(f, ord, t);
  auto marks = compute_markings(tree);
  return {f, std::move(tree), std::move(marks), t};
}

Built build(const fixtures::Fixture& fx) { return build(fx.formula, fx.mode); }

NodeId leaf_with_labels(const ExplicitTree& t, const VarSet& labels) {
  for (NodeId leaf : t.leaves())
    if (t.label_set(leaf) == labels) return leaf;
  throw std::logic_error("no such leaf");
}

}  // namespace

TEST(ExplicitTree, SingleClause) {
  auto b = build(CnfFormula(3, {pos({1, 2, 3})}), OrderingMode::monotone_canonical, 1);
  EXPECT_EQ(b.tree.size(), 4u);
  auto leaves = b.tree.leaves();
  ASSERT_EQ(leaves.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(b.tree.node(leaves[i]).label, i + 1);
}

TEST(ExplicitTree, DisjointIsCompleteBinary) {
  auto b = build(gen_disjoint_2cnf(2, 4), OrderingMode::monotone_canonical, 2);
  EXPECT_EQ(b.tree.leaves().size(), 4u);
  EXPECT_EQ(b.tree.size(), 7u);
}

TEST(ExplicitTree, Maj4) {
  // the root clause {1,2,3} has three children; each child's residual holds
  // exactly one open width-3 clause, so the depth-2 tree has 9 leaves
  auto b = build(gen_maj(4, 3), OrderingMode::monotone_canonical, 2);
  EXPECT_EQ(b.tree.leaves().size(), 9u);
  EXPECT_EQ(b.tree.size(), 13u);
}

TEST(ExplicitTree, NodeLimit) {
  auto f = gen_maj(12, 3);
  EXPECT_THROW(build_tree(f, canonical_ordering(f, OrderingMode::monotone_canonical), 6, 100), LimitExceeded);
}

TEST(Markings, DepthOneAndDisjointAreUnmarked) {
  auto b = build(CnfFormula(3, {pos({1, 2, 3})}), OrderingMode::monotone_canonical, 1);
  for (NodeId v = 1; v < b.tree.size(); ++v) EXPECT_FALSE(b.marks.marked(v));
  auto d = build(gen_disjoint_2cnf(4, 8), OrderingMode::monotone_canonical, 4);
  for (NodeId v = 1; v < d.tree.size(); ++v) EXPECT_FALSE(d.marks.marked(v));
}

TEST(Markings, HandFixture) {
  // {2,3,4} develops below edge 1 of the root clause {1,2,3}
  auto b = build(CnfFormula(4, {pos({1, 2, 3}), pos({2, 3, 4})}), OrderingMode::as_given, 2);
  NodeId one = b.tree.node(0).children[0];
  ASSERT_EQ(b.tree.node(one).label, 1u);
  for (NodeId c : b.tree.node(one).children) {
    const Var x = b.tree.node(c).label;
    EXPECT_EQ(b.marks.of(c).size(), x == 4 ? 0u : 1u) << "label " << x;
  }
  auto sigma = survival_exact(b.tree, b.marks);
  for (std::size_t i = 0; i < sigma.leaves.size(); ++i) {
    auto labels = b.tree.label_set(sigma.leaves[i]);
    if (labels == VarSet(4, {1, 2}) || labels == VarSet(4, {1, 3})) EXPECT_EQ(sigma.per_leaf[i], Rational(1, 2));
    if (labels == VarSet(4, {1, 4})) EXPECT_EQ(sigma.per_leaf[i], Rational(1));
  }
}

TEST(SurvivalExact, UnmarkedTreeCountsLeaves) {
  auto b = build(gen_disjoint_2cnf(4, 8), OrderingMode::monotone_canonical, 4);
  EXPECT_EQ(survival_exact(b.tree, b.marks).total, Rational(16));
}

// The keystone: the product formula equals the fraction of joint sibling
// orderings under which no path edge is cut.
TEST(SurvivalExact, MatchesExhaustiveOrderings) {
  std::size_t checked = 0;
  for (const auto& fx : fixtures::small_corpus()) {
    auto b = build(fx);
    auto exact = survival_exact(b.tree, b.marks);
    for (std::size_t i = 0; i < exact.leaves.size(); ++i)
      ASSERT_EQ(exact.per_leaf[i], fixtures::exhaustive_survival_per_leaf(b.tree, exact.leaves[i])) << fx.name;
    if (fixtures::ordering_relevant_nodes(b.tree).size() <= 12) {
      EXPECT_EQ(exact.total, fixtures::exhaustive_survival_joint(b.tree)) << fx.name;
      ++checked;
    }
  }
  EXPECT_GE(checked, 20u);
}

TEST(SurvivalExact, EachMinimumTransversalHasUnitMass) {
  for (const auto& fx : fixtures::small_corpus()) {
    auto b = build(fx);
    auto exact = survival_exact(b.tree, b.marks);
    std::map<VarSet, Rational> mass;
    for (std::size_t i = 0; i < exact.leaves.size(); ++i) {
      const auto& node = b.tree.node(exact.leaves[i]);
      auto labels = b.tree.label_set(exact.leaves[i]);
      if (!node.bottom && node.depth == b.t && is_model(b.f, labels)) mass[labels] += exact.per_leaf[i];
    }
    auto gamma = oracle::brute_min_transversals(b.f).second;
    EXPECT_EQ(mass.size(), gamma.size()) << fx.name;
    for (const auto& [labels, m] : mass) EXPECT_EQ(m, Rational(1)) << fx.name;
  }
}

TEST(SurvivalPessimistic, UnmarkedTernary) {
  auto b = build(CnfFormula(6, {pos({1, 2, 3}), pos({4, 5, 6})}), OrderingMode::monotone_canonical, 2);
  EXPECT_NEAR(survival_pessimistic(b.tree, b.marks, PessimisticMode::monotone).total, 9.0, 1e-12);
}

TEST(SurvivalPessimistic, TwoMarkedEdges) {
  auto b = build(gen_maj(8, 3), OrderingMode::monotone_canonical);
  auto pess = survival_pessimistic(b.tree, b.marks, PessimisticMode::monotone);
  bool seen = false;
  for (std::size_t i = 0; i < pess.leaves.size(); ++i)
    if (path_stats(b.tree, b.marks, pess.leaves[i]).path_weight == 2) {
      EXPECT_NEAR(pess.per_leaf[i], 1.0 / 3, 1e-12);
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST(SurvivalPessimistic, DominatesExactOnCorpus) {
  for (const auto& fx : fixtures::small_corpus()) {
    auto b = build(fx);
    auto exact = survival_exact(b.tree, b.marks);
    for (auto mode : {PessimisticMode::monotone, PessimisticMode::general}) {
      auto p = survival_pessimistic(b.tree, b.marks, mode);
      ASSERT_EQ(p.leaves, exact.leaves);
      for (std::size_t i = 0; i < p.leaves.size(); ++i)
        EXPECT_LE(exact.per_leaf[i].convert_to<double>(), p.per_leaf[i] * (1 + 1e-12)) << fx.name;
      EXPECT_LE(exact.total_value(), p.total * (1 + 1e-12));
    }
  }
}

// Using the shoot's uniform weight in the general exponent is not an upper
// bound: disjoint 2-clauses give W+ = t on every path while nothing is cut.
TEST(SurvivalPessimistic, ShootUniformWeightIsNotABound) {
  auto b = build(gen_disjoint_2cnf(3, 6), OrderingMode::general_canonical, 3);
  for (NodeId leaf : b.tree.leaves()) {
    auto st = path_stats(b.tree, b.marks, leaf);
    EXPECT_EQ(st.uniform_weight, 3);
    EXPECT_GT(1.0, std::pow(kLambda, static_cast<double>(st.uniform_weight + static_cast<long>(st.double_weight))));
  }
  EXPECT_EQ(survival_exact(b.tree, b.marks).total, Rational(8));
}

TEST(PathStats, DisjointTreeIsWeightless) {
  auto b = build(gen_disjoint_2cnf(3, 6), OrderingMode::monotone_canonical, 3);
  for (NodeId leaf : b.tree.leaves()) {
    auto st = path_stats(b.tree, b.marks, leaf);
    EXPECT_EQ(st.shoot_weight, 0u);
    EXPECT_EQ(st.fullness, 0u);
  }
}

TEST(PathStats, WeightLowerBounds) {
  std::size_t mono3 = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    for (bool monotone : {true, false}) {
      auto f = gen_random_cnf(11, monotone ? 14 : 30, 3, monotone, 300 + seed);
      if (!oracle::brute_satisfiable(f)) continue;
      auto b = build(f, monotone ? OrderingMode::monotone_canonical : OrderingMode::general_canonical);
      const long n = 11, t = static_cast<long>(b.t);
      for (NodeId leaf : b.tree.leaves()) {
        auto st = path_stats(b.tree, b.marks, leaf);
        const long len = static_cast<long>(st.length);
        if (monotone) EXPECT_GE(static_cast<long>(st.shoot_weight), 3 * t - n);
        EXPECT_GE(st.uniform_weight, 3 * len - n);
        if (len == t) EXPECT_GE(st.uniform_weight, 3 * t - n);
        EXPECT_LE(st.fullness, 2 * b.tree.prefix_len);
      }
      mono3 += monotone;
    }
  EXPECT_GT(mono3, 0u);
}

TEST(DisjointMarking, WidthTwoNodeHasFewChildren) {
  auto b = build(CnfFormula(7, {pos({1, 2, 3}), pos({4, 5}), pos({6, 7})}), OrderingMode::general_canonical, 3);
  auto verdicts = check_disjoint_marking(b.tree, b.marks);
  ASSERT_FALSE(verdicts.empty());
  for (const auto& v : verdicts) EXPECT_TRUE(v.few_children);
}

TEST(DisjointMarking, WidthThreeClauseTouchingPrefix) {
  auto b = build(CnfFormula(9, {pos({1, 2, 3}), pos({4, 5, 6}), pos({7, 8, 9}), pos({1, 4, 7}), pos({2, 5, 8}),
                                pos({3, 6, 9}), pos({1, 5, 9})}),
                 OrderingMode::general_canonical, 5);
  ASSERT_EQ(b.tree.prefix_len, 3u);
  bool any_three = false;
  for (const auto& v : check_disjoint_marking(b.tree, b.marks)) {
    EXPECT_TRUE(v.holds());
    if (!v.few_children) {
      any_three = true;
      EXPECT_TRUE(v.double_marked || v.prefix_single_marked);
    }
  }
  EXPECT_TRUE(any_three);
}

TEST(DisjointMarking, CorpusHasNoFlaggedNodes) {
  for (const auto& fx : fixtures::small_corpus()) {
    auto b = build(fx);
    for (const auto& v : check_disjoint_marking(b.tree, b.marks)) EXPECT_TRUE(v.holds()) << fx.name << " node " << v.node;
  }
}

TEST(MonteCarlo, UnmarkedHasZeroVariance) {
  auto f = gen_disjoint_2cnf(3, 6);
  auto mc = monte_carlo_leaves(f, 3, canonical_ordering(f, OrderingMode::monotone_canonical), 50, 1);
  EXPECT_EQ(mc.mean, 8.0);
  ASSERT_TRUE(mc.std_error);
  EXPECT_EQ(*mc.std_error, 0.0);
}

TEST(MonteCarlo, SingleTrialHasNoStdError) {
  auto f = gen_maj(4, 3);
  auto mc = monte_carlo_leaves(f, 2, canonical_ordering(f, OrderingMode::monotone_canonical), 1, 1);
  EXPECT_FALSE(mc.std_error);
}

TEST(MonteCarlo, MeanNearExactSurvival) {
  auto b = build(gen_random_cnf(9, 10, 3, true, 2), OrderingMode::monotone_canonical);
  auto exact = survival_exact(b.tree, b.marks).total_value();
  ASSERT_DOUBLE_EQ(exact, 19.5);
  auto mc = monte_carlo_leaves(b.f, b.t, canonical_ordering(b.f, OrderingMode::monotone_canonical), 4000, 17);
  ASSERT_TRUE(mc.std_error);
  EXPECT_GT(*mc.std_error, 0.0);
  EXPECT_LE(std::abs(mc.mean - exact), 4 * *mc.std_error);
}
