#include <gtest/gtest.h>

#include "tsearch/oracle.hpp"
#include "tsearch/search.hpp"

using namespace tsearch;

namespace {

Clause lits(std::initializer_list<int> ls) {
  Clause c;
  for (int l : ls) c.push_back(Literal::from_dimacs(l));
  return c;
}

}  // namespace

TEST(Oracle, ModelsAtWeight) {
  CnfFormula f(3, {lits({1, 2, 3})});
  EXPECT_EQ(oracle::brute_models_at_weight(f, 1), (std::set<VarSet>{VarSet(3, {1}), VarSet(3, {2}), VarSet(3, {3})}));
  EXPECT_EQ(oracle::brute_models_at_weight(gen_maj(4, 3), 2).size(), 6u);
  EXPECT_TRUE(oracle::brute_models_at_weight(gen_maj(4, 3), 1).empty());
}

TEST(Oracle, MinTransversals) {
  auto [t0, g0] = oracle::brute_min_transversals(CnfFormula(4, {}));
  EXPECT_EQ(t0, 0u);
  EXPECT_EQ(g0, std::set<VarSet>{VarSet(4)});
  auto [t, g] = oracle::brute_min_transversals(gen_disjoint_2cnf(3, 6));
  EXPECT_EQ(t, 3u);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_THROW(oracle::brute_min_transversals(CnfFormula(1, {lits({1}), lits({-1})})), Unsatisfiable);
}

TEST(Oracle, MinimalModels) {
  EXPECT_EQ(oracle::brute_minimal_models(CnfFormula(2, {lits({1, 2})})), (std::set<VarSet>{VarSet(2, {1}), VarSet(2, {2})}));
  EXPECT_EQ(oracle::brute_minimal_models(CnfFormula(2, {lits({1}), lits({-1, 2})})), std::set<VarSet>{VarSet(2, {1, 2})});
}

TEST(Oracle, MinimalModelsAgainstDefinition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = gen_random_cnf(8, 14, 3, false, seed);
    auto all = oracle::brute_all_models(f);
    std::set<VarSet> want;
    for (const auto& s : all) {
      bool minimal = std::none_of(all.begin(), all.end(), [&](const VarSet& o) { return !(o == s) && o.is_subset_of(s); });
      if (minimal) want.insert(s);
    }
    EXPECT_EQ(oracle::brute_minimal_models(f), want);
  }
}

TEST(Oracle, MatchesEngine) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto f = gen_random_cnf(11, 22, 3, false, 40 + seed);
    if (!oracle::brute_satisfiable(f)) continue;
    auto [t, g] = oracle::brute_min_transversals(f);
    auto [te, o] = enumerate_min(f, canonical_ordering(f, OrderingMode::general_canonical), EdgeOrderPolicy::fixed());
    EXPECT_EQ(t, te);
    EXPECT_EQ(g, std::set<VarSet>(o.transversals.begin(), o.transversals.end()));
  }
}

TEST(Oracle, SizeLimit) {
  EXPECT_THROW(oracle::brute_min_transversals(gen_maj(24, 3)), LimitExceeded);
  EXPECT_THROW(oracle::brute_minimal_models(gen_maj(16, 3)), LimitExceeded);
}
