// Builds the full transversal tree of a random monotone 3-CNF and compares
// the exact expected leaf count with the pessimistic estimate and with the
// average over seeded runs of the search.
//
//   survival [n] [clauses] [formula-seed]

#include <cstdlib>
#include <iostream>

#include "tsearch/analysis.hpp"
#include "tsearch/bounds.hpp"

int main(int argc, char** argv) {
  using namespace tsearch;
  using namespace tsearch::analysis;
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 12;
  const std::size_t m = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 18;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

  const auto f = gen_random_cnf(n, m, 3, true, seed);
  const auto ord = canonical_ordering(f, OrderingMode::monotone_canonical);
  const auto t = enumerate_min(f, ord, EdgeOrderPolicy::fixed()).first;
  const auto tree = build_tree(f, ord, t);
  const auto marks = compute_markings(tree);

  const auto exact = survival_exact(tree, marks);
  const auto pess = survival_pessimistic(tree, marks, PessimisticMode::monotone);
  const auto mc = monte_carlo_leaves(f, t, ord, 2000, 7);

  std::cout << "n=" << n << " t=" << t << " m=" << tree.prefix_len << " tree leaves=" << exact.leaves.size() << '\n';
  std::cout << "sigma exact      " << exact.total << " = " << exact.total_value() << '\n';
  std::cout << "sigma pessimistic " << pess.total << '\n';
  std::cout << "search mean      " << mc.mean << " +- " << mc.std_error.value_or(0) << " (2000 runs)\n";
  if (3 * t >= n && 2 * t <= n)
    std::cout << "tree bound       " << std::pow(3.0, t / 3.0) * bounds::mprime_closed(3.0 * t - n, 2.0 * t / 3) << '\n';
}
