// Minimum transversals of a DIMACS file (or Maj_{8,3}), with search counters.
//
//   enumerate [file.cnf] [seed]

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "tsearch/solvers.hpp"

int main(int argc, char** argv) {
  using namespace tsearch;
  CnfFormula f = gen_maj(8, 3);
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot open " << argv[1] << '\n';
      return 2;
    }
    f = parse_dimacs(in);
  }
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const auto mode = f.monotone() ? OrderingMode::monotone_canonical : OrderingMode::general_canonical;

  try {
    auto [t, out] = enumerate_min(f, canonical_ordering(f, mode), EdgeOrderPolicy::random(seed));
    std::sort(out.transversals.begin(), out.transversals.end());
    for (const auto& s : out.transversals) std::cout << s.to_string() << '\n';
    std::cerr << "tau " << t << ", " << out.transversals.size() << " transversals, " << out.leaves_visited << " leaves, "
              << out.edges_pruned << " pruned edges\n";
  } catch (const Unsatisfiable&) {
    std::cerr << "unsatisfiable\n";
    return 1;
  }
}
