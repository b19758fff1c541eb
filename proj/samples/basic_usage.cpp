// Prints the node profile of T_4, one optimal coloring, and the width bound
// for the default block parameters.

#include <iostream>

#include "dichromat/dichromat.hpp"

int main() {
  using namespace dichromat;

  const auto profile = node_profile(4);
  std::cout << "d'_4(b) for b = 1.." << profile.last_index() << ":";
  for (Node b = profile.first_index(); b <= profile.last_index(); ++b) std::cout << ' ' << profile.at(b);
  std::cout << '\n';

  const auto best = best_black_count(profile);
  const Coloring c = profile.witness(best.b_star);
  const auto cut = count_dichromatic(c);
  std::cout << "b(4) = " << best.b_star << " forces " << best.d_star << " dichromatic edges; witness has "
            << cut.count << ", of which " << max_disjoint_pairs(c).size << " are pairwise disjoint\n";

  const auto params = default_block_params();
  const auto w = width_lower_bound(4, params);
  std::cout << "d_4(a(4)) = " << w.leaf_value << " at a(4) = " << w.a << ", width >= " << w.certified_bound
            << '\n';
}
