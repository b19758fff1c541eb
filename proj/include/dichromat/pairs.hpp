#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dichromat/error.hpp"
#include "dichromat/tree.hpp"

namespace dichromat {

struct DisjointPairs {
  std::size_t size = 0;
  EdgeSet pairs;  // sorted by child index
};

// Maximum set of pairwise vertex-disjoint edges drawn from `allowed`
// (a maximum matching of the subgraph), by the usual two-state tree DP.
inline DisjointPairs max_disjoint_edges(const TreeShape& tree, const EdgeSet& allowed) {
  const Node n = tree.node_count();
  std::vector<char> usable(n + 1, 0);  // by child index
  for (const Edge& e : allowed) {
    detail::require(tree.is_edge(e), "(" + std::to_string(e.parent) + ", " + std::to_string(e.child) +
                                         ") is not an edge of T_" + std::to_string(tree.depth()));
    usable[e.child] = 1;
  }

  // free_[v]: best inside subtree(v) with v unmatched; any_[v]: v unrestricted.
  std::vector<std::uint32_t> free_(n + 1, 0), any_(n + 1, 0);
  for (Node v = n; v >= 1; --v) {
    if (tree.is_leaf(v)) continue;
    const Node l = tree.left(v), r = tree.right(v);
    free_[v] = any_[l] + any_[r];
    any_[v] = free_[v];
    for (Node c : {l, r}) {
      if (!usable[c]) continue;
      any_[v] = std::max(any_[v], free_[v] - any_[c] + free_[c] + 1);
    }
  }

  // Top-down: leave v unmatched when that is already optimal, else match it
  // to the first child that achieves the optimum.
  DisjointPairs out;
  std::vector<char> must_be_free(n + 1, 0);
  for (Node v = 1; v <= n; ++v) {
    if (tree.is_leaf(v) || must_be_free[v]) continue;
    if (any_[v] == free_[v]) continue;
    const Node l = tree.left(v), r = tree.right(v);
    for (Node c : {l, r}) {
      if (usable[c] && free_[v] - any_[c] + free_[c] + 1 == any_[v]) {
        out.pairs.push_back({v, c});
        must_be_free[c] = 1;
        break;
      }
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const Edge& a, const Edge& b) { return a.child < b.child; });
  out.size = out.pairs.size();
  return out;
}

// Largest set of vertex-disjoint dichromatic edges of `coloring`.
inline DisjointPairs max_disjoint_pairs(const Coloring& coloring) {
  return max_disjoint_edges(coloring.tree(), count_dichromatic(coloring).edges);
}

}  // namespace dichromat
