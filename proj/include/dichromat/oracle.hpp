#pragma once

// Exhaustive ground truth for small trees. Deliberately slow and simple:
// nothing in here shares code with the dynamic programs it is used to check.

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dichromat/error.hpp"
#include "dichromat/tree.hpp"

namespace dichromat::oracle {

inline constexpr int kFullEnumerationMaxM = 3;
inline constexpr int kLeafEnumerationMaxM = 4;

// (black node count b, dichromatic edge count d)
using BdPair = std::pair<Node, std::uint32_t>;

struct FullProfile {
  int m = 0;
  // Every (b, d) realized by some coloring, with its lexicographically
  // smallest witness. Includes the all-white coloring (b = 0).
  std::map<BdPair, Coloring> achievable;
  std::map<Node, std::uint32_t> min_d_by_b;  // 1 <= b <= node_count
  std::map<Node, std::uint32_t> min_d_by_t;  // 0 <= t <= leaf_count

  // B_m(d): the b >= 1 realizable with exactly d dichromatic edges, sorted.
  std::vector<Node> b_set(std::uint32_t d) const {
    std::vector<Node> out;
    for (const auto& [bd, witness] : achievable) {
      if (bd.second == d && bd.first >= 1) out.push_back(bd.first);
    }
    return out;
  }
};

struct LeafOptimum {
  std::uint32_t min_d = 0;
  Coloring witness;
};

namespace detail {

// Coloring whose heap-order bit sequence is the n-bit binary expansion of
// `key`, most significant bit first. Increasing keys walk colorings in
// lexicographic order.
inline Coloring coloring_from_key(const TreeShape& tree, std::uint64_t key) {
  const Node n = tree.node_count();
  std::vector<bool> bits(n);
  for (Node v = 1; v <= n; ++v) bits[v - 1] = (key >> (n - v)) & 1U;
  return Coloring(tree, std::move(bits));
}

struct KeyStats {
  Node b = 0;
  Node t = 0;
  std::uint32_t d = 0;
};

inline KeyStats stats_of_key(const TreeShape& tree, std::uint64_t key) {
  const Node n = tree.node_count();
  auto color = [&](Node v) { return static_cast<bool>((key >> (n - v)) & 1U); };
  KeyStats s;
  for (Node v = 1; v <= n; ++v) {
    if (!color(v)) continue;
    ++s.b;
    if (tree.is_leaf(v)) ++s.t;
  }
  for (Node c = 2; c <= n; ++c) {
    if (color(c) != color(c / 2)) ++s.d;
  }
  return s;
}

inline void check_oracle_m(int m, int cap, const char* what) {
  dichromat::detail::require(m >= 1, std::string(what) + ": m must be >= 1");
  if (m > cap) {
    throw CapacityError(std::string(what) + ": m = " + std::to_string(m) +
                        " is beyond the exhaustive oracle (max " + std::to_string(cap) +
                        "); use the dynamic program instead");
  }
}

}  // namespace detail

// Enumerates all 2^{node_count} colorings of T_m.
inline FullProfile enumerate_full(int m) {
  detail::check_oracle_m(m, kFullEnumerationMaxM, "enumerate_full");
  const TreeShape tree(m);
  const std::uint64_t total = std::uint64_t{1} << tree.node_count();

  FullProfile out;
  out.m = m;
  for (std::uint64_t key = 0; key < total; ++key) {
    const auto s = detail::stats_of_key(tree, key);
    const BdPair bd{s.b, s.d};
    if (!out.achievable.contains(bd)) {
      out.achievable.emplace(bd, detail::coloring_from_key(tree, key));
    }
    if (s.b >= 1) {
      auto [it, fresh] = out.min_d_by_b.try_emplace(s.b, s.d);
      if (!fresh && s.d < it->second) it->second = s.d;
    }
    auto [it, fresh] = out.min_d_by_t.try_emplace(s.t, s.d);
    if (!fresh && s.d < it->second) it->second = s.d;
  }
  return out;
}

// d_m(t) with its lexicographically smallest optimal coloring.
//
// m <= 3: every coloring is enumerated. m = 4: every leaf pattern with t
// black leaves is enumerated, and the internal nodes are optimized for that
// fixed pattern by a per-node two-color bottom-up pass.
inline LeafOptimum enumerate_leaf_constrained(int m, Node t) {
  detail::check_oracle_m(m, kLeafEnumerationMaxM, "enumerate_leaf_constrained");
  const TreeShape tree(m);
  dichromat::detail::require(t <= tree.leaf_count(),
                             "black leaf count t = " + std::to_string(t) + " outside [0, " +
                                 std::to_string(tree.leaf_count()) + "]");

  if (m <= kFullEnumerationMaxM) {
    const std::uint64_t total = std::uint64_t{1} << tree.node_count();
    std::optional<LeafOptimum> best;
    for (std::uint64_t key = 0; key < total; ++key) {
      const auto s = detail::stats_of_key(tree, key);
      if (s.t != t) continue;
      if (!best || s.d < best->min_d) {
        best = LeafOptimum{s.d, detail::coloring_from_key(tree, key)};
      }
    }
    return *best;
  }

  const Node n = tree.node_count();
  const Node leaves = tree.leaf_count();
  const Node first_leaf = tree.first_leaf();
  constexpr std::uint32_t kNever = std::numeric_limits<std::uint32_t>::max() / 4;

  std::optional<LeafOptimum> best;
  std::vector<std::array<std::uint32_t, 2>> cost(n + 1);
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << leaves); ++pattern) {
    if (static_cast<Node>(std::popcount(pattern)) != t) continue;
    auto leaf_black = [&](Node v) { return static_cast<bool>((pattern >> (v - first_leaf)) & 1U); };

    for (Node v = n; v >= 1; --v) {
      for (int c = 0; c < 2; ++c) {
        if (tree.is_leaf(v)) {
          cost[v][c] = (leaf_black(v) == static_cast<bool>(c)) ? 0 : kNever;
          continue;
        }
        std::uint32_t total_cost = 0;
        for (Node child : {2 * v, 2 * v + 1}) {
          total_cost += std::min(cost[child][c], cost[child][1 - c] + 1);
        }
        cost[v][c] = total_cost;
      }
    }

    // Top-down, white first: subtrees are independent given the parent's
    // color, so the greedy choice in heap order is lexicographically smallest.
    std::vector<bool> bits(n);
    const std::uint32_t opt = std::min(cost[1][0], cost[1][1]);
    bits[0] = cost[1][0] != opt;
    for (Node v = 2; v <= n; ++v) {
      const int pc = bits[tree.parent(v) - 1];
      if (tree.is_leaf(v)) {
        bits[v - 1] = leaf_black(v);
        continue;
      }
      const std::uint32_t stay = cost[v][pc];
      const std::uint32_t flip = cost[v][1 - pc] + 1;
      const std::uint32_t here = std::min(stay, flip);
      const bool white_ok = (pc == 0 ? stay : flip) == here;
      bits[v - 1] = !white_ok;
    }
    LeafOptimum candidate{opt, Coloring(tree, std::move(bits))};
    if (!best || candidate.min_d < best->min_d ||
        (candidate.min_d == best->min_d && candidate.witness < best->witness)) {
      best = std::move(candidate);
    }
  }
  return *best;
}

// Largest set of vertex-disjoint edges among `edges`, by trying every
// subset. Ties resolve to the subset whose bitmask over `edges` is smallest.
inline EdgeSet max_disjoint_exhaustive(const TreeShape& tree, const EdgeSet& edges) {
  dichromat::detail::require(edges.size() <= 24, "exhaustive matching limited to 24 edges");
  for (const auto& e : edges) dichromat::detail::require(tree.is_edge(e), "not a tree edge");
  const std::uint32_t total = std::uint32_t{1} << edges.size();
  std::uint32_t best_mask = 0;
  int best_size = 0;
  std::set<Node> used;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int size = std::popcount(mask);
    if (size <= best_size) continue;
    used.clear();
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i) {
      if (!((mask >> i) & 1U)) continue;
      ok = used.insert(edges[i].parent).second && used.insert(edges[i].child).second;
    }
    if (ok) {
      best_mask = mask;
      best_size = size;
    }
  }
  EdgeSet out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if ((best_mask >> i) & 1U) out.push_back(edges[i]);
  }
  return out;
}

}  // namespace dichromat::oracle
