#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dichromat/error.hpp"

namespace dichromat {

// Heap index of a node: 1 is the root, children of i are 2i and 2i+1.
using Node = std::uint32_t;

// One tree edge, stored with its endpoints in parent/child orientation.
struct Edge {
  Node parent = 0;
  Node child = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSet = std::vector<Edge>;

// Full binary tree T_m: every one of the 2^m leaves sits at depth m.
class TreeShape {
 public:
  static constexpr int kDefaultMaxDepth = 24;

  explicit TreeShape(int depth, int max_depth = kDefaultMaxDepth) : depth_(depth) {
    detail::require(depth >= 1, "tree depth m must be >= 1, got " + std::to_string(depth));
    detail::require_cap(depth, max_depth, "tree");
  }

  int depth() const { return depth_; }
  Node node_count() const { return (Node{2} << depth_) - 1; }
  Node leaf_count() const { return Node{1} << depth_; }
  Node edge_count() const { return node_count() - 1; }
  Node first_leaf() const { return leaf_count(); }

  bool contains(Node v) const { return v >= 1 && v <= node_count(); }
  bool is_root(Node v) const { return v == 1; }
  bool is_leaf(Node v) const { return v >= first_leaf(); }

  // Level 0 is the root, level m holds the leaves.
  int level(Node v) const { return std::bit_width(v) - 1; }
  // Height of the subtree rooted at v (0 for leaves).
  int height(Node v) const { return depth_ - level(v); }
  Node subtree_size(Node v) const { return (Node{2} << height(v)) - 1; }

  Node parent(Node v) const { return v / 2; }
  Node left(Node v) const { return 2 * v; }
  Node right(Node v) const { return 2 * v + 1; }

  int degree(Node v) const {
    check(v);
    if (is_leaf(v)) return 1;
    return is_root(v) ? 2 : 3;
  }

  // Parent first (when present), then children in index order.
  std::vector<Node> neighbors(Node v) const {
    check(v);
    std::vector<Node> out;
    out.reserve(3);
    if (!is_root(v)) out.push_back(parent(v));
    if (!is_leaf(v)) {
      out.push_back(left(v));
      out.push_back(right(v));
    }
    return out;
  }

  bool is_edge(const Edge& e) const {
    return contains(e.child) && e.child >= 2 && e.parent == parent(e.child);
  }

  void check(Node v) const {
    if (!contains(v)) {
      throw InvalidParameter("node " + std::to_string(v) + " outside [1, " +
                             std::to_string(node_count()) + "]");
    }
  }

  friend bool operator==(const TreeShape& a, const TreeShape& b) { return a.depth_ == b.depth_; }

 private:
  int depth_;
};

inline TreeShape build_tree(int m, int max_depth = TreeShape::kDefaultMaxDepth) {
  return TreeShape(m, max_depth);
}

// Black/white assignment over all nodes of a tree. Black is `true`.
//
// Colorings order lexicographically by their bit sequence in heap order,
// white < black, which is the order used for deterministic witnesses.
class Coloring {
 public:
  explicit Coloring(TreeShape tree, bool black = false)
      : tree_(tree), bits_(tree.node_count(), black) {}

  Coloring(TreeShape tree, std::vector<bool> bits) : tree_(tree), bits_(std::move(bits)) {
    detail::require(bits_.size() == tree_.node_count(),
                    "coloring has " + std::to_string(bits_.size()) + " bits, tree has " +
                        std::to_string(tree_.node_count()) + " nodes");
  }

  const TreeShape& tree() const { return tree_; }
  const std::vector<bool>& bits() const { return bits_; }

  bool black(Node v) const {
    tree_.check(v);
    return bits_[v - 1];
  }
  void set(Node v, bool is_black) {
    tree_.check(v);
    bits_[v - 1] = is_black;
  }

  Coloring complemented() const {
    Coloring out = *this;
    out.bits_.flip();
    return out;
  }

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.tree_ == b.tree_ && a.bits_ == b.bits_;
  }
  friend bool operator<(const Coloring& a, const Coloring& b) { return a.bits_ < b.bits_; }

 private:
  TreeShape tree_;
  std::vector<bool> bits_;
};

struct BlackCounts {
  Node nodes = 0;   // b
  Node leaves = 0;  // t

  friend bool operator==(const BlackCounts&, const BlackCounts&) = default;
};

inline BlackCounts black_counts(const Coloring& coloring) {
  const TreeShape& tree = coloring.tree();
  const auto& bits = coloring.bits();
  BlackCounts out;
  for (Node v = 1; v <= tree.node_count(); ++v) {
    if (!bits[v - 1]) continue;
    ++out.nodes;
    if (tree.is_leaf(v)) ++out.leaves;
  }
  return out;
}

struct DichromaticEdges {
  std::size_t count = 0;
  EdgeSet edges;  // sorted by child index
};

inline DichromaticEdges count_dichromatic(const Coloring& coloring) {
  const TreeShape& tree = coloring.tree();
  const auto& bits = coloring.bits();
  DichromaticEdges out;
  for (Node child = 2; child <= tree.node_count(); ++child) {
    const Node parent = tree.parent(child);
    if (bits[parent - 1] != bits[child - 1]) out.edges.push_back({parent, child});
  }
  out.count = out.edges.size();
  return out;
}

}  // namespace dichromat
