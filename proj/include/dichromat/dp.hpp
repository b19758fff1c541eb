#pragma once

// Exact minimum-dichromatic-edge profiles of T_m by subtree dynamic
// programming.
//
// All subtrees of T_m at the same height are isomorphic, so one table per
// height suffices: best[h][c][x] is the fewest dichromatic edges inside a
// height-h subtree whose root has color c and whose coordinate (black node
// count, or black leaf count) equals x. A parent merges two copies of the
// child table by a min-plus knapsack convolution over x.

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dichromat/error.hpp"
#include "dichromat/tree.hpp"

namespace dichromat {

enum class ProfileKind { node, leaf };

inline const char* to_string(ProfileKind kind) { return kind == ProfileKind::node ? "node" : "leaf"; }

// Marks an infeasible (color, coordinate) state. Only ever compared against,
// never used in arithmetic.
inline constexpr std::uint32_t kUnreachable = 0xFFFFFFFFu;

class DpProfile {
 public:
  int m() const { return m_; }
  ProfileKind kind() const { return kind_; }
  const TreeShape& tree() const { return tree_; }

  // Index range: b in [1, 2^{m+1}-1] for node profiles, t in [0, 2^m] for
  // leaf profiles.
  Node first_index() const { return kind_ == ProfileKind::node ? 1 : 0; }
  Node last_index() const { return kind_ == ProfileKind::node ? tree_.node_count() : tree_.leaf_count(); }
  bool contains(Node index) const { return index >= first_index() && index <= last_index(); }

  std::uint32_t at(Node index) const {
    check(index);
    return min_d_[index - first_index()];
  }

  // min_d()[i] belongs to index first_index() + i.
  const std::vector<std::uint32_t>& min_d() const { return min_d_; }

  // One optimal coloring for `index`. Ties go to white at every node, then to
  // the smallest coordinate for the left child.
  Coloring witness(Node index) const {
    check(index);
    Coloring out(tree_);
    const int root_color = pick_color(m_, index, /*parent_color=*/-1);

    struct Frame {
      Node v;
      int color;
      Node x;
    };
    std::vector<Frame> stack{{1, root_color, index}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      out.set(f.v, f.color == 1);
      if (tree_.is_leaf(f.v)) continue;
      const int h = tree_.height(f.v);
      const Node left_x = split_[h][f.color][f.x];
      const Node right_x = f.x - own(f.color) - left_x;
      stack.push_back({tree_.right(f.v), pick_color(h - 1, right_x, f.color), right_x});
      stack.push_back({tree_.left(f.v), pick_color(h - 1, left_x, f.color), left_x});
    }
    return out;
  }

 private:
  friend DpProfile compute_profile(int, ProfileKind, const Caps&);

  DpProfile(int m, ProfileKind kind) : m_(m), kind_(kind), tree_(m, m) {}

  void check(Node index) const {
    if (!contains(index)) {
      throw InvalidParameter(std::string(to_string(kind_)) + " profile index " + std::to_string(index) +
                             " outside [" + std::to_string(first_index()) + ", " +
                             std::to_string(last_index()) + "]");
    }
  }

  Node own(int color) const { return (kind_ == ProfileKind::node && color == 1) ? 1 : 0; }

  // Cheapest color for a height-h subtree root with coordinate x, counting the
  // edge to a parent of `parent_color` (-1: no parent). White wins ties.
  int pick_color(int h, Node x, int parent_color) const {
    std::uint64_t best_cost = ~std::uint64_t{0};
    int best = 0;
    for (int c = 0; c < 2; ++c) {
      const std::uint32_t inside = best_[h][c][x];
      if (inside == kUnreachable) continue;
      const std::uint64_t cost = std::uint64_t{inside} + (parent_color >= 0 && parent_color != c ? 1 : 0);
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    return best;
  }

  int m_;
  ProfileKind kind_;
  TreeShape tree_;
  std::vector<std::uint32_t> min_d_;
  // best_[h][c][x] and split_[h][c][x] (left child's coordinate), h = 0..m.
  std::vector<std::array<std::vector<std::uint32_t>, 2>> best_;
  std::vector<std::array<std::vector<Node>, 2>> split_;
};

inline DpProfile compute_profile(int m, ProfileKind kind, const Caps& caps) {
  detail::require(m >= 1, "profile depth m must be >= 1, got " + std::to_string(m));
  detail::require_cap(m, caps.profile_max_m, std::string(to_string(kind)) + "_profile");

  DpProfile p(m, kind);
  const bool by_node = kind == ProfileKind::node;
  // Largest coordinate of a height-h subtree.
  auto span = [&](int h) -> Node { return by_node ? (Node{2} << h) - 1 : Node{1} << h; };

  p.best_.resize(m + 1);
  p.split_.resize(m + 1);

  // Leaves.
  for (int c = 0; c < 2; ++c) p.best_[0][c].assign(2, kUnreachable);
  p.best_[0][0][0] = 0;
  p.best_[0][1][1] = 0;

  // reach[c][x]: cheapest way to hang a child subtree with coordinate x under
  // a parent of color c, edge to the parent included.
  std::array<std::vector<std::uint32_t>, 2> reach;
  for (int h = 1; h <= m; ++h) {
    const Node child_span = span(h - 1);
    const auto& child = p.best_[h - 1];
    for (int c = 0; c < 2; ++c) {
      reach[c].assign(child_span + 1, kUnreachable);
      for (Node x = 0; x <= child_span; ++x) {
        std::uint32_t v = child[c][x];
        if (child[1 - c][x] != kUnreachable && (v == kUnreachable || child[1 - c][x] + 1 < v)) {
          v = child[1 - c][x] + 1;
        }
        reach[c][x] = v;
      }
    }

    for (int c = 0; c < 2; ++c) {
      auto& out = p.best_[h][c];
      auto& split = p.split_[h][c];
      out.assign(span(h) + 1, kUnreachable);
      split.assign(span(h) + 1, 0);
      const Node own = p.own(c);
      const auto& r = reach[c];
      for (Node left = 0; left <= child_span; ++left) {
        if (r[left] == kUnreachable) continue;
        for (Node right = 0; right <= child_span; ++right) {
          if (r[right] == kUnreachable) continue;
          const Node x = left + right + own;
          const std::uint32_t cost = r[left] + r[right];
          if (out[x] == kUnreachable || cost < out[x]) {
            out[x] = cost;
            split[x] = left;
          }
        }
      }
    }
  }

  const Node lo = p.first_index();
  const Node hi = p.last_index();
  p.min_d_.reserve(hi - lo + 1);
  for (Node x = lo; x <= hi; ++x) {
    const std::uint32_t white = p.best_[m][0][x];
    const std::uint32_t black = p.best_[m][1][x];
    std::uint32_t v = white;
    if (black != kUnreachable && (v == kUnreachable || black < v)) v = black;
    p.min_d_.push_back(v);
  }
  return p;
}

// d'_m(b) for every 1 <= b <= 2^{m+1}-1.
inline DpProfile node_profile(int m, const Caps& caps = {}) {
  return compute_profile(m, ProfileKind::node, caps);
}

// d_m(t) for every 0 <= t <= 2^m.
inline DpProfile leaf_profile(int m, const Caps& caps = {}) {
  return compute_profile(m, ProfileKind::leaf, caps);
}

inline Coloring witness(const DpProfile& profile, Node index) { return profile.witness(index); }

// B_m(d) for one d.
struct AchievableSet {
  int m = 0;
  std::uint32_t d = 0;
  std::vector<Node> members;  // sorted
};

namespace detail {

// Fixed-width bit set over dichromatic counts, sized at runtime.
class CountSet {
 public:
  CountSet() = default;
  explicit CountSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const {
    return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1U);
  }
  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  // *this |= other << shift, truncated to this set's width.
  void or_shifted(const CountSet& other, std::size_t shift) {
    const std::size_t word_shift = shift / 64;
    const unsigned bit_shift = shift % 64;
    for (std::size_t i = 0; i < other.words_.size(); ++i) {
      const std::size_t dst = i + word_shift;
      if (dst >= words_.size()) break;
      words_[dst] |= other.words_[i] << bit_shift;
      if (bit_shift != 0 && dst + 1 < words_.size()) {
        words_[dst + 1] |= other.words_[i] >> (64 - bit_shift);
      }
    }
  }

  // *this |= {a + b : a in lhs, b in rhs}
  void or_sumset(const CountSet& lhs, const CountSet& rhs) {
    for (std::size_t w = 0; w < lhs.words_.size(); ++w) {
      std::uint64_t word = lhs.words_[w];
      while (word) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        or_shifted(rhs, w * 64 + static_cast<std::size_t>(bit));
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

// Every B_m(d), d = 0 .. 2^{m+1}-2, from one DP over (black count,
// dichromatic count) pairs. members_by_d[d] lists b >= 1 in increasing order.
struct AchievableTable {
  int m = 0;
  std::vector<std::vector<Node>> members_by_d;

  AchievableSet slice(std::uint32_t d) const {
    detail::require(d < members_by_d.size(), "d = " + std::to_string(d) + " outside [0, " +
                                                  std::to_string(members_by_d.size() - 1) + "]");
    return {m, d, members_by_d[d]};
  }
};

inline AchievableTable achievable_table(int m, const Caps& caps = {}) {
  detail::require(m >= 1, "achievable_set depth m must be >= 1, got " + std::to_string(m));
  detail::require_cap(m, caps.achievable_max_m, "achievable_set");
  const TreeShape tree(m, m);

  // sets[c][b]: dichromatic counts realizable inside a subtree with root
  // color c and b black nodes.
  std::array<std::vector<detail::CountSet>, 2> sets;
  for (int c = 0; c < 2; ++c) sets[c].assign(2, detail::CountSet(1));
  sets[0][0].set(0);
  sets[1][1].set(0);

  for (int h = 1; h <= m; ++h) {
    const Node child_size = (Node{2} << (h - 1)) - 1;
    const Node size = (Node{2} << h) - 1;
    const std::size_t width = size;  // edges inside: size - 1, so counts < size

    std::array<std::vector<detail::CountSet>, 2> hang;
    for (int c = 0; c < 2; ++c) {
      hang[c].assign(child_size + 1, detail::CountSet(width));
      for (Node b = 0; b <= child_size; ++b) {
        hang[c][b].or_shifted(sets[c][b], 0);
        hang[c][b].or_shifted(sets[1 - c][b], 1);
      }
    }

    std::array<std::vector<detail::CountSet>, 2> next;
    for (int c = 0; c < 2; ++c) {
      next[c].assign(size + 1, detail::CountSet(width));
      const Node own = c == 1 ? 1 : 0;
      for (Node left = 0; left <= child_size; ++left) {
        if (hang[c][left].empty()) continue;
        for (Node right = left; right <= child_size; ++right) {
          if (hang[c][right].empty()) continue;
          next[c][left + right + own].or_sumset(hang[c][left], hang[c][right]);
        }
      }
    }
    sets = std::move(next);
  }

  const Node n = tree.node_count();
  AchievableTable out;
  out.m = m;
  out.members_by_d.resize(n - 1 + 1);
  for (Node b = 1; b <= n; ++b) {
    for (std::uint32_t d = 0; d <= n - 1; ++d) {
      if (sets[0][b].test(d) || sets[1][b].test(d)) out.members_by_d[d].push_back(b);
    }
  }
  return out;
}

inline AchievableSet achievable_set(int m, std::uint32_t d, const Caps& caps = {}) {
  detail::require(m >= 1, "achievable_set depth m must be >= 1, got " + std::to_string(m));
  detail::require_cap(m, caps.achievable_max_m, "achievable_set");
  const Node max_d = (Node{2} << m) - 2;
  detail::require(d <= max_d, "d = " + std::to_string(d) + " exceeds edge count " + std::to_string(max_d));
  return achievable_table(m, caps).slice(d);
}

}  // namespace dichromat
