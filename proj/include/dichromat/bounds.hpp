#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "dichromat/dp.hpp"
#include "dichromat/error.hpp"
#include "dichromat/pairs.hpp"
#include "dichromat/tree.hpp"

namespace dichromat {

// Leaf count whose dichromatic value is at least ceil(m/2):
//   odd m:  1 + 2 + 2^3 + ... + 2^{m-2}
//   even m: 1 + 2^2 + 2^4 + ... + 2^{m-2}
// with a(1) = 1 (and a(2) = 1, the even sum having no power terms).
inline std::uint64_t a_of_m(int m) {
  detail::require(m >= 1 && m <= 62, "a(m) needs 1 <= m <= 62, got " + std::to_string(m));
  std::uint64_t a = 1;
  for (int p = m - 2; p >= 1; p -= 2) a += std::uint64_t{1} << p;
  return a;
}

inline std::uint32_t theorem_leaf_bound(int m) {
  detail::require(m >= 1, "m must be >= 1, got " + std::to_string(m));
  return static_cast<std::uint32_t>((m + 1) / 2);
}

// 2^d * m^d, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> lemma_cardinality_bound(std::uint64_t m, std::uint64_t d) {
  const std::uint64_t factor = 2 * m;
  if (m != 0 && factor / 2 != m) return std::nullopt;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    if (factor != 0 && out > std::numeric_limits<std::uint64_t>::max() / factor) return std::nullopt;
    out *= factor;
  }
  return out;
}

struct BestBlackCount {
  Node b_star = 0;
  std::uint32_t d_star = 0;
};

// Smallest argmax of d'_m(b): a concrete choice for the black count b(m).
inline BestBlackCount best_black_count(const DpProfile& node) {
  detail::require(node.kind() == ProfileKind::node, "best_black_count needs a node profile");
  BestBlackCount out{node.first_index(), node.at(node.first_index())};
  for (Node b = node.first_index(); b <= node.last_index(); ++b) {
    if (node.at(b) > out.d_star) out = {b, node.at(b)};
  }
  return out;
}

inline BestBlackCount best_black_count(int m, const Caps& caps = {}) {
  return best_black_count(node_profile(m, caps));
}

// ceil((k - |b - b_m|) / 5), floored at zero.
inline std::uint64_t disjoint_pairs_guarantee(std::int64_t k, std::int64_t b, std::int64_t b_m) {
  detail::require(k >= 0, "k must be >= 0");
  const std::int64_t slack = k - (b > b_m ? b - b_m : b_m - b);
  if (slack <= 0) return 0;
  return static_cast<std::uint64_t>((slack + 4) / 5);
}

enum class BoundCheck { lemma22, thm27, lipschitz_node, lipschitz_leaf, cor25 };

inline std::string_view to_string(BoundCheck which) {
  switch (which) {
    case BoundCheck::lemma22: return "lemma22";
    case BoundCheck::thm27: return "thm27";
    case BoundCheck::lipschitz_node: return "lipschitz_node";
    case BoundCheck::lipschitz_leaf: return "lipschitz_leaf";
    case BoundCheck::cor25: return "cor25";
  }
  return "?";
}

inline BoundCheck parse_bound_check(std::string_view name) {
  for (auto which : {BoundCheck::lemma22, BoundCheck::thm27, BoundCheck::lipschitz_node,
                     BoundCheck::lipschitz_leaf, BoundCheck::cor25}) {
    if (to_string(which) == name) return which;
  }
  throw InvalidParameter("unknown check '" + std::string(name) +
                         "' (expected lemma22, thm27, lipschitz_node, lipschitz_leaf or cor25)");
}

// Outcome of one bound check at one m.
//
//   lemma22         index d with the largest #B_m(d) / (2^d m^d); bound is
//                   2^d m^d, computed is #B_m(d); holds iff every d passes.
//   thm27           index a(m); bound ceil(m/2); computed d_m(a(m)).
//   lipschitz_*     bound 1; computed is the largest |f(i+1) - f(i)|, which
//                   bounds |f(t) - f(s)| / |t - s| over all pairs; index i.
//   cor25           index b with the least slack; bound is the guaranteed pair
//                   count at b, computed is the exact maximum number of
//                   disjoint dichromatic pairs of the optimal coloring at b.
struct BoundReport {
  int m = 0;
  std::string quantity;
  double paper_bound = 0;
  double computed_value = 0;
  bool holds = false;
  std::int64_t index = 0;
};

namespace detail {

inline BoundReport lipschitz_report(const DpProfile& p, std::string quantity) {
  BoundReport r{p.m(), std::move(quantity), 1, 0, true, static_cast<std::int64_t>(p.first_index())};
  std::uint32_t worst = 0;
  for (Node i = p.first_index(); i < p.last_index(); ++i) {
    const std::uint32_t a = p.at(i), b = p.at(i + 1);
    const std::uint32_t step = a > b ? a - b : b - a;
    if (step > worst) {
      worst = step;
      r.index = i;
    }
  }
  r.computed_value = worst;
  r.holds = worst <= 1;
  return r;
}

}  // namespace detail

inline BoundReport verify(int m, BoundCheck which, const Caps& caps = {}) {
  detail::require(m >= 1, "m must be >= 1, got " + std::to_string(m));
  switch (which) {
    case BoundCheck::lemma22: {
      const auto table = achievable_table(m, caps);
      BoundReport r{m, "achievable_set_cardinality", 1, 1, true, 0};
      double worst_ratio = -1;
      for (std::uint32_t d = 0; d < table.members_by_d.size(); ++d) {
        const auto count = table.members_by_d[d].size();
        const auto bound = lemma_cardinality_bound(static_cast<std::uint64_t>(m), d);
        if (!bound) continue;  // beyond 64 bits: trivially satisfied
        if (count > *bound) r.holds = false;
        const double ratio = static_cast<double>(count) / static_cast<double>(*bound);
        if (ratio >= worst_ratio) {
          worst_ratio = ratio;
          r.index = d;
          r.paper_bound = static_cast<double>(*bound);
          r.computed_value = static_cast<double>(count);
        }
      }
      return r;
    }
    case BoundCheck::thm27: {
      const auto leaf = leaf_profile(m, caps);
      const auto a = static_cast<Node>(a_of_m(m));
      const auto bound = theorem_leaf_bound(m);
      const auto value = leaf.at(a);
      return {m, "leaf_dichromatic_value", static_cast<double>(bound), static_cast<double>(value),
              value >= bound, static_cast<std::int64_t>(a)};
    }
    case BoundCheck::lipschitz_node:
      return detail::lipschitz_report(node_profile(m, caps), "node_profile_lipschitz");
    case BoundCheck::lipschitz_leaf:
      return detail::lipschitz_report(leaf_profile(m, caps), "leaf_profile_lipschitz");
    case BoundCheck::cor25: {
      const auto node = node_profile(m, caps);
      const auto best = best_black_count(node);
      BoundReport r{m, "disjoint_dichromatic_pairs", 0, 0, true, best.b_star};
      std::int64_t least_slack = std::numeric_limits<std::int64_t>::max();
      for (Node b = node.first_index(); b <= node.last_index(); ++b) {
        const auto guarantee = disjoint_pairs_guarantee(best.d_star, b, best.b_star);
        const auto found = max_disjoint_pairs(node.witness(b)).size;
        const std::int64_t lipschitz_floor =
            static_cast<std::int64_t>(best.d_star) - std::abs(static_cast<std::int64_t>(b) - best.b_star);
        if (static_cast<std::int64_t>(node.at(b)) < lipschitz_floor) r.holds = false;
        if (found < guarantee) r.holds = false;
        const std::int64_t slack = static_cast<std::int64_t>(found) - static_cast<std::int64_t>(guarantee);
        if (slack < least_slack) {
          least_slack = slack;
          r.index = b;
          r.paper_bound = static_cast<double>(guarantee);
          r.computed_value = static_cast<double>(found);
        }
      }
      return r;
    }
  }
  throw InvalidParameter("unknown check");
}

}  // namespace dichromat
