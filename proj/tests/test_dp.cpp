#include <gtest/gtest.h>

#include <random>

#include "dichromat/dp.hpp"
#include "dichromat/oracle.hpp"
#include "dichromat/pairs.hpp"
#include "frozen.hpp"
#include "generators.hpp"

using namespace dichromat;

TEST(NodeProfile, MatchesFrozenValues) {
  for (const auto& [m, expected] : frozen::kNodeProfile) EXPECT_EQ(node_profile(m).min_d(), expected) << m;
}

TEST(LeafProfile, MatchesFrozenValues) {
  for (const auto& [m, expected] : frozen::kLeafProfile) EXPECT_EQ(leaf_profile(m).min_d(), expected) << m;
}

TEST(NodeProfile, EqualsExhaustiveEnumeration) {
  for (int m = 1; m <= oracle::kFullEnumerationMaxM; ++m) {
    const auto full = oracle::enumerate_full(m);
    const auto p = node_profile(m);
    for (Node b = p.first_index(); b <= p.last_index(); ++b) EXPECT_EQ(p.at(b), full.min_d_by_b.at(b)) << m << ' ' << b;
  }
}

TEST(LeafProfile, EqualsLeafConstrainedEnumeration) {
  for (int m = 1; m <= oracle::kLeafEnumerationMaxM; ++m) {
    const auto p = leaf_profile(m);
    for (Node t = 0; t <= p.last_index(); ++t) {
      EXPECT_EQ(p.at(t), oracle::enumerate_leaf_constrained(m, t).min_d) << m << ' ' << t;
    }
  }
}

TEST(Profiles, Endpoints) {
  for (int m = 1; m <= 10; ++m) {
    const auto node = node_profile(m);
    EXPECT_EQ(node.at(node.last_index()), 0u);  // everything black
    EXPECT_EQ(node.at(1), 1u);                   // one black leaf
    const auto leaf = leaf_profile(m);
    EXPECT_EQ(leaf.at(0), 0u);
    EXPECT_EQ(leaf.at(leaf.last_index()), 0u);
    EXPECT_EQ(leaf.at(1), 1u);
  }
}

TEST(Profiles, IndexChecks) {
  const auto node = node_profile(2);
  EXPECT_EQ(node.first_index(), 1u);
  EXPECT_EQ(node.last_index(), 7u);
  EXPECT_THROW(node.at(0), InvalidParameter);
  EXPECT_THROW(node.at(8), InvalidParameter);
  EXPECT_THROW(node.witness(8), InvalidParameter);
  const auto leaf = leaf_profile(2);
  EXPECT_EQ(leaf.first_index(), 0u);
  EXPECT_EQ(leaf.last_index(), 4u);
  EXPECT_THROW(leaf.at(5), InvalidParameter);
}

TEST(Profiles, CapsAndBadDepth) {
  EXPECT_THROW(node_profile(0), InvalidParameter);
  EXPECT_THROW(node_profile(15), CapacityError);
  Caps caps;
  caps.profile_max_m = 3;
  EXPECT_THROW(leaf_profile(4, caps), CapacityError);
  EXPECT_NO_THROW(leaf_profile(3, caps));
}

TEST(ProfileProperty, NodeProfileIsOneLipschitz) {
  for (int m = 1; m <= 12; ++m) {
    const auto p = node_profile(m);
    for (Node b = p.first_index(); b < p.last_index(); ++b) {
      const auto x = p.at(b), y = p.at(b + 1);
      EXPECT_LE(x > y ? x - y : y - x, 1u) << m << ' ' << b;
    }
  }
}

TEST(ProfileProperty, LeafProfileIsOneLipschitz) {
  for (int m = 1; m <= 12; ++m) {
    const auto p = leaf_profile(m);
    for (Node t = 0; t < p.last_index(); ++t) {
      const auto x = p.at(t), y = p.at(t + 1);
      EXPECT_LE(x > y ? x - y : y - x, 1u) << m << ' ' << t;
    }
  }
}

TEST(ProfileProperty, LeafProfileIsSymmetric) {
  // Complementing a coloring maps t black leaves to 2^m - t.
  for (int m = 1; m <= 10; ++m) {
    const auto p = leaf_profile(m);
    for (Node t = 0; t <= p.last_index(); ++t) EXPECT_EQ(p.at(t), p.at(p.last_index() - t)) << m << ' ' << t;
  }
}

TEST(ProfileProperty, NodeProfileIsSymmetricAroundComplement) {
  // b black nodes <-> n - b black nodes; b = 0 is excluded from the profile.
  for (int m = 1; m <= 10; ++m) {
    const auto p = node_profile(m);
    const Node n = p.last_index();
    for (Node b = 1; b < n; ++b) EXPECT_EQ(p.at(b), p.at(n - b)) << m << ' ' << b;
  }
}

TEST(ProfileProperty, WitnessesAreOptimalAndSound) {
  for (int m = 1; m <= 8; ++m) {
    for (const auto& p : {node_profile(m), leaf_profile(m)}) {
      for (Node i = p.first_index(); i <= p.last_index(); ++i) {
        const Coloring c = p.witness(i);
        const auto counts = black_counts(c);
        EXPECT_EQ(p.kind() == ProfileKind::node ? counts.nodes : counts.leaves, i);
        EXPECT_EQ(count_dichromatic(c).count, p.at(i)) << m << ' ' << i;
      }
    }
  }
}

TEST(ProfileProperty, WitnessesAreDeterministic) {
  const auto a = node_profile(6), b = node_profile(6);
  for (Node i = 1; i <= a.last_index(); ++i) EXPECT_EQ(a.witness(i), b.witness(i));
}

TEST(ProfileProperty, RandomColoringsNeverBeatTheProfile) {
  std::mt19937_64 rng(21);
  for (int m = 1; m <= 9; ++m) {
    const auto node = node_profile(m), leaf = leaf_profile(m);
    const TreeShape t = build_tree(m);
    for (int trial = 0; trial < 300; ++trial) {
      const Coloring c = trial % 2 ? gen::random_coloring(t, rng) : gen::clustered_coloring(t, rng);
      const auto counts = black_counts(c);
      const auto d = count_dichromatic(c).count;
      if (counts.nodes >= 1) {
        EXPECT_LE(node.at(counts.nodes), d);
      }
      EXPECT_LE(leaf.at(counts.leaves), d);
    }
  }
}

TEST(Achievable, MatchesFrozenSets) {
  for (const auto& [m, sets] : frozen::achievable_sets()) {
    for (std::uint32_t d = 0; d < sets.size(); ++d) {
      const auto s = achievable_set(m, d);
      EXPECT_EQ(s.members, sets[d]) << m << ' ' << d;
      EXPECT_EQ(s.m, m);
      EXPECT_EQ(s.d, d);
    }
  }
}

TEST(Achievable, TableAgreesWithProfileMinimum) {
  for (int m = 1; m <= 6; ++m) {
    const auto table = achievable_table(m);
    const auto p = node_profile(m);
    for (Node b = 1; b <= p.last_index(); ++b) {
      std::uint32_t first = kUnreachable;
      for (std::uint32_t d = 0; d < table.members_by_d.size() && first == kUnreachable; ++d) {
        const auto& members = table.members_by_d[d];
        if (std::binary_search(members.begin(), members.end(), b)) first = d;
      }
      EXPECT_EQ(first, p.at(b)) << m << ' ' << b;
    }
  }
}

TEST(Achievable, RandomColoringsAreMembers) {
  std::mt19937_64 rng(22);
  for (int m = 1; m <= 6; ++m) {
    const auto table = achievable_table(m);
    const TreeShape t = build_tree(m);
    for (int trial = 0; trial < 200; ++trial) {
      const Coloring c = gen::random_coloring(t, rng);
      const Node b = black_counts(c).nodes;
      if (b == 0) continue;
      const auto& members = table.members_by_d.at(count_dichromatic(c).count);
      EXPECT_TRUE(std::binary_search(members.begin(), members.end(), b));
    }
  }
}

TEST(Achievable, Errors) {
  EXPECT_THROW(achievable_set(2, 7), InvalidParameter);
  EXPECT_THROW(achievable_set(9, 1), CapacityError);
  EXPECT_TRUE(achievable_set(2, 6).members.size() == 2);
}

TEST(DisjointPairs, MatchesExhaustiveOnRandomColorings) {
  std::mt19937_64 rng(23);
  for (int m = 1; m <= 3; ++m) {
    const TreeShape t = build_tree(m);
    for (int trial = 0; trial < 500; ++trial) {
      const Coloring c = gen::random_coloring(t, rng);
      const auto fast = max_disjoint_pairs(c);
      const auto slow = oracle::max_disjoint_exhaustive(t, count_dichromatic(c).edges);
      EXPECT_EQ(fast.size, slow.size());
    }
  }
}

TEST(DisjointPairs, ResultIsAValidMatchingOfDichromaticEdges) {
  std::mt19937_64 rng(24);
  for (int m = 2; m <= 9; ++m) {
    const TreeShape t = build_tree(m);
    for (int trial = 0; trial < 100; ++trial) {
      const Coloring c = gen::random_coloring(t, rng);
      const auto d = count_dichromatic(c);
      const auto pairs = max_disjoint_pairs(c);
      EXPECT_EQ(pairs.size, pairs.pairs.size());
      EXPECT_GE(pairs.size, (d.count + 4) / 5);
      std::vector<int> used(t.node_count() + 1, 0);
      for (const Edge& e : pairs.pairs) {
        EXPECT_NE(c.black(e.parent), c.black(e.child));
        EXPECT_EQ(used[e.parent]++, 0);
        EXPECT_EQ(used[e.child]++, 0);
      }
    }
  }
}

TEST(DisjointPairs, StarOfThreeEdgesGivesOne) {
  Coloring c(build_tree(2));
  c.set(2, true);  // edges 1-2, 2-4, 2-5 all dichromatic and share node 2
  EXPECT_EQ(count_dichromatic(c).count, 3u);
  EXPECT_EQ(max_disjoint_pairs(c).size, 1u);
}

TEST(DisjointPairs, RejectsNonTreeEdges) {
  const TreeShape t = build_tree(2);
  EXPECT_THROW(max_disjoint_edges(t, {{2, 6}}), InvalidParameter);
}

TEST(Witness, SmallExamples) {
  EXPECT_EQ(witness(node_profile(1), 3), Coloring(build_tree(1), true));
  const Coloring c = witness(leaf_profile(2), 1);
  EXPECT_EQ(black_counts(c).leaves, 1u);
  EXPECT_EQ(count_dichromatic(c).count, 1u);
}

TEST(DisjointPairs, SmallExamples) {
  EXPECT_EQ(max_disjoint_pairs(Coloring(build_tree(3), true)).size, 0u);
  Coloring c(build_tree(1));
  c.set(2, true);
  EXPECT_EQ(max_disjoint_pairs(c).size, 1u);
  EXPECT_EQ(max_disjoint_pairs(c).pairs, (EdgeSet{{1, 2}}));
}
