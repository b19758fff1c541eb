#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dichromat/sweepout.hpp"

using namespace dichromat;

namespace {

const SweepStrategy kStrategies[] = {SweepStrategy::dfs_fill, SweepStrategy::bfs_fill, SweepStrategy::uniform,
                                     SweepStrategy::random_monotone};

SweepoutTrace default_trace(SweepStrategy s, int m, std::uint64_t seed = 1) {
  const auto p = default_block_params();
  return generate_trace(s, m, p, default_step_bound(p), seed);
}

// Depth-one trace from explicit rows over (N1, N2, N3, T2, T3).
SweepoutTrace hand_trace(const std::vector<std::vector<double>>& rows, double delta) {
  SweepoutTrace t(region_graph(1, default_block_params()));
  t.step_bound = delta;
  for (const auto& r : rows) t.values.insert(t.values.end(), r.begin(), r.end());
  return t;
}

std::vector<double> full_row(const SweepoutTrace& t) {
  std::vector<double> out;
  for (std::size_t e = 0; e < t.entries(); ++e) out.push_back(t.capacity(e));
  return out;
}

}  // namespace

TEST(TraceLayout, EntriesAndLabels) {
  const SweepoutTrace t(region_graph(2, default_block_params()));
  EXPECT_EQ(t.entries(), 13u);
  EXPECT_EQ(t.region_entry(1), 0u);
  EXPECT_EQ(t.tube_entry(2), 7u);
  EXPECT_EQ(t.tube_entry(7), 12u);
  EXPECT_EQ(t.entry_label(0), "N1");
  EXPECT_EQ(t.entry_label(7), "T2");
  EXPECT_EQ(t.capacity(7), t.graph.tube_volume);
}

TEST(ValidateTrace, TwoStepJumpViolatesStepBound) {
  SweepoutTrace probe(region_graph(1, default_block_params()));
  const auto full = full_row(probe);
  const auto t = hand_trace({std::vector<double>(5, 0.0), full}, 1.0);
  const auto bad = validate_trace(t);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->step, 1u);
}

TEST(ValidateTrace, FineUniformFillIsValid) {
  for (int m = 1; m <= 6; ++m) EXPECT_FALSE(validate_trace(default_trace(SweepStrategy::uniform, m)).has_value());
}

TEST(ValidateTrace, OverfullEntryIsReported) {
  auto t = default_trace(SweepStrategy::uniform, 2);
  const std::size_t k = t.step_count() - 2;
  t.values[k * t.entries() + 3] = t.capacity(3) * 1.01;
  const auto bad = validate_trace(t);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->step, k);
  EXPECT_EQ(bad->entry, 3u);
}

TEST(ValidateTrace, EndpointsAndShape) {
  auto t = default_trace(SweepStrategy::dfs_fill, 2);
  auto first = t;
  first.values[0] = 1e-3;
  EXPECT_EQ(validate_trace(first)->step, 0u);
  auto last = t;
  last.values.back() *= 0.5;
  EXPECT_EQ(validate_trace(last)->step, t.step_count() - 1);
  auto ragged = t;
  ragged.values.pop_back();
  EXPECT_TRUE(validate_trace(ragged).has_value());
  auto no_bound = t;
  no_bound.step_bound = 0.0;
  EXPECT_TRUE(validate_trace(no_bound).has_value());
  auto negative = t;
  negative.values[t.entries() + 1] = -1.0;
  EXPECT_TRUE(validate_trace(negative).has_value());
}

TEST(GenerateTrace, AllStrategiesValid) {
  for (auto s : kStrategies) {
    for (int m = 1; m <= 6; ++m) {
      const auto t = default_trace(s, m, 5);
      EXPECT_FALSE(validate_trace(t).has_value()) << to_string(s) << ' ' << m;
    }
  }
}

TEST(GenerateTrace, RandomMonotoneIsReproducible) {
  const auto a = default_trace(SweepStrategy::random_monotone, 4, 99);
  const auto b = default_trace(SweepStrategy::random_monotone, 4, 99);
  const auto c = default_trace(SweepStrategy::random_monotone, 4, 100);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
}

TEST(GenerateTrace, Errors) {
  const auto p = default_block_params();
  EXPECT_THROW(generate_trace(SweepStrategy::uniform, 3, p, 0.0), InvalidParameter);
  EXPECT_THROW(generate_trace(SweepStrategy::uniform, 3, p, -1.0), InvalidParameter);
  EXPECT_THROW(generate_trace(SweepStrategy::uniform, 12, p, default_step_bound(p)), CapacityError);
  EXPECT_THROW(parse_sweep_strategy("spiral"), InvalidParameter);
  EXPECT_EQ(parse_sweep_strategy("bfs-fill"), SweepStrategy::bfs_fill);
}

TEST(TraceProperty, LeafCountAboveAlphaIsNondecreasing) {
  const double alpha = default_block_params().alpha;
  for (auto s : kStrategies) {
    for (int m = 1; m <= 6; ++m) {
      const auto t = default_trace(s, m, 7);
      std::size_t prev = 0;
      for (std::size_t k = 0; k < t.step_count(); ++k) {
        const auto row = t.step(k);
        std::size_t count = 0;
        for (Node v = t.graph.tree.first_leaf(); v <= t.graph.tree.node_count(); ++v) count += row[v - 1] >= alpha;
        EXPECT_GE(count, prev) << to_string(s) << ' ' << m << ' ' << k;
        prev = count;
      }
    }
  }
}

TEST(SpecialSlice, HandTraceSingleLeaf) {
  // Leaf 3 fills first; it reaches alpha halfway into step 2.
  const auto p = default_block_params();
  const double a2 = 2.0 * p.alpha;
  SweepoutTrace probe(region_graph(1, p));
  const double leaf = probe.capacity(2);
  std::vector<std::vector<double>> rows{{0, 0, 0, 0, 0}, {0, 0, p.alpha / 2, 0, 0}, {0, 0, a2 - p.alpha / 2, 0, 0}};
  double x = rows.back()[2];
  while (x < leaf) {
    x = std::min(leaf, x + p.alpha);
    rows.push_back({0, 0, x, 0, 0});
  }
  for (std::size_t e : {0u, 1u, 3u, 4u}) {
    double y = 0;
    while (y < probe.capacity(e)) {
      y = std::min(probe.capacity(e), y + p.alpha);
      auto r = rows.back();
      r[e] = y;
      rows.push_back(r);
    }
  }
  const auto t = hand_trace(rows, p.alpha);
  ASSERT_FALSE(validate_trace(t).has_value());
  const auto slice = find_special_slice(t, 1, p.alpha);
  EXPECT_EQ(slice.step, 2u);
  EXPECT_NEAR(slice.fraction, 0.5, 1e-12);
  EXPECT_EQ(slice.volumes[2], p.alpha);

  const auto c = induce_coloring(t, slice, 1, p.alpha);
  EXPECT_TRUE(c.black(3));
  EXPECT_FALSE(c.black(2));
  EXPECT_FALSE(c.black(1));
}

TEST(SpecialSlice, AllLeavesGivesLastCrossing) {
  const double alpha = default_block_params().alpha;
  const auto t = default_trace(SweepStrategy::dfs_fill, 3);
  const auto slice = find_special_slice(t, t.graph.tree.leaf_count(), alpha);
  // dfs-fill visits the last leaf last among leaves.
  const Node last_leaf = t.graph.tree.node_count();
  EXPECT_EQ(slice.volumes[last_leaf - 1], alpha);
  for (Node v = t.graph.tree.first_leaf(); v < last_leaf; ++v) EXPECT_GE(slice.volumes[v - 1], alpha);
  const auto before = t.step(slice.step - 1);
  EXPECT_LT(before[last_leaf - 1], alpha);
}

TEST(SpecialSlice, Errors) {
  const auto p = default_block_params();
  const auto t = default_trace(SweepStrategy::uniform, 2);
  EXPECT_THROW(find_special_slice(t, 0, p.alpha), InvalidParameter);
  EXPECT_THROW(find_special_slice(t, 5, p.alpha), InvalidParameter);
  auto broken = t;
  broken.values.back() = 0.0;
  EXPECT_THROW(find_special_slice(broken, 1, p.alpha), MalformedInput);
}

TEST(InduceColoring, ExactlyABlackLeaves) {
  const auto p = default_block_params();
  for (auto s : kStrategies) {
    for (int m = 1; m <= 7; ++m) {
      const auto t = default_trace(s, m, 3);
      const auto a = a_of_m(m);
      const auto slice = find_special_slice(t, a, p.alpha);
      const auto c = induce_coloring(t, slice, a, p.alpha);
      EXPECT_EQ(black_counts(c).leaves, a) << to_string(s) << ' ' << m;
      for (Node v = 1; v < t.graph.tree.first_leaf(); ++v) EXPECT_EQ(c.black(v), slice.volumes[v - 1] >= p.alpha);
    }
  }
}

TEST(InduceColoring, RejectsInadmissibleSlice) {
  const auto p = default_block_params();
  const auto t = default_trace(SweepStrategy::uniform, 1);
  SpecialSlice slice{1, 1.0, std::vector<double>(t.entries(), 2.0 * p.alpha)};
  EXPECT_THROW(induce_coloring(t, slice, 1, p.alpha), AdmissibilityError);
  slice.volumes.assign(t.entries(), 0.0);
  EXPECT_THROW(induce_coloring(t, slice, 1, p.alpha), AdmissibilityError);
}

TEST(Certify, MeetsTheLeafBoundForAllStrategies) {
  const auto p = default_block_params();
  for (auto s : kStrategies) {
    for (int m = 2; m <= 7; ++m) {
      const auto cert = certify(default_trace(s, m, 11), p);
      EXPECT_GE(cert.certified_area, cert.paper_bound) << to_string(s) << ' ' << m;
      EXPECT_GE(cert.disjoint_count, (theorem_leaf_bound(m) + 4) / 5);
      EXPECT_GE(cert.dichromatic_count, theorem_leaf_bound(m));
      EXPECT_TRUE(cert.all_dichromatic_sandwiched);
      EXPECT_EQ(cert.disjoint_count, cert.disjoint_pairs.size());
      for (const auto& r : cert.sandwich_regions) EXPECT_TRUE(sandwiched(r, p.alpha));
    }
  }
}

TEST(Certify, IsPure) {
  const auto p = default_block_params();
  const auto t = default_trace(SweepStrategy::random_monotone, 5, 4);
  const auto a = certify(t, p), b = certify(t, p);
  EXPECT_EQ(a.coloring, b.coloring);
  EXPECT_EQ(a.disjoint_pairs, b.disjoint_pairs);
  EXPECT_EQ(a.slice.step, b.slice.step);
}

TEST(Certify, RejectsMismatchedParams) {
  auto p = default_block_params();
  const auto t = default_trace(SweepStrategy::uniform, 3);
  p.tau *= 1.1;
  EXPECT_THROW(certify(t, p), InvalidParameter);
}

TEST(TraceCsv, RoundTrip) {
  const auto p = default_block_params();
  const auto t = default_trace(SweepStrategy::random_monotone, 3, 8);
  std::stringstream io;
  write_trace_csv(io, t);
  const auto back = read_trace_csv(io, region_graph(3, p), t.step_bound);
  EXPECT_EQ(back.values, t.values);
  EXPECT_EQ(certify(back, p).coloring, certify(t, p).coloring);
}

TEST(TraceCsv, MalformedRows) {
  const auto g = region_graph(1, default_block_params());
  auto parse = [&](const std::string& text) {
    std::istringstream in(text);
    return read_trace_csv(in, g, 1.0);
  };
  EXPECT_THROW(parse("step,region,volume\n0,N1\n"), MalformedInput);
  EXPECT_THROW(parse("step,region,volume\n0,X1,0\n"), MalformedInput);
  EXPECT_THROW(parse("step,region,volume\n0,N9,0\n"), MalformedInput);
  EXPECT_THROW(parse("step,region,volume\n0,T1,0\n"), MalformedInput);
  EXPECT_THROW(parse("step,region,volume\n0,N1,abc\n"), MalformedInput);
  EXPECT_THROW(parse("step,region,volume\n0,N1,0\n0,N1,0\n"), MalformedInput);
  EXPECT_THROW(parse("step,region,volume\n0,N1,0\n"), MalformedInput);  // missing entries
}
