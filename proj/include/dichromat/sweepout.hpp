#pragma once

// Discrete sweepouts over the region graph and the special-slice certificate.
//
// A trace records, step by step, how much of every spherical region and every
// tube lies inside the swept set. Between recorded steps the volumes move
// linearly, which is what makes the "least t0" of the slice selection a well
// defined point inside a segment rather than a rounded-up step.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dichromat/bounds.hpp"
#include "dichromat/error.hpp"
#include "dichromat/metric.hpp"
#include "dichromat/pairs.hpp"
#include "dichromat/tree.hpp"

namespace dichromat {

class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// Relative slack for comparisons against recorded volumes in validation.
inline constexpr double kTraceTolerance = 1e-9;

// Dense traces hold steps * (2n - 1) doubles; beyond this many they are refused.
inline constexpr std::size_t kMaxTraceValues = std::size_t{1} << 26;

// Entry layout of one step: spherical region of node v at v - 1, then the
// tube between parent(c) and c at node_count + c - 2.
struct SweepoutTrace {
  RegionGraph<double> graph;
  double step_bound = 0;       // delta
  std::vector<double> values;  // step-major

  explicit SweepoutTrace(RegionGraph<double> g) : graph(std::move(g)) {}

  std::size_t entries() const { return 2 * std::size_t{graph.tree.node_count()} - 1; }
  std::size_t step_count() const { return values.size() / entries(); }
  std::span<const double> step(std::size_t k) const {
    return {values.data() + k * entries(), entries()};
  }
  std::size_t region_entry(Node v) const { return v - 1; }
  std::size_t tube_entry(Node child) const { return graph.tree.node_count() + child - 2; }
  double capacity(std::size_t e) const {
    return e < graph.tree.node_count() ? graph.node_volumes[e] : graph.tube_volume;
  }
  std::string entry_label(std::size_t e) const {
    const Node n = graph.tree.node_count();
    return e < n ? "N" + std::to_string(e + 1) : "T" + std::to_string(e - n + 2);
  }
};

struct TraceViolation {
  std::size_t step = 0;
  std::size_t entry = 0;
  std::string reason;
};

// First violated trace invariant, or nullopt when the trace is valid.
inline std::optional<TraceViolation> validate_trace(const SweepoutTrace& trace) {
  const std::size_t E = trace.entries();
  if (trace.values.empty() || trace.values.size() % E != 0) {
    return TraceViolation{0, 0, "trace must hold a whole number of steps, at least one"};
  }
  if (!(trace.step_bound > 0.0)) return TraceViolation{0, 0, "step bound must be positive"};
  const std::size_t K = trace.step_count();
  if (K < 2) return TraceViolation{0, 0, "trace needs at least two steps"};
  const double delta_slack = trace.step_bound * (1.0 + kTraceTolerance);
  for (std::size_t k = 0; k < K; ++k) {
    const auto cur = trace.step(k);
    for (std::size_t e = 0; e < E; ++e) {
      const double cap = trace.capacity(e);
      const double v = cur[e];
      if (!std::isfinite(v) || v < 0.0 || v > cap * (1.0 + kTraceTolerance)) {
        return TraceViolation{k, e, trace.entry_label(e) + " volume outside [0, " + std::to_string(cap) + "]"};
      }
      if (k == 0 && v != 0.0) return TraceViolation{k, e, "first step must be empty"};
      if (k + 1 == K && std::abs(v - cap) > kTraceTolerance * cap) {
        return TraceViolation{k, e, "last step must fill " + trace.entry_label(e)};
      }
      if (k > 0 && std::abs(v - trace.step(k - 1)[e]) > delta_slack) {
        return TraceViolation{k, e, trace.entry_label(e) + " moved by more than the step bound"};
      }
    }
  }
  return std::nullopt;
}

// The special slice: a point `fraction` of the way from step - 1 to step.
struct SpecialSlice {
  std::size_t step = 0;
  double fraction = 1.0;       // in (0, 1]; 1 means exactly at `step`
  std::vector<double> volumes;  // all entries at the slice
};

namespace detail {

// Volume of each entry a fraction s along the segment prev -> cur.
inline std::vector<double> interpolate(std::span<const double> prev, std::span<const double> cur, double s) {
  std::vector<double> out(cur.size());
  for (std::size_t e = 0; e < cur.size(); ++e) {
    if (s >= 1.0) {
      out[e] = cur[e];
      continue;
    }
    const double v = prev[e] + s * (cur[e] - prev[e]);
    out[e] = std::clamp(v, std::min(prev[e], cur[e]), std::max(prev[e], cur[e]));
  }
  return out;
}

}  // namespace detail

// Least point of the piecewise-linear trace at which at least `a` leaf
// regions hold volume >= alpha. Throws AdmissibilityError when more than `a`
// leaves are strictly above alpha there.
inline SpecialSlice find_special_slice(const SweepoutTrace& trace, std::uint64_t a, double alpha) {
  const TreeShape& tree = trace.graph.tree;
  detail::require(a >= 1 && a <= tree.leaf_count(),
                  "leaf target a = " + std::to_string(a) + " outside [1, " + std::to_string(tree.leaf_count()) + "]");
  detail::require(alpha > 0.0, "alpha must be positive");
  if (auto bad = validate_trace(trace)) {
    throw MalformedInput("invalid trace at step " + std::to_string(bad->step) + ": " + bad->reason);
  }

  const Node first = tree.first_leaf();
  const Node last = tree.node_count();
  auto count_at_least = [&](const std::vector<double>& vol) {
    std::uint64_t c = 0;
    for (Node v = first; v <= last; ++v) c += vol[v - 1] >= alpha;
    return c;
  };

  for (std::size_t k = 1; k < trace.step_count(); ++k) {
    const auto prev = trace.step(k - 1);
    const auto cur = trace.step(k);

    // The number of leaves at >= alpha can only rise where some leaf crosses
    // alpha upward, so those points are the only candidates.
    std::vector<double> crossings;
    for (Node v = first; v <= last; ++v) {
      const double v0 = prev[v - 1], v1 = cur[v - 1];
      if (v0 < alpha && v1 >= alpha) crossings.push_back(std::min(1.0, (alpha - v0) / (v1 - v0)));
    }
    if (crossings.empty()) continue;
    std::sort(crossings.begin(), crossings.end());
    crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());

    for (double s : crossings) {
      auto vol = detail::interpolate(prev, cur, s);
      for (Node v = first; v <= last; ++v) {
        const double v0 = prev[v - 1], v1 = cur[v - 1];
        if (v0 < alpha && v1 >= alpha && std::min(1.0, (alpha - v0) / (v1 - v0)) == s) vol[v - 1] = alpha;
      }
      if (count_at_least(vol) < a) continue;

      std::uint64_t strict = 0;
      for (Node v = first; v <= last; ++v) strict += vol[v - 1] > alpha;
      if (strict > a) {
        throw AdmissibilityError("special slice at step " + std::to_string(k) + " has " + std::to_string(strict) +
                                 " leaves strictly above alpha, more than a = " + std::to_string(a) +
                                 "; record the trace with a finer step bound");
      }
      return SpecialSlice{k, s, std::move(vol)};
    }
  }
  throw MalformedInput("no point of the trace has " + std::to_string(a) + " leaves at volume >= alpha");
}

// Colors the tree from a special slice: exactly `a` black leaves, taken among
// those at volume >= alpha (strictly above first, then lowest index); an
// internal node is black iff its region holds volume >= alpha.
inline Coloring induce_coloring(const SweepoutTrace& trace, const SpecialSlice& slice, std::uint64_t a,
                                double alpha) {
  const TreeShape& tree = trace.graph.tree;
  detail::require(a >= 1 && a <= tree.leaf_count(),
                  "leaf target a = " + std::to_string(a) + " outside [1, " + std::to_string(tree.leaf_count()) + "]");
  detail::require(slice.volumes.size() == trace.entries(), "slice does not belong to this trace");
  const auto& vol = slice.volumes;

  std::vector<Node> strict, touching;
  for (Node v = tree.first_leaf(); v <= tree.node_count(); ++v) {
    if (vol[v - 1] > alpha) {
      strict.push_back(v);
    } else if (vol[v - 1] == alpha) {
      touching.push_back(v);
    }
  }
  if (strict.size() > a) {
    throw AdmissibilityError(std::to_string(strict.size()) + " leaves strictly above alpha, more than a = " +
                             std::to_string(a));
  }
  if (strict.size() + touching.size() < a) {
    throw AdmissibilityError("only " + std::to_string(strict.size() + touching.size()) +
                             " leaves reach alpha, fewer than a = " + std::to_string(a));
  }

  Coloring out(tree);
  for (Node v = 1; v < tree.first_leaf(); ++v) out.set(v, vol[v - 1] >= alpha);
  for (Node v : strict) out.set(v, true);
  for (std::size_t i = 0; strict.size() + i < a; ++i) out.set(touching[i], true);
  return out;
}

// Glued pair of neighboring regions with the volume the slice puts inside it.
struct SandwichRegion {
  Edge pair;
  double inside = 0;  // vol(Omega ∩ A)
  double total = 0;   // vol(A)
};

struct SliceCertificate {
  int m = 0;
  std::uint64_t a = 0;
  SpecialSlice slice;
  Coloring coloring;
  std::size_t dichromatic_count = 0;
  std::vector<SandwichRegion> sandwich_regions;  // dichromatic pairs passing alpha <= inside <= total - alpha
  bool all_dichromatic_sandwiched = false;
  EdgeSet disjoint_pairs;
  std::size_t disjoint_count = 0;
  double certified_area = 0;  // rel_isop_C * disjoint_count
  double paper_bound = 0;     // rel_isop_C * ceil(m/2) / 5
};

// alpha <= inside <= total - alpha
inline bool sandwiched(const SandwichRegion& r, double alpha) {
  return alpha <= r.inside && r.inside <= r.total - alpha;
}

inline SliceCertificate certify(const SweepoutTrace& trace, const BlockParams<double>& params) {
  params.validate();
  const TreeShape& tree = trace.graph.tree;
  const int m = tree.depth();
  detail::require(region_graph(m, params, m) == trace.graph, "params do not match the trace's region volumes");

  const std::uint64_t a = a_of_m(m);
  SpecialSlice slice = find_special_slice(trace, a, params.alpha);
  Coloring coloring = induce_coloring(trace, slice, a, params.alpha);

  const auto dichromatic = count_dichromatic(coloring);
  std::vector<SandwichRegion> verified;
  EdgeSet verified_edges;
  for (const Edge& e : dichromatic.edges) {
    SandwichRegion r{e, 0, 0};
    r.inside = slice.volumes[trace.region_entry(e.parent)] + slice.volumes[trace.region_entry(e.child)] +
               slice.volumes[trace.tube_entry(e.child)];
    r.total = trace.graph.node_volume(e.parent) + trace.graph.node_volume(e.child) + trace.graph.tube_volume;
    if (sandwiched(r, params.alpha)) {
      verified.push_back(r);
      verified_edges.push_back(e);
    }
  }

  const bool all_sandwiched = verified.size() == dichromatic.count;
  SliceCertificate cert{m, a, std::move(slice), std::move(coloring), dichromatic.count, std::move(verified),
                        all_sandwiched, {}, 0, 0, 0};
  auto pairs = max_disjoint_edges(tree, verified_edges);
  cert.disjoint_pairs = std::move(pairs.pairs);
  cert.disjoint_count = pairs.size;
  cert.certified_area = params.rel_isop_C * static_cast<double>(cert.disjoint_count);
  cert.paper_bound = params.rel_isop_C * theorem_leaf_bound(m) / 5.0;
  return cert;
}

enum class SweepStrategy { dfs_fill, bfs_fill, uniform, random_monotone };

inline std::string_view to_string(SweepStrategy s) {
  switch (s) {
    case SweepStrategy::dfs_fill: return "dfs-fill";
    case SweepStrategy::bfs_fill: return "bfs-fill";
    case SweepStrategy::uniform: return "uniform";
    case SweepStrategy::random_monotone: return "random-monotone";
  }
  return "?";
}

inline SweepStrategy parse_sweep_strategy(std::string_view name) {
  for (auto s : {SweepStrategy::dfs_fill, SweepStrategy::bfs_fill, SweepStrategy::uniform,
                 SweepStrategy::random_monotone}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidParameter("unknown strategy '" + std::string(name) +
                         "' (expected dfs-fill, bfs-fill, uniform or random-monotone)");
}

namespace detail {

// Pours at most `delta` of volume per step into the entries in `order`, one
// after another.
inline void fill_in_order(SweepoutTrace& trace, const std::vector<std::size_t>& order, double delta) {
  std::vector<double> cur(trace.entries(), 0.0);
  trace.values.assign(cur.begin(), cur.end());
  std::size_t next = 0;
  while (next < order.size()) {
    double budget = delta;
    while (budget > 0.0 && next < order.size()) {
      const std::size_t e = order[next];
      const double cap = trace.capacity(e);
      const double room = cap - cur[e];
      if (room <= budget) {
        cur[e] = cap;
        budget -= room;
        ++next;
      } else {
        cur[e] += budget;
        budget = 0.0;
      }
    }
    trace.values.insert(trace.values.end(), cur.begin(), cur.end());
  }
}

inline void postorder(const SweepoutTrace& trace, Node v, std::vector<std::size_t>& order) {
  const TreeShape& tree = trace.graph.tree;
  if (!tree.is_leaf(v)) {
    for (Node c : {tree.left(v), tree.right(v)}) {
      postorder(trace, c, order);
      order.push_back(trace.tube_entry(c));
    }
  }
  order.push_back(trace.region_entry(v));
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

// Builds a valid trace for the region graph of (m, params).
//   dfs-fill         fills regions and tubes in post-order, one at a time
//   bfs-fill         fills them in heap order, each tube just before its child
//   uniform          fills every entry proportionally; ceil(total / delta) steps
//   random-monotone  spreads delta per step over the unfilled entries with
//                    random heavy-tailed weights (seeded, reproducible)
inline SweepoutTrace generate_trace(SweepStrategy strategy, int m, const BlockParams<double>& params, double delta,
                                    std::uint64_t seed = 0) {
  detail::require(delta > 0.0 && std::isfinite(delta), "step bound delta must be positive");
  SweepoutTrace trace(region_graph(m, params));
  trace.step_bound = delta;
  const std::size_t E = trace.entries();
  const Node n = trace.graph.tree.node_count();
  const double expected_steps = std::ceil(trace.graph.total_volume() / delta) + 2.0;
  if (expected_steps * static_cast<double>(E) > static_cast<double>(kMaxTraceValues)) {
    throw CapacityError("trace for m = " + std::to_string(m) + " at delta = " + std::to_string(delta) +
                        " needs about " + std::to_string(static_cast<std::uint64_t>(expected_steps)) +
                        " steps; use a larger delta or a smaller m");
  }

  switch (strategy) {
    case SweepStrategy::dfs_fill: {
      std::vector<std::size_t> order;
      order.reserve(E);
      detail::postorder(trace, 1, order);
      detail::fill_in_order(trace, order, delta);
      break;
    }
    case SweepStrategy::bfs_fill: {
      std::vector<std::size_t> order{trace.region_entry(1)};
      for (Node v = 2; v <= n; ++v) {
        order.push_back(trace.tube_entry(v));
        order.push_back(trace.region_entry(v));
      }
      detail::fill_in_order(trace, order, delta);
      break;
    }
    case SweepStrategy::uniform: {
      const double total = trace.graph.total_volume();
      const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(total / delta * (1.0 - 1e-12))));
      trace.values.reserve((steps + 1) * E);
      for (std::size_t k = 0; k <= steps; ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(steps);
        for (std::size_t e = 0; e < E; ++e) trace.values.push_back(k == steps ? trace.capacity(e) : trace.capacity(e) * f);
      }
      break;
    }
    case SweepStrategy::random_monotone: {
      std::mt19937_64 rng(seed);
      std::vector<double> cur(E, 0.0), weight(E, 0.0);
      std::vector<std::size_t> active(E);
      for (std::size_t e = 0; e < E; ++e) active[e] = e;
      trace.values.assign(cur.begin(), cur.end());
      while (!active.empty()) {
        for (std::size_t e : active) {
          const double x = -std::log1p(-detail::unit_uniform(rng));
          weight[e] = x * x * x + 1e-12;
        }
        // Water-filling: entries that would overflow are topped up and drop
        // out, their unused share goes back to the others.
        double budget = delta;
        std::vector<std::size_t> open = active;
        while (budget > 0.0 && !open.empty()) {
          double w_total = 0.0;
          for (std::size_t e : open) w_total += weight[e];
          std::vector<std::size_t> keep;
          double spent = 0.0;
          for (std::size_t e : open) {
            const double room = trace.capacity(e) - cur[e];
            if (budget * weight[e] / w_total >= room) {
              cur[e] = trace.capacity(e);
              spent += room;
            } else {
              keep.push_back(e);
            }
          }
          if (keep.size() == open.size()) {
            for (std::size_t e : open) cur[e] += budget * weight[e] / w_total;
            budget = 0.0;
          } else {
            budget -= spent;
          }
          open = std::move(keep);
        }
        std::erase_if(active, [&](std::size_t e) { return cur[e] >= trace.capacity(e); });
        trace.values.insert(trace.values.end(), cur.begin(), cur.end());
      }
      break;
    }
  }
  return trace;
}

// Default step bound of generated traces: alpha / 4.
inline double default_step_bound(const BlockParams<double>& params) { return params.alpha / 4.0; }

// One line per (step, entry): "step,region,volume" with region N<v> for the
// spherical region of node v and T<c> for the tube above node c.
inline void write_trace_csv(std::ostream& out, const SweepoutTrace& trace, int precision = 17) {
  const auto old = out.precision(precision);
  out << "step,region,volume\n";
  for (std::size_t k = 0; k < trace.step_count(); ++k) {
    const auto row = trace.step(k);
    for (std::size_t e = 0; e < trace.entries(); ++e) out << k << ',' << trace.entry_label(e) << ',' << row[e] << '\n';
  }
  out.precision(old);
}

inline SweepoutTrace read_trace_csv(std::istream& in, RegionGraph<double> graph, double step_bound) {
  SweepoutTrace trace(std::move(graph));
  trace.step_bound = step_bound;
  const std::size_t E = trace.entries();
  const Node n = trace.graph.tree.node_count();
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw MalformedInput("trace CSV line " + std::to_string(line_no) + ": " + why);
  };
  std::vector<char> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "step,region,volume") continue;
    std::istringstream fields(line);
    std::string step_s, region_s, volume_s;
    if (!std::getline(fields, step_s, ',') || !std::getline(fields, region_s, ',') ||
        !std::getline(fields, volume_s)) {
      fail("expected step,region,volume");
    }
    std::size_t step = 0, e = 0;
    double volume = 0;
    try {
      std::size_t pos = 0;
      step = std::stoull(step_s, &pos);
      if (pos != step_s.size()) fail("bad step index");
      volume = std::stod(volume_s, &pos);
      if (pos != volume_s.size()) fail("bad volume");
      if (region_s.size() < 2 || (region_s[0] != 'N' && region_s[0] != 'T')) fail("bad region id");
      const unsigned long id = std::stoul(region_s.substr(1), &pos);
      if (pos + 1 != region_s.size()) fail("bad region id");
      if (region_s[0] == 'N') {
        if (id < 1 || id > n) fail("node id out of range");
        e = trace.region_entry(static_cast<Node>(id));
      } else {
        if (id < 2 || id > n) fail("tube id out of range");
        e = trace.tube_entry(static_cast<Node>(id));
      }
    } catch (const std::logic_error&) {
      fail("unparsable field");
    }
    if (step >= kMaxTraceValues / E) fail("step index too large");
    if (trace.values.size() < (step + 1) * E) {
      trace.values.resize((step + 1) * E, 0.0);
      seen.resize((step + 1) * E, 0);
    }
    if (seen[step * E + e]) fail("duplicate entry");
    seen[step * E + e] = 1;
    trace.values[step * E + e] = volume;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw MalformedInput("trace CSV is missing (step, region) entries");
  }
  return trace;
}

}  // namespace dichromat
