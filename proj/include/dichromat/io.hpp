#pragma once

// Serialization for the command-line tool: JSON reports, CSV profiles, DOT
// colorings and the key-value params file.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dichromat/bounds.hpp"
#include "dichromat/dp.hpp"
#include "dichromat/metric.hpp"
#include "dichromat/sweepout.hpp"
#include "dichromat/tree.hpp"

namespace dichromat::io {

using nlohmann::json;

inline constexpr int kSignificantDigits = 12;

// Integral values as JSON integers, everything else rounded to 12
// significant digits so output is byte-stable.
inline json number(double x) {
  if (std::isfinite(x) && x == std::trunc(x) && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return std::strtod(buf, nullptr);
}

inline std::string bit_string(const Coloring& c) {
  std::string s;
  s.reserve(c.bits().size());
  for (bool b : c.bits()) s.push_back(b ? '1' : '0');
  return s;
}

inline json edges_json(const EdgeSet& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.parent, e.child});
  return out;
}

inline json to_json(const BlockParams<double>& p) {
  return {{"V0", number(p.V0)},       {"mu", number(p.mu)},       {"tau", number(p.tau)},
          {"alpha", number(p.alpha)}, {"rel_isop_C", number(p.rel_isop_C)}, {"iso_C", number(p.iso_C)},
          {"C3", number(p.C3)}};
}

inline json to_json(const DpProfile& p) {
  json values = json::array();
  for (Node i = p.first_index(); i <= p.last_index(); ++i) values.push_back({{"index", i}, {"min_d", p.at(i)}});
  return {{"m", p.m()}, {"kind", to_string(p.kind())}, {"profile", std::move(values)}};
}

inline json to_json(const AchievableSet& s) { return {{"m", s.m}, {"d", s.d}, {"members", s.members}}; }

inline json to_json(const BoundReport& r, BoundCheck which) {
  return {{"m", r.m},
          {"which", std::string(to_string(which))},
          {"quantity", r.quantity},
          {"bound", number(r.paper_bound)},
          {"computed", number(r.computed_value)},
          {"index", r.index},
          {"holds", r.holds}};
}

inline json to_json(const WidthBound<double>& w, const BlockParams<double>& params) {
  return {{"m", w.m},
          {"a", w.a},
          {"leaf_value", w.leaf_value},
          {"guaranteed_pairs", w.guaranteed_pairs},
          {"paper_bound", number(w.paper_bound)},
          {"certified_bound", number(w.certified_bound)},
          {"params", to_json(params)}};
}

inline json to_json(const IsoQuery& q) {
  return {{"m", q.m},
          {"k", q.k},
          {"b_m", q.b_m},
          {"v_m", number(q.v_m)},
          {"L_star", number(q.L_star)},
          {"vacuous", q.vacuous},
          {"bracket_width", number(q.bracket_width)},
          {"residual", number(q.residual)},
          {"iterations", q.iterations},
          {"params", to_json(q.params)}};
}

inline json to_json(const SliceCertificate& c, std::string_view strategy, std::uint64_t seed, double step_bound) {
  const auto counts = black_counts(c.coloring);
  json regions = json::array();
  for (const auto& r : c.sandwich_regions) {
    regions.push_back(
        {{"pair", {r.pair.parent, r.pair.child}}, {"inside", number(r.inside)}, {"total", number(r.total)}});
  }
  return {{"m", c.m},
          {"strategy", std::string(strategy)},
          {"seed", seed},
          {"step_bound", number(step_bound)},
          {"a", c.a},
          {"t0", {{"step", c.slice.step}, {"fraction", number(c.slice.fraction)}}},
          {"coloring", bit_string(c.coloring)},
          {"black_nodes", counts.nodes},
          {"black_leaves", counts.leaves},
          {"dichromatic_count", c.dichromatic_count},
          {"all_dichromatic_sandwiched", c.all_dichromatic_sandwiched},
          {"sandwich_regions", std::move(regions)},
          {"disjoint_pairs", edges_json(c.disjoint_pairs)},
          {"disjoint_count", c.disjoint_count},
          {"certified_area", number(c.certified_area)},
          {"paper_bound", number(c.paper_bound)},
          {"holds", c.certified_area >= c.paper_bound}};
}

inline void write_profile_csv(std::ostream& out, const DpProfile& p) {
  out << "index,min_d\n";
  for (Node i = p.first_index(); i <= p.last_index(); ++i) out << i << ',' << p.at(i) << '\n';
}

// Black nodes filled, dichromatic edges bold.
inline void write_dot(std::ostream& out, const Coloring& c) {
  const TreeShape& tree = c.tree();
  out << "graph T" << tree.depth() << " {\n";
  out << "  node [shape=circle, style=filled, fontsize=10];\n";
  for (Node v = 1; v <= tree.node_count(); ++v) {
    out << "  " << v << (c.black(v) ? " [fillcolor=black, fontcolor=white];\n" : " [fillcolor=white];\n");
  }
  for (Node v = 2; v <= tree.node_count(); ++v) {
    const Node p = tree.parent(v);
    out << "  " << p << " -- " << v;
    if (c.black(p) != c.black(v)) out << " [style=bold, penwidth=3]";
    out << ";\n";
  }
  out << "}\n";
}

// Key-value params: one `key = value` per line, `#` starts a comment. Keys
// are V0, mu, tau, alpha, rel_isop_C, iso_C, C3; absent keys keep their
// defaults. The result is validated.
inline BlockParams<double> read_block_params(std::istream& in) {
  BlockParams<double> p = default_block_params();
  const std::map<std::string, double BlockParams<double>::*> keys{
      {"V0", &BlockParams<double>::V0},       {"mu", &BlockParams<double>::mu},
      {"tau", &BlockParams<double>::tau},     {"alpha", &BlockParams<double>::alpha},
      {"rel_isop_C", &BlockParams<double>::rel_isop_C}, {"iso_C", &BlockParams<double>::iso_C},
      {"C3", &BlockParams<double>::C3}};
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };

  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "params line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw MalformedInput(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) throw MalformedInput(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw MalformedInput(where + "duplicate key '" + key + "'");
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(x)) {
      throw MalformedInput(where + "value of '" + key + "' is not a finite number");
    }
    p.*(it->second) = x;
  }
  p.validate();
  return p;
}

inline BlockParams<double> parse_block_params(const std::string& text) {
  std::istringstream in(text);
  return read_block_params(in);
}

}  // namespace dichromat::io
