#pragma once

// Volume model of the glued-sphere metric attached to T_m.
//
// Each node carries a round three-sphere of volume V0 with deg(node) balls of
// volume mu removed; each tree edge carries a connecting tube of volume tau.
// Everything here is templated on the scalar so that exact rationals can be
// pushed through the same code as doubles.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "dichromat/bounds.hpp"
#include "dichromat/dp.hpp"
#include "dichromat/error.hpp"
#include "dichromat/tree.hpp"

namespace dichromat {

template <class Scalar = double>
struct BlockParams {
  Scalar V0{};          // volume of the round three-sphere
  Scalar mu{};          // volume of one removed geodesic ball
  Scalar tau{};         // volume of one connecting tube
  Scalar alpha{};       // coloring threshold
  Scalar rel_isop_C{};  // area floor of the relative isoperimetric inequality on glued pairs
  Scalar iso_C{};       // constant of the isoperimetric inequality on balanced pieces
  Scalar C3{};          // area per disjoint pair in the profile argument

  // Throws InvalidParameter on the first violated constraint.
  void validate() const {
    const Scalar zero{0};
    detail::require(V0 > zero && mu > zero && tau > zero && alpha > zero,
                    "volumes V0, mu, tau, alpha must be positive");
    detail::require(tau > mu, "tube volume tau must exceed ball volume mu");
    detail::require(Scalar{3} * mu < V0, "need 3*mu < V0");
    detail::require(Scalar{2} * alpha < V0 - Scalar{3} * mu, "need 2*alpha < V0 - 3*mu");
    detail::require(rel_isop_C >= zero && iso_C >= zero && C3 >= zero,
                    "constants rel_isop_C, iso_C, C3 must be non-negative");
  }

  // Multiplies every volume by s; area constants are untouched.
  BlockParams scaled_volumes(const Scalar& s) const {
    BlockParams out = *this;
    out.V0 *= s;
    out.mu *= s;
    out.tau *= s;
    out.alpha *= s;
    return out;
  }
};

// Model defaults: V0 = 2 pi^2, mu = V0/20, tau = 1.5 mu,
// alpha = (V0 - 3 mu)/5, all constants 1.
inline BlockParams<double> default_block_params() {
  BlockParams<double> p;
  p.V0 = 2.0 * std::numbers::pi * std::numbers::pi;
  p.mu = 0.05 * p.V0;
  p.tau = 1.5 * p.mu;
  p.alpha = 0.2 * (p.V0 - 3.0 * p.mu);
  p.rel_isop_C = 1.0;
  p.iso_C = 1.0;
  p.C3 = 1.0;
  return p;
}

template <class Scalar = double>
struct RegionGraph {
  TreeShape tree;
  std::vector<Scalar> node_volumes;  // node v at v - 1
  Scalar tube_volume{};              // every edge carries one tube

  explicit RegionGraph(TreeShape t) : tree(t) {}

  const Scalar& node_volume(Node v) const {
    tree.check(v);
    return node_volumes[v - 1];
  }

  Scalar total_volume() const {
    Scalar total{0};
    for (const auto& v : node_volumes) total += v;
    total += Scalar(tree.edge_count()) * tube_volume;
    return total;
  }

  friend bool operator==(const RegionGraph&, const RegionGraph&) = default;
};

// (2^{m+1}-1) V0 + (2^{m+1}-2)(tau - 2 mu)
template <class Scalar>
Scalar total_volume_closed_form(int m, const BlockParams<Scalar>& params) {
  const TreeShape tree(m);
  return Scalar(tree.node_count()) * params.V0 +
         Scalar(tree.edge_count()) * (params.tau - Scalar{2} * params.mu);
}

// Node volume depends on the vertex degree only: V0 - deg * mu.
template <class Scalar>
RegionGraph<Scalar> region_graph(int m, const BlockParams<Scalar>& params,
                                 int max_depth = TreeShape::kDefaultMaxDepth) {
  params.validate();
  RegionGraph<Scalar> g{TreeShape(m, max_depth)};
  g.node_volumes.reserve(g.tree.node_count());
  for (Node v = 1; v <= g.tree.node_count(); ++v) {
    g.node_volumes.push_back(params.V0 - Scalar(g.tree.degree(v)) * params.mu);
  }
  g.tube_volume = params.tau;
  return g;
}

template <class Scalar>
struct BalancedPiece {
  Node node = 0;
  Scalar volume{};
};

// Splits every tube at the slice leaving tau - mu on the child side and mu on
// the parent side, and attaches each share to its spherical region. The root
// piece has volume V0, every other piece V0 + tau - 2 mu. Heap order.
template <class Scalar>
std::vector<BalancedPiece<Scalar>> balanced_decomposition(int m, const BlockParams<Scalar>& params) {
  const auto g = region_graph(m, params);
  const Scalar child_share = params.tau - params.mu;
  const Scalar parent_share = params.mu;
  std::vector<BalancedPiece<Scalar>> out;
  out.reserve(g.tree.node_count());
  for (Node v = 1; v <= g.tree.node_count(); ++v) {
    Scalar volume = g.node_volume(v);
    if (!g.tree.is_root(v)) volume += child_share;
    if (!g.tree.is_leaf(v)) volume += Scalar{2} * parent_share;
    out.push_back({v, volume});
  }
  return out;
}

template <class Scalar>
struct WidthBound {
  int m = 0;
  std::uint64_t a = 0;            // a(m)
  std::uint32_t leaf_value = 0;   // d_m(a(m)), exact
  std::uint32_t guaranteed_pairs = 0;  // ceil(d_m(a(m)) / 5)
  Scalar paper_bound{};           // C * ceil(m/2) / 5
  Scalar certified_bound{};       // C * ceil(d_m(a(m)) / 5)
};

template <class Scalar>
WidthBound<Scalar> width_lower_bound(int m, const BlockParams<Scalar>& params, const Caps& caps = {}) {
  params.validate();
  WidthBound<Scalar> out;
  out.m = m;
  out.a = a_of_m(m);
  out.leaf_value = leaf_profile(m, caps).at(static_cast<Node>(out.a));
  out.guaranteed_pairs = (out.leaf_value + 4) / 5;
  out.paper_bound = params.rel_isop_C * Scalar(theorem_leaf_bound(m)) / Scalar{5};
  out.certified_bound = params.rel_isop_C * Scalar(out.guaranteed_pairs);
  return out;
}

// Lower bound on the supremum of the isoperimetric profile of g_m.
struct IsoQuery {
  int m = 0;
  BlockParams<double> params;
  std::uint32_t k = 0;   // d'_m(b(m))
  Node b_m = 0;          // b(m)
  double v_m = 0;        // b(m) * (V0 + tau - 2 mu)
  double L_star = 0;
  bool vacuous = false;  // f(0) <= 0: no positive L is certified
  double bracket_width = 0;
  double residual = 0;   // f(L_star)
  int iterations = 0;
};

inline constexpr double kIsoBracketTolerance = 1e-9;

namespace detail {

// f(L) = C3 (k - C2(L)) / 5 - L with C1(L) = (iso_C L)^{3/2} and
// C2(L) = (C1(L) + |tau - 2 mu|) / (V0 + tau - 2 mu). Strictly decreasing.
inline double iso_gap(double L, double k, const BlockParams<double>& p) {
  const double piece = p.V0 + p.tau - 2.0 * p.mu;
  const double c1 = std::pow(p.iso_C * L, 1.5);
  const double c2 = (c1 + std::abs(p.tau - 2.0 * p.mu)) / piece;
  return p.C3 * (k - c2) / 5.0 - L;
}

}  // namespace detail

// Root of f by bisection on [0, C3 k / 5]. Returns the lower end of the final
// bracket, where f is still positive, so the result satisfies the strict
// inequality L < C3 (k - C2(L)) / 5.
inline IsoQuery solve_iso_bound(std::uint32_t k, const BlockParams<double>& params) {
  params.validate();
  IsoQuery q;
  q.params = params;
  q.k = k;
  const double kd = k;
  const double f0 = detail::iso_gap(0.0, kd, params);
  if (f0 <= 0.0) {
    q.vacuous = true;
    q.residual = f0;
    return q;
  }
  double lo = 0.0;
  double hi = params.C3 * kd / 5.0;
  if (detail::iso_gap(hi, kd, params) >= 0.0) {
    q.L_star = hi;
    q.residual = detail::iso_gap(hi, kd, params);
    return q;
  }
  const double residual_tol = 1e-9 * std::max(1.0, params.C3 * kd);
  double f_lo = f0;
  while (q.iterations < 200 && (hi - lo > 0.5 * kIsoBracketTolerance || f_lo > residual_tol)) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = detail::iso_gap(mid, kd, params);
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    ++q.iterations;
  }
  q.L_star = lo;
  q.residual = f_lo;
  q.bracket_width = hi - lo;
  return q;
}

inline IsoQuery iso_profile_lower_bound(int m, const BlockParams<double>& params, const Caps& caps = {}) {
  params.validate();
  const auto best = best_black_count(m, caps);
  IsoQuery q = solve_iso_bound(best.d_star, params);
  q.m = m;
  q.b_m = best.b_star;
  q.v_m = best.b_star * (params.V0 + params.tau - 2.0 * params.mu);
  return q;
}

// L_star in the iso_C -> 0 limit: C3 (k - |tau - 2 mu| / (V0 + tau - 2 mu)) / 5.
inline double iso_bound_small_constant_limit(std::uint32_t k, const BlockParams<double>& p) {
  return p.C3 * (k - std::abs(p.tau - 2.0 * p.mu) / (p.V0 + p.tau - 2.0 * p.mu)) / 5.0;
}

}  // namespace dichromat
