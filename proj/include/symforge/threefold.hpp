#pragma once

// Fiber classification and the singular locus of the quartic threefold.
// Away from the plane curves E1, E2 (the split pair) and D (the conic delta)
// every fiber of the conic bundle is a smooth conic; the tags record which
// membership bits fire.  The singular locus of the quartic itself is the
// line L = {z0=z1=z2=0} plus the nine nodes over E1 /\ E2, and both facts
// are cross-checked mod good primes by brute force.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup.hpp"

namespace symforge {

enum class FiberKind { Line, TwoLines, DoubleLine, LineSurfaceLine };

inline const char* fiber_kind_name(FiberKind k) {
  switch (k) {
    case FiberKind::Line: return "line";
    case FiberKind::TwoLines: return "two_lines";
    case FiberKind::DoubleLine: return "double_line";
    case FiberKind::LineSurfaceLine: return "line_surface_line";
  }
  return "?";
}

struct FiberType {
  FiberKind kind = FiberKind::Line;
  bool on_e1 = false, on_e2 = false, on_d = false;
};

namespace detail {

inline FiberType classify_from_bits(bool e1, bool e2, bool dd) {
  FiberType t;
  t.on_e1 = e1;
  t.on_e2 = e2;
  t.on_d = dd;
  if (e1 && e2)
    t.kind = FiberKind::LineSurfaceLine;
  else if ((e1 || e2) && dd)
    t.kind = FiberKind::DoubleLine;
  else if (e1 || e2 || dd)
    t.kind = FiberKind::TwoLines;
  else
    t.kind = FiberKind::Line;
  return t;
}

template <class S>
void check_plane_point(const std::vector<S>& a, const char* who) {
  if (a.size() != 3) throw std::invalid_argument(std::string(who) + ": expected a plane point");
  bool all_zero = true;
  for (const auto& c : a)
    if (!scalar_is_zero(c)) all_zero = false;
  if (all_zero) throw std::invalid_argument(std::string(who) + ": zero is not a projective point");
}

}  // namespace detail

// Membership bits of an exact plane point against E1, E2, D.
inline FiberType classify_fiber(const Instance& inst, const std::vector<Rational>& a) {
  detail::check_plane_point(a, "classify_fiber");
  std::vector<QuadExt> aq;
  for (const Rational& c : a) aq.emplace_back(c);
  bool e1 = scalar_is_zero(inst.split.eps1.eval(aq));
  bool e2 = scalar_is_zero(inst.split.eps2.eval(aq));
  bool dd = inst.delta.eval(a) == 0;
  return detail::classify_from_bits(e1, e2, dd);
}

// The same bits mod p.
inline FiberType classify_fiber(const ReducedInstance& red, const std::vector<FqElem>& a) {
  detail::check_plane_point(a, "classify_fiber");
  bool e1 = red.eps1.eval(a).is_zero();
  bool e2 = red.eps2.eval(a).is_zero();
  bool dd = red.delta.eval(a).is_zero();
  return detail::classify_from_bits(e1, e2, dd);
}

enum class SplitType { Split, NonSplit, Ramified };

inline const char* split_type_name(SplitType t) {
  switch (t) {
    case SplitType::Split: return "split";
    case SplitType::NonSplit: return "nonsplit";
    case SplitType::Ramified: return "ramified";
  }
  return "?";
}

struct FiberSplitting {
  SplitType type = SplitType::Split;
  int character = 0;            // chi(-delta(a)/alpha(a)), 0 when ramified
  long expected_points = 0;     // F_q-points of the degenerate conic fiber
};

// A point on exactly one branch of the split pair carries a rank-2 conic
// fiber alpha(a) s'^2 + delta(a) u^2: two lines, rational over F_q exactly
// when -delta(a)/alpha(a) is a square; delta(a) = 0 instead ramifies it
// into a double line.
inline FiberSplitting splitting_character(const ReducedInstance& red,
                                          const std::vector<FqElem>& a) {
  detail::check_plane_point(a, "splitting_character");
  bool e1 = red.eps1.eval(a).is_zero();
  bool e2 = red.eps2.eval(a).is_zero();
  if (e1 == e2)
    throw std::invalid_argument("splitting_character: point must lie on exactly one branch");
  FqElem va = red.alpha.eval(a), vd = red.delta.eval(a);
  if (va.is_zero())
    throw std::invalid_argument("splitting_character: alpha vanishes at the point");
  std::int64_t q = std::int64_t(red.base.q());
  FiberSplitting out;
  if (vd.is_zero()) {
    out.type = SplitType::Ramified;
    out.expected_points = q + 1;
    return out;
  }
  out.character = red.base.chi((red.base.zero() - vd) / va);
  out.type = out.character == 1 ? SplitType::Split : SplitType::NonSplit;
  out.expected_points = out.character == 1 ? 2 * q + 1 : 1;
  return out;
}

// Brute-force count of the conic fiber over a plane point: points (s:t:u)
// of P^2(F_q) on alpha(a) s^2 + beta(a) st + gamma(a) t^2 + delta(a) u^2.
inline long fiber_point_count(const ReducedInstance& red, const std::vector<FqElem>& a) {
  detail::check_plane_point(a, "fiber_point_count");
  FqElem va = red.alpha.eval(a), vb = red.beta.eval(a), vg = red.gamma.eval(a),
         vd = red.delta.eval(a);
  long count = 0;
  for (const auto& pt : projective_points(red.base, 2)) {
    const FqElem &s = pt[0], &t = pt[1], &u = pt[2];
    FqElem v = va * s * s + vb * s * t + vg * t * t + vd * u * u;
    if (v.is_zero()) ++count;
  }
  return count;
}

// All singular points of a hypersurface {f = 0} in P^n(F), by scanning every
// canonical representative against f and its partials; returned in the
// canonical enumeration order.
inline std::vector<std::vector<FqElem>> singular_points_bruteforce(const MultiPoly<FqElem>& f,
                                                                   const Fq& F) {
  if (f.is_zero() || f.nvars() < 2)
    throw std::invalid_argument("singular_points_bruteforce: need a nonzero projective form");
  std::size_t n = f.nvars();
  std::vector<MultiPoly<FqElem>> partials;
  for (std::size_t v = 0; v < n; ++v) partials.push_back(f.derivative(v));
  std::vector<std::vector<FqElem>> out;
  for (const auto& pt : projective_points(F, n - 1)) {
    if (!f.eval(pt).is_zero()) continue;
    bool sing = true;
    for (const auto& pd : partials)
      if (!pd.eval(pt).is_zero()) sing = false;
    if (sing) out.push_back(pt);
  }
  return out;
}

inline std::vector<std::vector<FqElem>> singular_points_bruteforce(const ReducedInstance& red) {
  return singular_points_bruteforce(red.h, red.base);
}

// The node scheme {eps1 = eps2 = 0} in the plane, counted over F_p and over
// F_{p^2}.  Each F_p-point contributes 1 and each conjugate pair 2, so
// degree_total is just the F_{p^2} count; it reaches 9 exactly when no node
// has residue degree above 2.
struct NodeCount {
  std::vector<std::vector<FqElem>> plane_points;  // P^2(F_p) solutions
  long fp_points = 0;
  long fp2_points = 0;
  long conjugate_pairs = 0;
  long degree_total = 0;
};

inline NodeCount count_nodes_mod(const Instance& inst, std::int64_t p) {
  ReducedInstance red = reduce_instance(inst, p);
  NodeCount out;
  for (const auto& a : projective_points(red.base, 2)) {
    if (red.eps1.eval(a).is_zero() && red.eps2.eval(a).is_zero()) out.plane_points.push_back(a);
  }
  out.fp_points = long(out.plane_points.size());

  Fq ext2(std::uint32_t(p), 2);
  FqElem sqrt_d2 = sqrt_in(ext2, inst.ps.d);
  MultiPoly<FqElem> e1 = reduce_quad_poly(inst.split.eps1, ext2, sqrt_d2);
  MultiPoly<FqElem> e2 = reduce_quad_poly(inst.split.eps2, ext2, sqrt_d2);
  for (const auto& a : projective_points(ext2, 2))
    if (e1.eval(a).is_zero() && e2.eval(a).is_zero()) ++out.fp2_points;

  out.conjugate_pairs = (out.fp2_points - out.fp_points) / 2;
  out.degree_total = out.fp_points + 2 * out.conjugate_pairs;
  return out;
}

// Lift rational node projections into P^4: z3 = -beta(a) / (2 alpha(a)),
// z4 = 0.  The plane coordinates keep their canonical pivot, so the lifted
// representative is already normalized.
inline std::vector<std::vector<FqElem>> lift_nodes(const ReducedInstance& red,
                                                   const std::vector<std::vector<FqElem>>& plane) {
  std::vector<std::vector<FqElem>> out;
  FqElem two = red.base.from_int(2);
  for (const auto& a : plane) {
    FqElem va = red.alpha.eval(a);
    if (va.is_zero())
      throw std::domain_error("lift_nodes: alpha vanishes at a node projection");
    FqElem z3 = (red.base.zero() - red.beta.eval(a)) / (two * va);
    out.push_back({a[0], a[1], a[2], z3, red.base.zero()});
  }
  return out;
}

namespace detail {

inline std::uint64_t fq_key(const FqElem& x) {
  return (std::uint64_t(x.c1) << 32) | std::uint64_t(x.c0);
}

inline std::vector<std::vector<std::uint64_t>> point_keys(
    const std::vector<std::vector<FqElem>>& pts) {
  std::vector<std::vector<std::uint64_t>> keys;
  for (const auto& pt : pts) {
    std::vector<std::uint64_t> k;
    for (const auto& c : pt) k.push_back(fq_key(c));
    keys.push_back(std::move(k));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace detail

struct ModularSingularRecord {
  std::int64_t p = 0;
  long brute_points = 0;        // singular points of the reduced quartic in P^4(F_p)
  long line_points = 0;         // F_p-points of L, always p + 1
  long rational_nodes = 0;      // nodes defined over F_p
  long node_degree_total = 0;   // nodes counted with degree via F_{p^2}
  bool matched = false;         // brute set = L union lifted nodes, degree total 9
};

struct SingularLocusCertificate {
  bool line_contained = false;
  long node_count = 9;
  std::vector<std::string> dependencies;
  std::vector<ModularSingularRecord> modular;
  bool valid = false;
};

// The singular locus in two layers: the line L sits inside it identically
// (checked by substitution), and away from L the singular points solve
// 2 alpha z3 + beta = eps1 = eps2 = z4 = 0, nine nodes by the recorded
// transversality and empty-triple certificates.  Optional primes add
// brute-force cross-checks of exactly that description.
inline SingularLocusCertificate singular_locus_certificate(
    const Instance& inst, const std::vector<std::int64_t>& primes = {}) {
  SingularLocusCertificate out;
  out.dependencies = {"transversal_E1_E2", "empty_triple_A_E1_E2", "empty_triple_D_E1_E2"};

  std::vector<MultiPoly<Rational>> img(5, MultiPoly<Rational>(2));
  img[3] = MultiPoly<Rational>::variable(2, 0, Rational(1));
  img[4] = MultiPoly<Rational>::variable(2, 1, Rational(1));
  bool on_line = inst.h.subst(img).is_zero();
  for (std::size_t v = 0; v < 5 && on_line; ++v)
    if (!inst.h.derivative(v).subst(img).is_zero()) on_line = false;
  out.line_contained = on_line;

  bool deps_ok = true;
  for (const std::string& name : out.dependencies) {
    const Certificate* c = inst.report.find(name);
    if (c == nullptr || !c->passed()) deps_ok = false;
  }
  const Certificate* trans = inst.report.find("transversal_E1_E2");
  if (trans == nullptr || !trans->count.has_value() || *trans->count != 9) deps_ok = false;

  bool modular_ok = true;
  for (std::int64_t p : primes) {
    ReducedInstance red = reduce_instance(inst, p);
    ModularSingularRecord rec;
    rec.p = p;
    std::vector<std::vector<FqElem>> brute = singular_points_bruteforce(red);
    rec.brute_points = long(brute.size());
    rec.line_points = p + 1;
    NodeCount nodes = count_nodes_mod(inst, p);
    rec.rational_nodes = nodes.fp_points;
    rec.node_degree_total = nodes.degree_total;

    std::vector<std::vector<FqElem>> expected;
    for (const auto& lp : projective_points(red.base, 1))
      expected.push_back({red.base.zero(), red.base.zero(), red.base.zero(), lp[0], lp[1]});
    bool lift_ok = true;
    try {
      for (auto& pt : lift_nodes(red, nodes.plane_points)) expected.push_back(std::move(pt));
    } catch (const std::domain_error&) {
      lift_ok = false;
    }
    rec.matched = lift_ok && detail::point_keys(brute) == detail::point_keys(expected) &&
                  rec.node_degree_total == 9;
    if (!rec.matched) modular_ok = false;
    out.modular.push_back(rec);
  }

  out.valid = out.line_contained && deps_ok && modular_ok;
  return out;
}

}  // namespace symforge
