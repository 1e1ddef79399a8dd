#pragma once

// Charts of the small resolution step: blow up the line L = {z0=z1=z2=0}
// inside the two ambient charts {z3 != 0} and {z4 != 0}.  Each blowup chart
// picks one of z0,z1,z2 as the exceptional coordinate y0; the strict
// transform f satisfies (total transform) = y0^2 * f exactly, and its
// restriction to {y0 = 0} cuts out the exceptional surface chart.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "reduction.hpp"

namespace symforge {

struct ChartId {
  int ambient = 4;  // which of z3 (3) or z4 (4) is set to 1
  int pivot = 0;    // which of z0,z1,z2 becomes the exceptional coordinate y0

  friend bool operator==(const ChartId& a, const ChartId& b) {
    return a.ambient == b.ambient && a.pivot == b.pivot;
  }
};

inline std::vector<ChartId> all_charts() {
  std::vector<ChartId> out;
  for (int ambient : {4, 3})
    for (int pivot : {0, 1, 2}) out.push_back(ChartId{ambient, pivot});
  return out;
}

inline void check_chart(const ChartId& id, const char* who) {
  if ((id.ambient != 3 && id.ambient != 4) || id.pivot < 0 || id.pivot > 2)
    throw std::invalid_argument(std::string(who) + ": chart out of range");
}

// Chart coordinates are y0 (exceptional), y1, y2 (the two remaining plane
// directions, in original order), y3 (the surviving z3-or-z4 coordinate).
struct Chart {
  ChartId id;
  MultiPoly<Rational> f{4};  // strict transform of the quartic in this chart
};

namespace detail {

// A plane form q(z0,z1,z2) with the pivot variable set to 1 and the other
// two mapped to y1, y2: the chart shape of q along the exceptional direction.
inline MultiPoly<Rational> plane_chart_form(const MultiPoly<Rational>& q, int pivot) {
  std::vector<MultiPoly<Rational>> img(3, MultiPoly<Rational>(4));
  img[std::size_t(pivot)] = MultiPoly<Rational>::constant(4, Rational(1));
  std::size_t next = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    if (int(i) == pivot) continue;
    img[i] = MultiPoly<Rational>::variable(4, next++, Rational(1));
  }
  return q.subst(img);
}

}  // namespace detail

// The strict transform in one chart.  Writing A,B,C,D for the chart shapes
// of alpha,beta,gamma,delta:
//   z4-ambient: f = A y3^2 + B y0 y3 + C y0^2 + D
//   z3-ambient: f = A + B y0 + C y0^2 + D y3^2
inline Chart strict_transform_chart(const Instance& inst, const ChartId& id) {
  check_chart(id, "strict_transform_chart");
  MultiPoly<Rational> a = detail::plane_chart_form(inst.ps.alpha, id.pivot);
  MultiPoly<Rational> b = detail::plane_chart_form(inst.ps.beta, id.pivot);
  MultiPoly<Rational> c = detail::plane_chart_form(inst.ps.gamma, id.pivot);
  MultiPoly<Rational> d = detail::plane_chart_form(inst.delta, id.pivot);
  MultiPoly<Rational> y0 = MultiPoly<Rational>::variable(4, 0, Rational(1));
  MultiPoly<Rational> y3 = MultiPoly<Rational>::variable(4, 3, Rational(1));
  Chart chart;
  chart.id = id;
  if (id.ambient == 4)
    chart.f = a * y3 * y3 + b * y0 * y3 + c * y0 * y0 + d;
  else
    chart.f = a + b * y0 + c * y0 * y0 + d * y3 * y3;
  return chart;
}

// The quartic pushed through the chart substitution: the pivot z becomes y0,
// the other plane coordinates y0*y1 and y0*y2, and the ambient coordinate 1.
// Always equal to y0^2 * (strict transform).
inline MultiPoly<Rational> chart_total_transform(const Instance& inst, const ChartId& id) {
  check_chart(id, "chart_total_transform");
  MultiPoly<Rational> y0 = MultiPoly<Rational>::variable(4, 0, Rational(1));
  std::vector<MultiPoly<Rational>> img(5, MultiPoly<Rational>(4));
  img[std::size_t(id.pivot)] = y0;
  std::size_t next = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    if (int(i) == id.pivot) continue;
    img[i] = y0 * MultiPoly<Rational>::variable(4, next++, Rational(1));
  }
  MultiPoly<Rational> one = MultiPoly<Rational>::constant(4, Rational(1));
  MultiPoly<Rational> y3 = MultiPoly<Rational>::variable(4, 3, Rational(1));
  img[3] = id.ambient == 4 ? y3 : one;
  img[4] = id.ambient == 4 ? one : y3;
  return inst.h.subst(img);
}

// The exceptional surface's shape in this chart: the strict transform
// restricted to {y0 = 0}, a polynomial free of y0.
inline MultiPoly<Rational> exceptional_restriction(const Chart& chart) {
  std::vector<MultiPoly<Rational>> img(4, MultiPoly<Rational>(4));
  img[0] = MultiPoly<Rational>(4);  // y0 -> 0
  for (std::size_t i = 1; i < 4; ++i) img[i] = MultiPoly<Rational>::variable(4, i, Rational(1));
  return chart.f.subst(img);
}

struct ChartSmoothness {
  ChartId id;
  std::int64_t p = 0;
  bool smooth = false;
  std::vector<std::vector<FqElem>> violations;  // points (y1,y2,y3) with all checks zero
  std::vector<std::string> dependencies;        // certificates the symbolic argument consumes
};

namespace detail {

// Scan (y1,y2,y3) in F^3 against g and its last three partials; g must be
// free of y0.  Any common zero lands in `violations`.
inline void scan_chart_locus(const Fq& F, const MultiPoly<FqElem>& g, ChartSmoothness& out) {
  std::vector<MultiPoly<FqElem>> grads{g.derivative(1), g.derivative(2), g.derivative(3)};
  std::vector<FqElem> pt(4, F.zero());
  for (std::uint64_t i = 0; i < F.q(); ++i) {
    pt[1] = F.element(i);
    for (std::uint64_t j = 0; j < F.q(); ++j) {
      pt[2] = F.element(j);
      for (std::uint64_t k = 0; k < F.q(); ++k) {
        pt[3] = F.element(k);
        if (!g.eval(pt).is_zero()) continue;
        bool sing = true;
        for (const auto& gr : grads)
          if (!gr.eval(pt).is_zero()) sing = false;
        if (sing) out.violations.push_back(pt);
      }
    }
  }
  out.smooth = out.violations.empty();
}

}  // namespace detail

// Modular witness for smoothness of the strict transform along the
// exceptional locus of one chart: no point of {y0 = 0} in A^3(F_p) kills f
// and its three transverse partials at once.  The symbolic argument this
// backs consumes the recorded certificates.
inline ChartSmoothness chart_smoothness_check(const Instance& inst, const ChartId& id,
                                              std::int64_t p) {
  Chart chart = strict_transform_chart(inst, id);
  ReducedInstance red = reduce_instance(inst, p);
  ChartSmoothness out;
  out.id = id;
  out.p = p;
  out.dependencies = {"smooth_conic_A", "smooth_conic_D", "transversal_A_D"};
  auto emb = [&](const Rational& x) { return red.base.from_rational(x); };
  detail::scan_chart_locus(red.base, reduce_poly(chart.f, 4, emb), out);
  return out;
}

// The same scan for the exceptional surface chart itself (the restriction is
// y0-free, so the three scanned partials are all of its partials).
inline ChartSmoothness surface_chart_smoothness_check(const Instance& inst, const ChartId& id,
                                                      std::int64_t p) {
  Chart chart = strict_transform_chart(inst, id);
  MultiPoly<Rational> g = exceptional_restriction(chart);
  ReducedInstance red = reduce_instance(inst, p);
  ChartSmoothness out;
  out.id = id;
  out.p = p;
  out.dependencies = {"smooth_conic_A", "smooth_conic_D", "transversal_A_D"};
  auto emb = [&](const Rational& x) { return red.base.from_rational(x); };
  detail::scan_chart_locus(red.base, reduce_poly(g, 4, emb), out);
  return out;
}

struct ExceptionalSurface {
  MultiPoly<Rational> form{5};           // alpha(z0,z1,z2) z3^2 + delta(z0,z1,z2) z4^2
  MultiPoly<Rational> pencil_sextic{2};  // det(z3^2 Gram(alpha) + z4^2 Gram(delta))
  BinaryFormAnalysis<Rational> analysis{MultiPoly<Rational>(2), Rational(0),
                                        MultiPoly<Rational>(2), {}, {}};
  long degenerate_fibers = 0;  // distinct roots of the sextic, counted over the closure
};

// The exceptional surface as a conic bundle over the z3:z4 line: its fiber
// over (z3:z4) degenerates exactly on the binary sextic
// det(z3^2 Gram(alpha) + z4^2 Gram(delta)).  A squarefree sextic means six
// distinct degenerate fibers.
inline ExceptionalSurface exceptional_surface(const Instance& inst) {
  ExceptionalSurface out;
  MultiPoly<Rational> z3 = MultiPoly<Rational>::variable(5, 3, Rational(1));
  MultiPoly<Rational> z4 = MultiPoly<Rational>::variable(5, 4, Rational(1));
  out.form = inst.ps.alpha.pad_vars(5) * z3 * z3 + inst.delta.pad_vars(5) * z4 * z4;

  SmallMat<Rational> ga = conic_gram(inst.ps.alpha), gd = conic_gram(inst.delta);
  MultiPoly<Rational> s2 = MultiPoly<Rational>::variable(2, 0, Rational(1)) * MultiPoly<Rational>::variable(2, 0, Rational(1));
  MultiPoly<Rational> t2 = MultiPoly<Rational>::variable(2, 1, Rational(1)) * MultiPoly<Rational>::variable(2, 1, Rational(1));
  PolyMat<Rational> pencil = poly_mat_zero<Rational>(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      pencil[i][j] = s2 * ga.at(i, j) + t2 * gd.at(i, j);
  out.pencil_sextic = poly_mat_det(pencil);
  if (out.pencil_sextic.is_zero())
    throw std::domain_error("degenerate pencil: the sextic vanishes identically");
  out.analysis = analyze_binary_form(out.pencil_sextic, 0, 1);
  long roots = 0;
  for (const auto& [piece, mult] : out.analysis.pieces) roots += long(piece.degree());
  out.degenerate_fibers = roots;
  return out;
}

}  // namespace symforge
