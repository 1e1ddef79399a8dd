#pragma once

// Resultant-backed certificates for the geometric position of the plane
// curves attached to a projected symmetroid: smoothness of the two cubics and
// two conics, pairwise transversality with Bezout counts, the three-point
// tangency of a conic against a cubic, and emptiness of triple intersections.
//
// Verdict semantics, uniform across all certificates:
//   pass        backed by an exact witness identity over the coefficient field
//               (sound: the geometric claim follows unconditionally);
//   fail        backed by a verified witness point found by lifting a root;
//   inconclusive nothing could be verified either way after retrying through
//               the whole coordinate schedule.  Callers discard and resample.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "symforge/binaryform.hpp"
#include "symforge/multipoly.hpp"
#include "symforge/quadext.hpp"
#include "symforge/rational.hpp"
#include "symforge/smallmat.hpp"

namespace symforge {

enum class CertStatus { Pass, Fail, Inconclusive };

inline const char* cert_status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Pass: return "pass";
    case CertStatus::Fail: return "fail";
    default: return "inconclusive";
  }
}

// One machine-checkable verdict.  Witness values are canonical strings so
// equal inputs always produce byte-identical certificates.
struct Certificate {
  std::string condition;
  CertStatus status = CertStatus::Inconclusive;
  int schedule_index = 0;  // entry of coordinate_schedule() behind the verdict
  SmallMat<Rational> coordinate_change{3};
  std::map<std::string, std::string> witnesses;
  std::string reason;
  std::optional<long> count;  // intersection / tangency count, set on pass
  // Rational values certified nonzero here; a prime is good for modular
  // cross-checks only if it divides none of their numerators or denominators.
  std::vector<Rational> nonzero_witnesses;

  bool passed() const { return status == CertStatus::Pass; }
};

// Fixed retry schedule: ten invertible integer matrices, identity first so
// already-generic inputs keep their given coordinates, the rest dense enough
// that any fixed line eventually acquires full degree in the last variable.
// The list is frozen; certificates are reproducible byte for byte.
inline const std::vector<SmallMat<Rational>>& coordinate_schedule() {
  static const std::vector<SmallMat<Rational>> sched = [] {
    constexpr int raw[10][3][3] = {
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
        {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},
        {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},
        {{1, 1, 1}, {1, 2, 1}, {1, 1, 2}},
        {{1, 3, 2}, {1, 4, 3}, {2, 7, 6}},
        {{2, 1, 1}, {1, 1, 1}, {1, 1, 2}},
        {{1, 1, 2}, {2, 1, 1}, {1, 2, 1}},
        {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}},
        {{3, 1, 1}, {1, 3, 1}, {1, 1, 3}},
        {{1, 2, 4}, {3, 5, 7}, {2, 3, 10}},
    };
    std::vector<SmallMat<Rational>> out;
    for (const auto& m : raw) {
      SmallMat<Rational> a(3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a.at(std::size_t(i), std::size_t(j)) = Rational(m[i][j]);
      out.push_back(std::move(a));
    }
    return out;
  }();
  return sched;
}

namespace detail {

template <class S>
S cert_scalar(const Rational& r) {
  if constexpr (std::is_same_v<S, Rational>)
    return r;
  else
    return S(r);
}

// A rational invariant that vanishes mod p exactly when the scalar does.
template <class S>
Rational scalar_norm_q(const S& x) {
  if constexpr (std::is_same_v<S, Rational>)
    return x;
  else
    return x.norm();
}

// f(A y): substitute each variable by the matching row form of A.
template <class S>
MultiPoly<S> apply_coords(const MultiPoly<S>& f, const SmallMat<Rational>& a) {
  std::size_t n = f.nvars();
  std::vector<MultiPoly<S>> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly<S> im(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (a.at(i, j) == 0) continue;
      im = im + MultiPoly<S>::variable(n, j, cert_scalar<S>(a.at(i, j)));
    }
    images.push_back(std::move(im));
  }
  return f.subst(images);
}

// gcd of two nonzero binary forms in (y0, y1): min shared power of y1 times
// the homogenization of the univariate gcd of the dehomogenizations.
template <class S>
MultiPoly<S> binary_gcd(const MultiPoly<S>& f, const MultiPoly<S>& g) {
  auto y1_power = [](const MultiPoly<S>& h) {
    std::uint32_t k = UINT32_MAX;
    for (const auto& [e, c] : h.terms()) k = std::min(k, e[1]);
    return k;
  };
  UniPoly<S> uf = extract_univariate(f, 0), ug = extract_univariate(g, 0);
  UniPoly<S> u = uni_gcd(uf, ug);
  std::uint32_t k = std::min(y1_power(f), y1_power(g));
  MultiPoly<S> out = homogenize_to(u, f.nvars(), 0, 1, u.degree());
  if (k > 0) {
    Expo e(f.nvars(), 0);
    e[1] = k;
    out = out * MultiPoly<S>::monomial(f.nvars(), e, u.c.back());  // u monic
  }
  return out;
}

template <class S>
bool is_constant_form(const MultiPoly<S>& h) {
  return !h.is_zero() && h.degree() == 0;
}

// Scalar resultant of two binary forms taken at the given FORM degrees
// (rows padded with zeros when the x-degree drops).  Vanishes over a field
// exactly when the forms share a projective root, and it is a polynomial in
// the coefficients, so it commutes with reduction mod p.
template <class S>
S binary_form_resultant(const MultiPoly<S>& f, std::int64_t df, const MultiPoly<S>& g,
                        std::int64_t dg, const S& zero, const S& one) {
  if (df == 0 && dg == 0) return one;
  auto padded = [&](const MultiPoly<S>& h, std::int64_t d) {
    std::vector<S> c(std::size_t(d) + 1, zero);
    for (const auto& [e, coef] : h.terms()) c[e[0]] = coef;
    return c;
  };
  std::vector<S> uf = padded(f, df), ug = padded(g, dg);
  std::size_t n = std::size_t(df + dg);
  SmallMat<S> syl(n);
  for (std::size_t i = 0; i < std::size_t(dg); ++i)
    for (std::size_t k = 0; k <= std::size_t(df); ++k)
      syl.at(i, i + k) = uf[std::size_t(df) - k];
  for (std::size_t i = 0; i < std::size_t(df); ++i)
    for (std::size_t k = 0; k <= std::size_t(dg); ++k)
      syl.at(std::size_t(dg) + i, i + k) = ug[std::size_t(dg) - k];
  return syl.det();
}

// Discriminant-type scalar of a binary form: the form resultant of its two
// partials.  Nonzero iff the form is squarefree; a prime not dividing it
// keeps the form squarefree after reduction.
template <class S>
S binary_disc(const MultiPoly<S>& s, const S& zero, const S& one) {
  std::int64_t n = s.degree();
  if (n <= 1) return one;
  return binary_form_resultant(s.derivative(0), n - 1, s.derivative(1), n - 1, zero, one);
}

// Exact quotient of binary forms (g divides f), via the univariate quotient
// plus bookkeeping for the y1-power lost by dehomogenization.
template <class S>
MultiPoly<S> binary_div_exact(const MultiPoly<S>& f, const MultiPoly<S>& g) {
  auto y1_power = [](const MultiPoly<S>& h) {
    std::uint32_t k = UINT32_MAX;
    for (const auto& [e, c] : h.terms()) k = std::min(k, e[1]);
    return k;
  };
  UniPoly<S> q = uni_div_exact(extract_univariate(f, 0), extract_univariate(g, 0));
  std::uint32_t k = y1_power(f) - y1_power(g);
  MultiPoly<S> out = homogenize_to(q, f.nvars(), 0, 1, q.degree());
  if (k > 0) {
    Expo e(f.nvars(), 0);
    e[1] = k;
    out = out * MultiPoly<S>::monomial(f.nvars(), e, q.lead() / q.lead());
  }
  return out;
}

inline void push_nonzero(Certificate& cert, const Rational& w, const char* what) {
  if (w == 0) throw std::logic_error(std::string("zero reduction witness from ") + what);
  cert.nonzero_witnesses.push_back(w);
}

// Content and discriminant of a recorded resultant form; the discriminant is
// taken of the squarefree part so it is always a nonzero scalar.
template <class S>
void push_form_witnesses(Certificate& cert, const MultiPoly<S>& r, const S& zero, const S& one) {
  auto an = analyze_binary_form(r, 0, 1);
  push_nonzero(cert, scalar_norm_q(an.content), "content");
  push_nonzero(cert, scalar_norm_q(binary_disc(an.squarefree_part, zero, one)), "discriminant");
}

// The grevlex-leading scalar of the top coefficient form in the eliminated
// variable. Recorded for inspection only: nonzero here means the variable's
// degree survives reduction mod any prime avoiding this scalar, but the
// good-prime set is defined by coefficient denominators, Gram determinants,
// resultant contents and discriminants, and d alone; modular consequences
// are verified against brute force rather than assumed from this guard.
template <class S>
void push_degree_witness(Certificate& cert, const MultiPoly<S>& f, const std::string& key) {
  if (f.degree_in(2) < 1) return;
  std::vector<MultiPoly<S>> cs = f.coeffs_in(2);
  Rational w = scalar_norm_q(cs.back().leading_coeff());
  if (w == 0) throw std::logic_error("zero degree guard for " + key);
  cert.witnesses["degree_guard_" + key] = to_string(w);
}

// Coprimality guards for a pair of elimination forms, recorded for
// inspection like the degree guards: either the pair's own form resultant,
// or (when the pair shares a factor) the resultants pinning the shared
// factor against the third form and the cofactors against each other.
template <class S>
void push_coprimality_witnesses(Certificate& cert, const MultiPoly<S>& e1,
                                const MultiPoly<S>& e2, const MultiPoly<S>* e3, const S& zero,
                                const S& one) {
  auto record = [&cert](const char* key, const Rational& w) {
    if (w == 0) throw std::logic_error(std::string("zero coprimality guard: ") + key);
    cert.witnesses[key] = to_string(w);
  };
  MultiPoly<S> g = binary_gcd(e1, e2);
  if (is_constant_form(g)) {
    record("coprime_guard_pair",
           scalar_norm_q(binary_form_resultant(e1, e1.degree(), e2, e2.degree(), zero, one)));
    return;
  }
  if (e3 == nullptr) throw std::logic_error("coprimality witness: unexpected shared factor");
  MultiPoly<S> q1 = binary_div_exact(e1, g), q2 = binary_div_exact(e2, g);
  record("coprime_guard_shared",
         scalar_norm_q(binary_form_resultant(g, g.degree(), *e3, e3->degree(), zero, one)));
  record("coprime_guard_cofactor",
         scalar_norm_q(binary_form_resultant(q1, q1.degree(), q2, q2.degree(), zero, one)));
}

// Elimination form of a pair w.r.t. the last variable: a binary form in
// (y0, y1) vanishing at the projection of every common zero away from
// (0:0:1).  Zero output marks a pair degenerate in these coordinates.
template <class S>
MultiPoly<S> pair_elim(const MultiPoly<S>& f, const MultiPoly<S>& g) {
  std::int64_t df = f.degree_in(2), dg = g.degree_in(2);
  if (df >= 1 && dg >= 1) return resultant(f, g, 2);
  if (df == 0 && dg >= 1) return f;  // common zero needs f(a0, a1) = 0
  if (dg == 0 && df >= 1) return g;
  return binary_gcd(f, g);  // both free of y2: binary gcd captures exactly
}

// Projective root (a0 : a1) of a degree-1 binary form, if it is one.
template <class S>
std::optional<std::array<S, 2>> linear_root(const MultiPoly<S>& piece, const S& zero,
                                            const S& one) {
  if (piece.degree() != 1) return std::nullopt;
  Expo ex(piece.nvars(), 0), ey(piece.nvars(), 0);
  ex[0] = 1;
  ey[1] = 1;
  S cx = piece.coeff(ex), cy = piece.coeff(ey);
  if (scalar_is_zero(cx)) return std::array<S, 2>{one, zero};  // the form is c*y1
  return std::array<S, 2>{zero - cy / cx, one};
}

// f restricted to the line {(a0 : a1 : t)}, as a univariate in t.
template <class S>
UniPoly<S> restrict_line(const MultiPoly<S>& f, const S& a0, const S& a1, const S& zero) {
  std::vector<MultiPoly<S>> cs = f.coeffs_in(2);
  std::vector<S> pt{a0, a1, zero};
  UniPoly<S> u;
  u.c.reserve(cs.size());
  for (const auto& c : cs) u.c.push_back(c.eval(pt));
  u.normalize();
  return u;
}

// Roots living in the coefficient field: the degree-1 pieces of the
// squarefree decomposition.  Higher-degree irreducible factors are skipped;
// callers retry in other coordinates instead of leaving the field.
template <class S>
std::vector<S> uni_linear_roots(const UniPoly<S>& h, const S& zero) {
  std::vector<S> out;
  if (h.degree() < 1) return out;
  for (const auto& [piece, mult] : uni_squarefree_decompose(h))
    if (piece.degree() == 1) out.push_back(zero - piece.c[0]);  // monic t + c0
  return out;
}

// All 2x2 minors of the two gradients vanish at pt: the curves are tangent
// there (or one is singular there), so the intersection is not transverse.
template <class S>
bool gradients_dependent(const MultiPoly<S>& f, const MultiPoly<S>& g,
                         const std::vector<S>& pt) {
  std::vector<S> df, dg;
  for (std::size_t i = 0; i < 3; ++i) {
    df.push_back(f.derivative(i).eval(pt));
    dg.push_back(g.derivative(i).eval(pt));
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (!scalar_is_zero(df[i] * dg[j] - df[j] * dg[i])) return false;
  return true;
}

template <class S>
std::vector<S> map_point(const SmallMat<Rational>& a, const std::vector<S>& y) {
  std::vector<S> x;
  for (std::size_t i = 0; i < 3; ++i) {
    S acc = cert_scalar<S>(Rational(0));
    for (std::size_t j = 0; j < 3; ++j) acc = acc + cert_scalar<S>(a.at(i, j)) * y[j];
    x.push_back(std::move(acc));
  }
  return x;
}

template <class S>
std::string point_str(const std::vector<S>& x) {
  return "(" + scalar_str(x[0]) + " : " + scalar_str(x[1]) + " : " + scalar_str(x[2]) + ")";
}

inline std::string profile_str(const std::vector<std::pair<int, int>>& profile) {
  std::string s = "[";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(profile[i].first) + "," + std::to_string(profile[i].second) + ")";
  }
  return s + "]";
}

template <class S>
void require_form(const MultiPoly<S>& f, std::int64_t deg, const char* who) {
  if (f.is_zero() || f.nvars() != 3 || !f.is_homogeneous() ||
      (deg > 0 && f.degree() != deg) || (deg == 0 && f.degree() < 1))
    throw std::invalid_argument(std::string(who) + ": need a nonzero homogeneous ternary form" +
                                (deg > 0 ? " of degree " + std::to_string(deg) : ""));
}

inline Certificate cert_start(std::string condition) {
  Certificate c;
  c.condition = std::move(condition);
  c.coordinate_change = SmallMat<Rational>::identity(3, Rational(1));
  return c;
}

inline void cert_use_schedule(Certificate& c, std::size_t k) {
  c.schedule_index = int(k);
  c.coordinate_change = coordinate_schedule()[k];
}

}  // namespace detail

// Smoothness of a conic is a rank condition: pass iff the 3x3 Gram
// determinant of the quadratic form is nonzero.
inline Certificate smooth_conic_certificate(const MultiPoly<Rational>& q,
                                            std::string condition = "smooth_conic") {
  detail::require_form(q, 2, "smooth_conic_certificate");
  Certificate cert = detail::cert_start(std::move(condition));
  SmallMat<Rational> gram(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      Expo e(3, 0);
      e[i] += 1;
      e[j] += 1;
      Rational c = q.coeff(e);
      if (i != j) c /= 2;
      gram.at(i, j) = c;
      gram.at(j, i) = c;
    }
  Rational det = gram.det();
  cert.witnesses["gram_det"] = to_string(det);
  if (det != 0) {
    cert.status = CertStatus::Pass;
    cert.reason = "Gram determinant nonzero: the conic is smooth";
    cert.nonzero_witnesses.push_back(det);
  } else {
    cert.status = CertStatus::Fail;
    cert.reason = "Gram matrix has rank " + std::to_string(gram.rank()) +
                  ": the conic is singular";
  }
  return cert;
}

// Smoothness of a plane cubic.  Per schedule entry: reject inputs free of a
// variable (three concurrent lines), check the coordinate point (0:0:1)
// structurally via the top coefficients of the partials, then eliminate the
// last variable from each pair of partials.  Coprime elimination forms prove
// the partials share no projective zero.  A nonconstant gcd is only a fail
// once a root lifts to a verified singular point.
template <class S>
Certificate smooth_curve_certificate(const MultiPoly<S>& f, std::string condition = "smooth_curve") {
  detail::require_form(f, 3, "smooth_curve_certificate");
  Certificate cert = detail::cert_start(std::move(condition));
  const S zero = detail::cert_scalar<S>(Rational(0));
  const S one = detail::cert_scalar<S>(Rational(1));
  const auto& sched = coordinate_schedule();

  for (std::size_t k = 0; k < sched.size(); ++k) {
    const SmallMat<Rational>& a = sched[k];
    detail::cert_use_schedule(cert, k);
    MultiPoly<S> g = detail::apply_coords(f, a);
    std::vector<MultiPoly<S>> pd{g.derivative(0), g.derivative(1), g.derivative(2)};

    // g free of variable i: three concurrent lines, singular at that
    // coordinate point.
    for (std::size_t i = 0; i < 3; ++i) {
      if (!pd[i].is_zero()) continue;
      std::vector<S> y(3, zero);
      y[i] = one;
      std::vector<S> x = detail::map_point(a, y);
      cert.status = CertStatus::Fail;
      cert.witnesses["singular_point"] = detail::point_str(x);
      cert.reason = "curve is a cone: free of one variable, singular at a coordinate point";
      return cert;
    }

    // All partials have degree 2; their y2^2 coefficients are their values
    // at (0:0:1).  All three vanishing is a verified singular point.
    Expo top(3, 0);
    top[2] = 2;
    if (scalar_is_zero(pd[0].coeff(top)) && scalar_is_zero(pd[1].coeff(top)) &&
        scalar_is_zero(pd[2].coeff(top))) {
      std::vector<S> x = detail::map_point(a, std::vector<S>{zero, zero, one});
      cert.status = CertStatus::Fail;
      cert.witnesses["singular_point"] = detail::point_str(x);
      cert.reason = "all partials vanish at a verified point";
      return cert;
    }

    MultiPoly<S> e01 = detail::pair_elim(pd[0], pd[1]);
    MultiPoly<S> e02 = detail::pair_elim(pd[0], pd[2]);
    MultiPoly<S> e12 = detail::pair_elim(pd[1], pd[2]);
    if (e01.is_zero() || e02.is_zero() || e12.is_zero()) continue;  // degenerate pair: retry
    MultiPoly<S> gg = detail::binary_gcd(detail::binary_gcd(e01, e02), e12);
    cert.witnesses["elim_01"] = poly_to_string(e01);
    cert.witnesses["elim_02"] = poly_to_string(e02);
    cert.witnesses["elim_12"] = poly_to_string(e12);
    cert.witnesses["gcd"] = poly_to_string(gg);

    if (detail::is_constant_form(gg)) {
      // Sound: a common zero off (0:0:1) would be a common root of all
      // three elimination forms; (0:0:1) itself was excluded structurally.
      cert.status = CertStatus::Pass;
      cert.reason = "partial derivatives share no projective zero";
      for (const MultiPoly<S>* e : {&e01, &e02, &e12})
        detail::push_form_witnesses(cert, *e, zero, one);
      for (std::size_t pi = 0; pi < pd.size(); ++pi)
        detail::push_degree_witness(cert, pd[pi], "partial_" + std::to_string(pi));
      detail::push_coprimality_witnesses(cert, e01, e02, &e12, zero, one);
      return cert;
    }

    // Try to lift a projection root to an exact singular point.
    for (const auto& [piece, mult] : analyze_binary_form(gg, 0, 1).pieces) {
      auto root = detail::linear_root(piece, zero, one);
      if (!root) continue;
      const S& a0 = (*root)[0];
      const S& a1 = (*root)[1];
      std::vector<UniPoly<S>> rs;
      for (const auto& p : pd) rs.push_back(detail::restrict_line(p, a0, a1, zero));
      UniPoly<S> h;  // gcd of the nonzero restrictions
      bool any = false;
      for (const auto& r : rs) {
        if (r.is_zero()) continue;
        h = any ? uni_gcd(h, r) : r.monic();
        any = true;
      }
      std::vector<S> cands;
      if (!any)
        cands.push_back(zero);  // all partials vanish on the whole line
      else
        cands = detail::uni_linear_roots(h, zero);
      if (any && h.degree() == 0) continue;
      for (const S& t : cands) {
        std::vector<S> y{a0, a1, t};
        bool singular = true;
        for (const auto& p : pd)
          if (!scalar_is_zero(p.eval(y))) singular = false;
        if (!singular) continue;
        std::vector<S> x = detail::map_point(a, y);
        cert.status = CertStatus::Fail;
        cert.witnesses["singular_point"] = detail::point_str(x);
        cert.reason = "all partials vanish at a verified point";
        return cert;
      }
    }
    // Roots would not lift in this chart; retry the next schedule entry.
  }
  cert.status = CertStatus::Inconclusive;
  cert.reason = "no verdict after exhausting the coordinate schedule";
  return cert;
}

// Transversality of two curves with the Bezout count.  Pass iff in some
// scheduled chart both forms keep full degree in the eliminated variable and
// their resultant is squarefree: deg f * deg g distinct projections, each a
// single transverse point.  A repeated root is a fail only when it lifts to
// a verified point with dependent gradients.
template <class S>
Certificate transversality_certificate(const MultiPoly<S>& f, const MultiPoly<S>& g,
                                       std::string condition = "transversality") {
  detail::require_form(f, 0, "transversality_certificate");
  detail::require_form(g, 0, "transversality_certificate");
  Certificate cert = detail::cert_start(std::move(condition));
  const S zero = detail::cert_scalar<S>(Rational(0));
  const S one = detail::cert_scalar<S>(Rational(1));
  const std::int64_t m = f.degree(), e = g.degree();
  const auto& sched = coordinate_schedule();

  for (std::size_t k = 0; k < sched.size(); ++k) {
    const SmallMat<Rational>& a = sched[k];
    detail::cert_use_schedule(cert, k);
    MultiPoly<S> ff = detail::apply_coords(f, a);
    MultiPoly<S> gg = detail::apply_coords(g, a);
    if (ff.degree_in(2) != m || gg.degree_in(2) != e) continue;
    MultiPoly<S> res = resultant(ff, gg, 2);
    if (res.is_zero()) {
      // Both leading coefficients are nonzero constants, so a vanishing
      // resultant forces a common factor.
      cert.status = CertStatus::Fail;
      cert.reason = "common component";
      return cert;
    }
    auto an = analyze_binary_form(res, 0, 1);
    cert.witnesses["resultant"] = poly_to_string(res);
    cert.witnesses["profile"] = detail::profile_str(an.profile);
    if (an.is_squarefree()) {
      cert.status = CertStatus::Pass;
      cert.count = long(m * e);
      cert.reason = "resultant squarefree of full degree: all intersections transverse";
      detail::push_form_witnesses(cert, res, zero, one);
      detail::push_degree_witness(cert, ff, "f");
      detail::push_degree_witness(cert, gg, "g");
      return cert;
    }
    // Lift a repeated projection root to a verified tangential point.
    for (const auto& [piece, mult] : an.pieces) {
      if (mult < 2) continue;
      auto root = detail::linear_root(piece, zero, one);
      if (!root) continue;
      const S& a0 = (*root)[0];
      const S& a1 = (*root)[1];
      UniPoly<S> rf = detail::restrict_line(ff, a0, a1, zero);
      UniPoly<S> rg = detail::restrict_line(gg, a0, a1, zero);
      if (rf.is_zero() || rg.is_zero()) continue;
      UniPoly<S> h = uni_gcd(rf, rg);
      for (const S& t : detail::uni_linear_roots(h, zero)) {
        std::vector<S> y{a0, a1, t};
        if (!scalar_is_zero(ff.eval(y)) || !scalar_is_zero(gg.eval(y))) continue;
        if (!detail::gradients_dependent(ff, gg, y)) continue;
        std::vector<S> x = detail::map_point(a, y);
        cert.status = CertStatus::Fail;
        cert.witnesses["tangent_point"] = detail::point_str(x);
        cert.reason = "verified non-transverse intersection point";
        return cert;
      }
    }
  }
  cert.status = CertStatus::Inconclusive;
  cert.reason = "no verdict after exhausting the coordinate schedule";
  return cert;
}

// Tangency of a smooth conic against a smooth cubic at exactly 3 points:
// pass iff the degree-6 resultant is a unit times the square of a squarefree
// cubic.  Both curves being smooth, multiplicity 2 everywhere means simple
// tangency at each of the 3 points.  A squarefree resultant of full degree
// is the conclusive opposite: purely transverse contact.
template <class S>
Certificate tangency_certificate(const MultiPoly<S>& alpha, const MultiPoly<S>& eps,
                                 std::string condition = "tangency") {
  detail::require_form(alpha, 2, "tangency_certificate");
  detail::require_form(eps, 3, "tangency_certificate");
  Certificate cert = detail::cert_start(std::move(condition));
  const S zero = detail::cert_scalar<S>(Rational(0));
  const S one = detail::cert_scalar<S>(Rational(1));
  const auto& sched = coordinate_schedule();

  for (std::size_t k = 0; k < sched.size(); ++k) {
    const SmallMat<Rational>& a = sched[k];
    detail::cert_use_schedule(cert, k);
    MultiPoly<S> ff = detail::apply_coords(alpha, a);
    MultiPoly<S> gg = detail::apply_coords(eps, a);
    if (ff.degree_in(2) != 2 || gg.degree_in(2) != 3) continue;
    MultiPoly<S> res = resultant(ff, gg, 2);
    if (res.is_zero()) {
      cert.status = CertStatus::Fail;
      cert.reason = "common component";
      return cert;
    }
    auto an = analyze_binary_form(res, 0, 1);
    cert.witnesses["resultant"] = poly_to_string(res);
    cert.witnesses["profile"] = detail::profile_str(an.profile);
    if (an.all_multiplicity(2)) {
      cert.status = CertStatus::Pass;
      cert.count = 3;
      cert.witnesses["squarefree_part"] = poly_to_string(an.squarefree_part);
      cert.witnesses["unit"] = scalar_str(an.content);
      cert.reason = "resultant is a unit times the square of a squarefree cubic: "
                    "3 tangency points";
      detail::push_form_witnesses(cert, res, zero, one);
      detail::push_degree_witness(cert, ff, "f");
      detail::push_degree_witness(cert, gg, "g");
      return cert;
    }
    if (an.is_squarefree()) {
      cert.status = CertStatus::Fail;
      cert.reason = "resultant squarefree of degree 6: contact is transverse, not tangent";
      return cert;
    }
    // Mixed profile: possibly two contact points sharing a projection; retry.
  }
  cert.status = CertStatus::Inconclusive;
  cert.reason = "resultant degenerate in all scheduled coordinates";
  return cert;
}

// Empty triple intersection.  Pass iff in some chart f keeps full degree in
// the eliminated variable (so (0:0:1) is off f) and the two elimination
// forms of (f,g) and (f,h) are coprime: a triple common zero would project
// to a common root of both.
template <class S>
Certificate empty_triple_certificate(const MultiPoly<S>& f, const MultiPoly<S>& g,
                                     const MultiPoly<S>& h,
                                     std::string condition = "empty_triple") {
  detail::require_form(f, 0, "empty_triple_certificate");
  detail::require_form(g, 0, "empty_triple_certificate");
  detail::require_form(h, 0, "empty_triple_certificate");
  Certificate cert = detail::cert_start(std::move(condition));
  const S zero = detail::cert_scalar<S>(Rational(0));
  const S one = detail::cert_scalar<S>(Rational(1));
  const auto& sched = coordinate_schedule();

  for (std::size_t k = 0; k < sched.size(); ++k) {
    const SmallMat<Rational>& a = sched[k];
    detail::cert_use_schedule(cert, k);
    MultiPoly<S> ff = detail::apply_coords(f, a);
    MultiPoly<S> gg = detail::apply_coords(g, a);
    MultiPoly<S> hh = detail::apply_coords(h, a);
    if (ff.degree_in(2) != f.degree()) continue;
    MultiPoly<S> e1 = detail::pair_elim(ff, gg);
    MultiPoly<S> e2 = detail::pair_elim(ff, hh);
    if (e1.is_zero() || e2.is_zero()) continue;  // shared component in this chart: retry
    MultiPoly<S> gd = detail::binary_gcd(e1, e2);
    cert.witnesses["res_fg"] = poly_to_string(e1);
    cert.witnesses["res_fh"] = poly_to_string(e2);
    cert.witnesses["gcd"] = poly_to_string(gd);
    if (detail::is_constant_form(gd)) {
      cert.status = CertStatus::Pass;
      cert.reason = "elimination forms coprime: no common zero of all three curves";
      for (const MultiPoly<S>* e : {&e1, &e2})
        detail::push_form_witnesses(cert, *e, zero, one);
      detail::push_degree_witness(cert, ff, "f");
      detail::push_degree_witness(cert, gg, "g");
      detail::push_degree_witness(cert, hh, "h");
      detail::push_coprimality_witnesses(cert, e1, e2, static_cast<const MultiPoly<S>*>(nullptr),
                                         zero, one);
      return cert;
    }
    // Lift to a verified triple point.
    for (const auto& [piece, mult] : analyze_binary_form(gd, 0, 1).pieces) {
      auto root = detail::linear_root(piece, zero, one);
      if (!root) continue;
      const S& a0 = (*root)[0];
      const S& a1 = (*root)[1];
      std::vector<UniPoly<S>> rs{detail::restrict_line(ff, a0, a1, zero),
                                 detail::restrict_line(gg, a0, a1, zero),
                                 detail::restrict_line(hh, a0, a1, zero)};
      UniPoly<S> u;
      bool any = false;
      for (const auto& r : rs) {
        if (r.is_zero()) continue;
        u = any ? uni_gcd(u, r) : r.monic();
        any = true;
      }
      std::vector<S> cands;
      if (!any)
        cands.push_back(zero);
      else
        cands = detail::uni_linear_roots(u, zero);
      for (const S& t : cands) {
        std::vector<S> y{a0, a1, t};
        if (!scalar_is_zero(ff.eval(y)) || !scalar_is_zero(gg.eval(y)) ||
            !scalar_is_zero(hh.eval(y)))
          continue;
        std::vector<S> x = detail::map_point(a, y);
        cert.status = CertStatus::Fail;
        cert.witnesses["triple_point"] = detail::point_str(x);
        cert.reason = "verified common point of all three curves";
        return cert;
      }
    }
  }
  cert.status = CertStatus::Inconclusive;
  cert.reason = "no verdict after exhausting the coordinate schedule";
  return cert;
}

// The full position bundle for one candidate: the two conics over Q, the two
// cubics over the shared quadratic extension.
struct GenericityInput {
  MultiPoly<Rational> alpha{3};
  MultiPoly<Rational> delta{3};
  MultiPoly<QuadExt> eps1{3};
  MultiPoly<QuadExt> eps2{3};
};

struct GenericityReport {
  std::vector<Certificate> certificates;
  bool all_pass = false;

  const Certificate* find(const std::string& condition) const {
    for (const auto& c : certificates)
      if (c.condition == condition) return &c;
    return nullptr;
  }
};

// Aggregate every condition the construction needs.  The certificate list
// and its order are fixed.
inline GenericityReport full_genericity(const GenericityInput& in) {
  auto lift = [](const MultiPoly<Rational>& p) {
    return p.map_coeffs<QuadExt>([](const Rational& c) { return QuadExt(c); });
  };
  MultiPoly<QuadExt> alpha_q = lift(in.alpha);
  MultiPoly<QuadExt> delta_q = lift(in.delta);

  GenericityReport rep;
  rep.certificates.push_back(smooth_curve_certificate(in.eps1, "smooth_cubic_E1"));
  rep.certificates.push_back(smooth_curve_certificate(in.eps2, "smooth_cubic_E2"));
  rep.certificates.push_back(smooth_conic_certificate(in.alpha, "smooth_conic_A"));
  rep.certificates.push_back(smooth_conic_certificate(in.delta, "smooth_conic_D"));
  rep.certificates.push_back(transversality_certificate(in.eps1, in.eps2, "transversal_E1_E2"));
  rep.certificates.push_back(tangency_certificate(alpha_q, in.eps1, "tangency_A_E1"));
  rep.certificates.push_back(tangency_certificate(alpha_q, in.eps2, "tangency_A_E2"));
  rep.certificates.push_back(
      empty_triple_certificate(alpha_q, in.eps1, in.eps2, "empty_triple_A_E1_E2"));
  rep.certificates.push_back(
      empty_triple_certificate(delta_q, in.eps1, in.eps2, "empty_triple_D_E1_E2"));
  rep.certificates.push_back(transversality_certificate(delta_q, in.eps1, "transversal_D_E1"));
  rep.certificates.push_back(transversality_certificate(delta_q, in.eps2, "transversal_D_E2"));
  rep.certificates.push_back(transversality_certificate(in.alpha, in.delta, "transversal_A_D"));

  rep.all_pass = true;
  for (const auto& c : rep.certificates)
    if (!c.passed()) rep.all_pass = false;
  return rep;
}

}  // namespace symforge
