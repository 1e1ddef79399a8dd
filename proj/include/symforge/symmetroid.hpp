#pragma once

// Quartic symmetroids with a designed rank-2 point at (0:0:0:1): seeded
// candidate generation, the hyperbolic change of basis over Q(sqrt d), the
// projection writing det = alpha z3^2 + beta z3 + gamma, and the split of the
// discriminant sextic into two cubics via diagonal adjugate entries.

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symforge/intutil.hpp"
#include "symforge/multipoly.hpp"
#include "symforge/quadext.hpp"
#include "symforge/rational.hpp"
#include "symforge/smallmat.hpp"
#include "symforge/symmat.hpp"

namespace symforge {

// Uniform draw from [-bound, bound] with implementation-independent layout:
// only the raw mt19937_64 stream is consumed, never a distribution adapter.
inline std::int64_t draw_bounded(std::mt19937_64& rng, std::int64_t bound) {
  return std::int64_t(rng() % std::uint64_t(2 * bound + 1)) - bound;
}

namespace detail {

// Exact rank of a 4x4 integer matrix by fraction-free elimination; valid for
// entries up to ~1e4 (intermediate growth stays inside 128 bits).
inline int rank4_int(const std::array<std::array<std::int64_t, 4>, 4>& a) {
  __int128 w[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i][j] = a[i][j];
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int r = rank; r < 4; ++r)
      if (w[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int c = 0; c < 4; ++c) std::swap(w[piv][c], w[rank][c]);
    for (int r = rank + 1; r < 4; ++r) {
      __int128 f1 = w[rank][col], f2 = w[r][col];
      if (f2 == 0) continue;
      for (int c = col; c < 4; ++c) w[r][c] = w[r][c] * f1 - f2 * w[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Draws integer coefficients in [-bound, bound] for all ten linear entries,
// then redraws the z3-coefficient matrix C until rank(C) = 2 exactly, placing
// a rank-2 point of the matrix at (0:0:0:1). Deterministic in the seed.
inline SymLinearMatrix generate_candidate(std::uint64_t seed, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("generate_candidate needs bound >= 1");
  std::mt19937_64 rng(seed);
  std::array<std::array<std::array<std::int64_t, 3>, 4>, 4> m{};  // m[i][j][var]
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      for (std::size_t v = 0; v < 3; ++v) m[i][j][v] = draw_bounded(rng, bound);
  std::array<std::array<std::int64_t, 4>, 4> c{};
  const bool fast_rank = bound <= 10000;
  for (;;) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        c[i][j] = draw_bounded(rng, bound);
        c[j][i] = c[i][j];
      }
    if (fast_rank) {
      if (detail::rank4_int(c) == 2) break;
    } else {
      SmallMat<Rational> cr(4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) cr.at(i, j) = Rational(c[i][j]);
      if (cr.rank() == 2) break;
    }
  }
  SymLinearMatrix out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      MultiPoly<Rational> f(4);
      for (std::size_t v = 0; v < 3; ++v) {
        Expo e(4, 0);
        e[v] = 1;
        f.add_term(e, Rational(m[i][j][v]));
      }
      Expo e3(4, 0);
      e3[3] = 1;
      f.add_term(e3, Rational(c[i][j]));
      out.set(i, j, f);
    }
  return out;
}

// The z3-coefficient matrix of a symmetric linear matrix.
inline SmallMat<Rational> z3_coefficient_matrix(const SymLinearMatrix& m) {
  SmallMat<Rational> c(4);
  Expo e3(4, 0);
  e3[3] = 1;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) c.at(i, j) = m.at(i, j).coeff(e3);
  return c;
}

struct HyperbolicSplit {
  SmallMat<QuadExt> transform;  // T with T^t C T = unit antidiagonal pair at (3,4)
  Int d = 1;                    // squarefree; 1 marks the rational split
  bool rational_split = false;
};

// Change of basis sending a rank-2 rational symmetric C to the hyperbolic
// normal form: exactly two nonzero entries, value 1, at positions (3,4) and
// (4,3). Entries of T live in Q(sqrt d) with d the squarefree part of -c1 c2
// for a rational diagonalization diag(c1, c2, 0, 0) of C.
inline HyperbolicSplit hyperbolize(const SmallMat<Rational>& c) {
  if (c.size() != 4 || !c.is_symmetric()) throw std::invalid_argument("hyperbolize needs a symmetric 4x4 matrix");
  if (c.rank() != 2) throw std::invalid_argument("hyperbolize needs rank exactly 2");
  const QuadExt one = QuadExt(Rational(1));

  auto hyperbolic_target = [&] {
    SmallMat<QuadExt> h(4);
    h.at(2, 3) = one;
    h.at(3, 2) = one;
    return h;
  };
  auto to_ext = [](const SmallMat<Rational>& m) {
    return m.map<QuadExt>([](const Rational& v) { return QuadExt(v); });
  };

  HyperbolicSplit out{SmallMat<QuadExt>::identity(4, one), Int(1), true};
  if (to_ext(c) == hyperbolic_target()) return out;  // already hyperbolic

  auto [p, diag] = sym_diagonalize(c, Rational(1));
  std::vector<std::size_t> nz, zero;
  for (std::size_t i = 0; i < 4; ++i)
    (diag[i] == 0 ? zero : nz).push_back(i);
  // rank 2: two nonzero slots; permute columns so they land in slots 3 and 4
  std::vector<std::size_t> order = {zero[0], zero[1], nz[0], nz[1]};
  SmallMat<Rational> pp(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) pp.at(i, j) = p.at(i, order[j]);
  Rational c1 = diag[nz[0]], c2 = diag[nz[1]];

  Rational raw = -c1 * c2;
  SquarefreeSplit sf = squarefree_split(numer(raw) * denom(raw));
  Rational s = Rational(sf.scale, denom(raw));  // sqrt(raw) = s * sqrt(d)
  QuadExt sigma = QuadExt::sqrt_of(sf.d) * QuadExt(s / c1);
  QuadExt inv2c2 = QuadExt(Rational(1) / (Rational(2) * c2));

  SmallMat<QuadExt> block = SmallMat<QuadExt>::identity(4, one);
  block.at(2, 2) = sigma;
  block.at(3, 2) = one;
  block.at(2, 3) = (QuadExt(Rational(0)) - sigma) * inv2c2;
  block.at(3, 3) = inv2c2;

  out.transform = to_ext(pp) * block;
  out.d = sf.d;
  out.rational_split = (sf.d == 1);
  if (!(to_ext(c).congruence(out.transform) == hyperbolic_target()))
    throw std::logic_error("hyperbolize postcondition failed");
  return out;
}

struct ProjectedSymmetroid {
  MultiPoly<Rational> alpha;  // degree 2 in z0,z1,z2
  MultiPoly<Rational> beta;   // degree 3
  MultiPoly<Rational> gamma;  // degree 4
  SymLinearMatrix source;
  SmallMat<QuadExt> transform;
  Int d = 1;
  bool rational_split = false;
  PolyMat<QuadExt> m0_transformed;  // z3-free part of T^t M T, forms in z0,z1,z2
};

// Apply the hyperbolizing T to M and read off det(T^t M T) =
// alpha z3^2 + beta z3 + gamma; the z3^3 and z3^4 coefficients vanish because
// the z3-block is hyperbolic, and alpha, beta, gamma come out rational because
// det(T)^2 is rational.
inline ProjectedSymmetroid project_from_node(const SymLinearMatrix& m) {
  HyperbolicSplit hs = hyperbolize(z3_coefficient_matrix(m));
  const auto& t = hs.transform;

  PolyMat<QuadExt> mq = poly_mat_zero<QuadExt>(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      mq[i][j] = m.at(i, j).map_coeffs<QuadExt>([](const Rational& v) { return QuadExt(v); });

  PolyMat<QuadExt> mp = poly_mat_zero<QuadExt>(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      MultiPoly<QuadExt> acc(4);
      for (std::size_t k = 0; k < 4; ++k) {
        if (scalar_is_zero(t.at(k, i))) continue;
        for (std::size_t l = 0; l < 4; ++l) acc = acc + mq[k][l] * (t.at(k, i) * t.at(l, j));
      }
      mp[i][j] = acc;
    }

  MultiPoly<QuadExt> det = poly_mat_det(mp);
  if (det.degree_in(3) > 2) throw std::logic_error("projection left z3 degree above 2");
  std::vector<MultiPoly<QuadExt>> cs = det.coeffs_in(3);
  cs.resize(3, MultiPoly<QuadExt>(4));

  auto to_rat3 = [](const MultiPoly<QuadExt>& f) {
    return f.map_coeffs<Rational>([](const QuadExt& v) { return v.rational_value(); })
        .dehomogenize(3);
  };

  ProjectedSymmetroid out{to_rat3(cs[2]), to_rat3(cs[1]), to_rat3(cs[0]), m,
                          t,              hs.d,           hs.rational_split,
                          poly_mat_zero<QuadExt>(4, 3)};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out.m0_transformed[i][j] = mp[i][j].coeffs_in(3)[0].dehomogenize(3);

  for (const MultiPoly<Rational>* f : {&out.alpha, &out.beta, &out.gamma})
    if (!f->is_homogeneous()) throw std::logic_error("projection produced inhomogeneous parts");
  return out;
}

struct DiscriminantSplit {
  Int d = 1;
  MultiPoly<QuadExt> eps1 = MultiPoly<QuadExt>(3);  // cubic, leading coefficient 1
  MultiPoly<QuadExt> eps2 = MultiPoly<QuadExt>(3);  // cubic carrying the transferred unit
  bool conjugate_pair = false;
};

// eps1 = 2 adj(M0')_33 and eps2 = 2 adj(M0')_44 split the discriminant:
// beta^2 - 4 alpha gamma = eps1 eps2, by the complementary-minor identity
// (beta = 2 adj_34, gamma = det M0', alpha = -minor_{12,12}). The unit
// ambiguity is fixed by making eps1 monic in the canonical term order.
inline DiscriminantSplit split_discriminant(const ProjectedSymmetroid& ps) {
  const auto& m0 = ps.m0_transformed;
  QuadExt two = QuadExt(Rational(2));
  MultiPoly<QuadExt> eps1 = cofactor3(m0, 3, 3) * two;
  MultiPoly<QuadExt> eps2 = cofactor3(m0, 4, 4) * two;
  if (eps1.is_zero() || eps2.is_zero())
    throw std::domain_error("degenerate symmetroid: vanishing diagonal adjugate entry");

  QuadExt u = eps1.leading_coeff();
  eps1 = eps1 * (QuadExt(Rational(1)) / u);
  eps2 = eps2 * u;

  auto lift = [](const MultiPoly<Rational>& f) {
    return f.map_coeffs<QuadExt>([](const Rational& v) { return QuadExt(v); });
  };
  MultiPoly<QuadExt> disc =
      lift(ps.beta) * lift(ps.beta) - lift(ps.alpha) * lift(ps.gamma) * QuadExt(Rational(4));
  if (!(eps1 * eps2 == disc)) throw std::logic_error("discriminant split identity failed");

  DiscriminantSplit out{ps.d, std::move(eps1), std::move(eps2), false};
  MultiPoly<QuadExt> conj1 = out.eps1.map_coeffs<QuadExt>([](const QuadExt& v) { return v.conj(); });
  if (!conj1.is_zero()) {
    QuadExt unit = out.eps2.leading_coeff() / conj1.leading_coeff();
    out.conjugate_pair = unit.is_rational() && (conj1 * unit == out.eps2);
  }
  return out;
}

}  // namespace symforge
