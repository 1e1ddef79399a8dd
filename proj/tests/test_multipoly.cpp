#include <catch2/catch_amalgamated.hpp>

#include "symforge/fq.hpp"
#include "symforge/multipoly.hpp"
#include "symforge/rational.hpp"
#include "symforge/smallmat.hpp"
#include "symforge/symmat.hpp"

#include <random>
#include <vector>

using namespace symforge;

using QPoly = MultiPoly<Rational>;

namespace {

QPoly zvar(std::size_t n, std::size_t i) { return QPoly::variable(n, i, Rational(1)); }

QPoly qconst(std::size_t n, std::int64_t c) { return QPoly::constant(n, Rational(c)); }

// random linear form in z0..z3 with coefficients in [-bound, bound]
QPoly random_linear(std::mt19937_64& rng, std::int64_t bound) {
  QPoly f(4);
  for (std::size_t i = 0; i < 4; ++i) {
    std::int64_t c = std::int64_t(rng() % std::uint64_t(2 * bound + 1)) - bound;
    f = f + zvar(4, i) * Rational(c);
  }
  return f;
}

SymLinearMatrix random_sym_linear(std::mt19937_64& rng, std::int64_t bound) {
  SymLinearMatrix m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) m.set(i, j, random_linear(rng, bound));
  return m;
}

template <class S>
PolyMat<S> poly_mat_mul(const PolyMat<S>& a, const PolyMat<S>& b) {
  std::size_t n = a.size();
  PolyMat<S> c = poly_mat_zero<S>(n, a[0][0].nvars());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = c[i][j] + a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("grevlex order and leading term") {
  // degree-2 monomials in 3 variables, grevlex-descending
  QPoly p(3);
  std::vector<Expo> expected = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  for (const auto& e : expected) p.add_term(e, Rational(1));
  std::vector<Expo> got;
  for (const auto& [e, c] : p.terms()) got.push_back(e);
  CHECK(got == expected);
  CHECK(p.leading_monomial() == Expo{2, 0, 0});
  // higher total degree always leads
  p.add_term({1, 1, 1}, Rational(5));
  CHECK(p.leading_monomial() == Expo{1, 1, 1});
}

TEST_CASE("ring operations and cancellation") {
  QPoly x = zvar(2, 0), y = zvar(2, 1);
  QPoly sq = (x + y) * (x + y);
  QPoly expect = x * x + x * y * Rational(2) + y * y;
  CHECK(sq == expect);
  CHECK((sq - expect).is_zero());
  CHECK((x * y - y * x).is_zero());
  CHECK(sq.degree() == 2);
  CHECK(sq.nterms() == 3);
}

TEST_CASE("derivative of a quadratic-in-z3 expansion") {
  // p = A z3^2 + B z3 + C with A, B, C forms in z0..z2
  QPoly A = zvar(4, 0) * zvar(4, 0), B = zvar(4, 0) * zvar(4, 1), C = zvar(4, 1) * zvar(4, 1) * zvar(4, 2);
  QPoly z3 = zvar(4, 3);
  QPoly p = A * z3 * z3 + B * z3 + C;
  CHECK(p.derivative(3) == A * z3 * Rational(2) + B);
  // degree drops by exactly one on a homogeneous form
  QPoly h = zvar(3, 0) * zvar(3, 0) * zvar(3, 1);
  CHECK(h.is_homogeneous());
  QPoly dh = h.derivative(0);
  CHECK(dh.is_homogeneous());
  CHECK(dh.degree() == h.degree() - 1);
  CHECK(h.derivative(2).is_zero());
}

TEST_CASE("evaluation and dehomogenization") {
  QPoly p = zvar(4, 0) * zvar(4, 0) * zvar(4, 1);  // z0^2 z1
  CHECK(p.eval({Rational(1), Rational(2), Rational(0), Rational(0)}) == 2);
  QPoly fermat = zvar(3, 0) * zvar(3, 0) * zvar(3, 0) + zvar(3, 1) * zvar(3, 1) * zvar(3, 1) +
                 zvar(3, 2) * zvar(3, 2) * zvar(3, 2);
  QPoly chart = fermat.dehomogenize(0);
  QPoly expect = qconst(2, 1) + zvar(2, 0) * zvar(2, 0) * zvar(2, 0) + zvar(2, 1) * zvar(2, 1) * zvar(2, 1);
  CHECK(chart == expect);
}

TEST_CASE("substitution") {
  QPoly x = zvar(2, 0), y = zvar(2, 1);
  QPoly f = x * x + y * y;
  QPoly u = zvar(2, 0), v = zvar(2, 1);
  QPoly g = f.subst({u + v, u - v});
  CHECK(g == (u * u + v * v) * Rational(2));
  CHECK_THROWS_AS(f.subst({u}), std::invalid_argument);
}

TEST_CASE("coefficient extraction reconstructs the polynomial") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    QPoly f(4);
    for (int t = 0; t < 12; ++t) {
      Expo e{std::uint32_t(rng() % 3), std::uint32_t(rng() % 3), std::uint32_t(rng() % 3),
             std::uint32_t(rng() % 4)};
      f.add_term(e, Rational(std::int64_t(rng() % 19) - 9));
    }
    if (f.is_zero()) continue;
    auto cs = f.coeffs_in(3);
    QPoly rebuilt(4), z3 = zvar(4, 3);
    for (std::size_t k = cs.size(); k-- > 0;) rebuilt = rebuilt * z3 + cs[k];
    CHECK(rebuilt == f);
  }
}

TEST_CASE("variable padding and coefficient mapping") {
  QPoly f = zvar(3, 0) * zvar(3, 2) * Rational(3);
  QPoly g = f.pad_vars(5);
  CHECK(g.nvars() == 5);
  CHECK(g.coeff({1, 0, 1, 0, 0}) == 3);
  Fq F(7);
  auto fm = f.map_coeffs<FqElem>([&](const Rational& c) { return F.from_rational(c); });
  CHECK(fm.coeff({1, 0, 1}) == F.from_int(3));
  // reductions that kill a coefficient drop the term
  QPoly seven = zvar(3, 0) * Rational(7) + zvar(3, 1);
  auto sm = seven.map_coeffs<FqElem>([&](const Rational& c) { return F.from_rational(c); });
  CHECK(sm.nterms() == 1);
}

TEST_CASE("determinant of diagonal and block symmetric linear matrices") {
  SymLinearMatrix diag;
  for (std::size_t i = 0; i < 4; ++i) diag.set(i, i, zvar(4, i));
  CHECK(det_sym4(diag) == zvar(4, 0) * zvar(4, 1) * zvar(4, 2) * zvar(4, 3));

  SymLinearMatrix blk;
  blk.set(0, 0, zvar(4, 0));
  blk.set(1, 1, zvar(4, 1));
  blk.set(2, 2, zvar(4, 2));
  blk.set(2, 3, zvar(4, 3));  // l_34 = z3 in 1-based labels
  CHECK(det_sym4(blk) == -(zvar(4, 0) * zvar(4, 1) * zvar(4, 3) * zvar(4, 3)));
}

TEST_CASE("determinant agrees with Laplace expansion along every row") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    SymLinearMatrix m = random_sym_linear(rng, 3);
    QPoly d = det_sym4(m);
    for (std::size_t row = 0; row < 4; ++row) CHECK(d == poly_mat_det_laplace(m.mat(), row));
    if (!d.is_zero()) {
      CHECK(d.is_homogeneous());
      CHECK(d.degree() == 4);
    }
  }
}

TEST_CASE("cofactors of a diagonal matrix") {
  SymLinearMatrix m;
  m.set(0, 0, zvar(4, 0));
  m.set(1, 1, zvar(4, 1));
  m.set(2, 2, zvar(4, 2));
  m.set(3, 3, zvar(4, 0));
  CHECK(cofactor3(m, 3, 3) == zvar(4, 0) * zvar(4, 0) * zvar(4, 1));
  CHECK(cofactor3(m, 4, 4) == zvar(4, 0) * zvar(4, 1) * zvar(4, 2));
}

TEST_CASE("adjugate identity: adj(M) * M = det(M) * I") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    SymLinearMatrix m = random_sym_linear(rng, 2);
    QPoly det = det_sym4(m);
    PolyMat<Rational> adj = poly_mat_zero<Rational>(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) adj[i][j] = cofactor3(m.mat(), j + 1, i + 1);
    PolyMat<Rational> prod = poly_mat_mul(adj, m.mat());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(prod[i][j] == (i == j ? det : QPoly(4)));
    // symmetry of the adjugate of a symmetric matrix
    CHECK(cofactor3(m.mat(), 3, 4) == cofactor3(m.mat(), 4, 3));
  }
}

TEST_CASE("complementary-minor identity behind the discriminant split") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    SymLinearMatrix m = random_sym_linear(rng, 2);
    QPoly a33 = cofactor3(m.mat(), 3, 3), a44 = cofactor3(m.mat(), 4, 4), a34 = cofactor3(m.mat(), 3, 4);
    QPoly lhs = a33 * a44 - a34 * a34;
    QPoly rhs = det_sym4(m) * minor2(m.mat(), 1, 2, 1, 2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("resultant worked examples") {
  // Res_y(y^2 - x, y - x) = x^2 - x, in variables (x, y)
  QPoly x = zvar(2, 0), y = zvar(2, 1);
  QPoly r = resultant(y * y - x, y - x, 1);
  CHECK(r == x * x - x);
  // Res_x(x - a, x - b) = a - b, in variables (x, a, b)
  QPoly xx = zvar(3, 0), a = zvar(3, 1), b = zvar(3, 2);
  CHECK(resultant(xx - a, xx - b, 0) == a - b);
  CHECK_THROWS_AS(resultant(QPoly(2), y, 1), std::invalid_argument);
  CHECK_THROWS_AS(resultant(x, y, 1), std::invalid_argument);  // x has degree 0 in y
}

TEST_CASE("resultant vanishes on projections of common zeros mod p") {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {11u, 13u}) {
    Fq F(p);
    for (int trial = 0; trial < 4; ++trial) {
      // conic and cubic with z2-leading coefficient 1 so reduction keeps degree
      QPoly conic(3), cubic(3);
      auto rnd = [&](int lo, int hi) { return Rational(std::int64_t(rng() % std::uint64_t(hi - lo + 1)) + lo); };
      conic.add_term({0, 0, 2}, Rational(1));
      cubic.add_term({0, 0, 3}, Rational(1));
      for (std::uint32_t i = 0; i <= 2; ++i)
        for (std::uint32_t j = 0; i + j <= 2; ++j) {
          if (i + j == 0) continue;  // keep z2-lead fixed
          conic.add_term({i, j, 2 - i - j}, rnd(-4, 4));
        }
      for (std::uint32_t i = 0; i <= 3; ++i)
        for (std::uint32_t j = 0; i + j <= 3; ++j) {
          if (i + j == 0) continue;
          cubic.add_term({i, j, 3 - i - j}, rnd(-4, 4));
        }
      QPoly res = resultant(conic, cubic, 2);
      CHECK(res.degree_in(2) <= 0);
      auto to_f = [&](const QPoly& f) {
        return f.map_coeffs<FqElem>([&](const Rational& c) { return F.from_rational(c); });
      };
      auto cf = to_f(conic), uf = to_f(cubic), rf = to_f(res);
      for (std::uint64_t a0 = 0; a0 < p; ++a0)
        for (std::uint64_t a1 = 0; a1 < p; ++a1) {
          if (a0 == 0 && a1 == 0) continue;
          for (std::uint64_t a2 = 0; a2 < p; ++a2) {
            std::vector<FqElem> pt{F.make(a0), F.make(a1), F.make(a2)};
            if (cf.eval(pt).is_zero() && uf.eval(pt).is_zero()) {
              CHECK(rf.eval(pt).is_zero());
            }
          }
        }
    }
  }
}

TEST_CASE("scalar matrix determinant, rank, and congruence") {
  SmallMat<Rational> m(3);
  std::int64_t vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = Rational(vals[i][j]);
  CHECK(m.det() == 2 * (3 * 4 - 1) - 1 * 4);  // 18
  CHECK(m.rank() == 3);

  SmallMat<Rational> r2(4);  // x y^t + y x^t has rank 2
  std::int64_t xv[4] = {1, 2, 0, -1}, yv[4] = {3, 0, 1, 1};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r2.at(i, j) = Rational(xv[i] * yv[j] + xv[j] * yv[i]);
  CHECK(r2.rank() == 2);
  CHECK(r2.det() == 0);
}

TEST_CASE("symmetric diagonalization over the rationals") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    SmallMat<Rational> m(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        Rational v(std::int64_t(rng() % 11) - 5);
        m.at(i, j) = v;
        m.at(j, i) = v;
      }
    auto [p, d] = sym_diagonalize(m, Rational(1));
    SmallMat<Rational> got = m.congruence(p);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) {
          CHECK(got.at(i, i) == d[i]);
          if (!(d[i] == 0)) ++nonzero;
        } else {
          CHECK(got.at(i, j) == 0);
        }
      }
    CHECK(nonzero == m.rank());
    CHECK(!(p.det() == 0));
  }
}

TEST_CASE("symmetric diagonalization over a finite field") {
  Fq F(13);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    SmallMat<FqElem> m(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        FqElem v = F.make(rng() % 13);
        m.at(i, j) = v;
        m.at(j, i) = v;
      }
    auto d = sym_diag_values(m);
    std::size_t nonzero = 0;
    FqElem prod;
    bool first = true;
    for (const auto& v : d)
      if (!v.is_zero()) {
        ++nonzero;
        prod = first ? v : prod * v;
        first = false;
      }
    CHECK(nonzero == m.rank());
    // congruence preserves the square class of the determinant
    if (nonzero == 4) CHECK(F.chi(m.det()) == F.chi(prod));
    if (nonzero < 4) CHECK(m.det().is_zero());
  }
}
