#include <catch2/catch_amalgamated.hpp>

#include "symforge/blowup.hpp"
#include "symforge/serialization.hpp"
#include "symforge/threefold.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <vector>

using namespace symforge;

namespace {

using QPoly = MultiPoly<Rational>;
using EPoly = MultiPoly<QuadExt>;

QPoly zv(std::size_t n, std::size_t i) { return QPoly::variable(n, i, Rational(1)); }

// block symmetroid diag(z0,z1,z2,z0) + z3 (E34 + E43): the determinant is
// z0^2 z1 z2 - z0 z1 z3^2, already hyperbolic at the node (0:0:0:1)
SymLinearMatrix block_matrix() {
  SymLinearMatrix m;
  QPoly zero(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) m.set(i, j, zero);
  m.set(0, 0, zv(4, 0));
  m.set(1, 1, zv(4, 1));
  m.set(2, 2, zv(4, 2));
  m.set(3, 3, zv(4, 0));
  m.set(2, 3, zv(4, 3));
  return m;
}

Instance block_instance() {
  ProjectedSymmetroid ps = project_from_node(block_matrix());
  DiscriminantSplit split = split_discriminant(ps);
  QPoly delta = zv(3, 2) * zv(3, 2);
  return assemble_instance(ps, split, delta);
}

struct Fixture {
  Instance inst;
  Json meta;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    std::ifstream in(std::string(SYMFORGE_SOURCE_DIR) + "/data/reference_instance.json");
    REQUIRE(in.good());
    Json j = Json::parse(in);
    std::ifstream mj(std::string(SYMFORGE_SOURCE_DIR) + "/data/reference_meta.json");
    REQUIRE(mj.good());
    return Fixture{instance_from_json(j), Json::parse(mj)};
  }();
  return f;
}

std::vector<std::int64_t> meta_good_primes() {
  std::vector<std::int64_t> out;
  for (const auto& p : fixture().meta["good_primes"]) out.push_back(p.get<std::int64_t>());
  return out;
}

}  // namespace

TEST_CASE("block example: projection data and one blowup chart by hand") {
  Instance inst = block_instance();
  CHECK(inst.ps.alpha == -(zv(3, 0) * zv(3, 1)));
  CHECK(inst.ps.beta.is_zero());
  CHECK(inst.ps.gamma == zv(3, 0) * zv(3, 0) * zv(3, 1) * zv(3, 2));

  // chart: ambient z4, pivot z0; coordinates (y0, y1, y2, y3)
  Chart chart = strict_transform_chart(inst, ChartId{4, 0});
  QPoly y0 = zv(4, 0), y1 = zv(4, 1), y2 = zv(4, 2), y3 = zv(4, 3);
  QPoly expected = -(y1 * y3 * y3) + y1 * y2 * y0 * y0 + y2 * y2;
  CHECK(chart.f == expected);
}

TEST_CASE("the center line lies on every assembled quartic") {
  // h(0,0,0,z3,z4) == 0 identically: every term carries a plane variable
  Instance block = block_instance();
  for (const Instance* inst : {&block, &fixture().inst}) {
    std::vector<QPoly> img(5, QPoly(5));
    img[3] = zv(5, 3);
    img[4] = zv(5, 4);
    CHECK(inst->h.subst(img).is_zero());
  }
}

TEST_CASE("assembly validates its inputs") {
  ProjectedSymmetroid ps = project_from_node(block_matrix());
  DiscriminantSplit split = split_discriminant(ps);
  // delta must be a ternary quadratic form
  CHECK_THROWS_AS(assemble_instance(ps, split, QPoly(3)), std::invalid_argument);
  CHECK_THROWS_AS(assemble_instance(ps, split, zv(3, 0)), std::invalid_argument);
  CHECK_THROWS_AS(assemble_instance(ps, split, zv(4, 0) * zv(4, 0)), std::invalid_argument);
  // a split from a different field is rejected
  DiscriminantSplit other = split;
  other.d = split.d + 3;
  CHECK_THROWS_AS(assemble_instance(ps, other, zv(3, 2) * zv(3, 2)), std::invalid_argument);
}

TEST_CASE("singular brute force on reference hypersurfaces") {
  // z0^2 in P^4(F_3): every point of the hyperplane z0 = 0 is singular
  Fq F3(3, 1);
  MultiPoly<FqElem> sq = MultiPoly<FqElem>::variable(5, 0, F3.one());
  sq = sq * sq;
  CHECK(singular_points_bruteforce(sq, F3).size() == 40);

  // Fermat quartic in P^3(F_7) is smooth: 7 does not divide 4
  Fq F7(7, 1);
  MultiPoly<FqElem> fermat(4);
  for (std::size_t v = 0; v < 4; ++v) {
    Expo e(4, 0);
    e[v] = 4;
    fermat.add_term(e, F7.one());
  }
  CHECK(singular_points_bruteforce(fermat, F7).empty());
}

TEST_CASE("witness set and the good-prime predicate") {
  const Instance& inst = fixture().inst;
  REQUIRE_FALSE(inst.witness_set.empty());
  for (std::size_t i = 0; i < inst.witness_set.size(); ++i) {
    CHECK(inst.witness_set[i] > 1);
    if (i > 0) CHECK(inst.witness_set[i - 1] < inst.witness_set[i]);
  }
  CHECK_FALSE(good_prime(inst, 2));
  CHECK_FALSE(good_prime(inst, 9));  // composite
  std::int64_t bad = fixture().meta["bad_prime"].get<std::int64_t>();
  CHECK_FALSE(good_prime(inst, bad));
  for (std::int64_t p : meta_good_primes()) {
    CAPTURE(p);
    CHECK(good_prime(inst, p));
  }
}

TEST_CASE("reduction keeps the discriminant split intact") {
  const Instance& inst = fixture().inst;
  for (std::int64_t p : meta_good_primes()) {
    if (p > 13) continue;
    CAPTURE(p);
    ReducedInstance red = reduce_instance(inst, p);
    REQUIRE(red.h.degree() == 4);
    REQUIRE(red.eps1.degree() == 3);
    REQUIRE(red.eps2.degree() == 3);
    // eps1 eps2 = beta^2 - 4 alpha gamma survives the reduction
    MultiPoly<FqElem> prod = red.eps1 * red.eps2;
    MultiPoly<FqElem> disc =
        red.beta * red.beta + red.alpha * red.gamma * red.base.from_int(-4);
    for (const auto& a : projective_points(red.ext, 2)) {
      if (!(prod.eval(a) == disc.eval(a))) {
        CAPTURE(p);
        REQUIRE(prod.eval(a) == disc.eval(a));
      }
    }
  }
}

TEST_CASE("node scheme bookkeeping at the good primes") {
  const Instance& inst = fixture().inst;
  for (std::int64_t p : meta_good_primes()) {
    if (p > 50) continue;
    CAPTURE(p);
    NodeCount nodes = count_nodes_mod(inst, p);
    CHECK(nodes.fp_points == long(nodes.plane_points.size()));
    CHECK(nodes.fp2_points == nodes.fp_points + 2 * nodes.conjugate_pairs);
    CHECK(nodes.degree_total == 9);
  }
}

TEST_CASE("modular singular locus equals the line plus the lifted nodes") {
  const Instance& inst = fixture().inst;
  SingularLocusCertificate cert = singular_locus_certificate(inst, {11, 13});
  CHECK(cert.line_contained);
  CHECK(cert.node_count == 9);
  for (const char* dep : {"transversal_E1_E2", "empty_triple_A_E1_E2", "empty_triple_D_E1_E2"})
    CHECK(std::find(cert.dependencies.begin(), cert.dependencies.end(), std::string(dep)) !=
          cert.dependencies.end());
  REQUIRE(cert.modular.size() == 2);
  for (const auto& rec : cert.modular) {
    CAPTURE(rec.p);
    CHECK(rec.matched);
    CHECK(rec.line_points == rec.p + 1);
    CHECK(rec.node_degree_total == 9);
  }
  CHECK(cert.valid);
}

TEST_CASE("hyperplane section z4 = 0 shows all ten surface nodes") {
  const Instance& inst = fixture().inst;
  // det M = alpha z3^2 + beta z3 + gamma: the symmetroid in P^3 with its
  // node at (0:0:0:1) plus the nine projected ones
  QPoly z3 = zv(4, 3);
  QPoly surf = inst.ps.alpha.pad_vars(4) * z3 * z3 + inst.ps.beta.pad_vars(4) * z3 +
               inst.ps.gamma.pad_vars(4);
  for (std::int64_t p : {std::int64_t(11), std::int64_t(13)}) {
    if (!good_prime(inst, p)) continue;
    CAPTURE(p);
    Fq F(std::uint32_t(p), 1);
    auto emb = [&](const Rational& x) { return F.from_rational(x); };
    auto sing = singular_points_bruteforce(reduce_poly(surf, 4, emb), F);
    NodeCount nodes = count_nodes_mod(inst, p);
    CHECK(long(sing.size()) == 1 + nodes.fp_points);
  }
}

TEST_CASE("total transform factors as the exceptional square times the strict transform") {
  Instance block = block_instance();
  for (const Instance* inst : {&fixture().inst, &block}) {
    for (const ChartId& id : all_charts()) {
      CAPTURE(id.ambient, id.pivot);
      Chart chart = strict_transform_chart(*inst, id);
      QPoly y0 = zv(4, 0);
      CHECK(chart_total_transform(*inst, id) == y0 * y0 * chart.f);
    }
  }
}

TEST_CASE("strict transform is smooth along the exceptional locus mod 11 and 13") {
  const Instance& inst = fixture().inst;
  for (std::int64_t p : {std::int64_t(11), std::int64_t(13)}) {
    for (const ChartId& id : all_charts()) {
      CAPTURE(p, id.ambient, id.pivot);
      ChartSmoothness chk = chart_smoothness_check(inst, id, p);
      CHECK(chk.smooth);
      CHECK(chk.violations.empty());
      REQUIRE_FALSE(chk.dependencies.empty());
      ChartSmoothness surf = surface_chart_smoothness_check(inst, id, p);
      CHECK(surf.smooth);
    }
  }
}

TEST_CASE("corrupting delta to alpha is caught") {
  const Instance& inst = fixture().inst;
  Instance bad = assemble_instance(inst.ps, inst.split, inst.ps.alpha);
  // the named transversality condition fails: res(alpha, delta) = 0
  const Certificate* cert = bad.report.find("transversal_A_D");
  REQUIRE(cert != nullptr);
  CHECK_FALSE(cert->passed());
  CHECK_FALSE(bad.report.all_pass);

  // where sqrt(-1) exists mod a good prime, the chart scan sees the
  // singular curve {A = 0, y3^2 = -1} directly
  for (std::int64_t p = 3; p < 60; ++p) {
    if (p % 4 != 1 || !good_prime(bad, p)) continue;
    ChartSmoothness chk = chart_smoothness_check(bad, ChartId{4, 0}, p);
    CHECK_FALSE(chk.smooth);
    CHECK_FALSE(chk.violations.empty());
    return;
  }
  WARN("no small good prime with sqrt(-1) for the corrupted instance");
}

TEST_CASE("exceptional surface has six simple degenerate fibers") {
  const Instance& inst = fixture().inst;
  ExceptionalSurface surf = exceptional_surface(inst);
  REQUIRE(surf.pencil_sextic.degree() == 6);
  CHECK(surf.degenerate_fibers == 6);
  CHECK(surf.analysis.is_squarefree());
  for (const auto& [deg, mult] : surf.analysis.profile) CHECK(mult == 1);

  // delta := alpha degenerates the pencil to det(G) (z3^2 + z4^2)^3
  Instance bad = assemble_instance(inst.ps, inst.split, inst.ps.alpha);
  ExceptionalSurface worse = exceptional_surface(bad);
  CHECK(worse.degenerate_fibers == 2);
  REQUIRE(worse.analysis.profile.size() == 1);
  CHECK(worse.analysis.profile[0] == std::pair<int, int>(2, 3));
}

TEST_CASE("fiber census over F_11 agrees with independent scans and counts") {
  const Instance& inst = fixture().inst;
  ReducedInstance red = reduce_instance(inst, 11);
  const std::int64_t q = 11;

  std::map<FiberKind, long> census;
  std::vector<std::vector<FqElem>> pts = projective_points(red.base, 2);
  for (const auto& a : pts) ++census[classify_fiber(red, a).kind];
  long total = 0;
  for (const auto& [k, n] : census) total += n;
  CHECK(total == q * q + q + 1);

  // type 4 sits exactly over the rational points of the node scheme
  NodeCount nodes = count_nodes_mod(inst, 11);
  CHECK(census[FiberKind::LineSurfaceLine] == nodes.fp_points);

  // type 3 sits exactly over ((E1 u E2) n D) minus the type-4 locus
  long e_and_d = 0;
  for (const auto& a : pts) {
    bool e1 = red.eps1.eval(a).is_zero(), e2 = red.eps2.eval(a).is_zero();
    bool dd = red.delta.eval(a).is_zero();
    if ((e1 || e2) && dd && !(e1 && e2)) ++e_and_d;
  }
  CHECK(census[FiberKind::DoubleLine] == e_and_d);

  // 200 sampled fibers: classified type determines the F_q point count
  long sampled = 0, ramified_seen = 0;
  for (const auto& a : pts) {
    if (sampled >= 200) break;
    FiberType t = classify_fiber(red, a);
    if (t.kind == FiberKind::LineSurfaceLine) continue;
    long expect = -1;
    if (t.kind == FiberKind::Line) {
      expect = q + 1;
    } else if (t.kind == FiberKind::DoubleLine) {
      expect = q + 1;
    } else if (t.on_e1 != t.on_e2) {
      if (red.alpha.eval(a).is_zero()) continue;
      FiberSplitting s = splitting_character(red, a);
      CHECK((s.type == SplitType::Ramified) == t.on_d);
      if (s.type == SplitType::Ramified) ++ramified_seen;
      expect = s.expected_points;
    } else {
      // on D only: two lines meeting at (0:0:1), split by chi of the
      // discriminant of the binary part
      FqElem disc = red.beta.eval(a) * red.beta.eval(a) +
                    red.alpha.eval(a) * red.gamma.eval(a) * red.base.from_int(-4);
      REQUIRE_FALSE(disc.is_zero());
      expect = red.base.chi(disc) == 1 ? 2 * q + 1 : 1;
    }
    ++sampled;
    CAPTURE(sampled, int(t.kind), t.on_e1, t.on_e2, t.on_d);
    CHECK(fiber_point_count(red, a) == expect);
  }
  CHECK(sampled == 200);
  // the ramification locus E_i n D is small but nonempty over F_11 only if
  // the census found double-line fibers on a single branch; record either way
  INFO("ramified fibers among samples: " << ramified_seen);
  SUCCEED();
}
