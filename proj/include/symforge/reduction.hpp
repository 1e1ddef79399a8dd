#pragma once

// Reduction of an instance mod a good prime.  The rational data drops into
// F_p coefficient by coefficient; the split pair lives over the smallest
// field containing a square root of d: F_p itself when d is a residue,
// F_{p^2} otherwise.  Reduction refuses primes outside the instance's good
// set, so every denominator and every recorded certificate scalar stays
// invertible.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fq.hpp"
#include "instance.hpp"

namespace symforge {

// A square root of the integer d inside F, by the field's setup-time scan.
// Over F_{p^2} every base-field scalar has one.
inline FqElem sqrt_in(const Fq& F, const Int& d) {
  auto r = F.sqrt(F.from_integer(d));
  if (!r) throw std::domain_error("no square root of " + d.str() + " in F_" + std::to_string(F.q()));
  return *r;
}

template <class Map>
MultiPoly<FqElem> reduce_poly(const MultiPoly<Rational>& f, std::size_t nvars, Map&& embed) {
  MultiPoly<FqElem> out(nvars);
  for (const auto& [e, c] : f.terms()) {
    FqElem v = embed(c);
    if (!v.is_zero()) out.add_term(e, v);
  }
  return out;
}

// Embed a + b sqrt(d) using the chosen square root.
inline MultiPoly<FqElem> reduce_quad_poly(const MultiPoly<QuadExt>& f, const Fq& F,
                                          const FqElem& sqrt_d) {
  MultiPoly<FqElem> out(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    FqElem v = F.from_rational(c.a()) + F.from_rational(c.b()) * sqrt_d;
    if (!v.is_zero()) out.add_term(e, v);
  }
  return out;
}

struct ReducedInstance {
  Fq base;         // F_p
  Fq ext;          // field of the split pair: F_p or F_{p^2}
  bool d_splits;   // sqrt(d) already in F_p
  FqElem sqrt_d;   // lives in ext
  MultiPoly<FqElem> alpha{3}, beta{3}, gamma{3}, delta{3};
  MultiPoly<FqElem> eps1{3}, eps2{3};
  MultiPoly<FqElem> h{5};

  ReducedInstance(const Fq& b, const Fq& e) : base(b), ext(e) {}
};

inline ReducedInstance reduce_instance(const Instance& inst, std::int64_t p) {
  if (!good_prime(inst, p))
    throw BadPrimeError("reduction requires a good prime, got " + std::to_string(p));
  Fq base{std::uint32_t(p)};
  bool splits = base.chi(base.from_integer(inst.ps.d)) == 1;
  Fq ext = splits ? base : Fq{std::uint32_t(p), 2};

  ReducedInstance red(base, ext);
  red.d_splits = splits;
  red.sqrt_d = sqrt_in(ext, inst.ps.d);
  auto emb = [&](const Rational& x) { return base.from_rational(x); };
  red.alpha = reduce_poly(inst.ps.alpha, 3, emb);
  red.beta = reduce_poly(inst.ps.beta, 3, emb);
  red.gamma = reduce_poly(inst.ps.gamma, 3, emb);
  red.delta = reduce_poly(inst.delta, 3, emb);
  red.h = reduce_poly(inst.h, 5, emb);
  red.eps1 = reduce_quad_poly(inst.split.eps1, ext, red.sqrt_d);
  red.eps2 = reduce_quad_poly(inst.split.eps2, ext, red.sqrt_d);
  return red;
}

// Canonical representatives of P^n(F): pivot position ascending, the pivot
// coordinate 1, earlier coordinates 0, later coordinates running through the
// field in element-index order with the leftmost free slot most significant.
inline std::vector<std::vector<FqElem>> projective_points(const Fq& F, std::size_t n) {
  std::vector<std::vector<FqElem>> pts;
  for (std::size_t pivot = 0; pivot <= n; ++pivot) {
    std::size_t free_slots = n - pivot;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free_slots; ++i) total *= F.q();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<FqElem> pt(n + 1, F.zero());
      pt[pivot] = F.one();
      std::uint64_t rest = idx;
      for (std::size_t i = free_slots; i-- > 0;) {
        pt[pivot + 1 + i] = F.element(rest % F.q());
        rest /= F.q();
      }
      pts.push_back(std::move(pt));
    }
  }
  return pts;
}

}  // namespace symforge
