#pragma once

// Assembly of the quartic threefold from its plane data.  The quartic
//   h = alpha z3^2 + beta z3 + gamma + delta z4^2
// in z0..z4 couples the projected symmetroid (alpha, beta, gamma) with a
// fresh conic delta; eps1 eps2 = beta^2 - 4 alpha gamma splits over Q(sqrt d).
// An instance carries the full certificate bundle plus an integer witness
// set: a prime is "good" when it is odd and divides no witness, so every
// certified conclusion has a chance to survive reduction mod p and can be
// cross-checked by brute force.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "genericity.hpp"
#include "symmetroid.hpp"

namespace symforge {

// Symmetric Gram matrix of a ternary quadratic form (off-diagonal entries
// halved).
inline SmallMat<Rational> conic_gram(const MultiPoly<Rational>& q) {
  if (q.nvars() != 3 || q.is_zero() || q.degree() != 2)
    throw std::invalid_argument("conic_gram expects a ternary quadratic form");
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
  return gram;
}

struct Instance {
  ProjectedSymmetroid ps;
  DiscriminantSplit split;
  MultiPoly<Rational> delta{3};
  MultiPoly<Rational> h{5};
  Int normalization = 1;  // smallest positive integer clearing all denominators of h
  GenericityReport report;
  std::vector<Int> witness_set;  // distinct integers > 1; a good prime divides none

  explicit Instance(ProjectedSymmetroid p) : ps(std::move(p)) {}
};

namespace detail {

// A nonzero scalar stays nonzero mod p iff p divides neither part.
inline void add_witness(std::vector<Int>& ws, const Rational& w) {
  if (w == 0) return;
  Int n = abs(numer(w)), d = denom(w);
  if (n > 1) ws.push_back(n);
  if (d > 1) ws.push_back(d);
}

// A coefficient only needs its denominator invertible to reduce.
inline void add_denominator(std::vector<Int>& ws, const Rational& w) {
  Int d = denom(w);
  if (d > 1) ws.push_back(d);
}

}  // namespace detail

// Build the quartic, certify the plane configuration, and collect the
// witness set: coefficient denominators of every stored polynomial, Gram
// determinants of alpha and delta, the scalars recorded by passing
// certificates, and the extension discriminant d.
inline Instance assemble_instance(const ProjectedSymmetroid& ps, const DiscriminantSplit& split,
                                  const MultiPoly<Rational>& delta) {
  if (delta.nvars() != 3 || delta.is_zero() || delta.degree() != 2)
    throw std::invalid_argument("assemble_instance: delta must be a ternary quadratic form");
  if (split.d != ps.d)
    throw std::invalid_argument("assemble_instance: discriminant split from a different field");

  Instance inst(ps);
  inst.split = split;
  inst.delta = delta;

  MultiPoly<Rational> z3 = MultiPoly<Rational>::variable(5, 3, Rational(1));
  MultiPoly<Rational> z4 = MultiPoly<Rational>::variable(5, 4, Rational(1));
  inst.h = ps.alpha.pad_vars(5) * z3 * z3 + ps.beta.pad_vars(5) * z3 + ps.gamma.pad_vars(5) +
           delta.pad_vars(5) * z4 * z4;
  if (inst.h.is_zero() || inst.h.degree() != 4)
    throw std::logic_error("assembled quartic has the wrong degree");

  for (const auto& [e, c] : inst.h.terms()) {
    Int den = denom(c);
    inst.normalization = inst.normalization / gcd(inst.normalization, den) * den;
  }

  inst.report = full_genericity(GenericityInput{ps.alpha, delta, split.eps1, split.eps2});

  std::vector<Int>& ws = inst.witness_set;
  for (const auto& [e, c] : inst.h.terms()) detail::add_denominator(ws, c);
  for (const MultiPoly<QuadExt>* f : {&split.eps1, &split.eps2})
    for (const auto& [e, c] : f->terms()) {
      detail::add_denominator(ws, c.a());
      detail::add_denominator(ws, c.b());
    }
  detail::add_witness(ws, conic_gram(ps.alpha).det());
  detail::add_witness(ws, conic_gram(delta).det());
  for (const Certificate& cert : inst.report.certificates)
    for (const Rational& w : cert.nonzero_witnesses) detail::add_witness(ws, w);
  detail::add_witness(ws, Rational(ps.d));

  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return inst;
}

// p is good when it is an odd prime dividing no witness integer.
inline bool good_prime(const Instance& inst, std::int64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(std::uint64_t(p))) return false;
  for (const Int& w : inst.witness_set)
    if (w % p == 0) return false;
  return true;
}

// The first `count` good primes at or above `start`.
inline std::vector<std::int64_t> good_primes(const Instance& inst, std::size_t count,
                                             std::int64_t start = 3) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = start; out.size() < count; ++p)
    if (good_prime(inst, p)) out.push_back(p);
  return out;
}

}  // namespace symforge
