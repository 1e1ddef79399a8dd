#pragma once

// Finite fields F_q for q = p or q = p^2, p an odd prime.
//
// F_{p^2} is realized as F_p[t]/(t^2 - r) where r is the smallest
// quadratic non-residue mod p, found by a deterministic scan, so the
// representation of every field is reproducible across runs.
//
// Elements (FqElem) are self-describing values carrying (p, k, r) next to
// their coordinates; this keeps them usable as coefficients of the generic
// polynomial templates.  A default-constructed element is the "unbound"
// zero, compatible with any field, so that generic code can start sums
// from FqElem{}.  The Fq descriptor owns the quadratic-character table and
// the enumeration order used by the counting loops.
//
// Characteristic 2 is excluded everywhere: every consumer divides by 2.

#include "symforge/intutil.hpp"
#include "symforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace symforge {

class BadPrimeError : public std::runtime_error {
 public:
  explicit BadPrimeError(const std::string& what) : std::runtime_error(what) {}
};

class FieldMismatchError : public std::logic_error {
 public:
  explicit FieldMismatchError(const std::string& what) : std::logic_error(what) {}
};

struct FqElem {
  // p == 0 marks the unbound zero (additive identity of any field).
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  std::uint32_t r = 0;  // t^2 = r for k == 2; unused for k == 1
  std::uint64_t c0 = 0, c1 = 0;  // value = c0 + c1*t

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  bool bound() const { return p != 0; }
};

namespace detail {

// Resolve the common field of two operands; promote k=1 into k=2.
inline FqElem fq_promote(const FqElem& x, std::uint32_t p, std::uint32_t k, std::uint32_t r) {
  FqElem y = x;
  y.p = p;
  y.k = k;
  y.r = r;
  return y;
}

inline void fq_resolve(const FqElem& a, const FqElem& b, std::uint32_t& p, std::uint32_t& k,
                       std::uint32_t& r) {
  if (!a.bound() && !b.bound()) {
    p = 0;
    k = 1;
    r = 0;
    return;
  }
  if (a.bound() && b.bound() && a.p != b.p)
    throw FieldMismatchError("FqElem characteristic mismatch");
  p = a.bound() ? a.p : b.p;
  k = std::max(a.bound() ? a.k : 1, b.bound() ? b.k : 1);
  r = 0;
  if (k == 2) {
    if (a.bound() && a.k == 2) r = a.r;
    if (b.bound() && b.k == 2) {
      if (r != 0 && r != b.r) throw FieldMismatchError("FqElem modulus mismatch");
      r = b.r;
    }
  }
}

}  // namespace detail

inline FqElem operator+(const FqElem& a, const FqElem& b) {
  std::uint32_t p, k, r;
  detail::fq_resolve(a, b, p, k, r);
  if (p == 0) return FqElem{};
  FqElem out{p, k, r, (a.c0 + b.c0) % p, (a.c1 + b.c1) % p};
  return out;
}

inline FqElem operator-(const FqElem& a) {
  if (!a.bound()) return a;
  FqElem out = a;
  out.c0 = (a.p - a.c0 % a.p) % a.p;
  out.c1 = (a.p - a.c1 % a.p) % a.p;
  return out;
}

inline FqElem operator-(const FqElem& a, const FqElem& b) { return a + (-b); }

inline FqElem operator*(const FqElem& a, const FqElem& b) {
  std::uint32_t p, k, r;
  detail::fq_resolve(a, b, p, k, r);
  if (p == 0) return FqElem{};
  if (a.is_zero() || b.is_zero()) return FqElem{p, k, r, 0, 0};
  if (k == 1) return FqElem{p, k, r, mulmod_u64(a.c0, b.c0, p), 0};
  // (a0 + a1 t)(b0 + b1 t) with t^2 = r
  std::uint64_t c0 = (mulmod_u64(a.c0, b.c0, p) + mulmod_u64(r, mulmod_u64(a.c1, b.c1, p), p)) % p;
  std::uint64_t c1 = (mulmod_u64(a.c0, b.c1, p) + mulmod_u64(a.c1, b.c0, p)) % p;
  return FqElem{p, k, r, c0, c1};
}

inline FqElem inv(const FqElem& a) {
  if (!a.bound() || a.is_zero()) throw std::domain_error("FqElem inverse of zero");
  std::uint32_t p = a.p;
  if (a.k == 1 || a.c1 == 0) {
    FqElem out = a;
    out.c0 = powmod_u64(a.c0, p - 2, p);
    out.c1 = 0;
    return out;
  }
  // (a0 + a1 t)^-1 = (a0 - a1 t) / (a0^2 - r a1^2); the norm is nonzero
  // because t^2 = r has no root in F_p.
  std::uint64_t n = (mulmod_u64(a.c0, a.c0, p) + p - mulmod_u64(a.r, mulmod_u64(a.c1, a.c1, p), p) % p) % p;
  std::uint64_t ninv = powmod_u64(n, p - 2, p);
  return FqElem{p, a.k, a.r, mulmod_u64(a.c0, ninv, p), mulmod_u64((p - a.c1 % p) % p, ninv, p)};
}

inline FqElem operator/(const FqElem& a, const FqElem& b) { return a * inv(b); }

inline bool operator==(const FqElem& a, const FqElem& b) {
  if (!a.bound() || !b.bound()) return a.is_zero() == b.is_zero() && (a.is_zero() || (a.c0 == b.c0 && a.c1 == b.c1));
  if (a.p != b.p) throw FieldMismatchError("FqElem comparison across characteristics");
  return a.c0 == b.c0 && a.c1 == b.c1;
}

inline bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }

inline FqElem fq_pow(FqElem base, std::uint64_t e) {
  if (!base.bound()) return e == 0 ? FqElem{0, 1, 0, 1, 0} : base;
  FqElem acc{base.p, base.k, base.r, 1, 0};
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

inline FqElem fq_conj(const FqElem& a) {
  // Frobenius x -> x^p; identity on the base field.
  if (!a.bound() || a.k == 1) return a;
  FqElem out = a;
  out.c1 = (a.p - a.c1 % a.p) % a.p;
  return out;
}

// Field descriptor with the precomputed quadratic-character table.
class Fq {
 public:
  explicit Fq(std::uint32_t p, std::uint32_t k = 1) : p_(p), k_(k) {
    if (p < 3 || !is_prime_u64(p)) throw std::domain_error("Fq needs an odd prime p");
    if (k != 1 && k != 2) throw std::domain_error("Fq supports k in {1,2} only");
    q_ = k == 1 ? p : std::uint64_t(p) * p;
    // chi table over the base field: 0 -> 0, squares -> +1, rest -> -1
    chi_.assign(p, -1);
    chi_[0] = 0;
    for (std::uint64_t x = 1; x < p; ++x) chi_[mulmod_u64(x, x, p)] = 1;
    r_ = 0;
    if (k == 2) {
      for (std::uint32_t c = 2; c < p; ++c) {
        if (chi_[c] == -1) {
          r_ = c;
          break;
        }
      }
    }
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t r() const { return r_; }
  std::uint64_t q() const { return q_; }

  FqElem zero() const { return FqElem{p_, k_, r_, 0, 0}; }
  FqElem one() const { return FqElem{p_, k_, r_, 1, 0}; }

  FqElem make(std::uint64_t c0, std::uint64_t c1 = 0) const {
    if (c1 != 0 && k_ == 1) throw std::domain_error("Fq: t-coordinate in a prime field");
    return FqElem{p_, k_, r_, c0 % p_, c1 % p_};
  }

  FqElem from_int(std::int64_t v) const {
    std::int64_t m = v % std::int64_t(p_);
    if (m < 0) m += p_;
    return make(std::uint64_t(m));
  }

  FqElem from_integer(const Int& v) const { return make(mod_p(v, p_)); }

  FqElem from_rational(const Rational& x) const {
    std::uint64_t den = mod_p(denom(x), p_);
    if (den == 0)
      throw BadPrimeError("denominator of " + symforge::to_string(x) + " vanishes mod " +
                          std::to_string(p_));
    return make(mulmod_u64(mod_p(numer(x), p_), powmod_u64(den, p_ - 2, p_), p_));
  }

  // Enumeration order: index i <-> (c0, c1) = (i mod p, i div p).
  FqElem element(std::uint64_t index) const { return FqElem{p_, k_, r_, index % p_, (index / p_) % p_}; }
  std::uint64_t index_of(const FqElem& x) const { return x.c0 + std::uint64_t(x.c1) * p_; }

  // Quadratic character of F_q, values in {-1, 0, +1}.  For k = 2 it factors
  // through the norm: x^((q-1)/2) = N(x)^((p-1)/2).  Base-field elements
  // embedded in F_{p^2} are always squares there (their norm is a square).
  int chi(const FqElem& x) const {
    if (x.bound() && x.p != p_) throw FieldMismatchError("chi across characteristics");
    if (x.is_zero()) return 0;
    if (k_ == 1) {
      if (x.k == 2 && x.c1 % p_ != 0) throw FieldMismatchError("chi: element outside F_p");
      return chi_[x.c0 % p_];
    }
    std::uint64_t n =
        (mulmod_u64(x.c0, x.c0, p_) + p_ - mulmod_u64(r_, mulmod_u64(x.c1, x.c1, p_), p_)) % p_;
    return n == 0 ? 0 : chi_[n];
  }

  // Deterministic square root by scan; intended for setup work only
  // (embedding sqrt(d)), never for per-point loops.
  std::optional<FqElem> sqrt(const FqElem& v) const {
    for (std::uint64_t i = 0; i < q_; ++i) {
      FqElem c = element(i);
      if (c * c == detail::fq_promote(v, p_, k_, r_)) return c;
    }
    return std::nullopt;
  }

 private:
  std::uint32_t p_, k_, r_ = 0;
  std::uint64_t q_;
  std::vector<int> chi_;
};

// Reference definition of the character, used by the property tests to
// pin the table-driven chi to its defining power map.
inline int chi_by_pow(const Fq& F, const FqElem& x) {
  if (x.is_zero()) return 0;
  FqElem e = fq_pow(detail::fq_promote(x, F.p(), F.k(), F.r()), (F.q() - 1) / 2);
  if (e == F.one()) return 1;
  return -1;
}

inline std::string scalar_str(const FqElem& x) {
  if (x.k <= 1 || x.c1 == 0) return std::to_string(x.c0);
  return std::to_string(x.c0) + "+" + std::to_string(x.c1) + "*t";
}

}  // namespace symforge
