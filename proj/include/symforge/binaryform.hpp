#pragma once

// Squarefree structure of binary forms over a characteristic-0 field scalar
// (Rational or QuadExt): content, squarefree part, and the exact multiplicity
// profile, including the root at infinity. This is the whole gcd story of the
// pipeline; no general multivariate gcd exists here by design.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "symforge/multipoly.hpp"

namespace symforge {

template <class S>
struct UniPoly {
  std::vector<S> c;  // c[i] is the coefficient of x^i; no trailing zeros

  void normalize() {
    while (!c.empty() && scalar_is_zero(c.back())) c.pop_back();
  }
  std::int64_t degree() const { return std::int64_t(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const S& lead() const {
    if (c.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c.back();
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      if (i < a.c.size()) r.c[i] = r.c[i] + a.c[i];
      if (i < b.c.size()) r.c[i] = r.c[i] + b.c[i];
    }
    r.normalize();
    return r;
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c) x = S{} - x;
    return r;
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly{};
    UniPoly r;
    r.c.resize(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (scalar_is_zero(a.c[i])) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
  }

  friend UniPoly operator*(const UniPoly& a, const S& s) {
    UniPoly r;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(x * s);
    r.normalize();
    return r;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }

  UniPoly derivative() const {
    UniPoly r;
    for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(scalar_mul_int(c[i], std::int64_t(i)));
    r.normalize();
    return r;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return *this * (lead() / (lead() * lead()));  // multiply by 1/lead
  }
};

// Quotient and remainder over a field scalar.
template <class S>
std::pair<UniPoly<S>, UniPoly<S>> uni_divmod(const UniPoly<S>& a, const UniPoly<S>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  UniPoly<S> q, r = a;
  if (a.degree() >= b.degree()) q.c.resize(std::size_t(a.degree() - b.degree()) + 1);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = std::size_t(r.degree() - b.degree());
    S f = r.lead() / b.lead();
    q.c[shift] = q.c[shift] + f;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      r.c[i + shift] = r.c[i + shift] - f * b.c[i];
    r.normalize();
  }
  q.normalize();
  return {std::move(q), std::move(r)};
}

template <class S>
UniPoly<S> uni_div_exact(const UniPoly<S>& a, const UniPoly<S>& b) {
  auto [q, r] = uni_divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("expected exact polynomial division");
  return q;
}

// Monic gcd by the Euclidean algorithm, remainders re-normalized each step.
template <class S>
UniPoly<S> uni_gcd(UniPoly<S> a, UniPoly<S> b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    UniPoly<S> r = uni_divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Squarefree decomposition in characteristic 0: f = lead * prod a_i^i with
// each a_i monic squarefree, pairwise coprime. Returns (a_i, i) for the
// pieces of positive degree.
template <class S>
std::vector<std::pair<UniPoly<S>, int>> uni_squarefree_decompose(const UniPoly<S>& f) {
  std::vector<std::pair<UniPoly<S>, int>> out;
  if (f.degree() < 1) return out;
  UniPoly<S> fm = f.monic();
  UniPoly<S> d = uni_gcd(fm, fm.derivative());
  UniPoly<S> b = uni_div_exact(fm, d);
  UniPoly<S> c = uni_div_exact(fm.derivative(), d);
  UniPoly<S> z = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UniPoly<S> a = uni_gcd(b, z);
    if (a.degree() > 0) out.emplace_back(a, i);
    b = uni_div_exact(b, a);
    c = uni_div_exact(z, a);
    z = c - b.derivative();
    ++i;
  }
  return out;
}

template <class S>
struct BinaryFormAnalysis {
  MultiPoly<S> input;
  S content;                                      // scalar with input = content * prod pieces^mult
  MultiPoly<S> squarefree_part;                   // product of the pieces, each once
  std::vector<std::pair<MultiPoly<S>, int>> pieces;  // (form, multiplicity), pairwise coprime
  std::vector<std::pair<int, int>> profile;          // (degree, multiplicity), mult desc then deg desc

  bool is_squarefree() const {
    for (const auto& [deg, mult] : profile)
      if (mult != 1) return false;
    return true;
  }

  bool all_multiplicity(int m) const {
    if (profile.empty()) return false;
    for (const auto& [deg, mult] : profile)
      if (mult != m) return false;
    return true;
  }
};

namespace detail {

template <class S>
UniPoly<S> extract_univariate(const MultiPoly<S>& f, std::size_t vx) {
  std::int64_t d = f.degree();
  UniPoly<S> u;
  u.c.resize(std::size_t(d) + 1);
  for (const auto& [e, coef] : f.terms()) u.c[e[vx]] = coef;
  u.normalize();
  return u;
}

template <class S>
MultiPoly<S> homogenize_to(const UniPoly<S>& u, std::size_t nvars, std::size_t vx, std::size_t vy,
                           std::int64_t deg) {
  MultiPoly<S> out(nvars);
  for (std::size_t i = 0; i < u.c.size(); ++i) {
    if (scalar_is_zero(u.c[i])) continue;
    Expo e(nvars, 0);
    e[vx] = std::uint32_t(i);
    e[vy] = std::uint32_t(deg - std::int64_t(i));
    out.add_term(e, u.c[i]);
  }
  return out;
}

}  // namespace detail

// Full squarefree analysis of a binary form in variables (vx, vy) of f's
// ambient ring; all other variables must be absent.
template <class S>
BinaryFormAnalysis<S> analyze_binary_form(const MultiPoly<S>& f, std::size_t vx, std::size_t vy) {
  if (f.is_zero()) throw std::invalid_argument("analyze_binary_form: zero input");
  if (vx == vy || vx >= f.nvars() || vy >= f.nvars())
    throw std::invalid_argument("analyze_binary_form: bad variable pair");
  if (!f.is_homogeneous()) throw std::invalid_argument("analyze_binary_form: input not homogeneous");
  for (std::size_t v : f.vars_used())
    if (v != vx && v != vy)
      throw std::invalid_argument("analyze_binary_form: input is not binary in the given pair");

  std::int64_t d = f.degree();
  UniPoly<S> u = detail::extract_univariate(f, vx);
  std::int64_t d0 = u.degree();  // u nonzero since f is
  std::int64_t k_inf = d - d0;   // multiplicity of the vy-axis root

  BinaryFormAnalysis<S> out{f, u.lead(), MultiPoly<S>(f.nvars()), {}, {}};

  std::vector<std::pair<UniPoly<S>, int>> uni = uni_squarefree_decompose(u);
  std::vector<std::pair<MultiPoly<S>, int>> pieces;
  for (auto& [p, mult] : uni)
    pieces.emplace_back(detail::homogenize_to(p, f.nvars(), vx, vy, p.degree()), mult);
  if (k_inf > 0) {
    // the vy factor itself, with coefficient 1 = lead/lead
    Expo e(f.nvars(), 0);
    e[vy] = 1;
    MultiPoly<S> axis = MultiPoly<S>::monomial(f.nvars(), e, u.lead() / u.lead());
    bool merged = false;
    for (auto& [p, mult] : pieces)
      if (mult == k_inf) {
        p = p * axis;
        merged = true;
        break;
      }
    if (!merged) pieces.emplace_back(axis, int(k_inf));
  }

  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first.degree() > b.first.degree();
  });

  MultiPoly<S> sfp = MultiPoly<S>::constant(f.nvars(), u.lead() / u.lead());
  for (const auto& [p, mult] : pieces) {
    sfp = sfp * p;
    out.profile.emplace_back(int(p.degree()), mult);
  }
  out.squarefree_part = sfp;
  out.pieces = std::move(pieces);
  return out;
}

}  // namespace symforge
