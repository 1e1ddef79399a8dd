#pragma once

// Dense square matrices of exact field scalars: determinant and rank by
// Gaussian elimination, congruence transforms, and symmetric (Lagrange)
// diagonalization in characteristic != 2.

#include <stdexcept>
#include <utility>
#include <vector>

#include "symforge/multipoly.hpp"  // scalar_is_zero

namespace symforge {

template <class S>
class SmallMat {
 public:
  explicit SmallMat(std::size_t n) : n_(n), a_(n * n) {}

  static SmallMat identity(std::size_t n, const S& one) {
    SmallMat m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  std::size_t size() const { return n_; }
  S& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const S& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  }

  SmallMat transpose() const {
    SmallMat t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend SmallMat operator*(const SmallMat& a, const SmallMat& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    SmallMat c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (scalar_is_zero(a.at(i, k))) continue;
        for (std::size_t j = 0; j < a.n_; ++j)
          c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  friend bool operator==(const SmallMat& a, const SmallMat& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_ * a.n_; ++i)
      if (!(a.a_[i] == b.a_[i])) return false;
    return true;
  }

  // T^t * M * T
  SmallMat congruence(const SmallMat& t) const { return t.transpose() * (*this) * t; }

  S det() const {
    SmallMat w = *this;
    bool neg = false;
    S acc{};
    bool first = true;
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      while (piv < n_ && scalar_is_zero(w.at(piv, col))) ++piv;
      if (piv == n_) return S{};
      if (piv != col) {
        for (std::size_t j = 0; j < n_; ++j) std::swap(w.at(piv, j), w.at(col, j));
        neg = !neg;
      }
      const S p = w.at(col, col);
      acc = first ? p : acc * p;
      first = false;
      for (std::size_t i = col + 1; i < n_; ++i) {
        if (scalar_is_zero(w.at(i, col))) continue;
        S f = w.at(i, col) / p;
        for (std::size_t j = col; j < n_; ++j) w.at(i, j) = w.at(i, j) - f * w.at(col, j);
      }
    }
    return neg ? S{} - acc : acc;
  }

  std::size_t rank() const {
    SmallMat w = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n_ && r < n_; ++col) {
      std::size_t piv = r;
      while (piv < n_ && scalar_is_zero(w.at(piv, col))) ++piv;
      if (piv == n_) continue;
      if (piv != r)
        for (std::size_t j = 0; j < n_; ++j) std::swap(w.at(piv, j), w.at(r, j));
      const S p = w.at(r, col);
      for (std::size_t i = r + 1; i < n_; ++i) {
        if (scalar_is_zero(w.at(i, col))) continue;
        S f = w.at(i, col) / p;
        for (std::size_t j = col; j < n_; ++j) w.at(i, j) = w.at(i, j) - f * w.at(r, j);
      }
      ++r;
    }
    return r;
  }

  template <class T, class F>
  SmallMat<T> map(F&& fn) const {
    SmallMat<T> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out.at(i, j) = fn(at(i, j));
    return out;
  }

 private:
  std::size_t n_;
  std::vector<S> a_;
};

template <class S>
struct SymDiag {
  SmallMat<S> transform;  // P with P^t M P diagonal
  std::vector<S> diag;
};

namespace detail {

// One congruence sweep; tracks P column operations when p != nullptr.
template <class S>
void lagrange_sweep(SmallMat<S>& a, SmallMat<S>* p) {
  std::size_t n = a.size();
  auto swap_sym = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a.at(i, k), a.at(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a.at(k, i), a.at(k, j));
    if (p)
      for (std::size_t k = 0; k < n; ++k) std::swap(p->at(k, i), p->at(k, j));
  };
  // col j += f * col i, and symmetrically for rows
  auto add_sym = [&](std::size_t j, std::size_t i, const S& f) {
    for (std::size_t k = 0; k < n; ++k) a.at(k, j) = a.at(k, j) + f * a.at(k, i);
    for (std::size_t k = 0; k < n; ++k) a.at(j, k) = a.at(j, k) + f * a.at(i, k);
    if (p)
      for (std::size_t k = 0; k < n; ++k) p->at(k, j) = p->at(k, j) + f * p->at(k, i);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (scalar_is_zero(a.at(i, i))) {
      std::size_t d = i;
      while (d < n && scalar_is_zero(a.at(d, d))) ++d;
      if (d < n) {
        swap_sym(i, d);
      } else {
        // all remaining diagonal entries vanish; pull in an off-diagonal one
        std::size_t bj = n, bk = n;
        for (std::size_t j = i; j < n && bj == n; ++j)
          for (std::size_t k = j + 1; k < n; ++k)
            if (!scalar_is_zero(a.at(j, k))) {
              bj = j;
              bk = k;
              break;
            }
        if (bj == n) return;  // remaining block is zero
        add_sym(bk, bj, a.at(bj, bk) / (a.at(bj, bk) + a.at(bj, bk)));  // f = 1/2 in any char != 2
        swap_sym(i, bk);
      }
    }
    const S piv = a.at(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (scalar_is_zero(a.at(i, j))) continue;
      add_sym(j, i, S{} - a.at(i, j) / piv);
    }
  }
}

}  // namespace detail

// P^t M P = diag for symmetric M over a field of characteristic != 2.
template <class S>
SymDiag<S> sym_diagonalize(const SmallMat<S>& m, const S& one) {
  if (!m.is_symmetric()) throw std::invalid_argument("sym_diagonalize needs a symmetric matrix");
  SmallMat<S> a = m;
  SmallMat<S> p = SmallMat<S>::identity(m.size(), one);
  detail::lagrange_sweep(a, &p);
  std::vector<S> d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) d[i] = a.at(i, i);
  return {std::move(p), std::move(d)};
}

// Diagonal entries only; avoids needing a unit (works for bound field scalars).
template <class S>
std::vector<S> sym_diag_values(const SmallMat<S>& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("sym_diag_values needs a symmetric matrix");
  SmallMat<S> a = m;
  detail::lagrange_sweep(a, static_cast<SmallMat<S>*>(nullptr));
  std::vector<S> d(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) d[i] = a.at(i, i);
  return d;
}

}  // namespace symforge
