#pragma once

// 4x4 symmetric matrices of forms: the quartic determinant, cofactors
// (adjugate entries), and small minors used by the discriminant split.

#include <stdexcept>
#include <vector>

#include "symforge/multipoly.hpp"
#include "symforge/rational.hpp"

namespace symforge {

template <class S>
using PolyMat = std::vector<std::vector<MultiPoly<S>>>;

template <class S>
PolyMat<S> poly_mat_zero(std::size_t n, std::size_t nvars) {
  return PolyMat<S>(n, std::vector<MultiPoly<S>>(n, MultiPoly<S>(nvars)));
}

// Symmetric 4x4 matrix of linear forms in z0..z3 over the rationals; only
// degree-1 (or zero) homogeneous entries are accepted.
class SymLinearMatrix {
 public:
  SymLinearMatrix() : m_(poly_mat_zero<Rational>(4, 4)) {}

  // 0-indexed; sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const MultiPoly<Rational>& f) {
    if (i >= 4 || j >= 4) throw std::invalid_argument("SymLinearMatrix index out of range");
    if (f.nvars() != 4) throw std::invalid_argument("SymLinearMatrix entries live in z0..z3");
    if (!f.is_zero() && !(f.is_homogeneous() && f.degree() == 1))
      throw std::invalid_argument("SymLinearMatrix entries must be linear forms");
    m_[i][j] = f;
    m_[j][i] = f;
  }

  const MultiPoly<Rational>& at(std::size_t i, std::size_t j) const {
    if (i >= 4 || j >= 4) throw std::invalid_argument("SymLinearMatrix index out of range");
    return m_[i][j];
  }

  const PolyMat<Rational>& mat() const { return m_; }

 private:
  PolyMat<Rational> m_;
};

// det of the symmetric matrix of linear forms: a homogeneous quartic.
inline MultiPoly<Rational> det_sym4(const SymLinearMatrix& m) { return poly_mat_det(m.mat()); }

// Laplace expansion along a chosen row: an independent determinant oracle.
template <class S>
MultiPoly<S> poly_mat_det_laplace(const PolyMat<S>& m, std::size_t row) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  MultiPoly<S> acc(m[0][0].nvars());
  for (std::size_t c = 0; c < n; ++c) {
    PolyMat<S> sub;
    sub.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      std::vector<MultiPoly<S>> r;
      r.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) r.push_back(m[i][j]);
      sub.push_back(std::move(r));
    }
    MultiPoly<S> term = m[row][c] * poly_mat_det_laplace(sub, 0);
    acc = ((row + c) % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Signed 3x3 minor of a 4x4 matrix of forms: the adjugate entry adj(M)_ij.
// Indices are 1-based. For symmetric M, adj_ij = adj_ji.
template <class S>
MultiPoly<S> cofactor3(const PolyMat<S>& m, std::size_t i, std::size_t j) {
  if (m.size() != 4) throw std::invalid_argument("cofactor3 needs a 4x4 matrix");
  if (i < 1 || i > 4 || j < 1 || j > 4) throw std::invalid_argument("cofactor3 indices are 1..4");
  PolyMat<S> sub;
  for (std::size_t r = 0; r < 4; ++r) {
    if (r == i - 1) continue;
    std::vector<MultiPoly<S>> rowv;
    for (std::size_t c = 0; c < 4; ++c)
      if (c != j - 1) rowv.push_back(m[r][c]);
    sub.push_back(std::move(rowv));
  }
  MultiPoly<S> d = poly_mat_det(sub);
  return ((i + j) % 2 == 0) ? d : -d;
}

inline MultiPoly<Rational> cofactor3(const SymLinearMatrix& m, std::size_t i, std::size_t j) {
  return cofactor3(m.mat(), i, j);
}

// 2x2 minor taking rows r1,r2 and columns c1,c2 (1-based).
template <class S>
MultiPoly<S> minor2(const PolyMat<S>& m, std::size_t r1, std::size_t r2, std::size_t c1,
                    std::size_t c2) {
  return m[r1 - 1][c1 - 1] * m[r2 - 1][c2 - 1] - m[r1 - 1][c2 - 1] * m[r2 - 1][c1 - 1];
}

}  // namespace symforge
