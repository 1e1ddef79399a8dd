#pragma once

// Arithmetic in the quadratic extension Q(sqrt(d)) for a squarefree
// integer d.  A value is a + b*sqrt(d) with exact rational a, b.
//
// Canonical form: whenever b == 0 the stored d collapses to 1, so plain
// rationals have a unique representation and values with different ambient
// d can mix as long as one side is rational.  Mixing two genuinely
// irrational values with different d is a logic error.

#include "symforge/intutil.hpp"
#include "symforge/fq.hpp"
#include "symforge/rational.hpp"

#include <stdexcept>
#include <string>

namespace symforge {

class QuadExt {
 public:
  QuadExt() : d_(1) {}
  QuadExt(const Rational& a) : d_(1), a_(a) {}  // NOLINT: implicit embed of Q
  QuadExt(int a) : d_(1), a_(a) {}              // NOLINT
  QuadExt(Int d, Rational a, Rational b) : d_(std::move(d)), a_(std::move(a)), b_(std::move(b)) {
    if (d_ == 0) throw std::domain_error("QuadExt: d must be nonzero");
    if (b_ == 0) {
      d_ = 1;
    } else if (d_ == 1) {
      // sqrt(1) = 1: fold into the rational part
      a_ += b_;
      b_ = 0;
    }
  }

  // The element sqrt(d) itself; d must already be squarefree (see
  // make_quad_ext for the normalizing constructor).
  static QuadExt sqrt_of(const Int& d) { return QuadExt(d, Rational(0), Rational(1)); }

  const Int& d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  const Rational& rational_value() const {
    if (!is_rational()) throw std::domain_error("QuadExt: irrational value");
    return a_;
  }

  QuadExt conj() const { return b_ == 0 ? *this : QuadExt(d_, a_, -b_); }
  Rational norm() const { return a_ * a_ - d_ * b_ * b_; }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    Int d = merged_d(x, y);
    return QuadExt(d, x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    Int d = merged_d(x, y);
    return QuadExt(d, x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(x.d_, -x.a_, -x.b_); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Int d = merged_d(x, y);
    return QuadExt(d, x.a_ * y.a_ + d * (x.b_ * y.b_), x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    if (y.is_zero()) throw std::domain_error("QuadExt: division by zero");
    if (y.is_rational()) return QuadExt(x.d_, x.a_ / y.a_, x.b_ / y.a_);
    // 1/(a + b sqrt d) = (a - b sqrt d)/norm; norm != 0 because d is
    // squarefree and != 1, so sqrt(d) is irrational.
    Rational n = y.norm();
    return x * QuadExt(y.d_, y.a_ / n, -y.b_ / n);
  }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_)
      throw FieldMismatchError("QuadExt comparison across extensions");
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  std::string str() const {
    if (b_ == 0) return to_string(a_);
    std::string s = "(" + to_string(a_);
    s += (b_ > 0 ? " + " : " - ") + to_string(abs(b_)) + "*sqrt(" + d_.str() + "))";
    return s;
  }

 private:
  static Int merged_d(const QuadExt& x, const QuadExt& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw FieldMismatchError("QuadExt arithmetic across extensions");
    return x.d_;
  }

  Int d_;
  Rational a_, b_;
};

// sqrt(d_raw) written as scale*sqrt(d) with d squarefree: the squarefree
// normalization entry point (8 -> 2*sqrt(2), -1 -> sqrt(-1), m^2 -> m).
inline QuadExt make_quad_ext(const Int& d_raw) {
  SquarefreeSplit s = squarefree_split(d_raw);
  if (s.d == 1) return QuadExt(Rational(s.scale));
  return QuadExt(s.d, Rational(0), Rational(s.scale));
}

inline std::string scalar_str(const QuadExt& x) { return x.str(); }

}  // namespace symforge
