#pragma once

// Sparse multivariate polynomials over an exact scalar type (Rational, QuadExt,
// FqElem), with graded reverse-lexicographic term order so that equal
// polynomials serialize identically and begin() is the leading term.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace symforge {

using Expo = std::vector<std::uint32_t>;

inline std::uint64_t expo_total(const Expo& e) {
  std::uint64_t s = 0;
  for (auto v : e) s += v;
  return s;
}

// Orders exponent vectors grevlex-descending: the map's begin() is the
// grevlex-greatest monomial.
struct GrevlexDesc {
  bool operator()(const Expo& a, const Expo& b) const {
    std::uint64_t da = expo_total(a), db = expo_total(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

// Scalar predicates that hold across all three coefficient types without
// assuming anything about integer conversions (FqElem is an aggregate, so
// S(1) must never be used generically).
template <class S>
bool scalar_is_zero(const S& x) {
  if constexpr (requires { x.is_zero(); })
    return x.is_zero();
  else
    return x == 0;
}

// c * v by double-and-add; exact for every scalar type, no int conversion.
template <class S>
S scalar_mul_int(const S& c, std::int64_t v) {
  S acc{};
  if (v == 0) return acc;
  bool neg = v < 0;
  std::uint64_t u = neg ? std::uint64_t(-(v + 1)) + 1 : std::uint64_t(v);
  S base = c;
  while (u) {
    if (u & 1) acc = acc + base;
    if (u >>= 1) base = base + base;
  }
  return neg ? S{} - acc : acc;
}

template <class S>
class MultiPoly {
 public:
  using Terms = std::map<Expo, S, GrevlexDesc>;

  explicit MultiPoly(std::size_t nvars) : n_(nvars) {}

  static MultiPoly zero(std::size_t nvars) { return MultiPoly(nvars); }

  static MultiPoly constant(std::size_t nvars, const S& c) {
    MultiPoly p(nvars);
    p.add_term(Expo(nvars, 0), c);
    return p;
  }

  static MultiPoly monomial(std::size_t nvars, const Expo& e, const S& c) {
    if (e.size() != nvars) throw std::invalid_argument("monomial exponent width mismatch");
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
  }

  // c * z_i
  static MultiPoly variable(std::size_t nvars, std::size_t i, const S& c) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    Expo e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e, c);
  }

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t nterms() const { return terms_.size(); }

  void add_term(const Expo& e, const S& c) {
    if (e.size() != n_) throw std::invalid_argument("exponent width mismatch");
    if (scalar_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      S s = it->second + c;
      if (scalar_is_zero(s))
        terms_.erase(it);
      else
        it->second = std::move(s);
    }
  }

  S coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S{} : it->second;
  }

  const Expo& leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.begin()->first;
  }

  const S& leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.begin()->second;
  }

  std::int64_t degree() const {  // -1 for the zero polynomial
    std::int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max<std::int64_t>(d, std::int64_t(expo_total(e)));
    return d;
  }

  std::int64_t degree_in(std::size_t var) const {
    check_var(var);
    std::int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max<std::int64_t>(d, e[var]);
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    std::uint64_t d = expo_total(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (expo_total(e) != d) return false;
    return true;
  }

  void assert_homogeneous(const char* what) const {
    if (!is_homogeneous()) throw std::logic_error(std::string(what) + ": not homogeneous");
  }

  // Which variables actually occur.
  std::vector<std::size_t> vars_used() const {
    std::vector<bool> used(n_, false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (used[i]) out.push_back(i);
    return out;
  }

  MultiPoly operator-() const {
    MultiPoly out(n_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, S{} - c);
    return out;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.check_same(b);
    MultiPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same(b);
    MultiPoly out(a.n_);
    Expo e(a.n_, 0);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const S& s) {
    MultiPoly out(a.n_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, c * s);
    return out;
  }

  friend MultiPoly operator*(const S& s, const MultiPoly& a) { return a * s; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly derivative(std::size_t var) const {
    check_var(var);
    MultiPoly out(n_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Expo e2 = e;
      e2[var] -= 1;
      out.add_term(e2, scalar_mul_int(c, std::int64_t(e[var])));
    }
    return out;
  }

  S eval(const std::vector<S>& x) const {
    if (x.size() != n_) throw std::invalid_argument("evaluation point width mismatch");
    S acc{};
    for (const auto& [e, c] : terms_) {
      S t = c;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) t = t * x[i];
      acc = acc + t;
    }
    return acc;
  }

  // Substitute z_i -> images[i]; the result lives in the images' variable set.
  MultiPoly subst(const std::vector<MultiPoly>& images) const {
    if (images.size() != n_) throw std::invalid_argument("substitution needs one image per variable");
    std::size_t m = n_ ? images[0].n_ : 0;
    for (const auto& im : images)
      if (im.n_ != m) throw std::invalid_argument("substitution images disagree on variable count");
    MultiPoly out(m);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = MultiPoly::constant(m, c);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) t = t * images[i];
      out = out + t;
    }
    return out;
  }

  // Set z_var = 1 and delete that slot; remaining variables keep their order.
  MultiPoly dehomogenize(std::size_t var) const {
    check_var(var);
    MultiPoly out(n_ - 1);
    Expo e2(n_ - 1, 0);
    for (const auto& [e, c] : terms_) {
      std::size_t j = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (i != var) e2[j++] = e[i];
      out.add_term(e2, c);
    }
    return out;
  }

  // Coefficients of var^0, var^1, ... as polynomials with exponent 0 in var.
  std::vector<MultiPoly> coeffs_in(std::size_t var) const {
    check_var(var);
    std::int64_t d = degree_in(var);
    std::vector<MultiPoly> out(std::size_t(d < 0 ? 1 : d + 1), MultiPoly(n_));
    for (const auto& [e, c] : terms_) {
      Expo e2 = e;
      std::uint32_t k = e2[var];
      e2[var] = 0;
      out[k].add_term(e2, c);
    }
    return out;
  }

  // Append fresh trailing variables (exponent 0 everywhere).
  MultiPoly pad_vars(std::size_t new_nvars) const {
    if (new_nvars < n_) throw std::invalid_argument("pad_vars cannot shrink");
    MultiPoly out(new_nvars);
    Expo e2(new_nvars, 0);
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < n_; ++i) e2[i] = e[i];
      out.terms_.emplace(e2, c);
    }
    return out;
  }

  template <class T, class F>
  MultiPoly<T> map_coeffs(F&& fn) const {
    MultiPoly<T> out(n_);
    for (const auto& [e, c] : terms_) out.add_term(e, fn(c));
    return out;
  }

 private:
  void check_var(std::size_t var) const {
    if (var >= n_) throw std::invalid_argument("variable index out of range");
  }
  void check_same(const MultiPoly& b) const {
    if (n_ != b.n_) throw std::invalid_argument("variable count mismatch");
  }

  std::size_t n_;
  Terms terms_;
};

// Determinant of a square matrix of polynomials by cofactor expansion along
// the top remaining row, memoized on the set of surviving columns.
template <class S>
MultiPoly<S> poly_mat_det(const std::vector<std::vector<MultiPoly<S>>>& m) {
  std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("determinant of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant needs a square matrix");
  std::size_t nv = m[0][0].nvars();
  std::map<std::uint32_t, MultiPoly<S>> memo;
  auto rec = [&](auto&& self, std::uint32_t mask) -> const MultiPoly<S>& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::size_t cols = std::size_t(__builtin_popcount(mask));
    std::size_t r = n - cols;
    MultiPoly<S> acc(nv);
    if (cols == 1) {
      acc = m[r][std::size_t(__builtin_ctz(mask))];
    } else {
      std::size_t t = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask & (1u << c))) continue;
        const MultiPoly<S>& sub = self(self, mask & ~(1u << c));
        MultiPoly<S> term = m[r][c] * sub;
        acc = (t % 2 == 0) ? acc + term : acc - term;
        ++t;
      }
    }
    return memo.emplace(mask, std::move(acc)).first->second;
  };
  std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  return rec(rec, full);
}

// Sylvester resultant eliminating one variable: deg_var(g) rows of f's
// var-coefficients (descending) above deg_var(f) rows of g's.
template <class S>
MultiPoly<S> resultant(const MultiPoly<S>& f, const MultiPoly<S>& g, std::size_t var) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of the zero polynomial");
  std::int64_t dm = f.degree_in(var), de = g.degree_in(var);
  if (dm <= 0 || de <= 0)
    throw std::invalid_argument("resultant needs positive degree in the eliminated variable");
  std::size_t m = std::size_t(dm), e = std::size_t(de), n = m + e;
  std::vector<MultiPoly<S>> fc = f.coeffs_in(var), gc = g.coeffs_in(var);
  std::vector<std::vector<MultiPoly<S>>> syl(n, std::vector<MultiPoly<S>>(n, MultiPoly<S>(f.nvars())));
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t k = 0; k <= m; ++k) syl[i][i + k] = fc[m - k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= e; ++k) syl[e + i][i + k] = gc[e - k];
  return poly_mat_det(syl);
}

// Canonical text form, terms in the container's grevlex-descending order.
// Coefficients are rendered by an ADL-found scalar_str for the scalar type,
// so equal polynomials always produce identical bytes.
template <class S>
std::string poly_to_string(const MultiPoly<S>& f, const char* prefix = "z") {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) out += " + ";
    first = false;
    out += scalar_str(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += "*";
      out += prefix;
      out += std::to_string(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

}  // namespace symforge
