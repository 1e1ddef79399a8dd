#pragma once

// JSON wire formats.  Every serializer is canonical: equal values produce
// byte-identical text (ordered keys, terms in the polynomial term order,
// rationals as "num/den" in lowest terms), so files diff cleanly and
// round-trip bit-exactly.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "counting.hpp"
#include "instance.hpp"

namespace symforge {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------------ scalars --

inline Json rational_to_json(const Rational& x) { return Json(to_string(x)); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational: expected \"num/den\" string");
  return rational_from_string(j.get<std::string>());
}

inline Json quadext_to_json(const QuadExt& x) {
  Json j = Json::object();
  j["d"] = x.d().convert_to<std::int64_t>();
  j["a"] = to_string(x.a());
  j["b"] = to_string(x.b());
  return j;
}

inline QuadExt quadext_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("a") || !j.contains("b"))
    throw std::invalid_argument("quadext: expected {\"d\", \"a\", \"b\"}");
  return QuadExt(Int(j["d"].get<std::int64_t>()), rational_from_json(j["a"]),
                 rational_from_json(j["b"]));
}

namespace detail {
inline Json scalar_to_json(const Rational& x) { return rational_to_json(x); }
inline Json scalar_to_json(const QuadExt& x) { return quadext_to_json(x); }
inline void scalar_from_json(const Json& j, Rational& out) { out = rational_from_json(j); }
inline void scalar_from_json(const Json& j, QuadExt& out) { out = quadext_from_json(j); }
}  // namespace detail

// -------------------------------------------------------------- polynomials --

// {"vars": ["z0", ...], "terms": [[[e0, ..., e_{n-1}], coeff], ...]} with the
// terms in the canonical (graded reverse-lexicographic, descending) order and
// no zero coefficients; this is exactly the storage order of MultiPoly.
template <class S>
Json poly_to_json(const MultiPoly<S>& f, const char* prefix = "z") {
  Json vars = Json::array();
  for (std::size_t i = 0; i < f.nvars(); ++i) vars.push_back(prefix + std::to_string(i));
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json expo = Json::array();
    for (std::size_t i = 0; i < f.nvars(); ++i) expo.push_back(int(e[i]));
    terms.push_back(Json::array({expo, detail::scalar_to_json(c)}));
  }
  Json j = Json::object();
  j["vars"] = vars;
  j["terms"] = terms;
  return j;
}

template <class S>
MultiPoly<S> poly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    throw std::invalid_argument("polynomial: expected {\"vars\", \"terms\"}");
  std::size_t n = j["vars"].size();
  MultiPoly<S> f(n);
  for (const Json& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2 || t[0].size() != n)
      throw std::invalid_argument("polynomial: malformed term");
    Expo e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = t[0][i].get<int>();
    S c;
    detail::scalar_from_json(t[1], c);
    f.add_term(e, c);
  }
  return f;
}

// ----------------------------------------------------------------- matrices --

inline Json smallmat_to_json(const SmallMat<Rational>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(to_string(m.at(i, k)));
    rows.push_back(row);
  }
  return rows;
}

// Ten upper-triangle entries in row-major order, each a 4-coefficient linear
// form [c(z0), c(z1), c(z2), c(z3)].
inline Json sym_linear_matrix_to_json(const SymLinearMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      Json form = Json::array();
      for (std::size_t v = 0; v < 4; ++v) {
        Expo e(4, 0);
        e[v] = 1;
        form.push_back(to_string(m.at(i, j).coeff(e)));
      }
      out.push_back(form);
    }
  return out;
}

inline SymLinearMatrix sym_linear_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 10)
    throw std::invalid_argument("matrix: expected 10 upper-triangle linear forms");
  SymLinearMatrix m;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t jj = i; jj < 4; ++jj) {
      const Json& form = j[k++];
      if (!form.is_array() || form.size() != 4)
        throw std::invalid_argument("matrix: linear form needs 4 coefficients");
      MultiPoly<Rational> f(4);
      for (std::size_t v = 0; v < 4; ++v) {
        Expo e(4, 0);
        e[v] = 1;
        f.add_term(e, rational_from_json(form[v]));
      }
      m.set(i, jj, f);
    }
  return m;
}

// ------------------------------------------------------------- certificates --

inline Json certificate_to_json(const Certificate& cert) {
  Json j = Json::object();
  j["condition"] = cert.condition;
  j["status"] = cert_status_name(cert.status);
  j["schedule_index"] = cert.schedule_index;
  j["coordinate_change"] = smallmat_to_json(cert.coordinate_change);
  Json w = Json::object();
  for (const auto& [k, v] : cert.witnesses) w[k] = v;  // std::map: keys sorted
  j["witnesses"] = w;
  j["reason"] = cert.reason;
  j["count"] = cert.count ? Json(*cert.count) : Json(nullptr);
  Json nz = Json::array();
  for (const Rational& v : cert.nonzero_witnesses) nz.push_back(to_string(v));
  j["nonzero_witnesses"] = nz;
  return j;
}

inline Json report_to_json(const GenericityReport& report) {
  Json j = Json::object();
  j["all_pass"] = report.all_pass;
  Json certs = Json::array();
  for (const Certificate& c : report.certificates) certs.push_back(certificate_to_json(c));
  j["certificates"] = certs;
  return j;
}

// ---------------------------------------------------------------- instances --

// The delta conic is six rationals in the fixed monomial order
// z0^2, z0 z1, z0 z2, z1^2, z1 z2, z2^2.
inline const std::array<std::array<int, 3>, 6>& delta_monomial_order() {
  static const std::array<std::array<int, 3>, 6> order = {
      {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
  return order;
}

// An instance file stores only the free data (matrix and delta); everything
// else is recomputed on load and cross-checked against the stored d and
// normalization, so a parsed file is certified the moment it is in memory.
inline Json instance_to_json(const Instance& inst) {
  Json j = Json::object();
  j["matrix"] = sym_linear_matrix_to_json(inst.ps.source);
  Json dl = Json::array();
  for (const auto& mono : delta_monomial_order()) {
    Expo e(3, 0);
    for (int v = 0; v < 3; ++v) e[std::size_t(v)] = mono[std::size_t(v)];
    dl.push_back(to_string(inst.delta.coeff(e)));
  }
  j["delta"] = dl;
  j["d"] = inst.split.d.convert_to<std::int64_t>();
  Json norm = Json::object();
  norm["scale"] = to_string(inst.normalization);
  j["normalization"] = norm;
  return j;
}

inline Instance instance_from_json(const Json& j) {
  for (const char* key : {"matrix", "delta", "d", "normalization"})
    if (!j.is_object() || !j.contains(key))
      throw std::invalid_argument(std::string("instance: missing \"") + key + "\"");
  SymLinearMatrix m = sym_linear_matrix_from_json(j["matrix"]);
  if (!j["delta"].is_array() || j["delta"].size() != 6)
    throw std::invalid_argument("instance: delta needs 6 coefficients");
  MultiPoly<Rational> delta(3);
  for (std::size_t k = 0; k < 6; ++k) {
    Rational c = rational_from_json(j["delta"][k]);
    if (c == 0) continue;
    const auto& mono = delta_monomial_order()[k];
    Expo e(3, 0);
    for (int v = 0; v < 3; ++v) e[std::size_t(v)] = mono[std::size_t(v)];
    delta.add_term(e, c);
  }

  ProjectedSymmetroid ps = project_from_node(m);
  DiscriminantSplit split = split_discriminant(ps);
  Instance inst = assemble_instance(ps, split, delta);

  if (inst.split.d != Int(j["d"].get<std::int64_t>()))
    throw std::runtime_error("instance: stored d disagrees with the recomputed split");
  if (to_string(inst.normalization) != j["normalization"]["scale"].get<std::string>())
    throw std::runtime_error("instance: stored normalization disagrees");
  return inst;
}

// --------------------------------------------------------------- components --

inline Json projected_symmetroid_to_json(const ProjectedSymmetroid& ps) {
  Json j = Json::object();
  j["alpha"] = poly_to_json(ps.alpha);
  j["beta"] = poly_to_json(ps.beta);
  j["gamma"] = poly_to_json(ps.gamma);
  j["d"] = ps.d.convert_to<std::int64_t>();
  j["rational_split"] = ps.rational_split;
  return j;
}

inline Json discriminant_split_to_json(const DiscriminantSplit& split) {
  Json j = Json::object();
  j["d"] = split.d.convert_to<std::int64_t>();
  j["eps1"] = poly_to_json(split.eps1);
  j["eps2"] = poly_to_json(split.eps2);
  j["conjugate_pair"] = split.conjugate_pair;
  return j;
}

// ------------------------------------------------------------ count reports --

inline Json count_report_to_json(const CountReport& rep) {
  Json j = Json::object();
  j["q"] = rep.q;
  Json counts = Json::object();
  for (const auto& [k, v] : rep.counts) counts[k] = v;
  j["counts"] = counts;
  Json residues = Json::object();
  for (const auto& [k, v] : rep.residues) residues[k] = v;
  j["residues"] = residues;
  Json method = Json::object();
  for (const auto& [k, v] : rep.methods) method[k] = v;
  j["method"] = method;
  Json elapsed = Json::object();
  for (const auto& [k, v] : rep.timings_ms) elapsed[k] = v;
  j["elapsed_ms"] = elapsed;
  j["pass"] = rep.ok;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

}  // namespace symforge
