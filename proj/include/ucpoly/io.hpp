#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucpoly/certify.hpp"
#include "ucpoly/core.hpp"
#include "ucpoly/optimize.hpp"
#include "ucpoly/polys.hpp"
#include "ucpoly/series.hpp"

namespace ucpoly::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw StructuralError(where + " must be a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw StructuralError("missing field '" + std::string(name) + "' in " + where);
  return *it;
}

template <class T>
T get(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw StructuralError("field '" + std::string(name) + "' in " + where + " has the wrong type");
  }
}

inline Json scalar_to_json(const Scalar& z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

inline Scalar scalar_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw StructuralError(where + ": expected a number or [re, im]");
}

inline Json scalars_to_json(std::span<const Scalar> xs) {
  Json a = Json::array();
  for (const Scalar& z : xs) a.push_back(scalar_to_json(z));
  return a;
}

inline std::vector<Scalar> scalars_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw StructuralError(where + " must be an array");
  std::vector<Scalar> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(scalar_from_json(e, where));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tags, vectors, spaces
// ---------------------------------------------------------------------------

inline Json to_json(const NormTag& t) {
  if (t.is_sup()) return Json{{"kind", "sup"}};
  return Json{{"kind", "lp"}, {"p", t.p()}};
}

inline NormTag tag_from_json(const Json& j, const std::string& where = "tag") {
  const auto kind = detail::get<std::string>(j, "kind", where);
  if (kind == "sup") return NormTag::sup();
  if (kind == "lp") return NormTag::lp(detail::get<double>(j, "p", where));
  throw StructuralError(where + ": unknown norm kind '" + kind + "'");
}

/// "l1", "l2", "lp:3", "sup", "c0".
inline NormTag parse_tag(const std::string& s) {
  if (s == "sup" || s == "c0" || s == "linf") return NormTag::sup();
  if (s == "l1") return NormTag::lp(1.0);
  if (s == "l2") return NormTag::lp(2.0);
  if (s.rfind("lp:", 0) == 0) {
    try {
      return NormTag::lp(std::stod(s.substr(3)));
    } catch (const std::logic_error&) {
    }
  }
  throw DomainError("unknown norm tag '" + s + "'");
}

inline Field parse_field(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw DomainError("unknown field '" + s + "'");
}

inline Json to_json(const Vec& v) {
  return Json{{"dim", v.dim()}, {"tag", to_json(v.tag())}, {"entries", detail::scalars_to_json(v.entries())}};
}

inline Vec vec_from_json(const Json& j, const std::string& where = "vector") {
  const auto dim = detail::get<std::size_t>(j, "dim", where);
  const NormTag tag = tag_from_json(detail::field(j, "tag", where), where + ".tag");
  auto entries = detail::scalars_from_json(detail::field(j, "entries", where), where + ".entries");
  if (entries.size() != dim)
    throw StructuralError(where + ": dim " + std::to_string(dim) + " but " + std::to_string(entries.size()) +
                          " entries");
  return Vec(std::move(entries), tag);
}

inline std::vector<Vec> vecs_from_json(const Json& j, const std::string& where = "vectors") {
  if (!j.is_array()) throw StructuralError(where + " must be an array");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json to_json(const Space& s) { return Json{{"dim", s.dim}, {"tag", to_json(s.tag)}}; }

inline Space space_from_json(const Json& j, const std::string& where) {
  return {detail::get<std::size_t>(j, "dim", where), tag_from_json(detail::field(j, "tag", where), where + ".tag")};
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

inline Json to_json(const HomPoly& p) {
  Json body;
  if (const auto* t = std::get_if<TensorBody>(&p.body())) {
    body["variant"] = "tensor";
    Json coeffs = Json::array();
    for (std::size_t r = 0; r < t->tensor.size(); ++r) {
      const auto c = t->tensor.coefficient_at(r);
      if (std::all_of(c.begin(), c.end(), [](const Scalar& z) { return z == Scalar{}; })) continue;
      const auto ms = t->tensor.multiset_at(r);
      coeffs.push_back(Json{{"multiset", std::vector<std::size_t>(ms.begin(), ms.end())},
                            {"value", detail::scalars_to_json(c)}});
    }
    body["coefficients"] = std::move(coeffs);
  } else if (const auto* d = std::get_if<DiagonalBody>(&p.body())) {
    body["variant"] = "diagonal";
    body["mode"] = d->mode == DiagonalMode::Sum ? "sum" : "coordinatewise";
    body["weights"] = detail::scalars_to_json(d->weights);
  } else if (const auto* s = std::get_if<ScaledIdentityBody>(&p.body())) {
    body["variant"] = "scaled_identity";
    body["functional"] = detail::scalars_to_json(s->functional.coefficients());
  } else if (const auto* w = std::get_if<WeightedScaleBody>(&p.body())) {
    body["variant"] = "weighted_scale";
    body["weights"] = detail::scalars_to_json(w->weights);
  } else {
    throw UnsupportedError("black-box polynomials cannot be serialized");
  }
  return Json{{"k", p.degree()},
              {"domain", to_json(p.domain())},
              {"codomain", to_json(p.codomain())},
              {"field", to_string(p.field())},
              {"body", std::move(body)}};
}

inline HomPoly poly_from_json(const Json& j, const std::string& where = "polynomial") {
  const auto k = detail::get<std::size_t>(j, "k", where);
  const Space dom = space_from_json(detail::field(j, "domain", where), where + ".domain");
  const Space cod = space_from_json(detail::field(j, "codomain", where), where + ".codomain");
  const Field field = parse_field(detail::get<std::string>(j, "field", where));
  const Json& body = detail::field(j, "body", where);
  const std::string bw = where + ".body";
  const auto variant = detail::get<std::string>(body, "variant", bw);

  if (variant == "tensor") {
    SymTensor t(k, dom.dim, cod.dim, field);
    const Json& coeffs = detail::field(body, "coefficients", bw);
    if (!coeffs.is_array()) throw StructuralError(bw + ".coefficients must be an array");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const std::string cw = bw + ".coefficients[" + std::to_string(i) + "]";
      const auto ms = detail::get<std::vector<std::size_t>>(coeffs[i], "multiset", cw);
      const auto value = detail::scalars_from_json(detail::field(coeffs[i], "value", cw), cw + ".value");
      t.set_coefficient(ms, value);
    }
    return HomPoly(k, dom, cod, field, TensorBody{std::move(t)});
  }
  if (variant == "diagonal") {
    const auto mode = detail::get<std::string>(body, "mode", bw);
    if (mode != "sum" && mode != "coordinatewise") throw StructuralError(bw + ": unknown diagonal mode '" + mode + "'");
    auto w = detail::scalars_from_json(detail::field(body, "weights", bw), bw + ".weights");
    return HomPoly(k, dom, cod, field,
                   DiagonalBody{std::move(w), mode == "sum" ? DiagonalMode::Sum : DiagonalMode::Coordinatewise});
  }
  if (variant == "scaled_identity") {
    auto f = detail::scalars_from_json(detail::field(body, "functional", bw), bw + ".functional");
    return HomPoly(k, dom, cod, field, ScaledIdentityBody{ScalarFunctional(std::move(f), dom.tag)});
  }
  if (variant == "weighted_scale") {
    auto w = detail::scalars_from_json(detail::field(body, "weights", bw), bw + ".weights");
    return HomPoly(k, dom, cod, field, WeightedScaleBody{std::move(w)});
  }
  throw StructuralError(bw + ": unknown variant '" + variant + "'");
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

inline Json to_json(const SeriesPrefix& s) {
  Json terms = Json::array();
  for (const Vec& v : s.terms()) terms.push_back(to_json(v));
  return Json{{"label", s.label()}, {"terms", std::move(terms)}};
}

inline SeriesPrefix series_from_json(const Json& j, const std::string& where = "series") {
  const std::string label = j.is_object() && j.contains("label") ? detail::get<std::string>(j, "label", where) : "";
  auto terms = vecs_from_json(detail::field(j, "terms", where), where + ".terms");
  if (terms.empty()) throw StructuralError(where + " has no terms");
  return SeriesPrefix(std::move(terms), label);
}

namespace detail {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_scalar(const Scalar& z) {
  if (z.imag() == 0.0) return format_number(z.real());
  std::string s = format_number(z.real());
  if (!std::signbit(z.imag())) s += '+';
  return s + format_number(z.imag()) + 'i';
}

inline Scalar parse_scalar(const std::string& cell, std::size_t row, std::size_t col) {
  auto fail = [&] {
    return StructuralError("CSV row " + std::to_string(row) + ", column " + std::to_string(col) + ": cannot parse '" +
                           cell + "'");
  };
  std::istringstream in(cell);
  double re = 0.0;
  if (!(in >> re)) throw fail();
  if (in.peek() == std::char_traits<char>::eof()) return {re, 0.0};
  double im = 0.0;
  char unit = 0;
  if (!(in >> im >> unit) || unit != 'i') throw fail();
  in >> std::ws;
  if (!in.eof()) throw fail();
  return {re, im};
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace detail

/// One vector per row, header row with coordinate indices. Complex entries read "a+bi".
inline std::string series_to_csv(const SeriesPrefix& s) {
  std::string out;
  for (std::size_t i = 0; i < s.dim(); ++i) out += (i ? "," : "") + std::to_string(i);
  out += '\n';
  for (const Vec& v : s.terms()) {
    for (std::size_t i = 0; i < v.dim(); ++i) out += (i ? "," : "") + detail::format_scalar(v[i]);
    out += '\n';
  }
  return out;
}

inline SeriesPrefix series_from_csv(const std::string& text, NormTag tag, std::string label = "csv") {
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0, dim = 0;
  std::vector<Vec> terms;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv(line);
    if (dim == 0) {
      dim = cells.size();
      continue;
    }
    if (cells.size() != dim)
      throw StructuralError("CSV row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(dim));
    std::vector<Scalar> e;
    e.reserve(dim);
    for (std::size_t c = 0; c < dim; ++c) e.push_back(detail::parse_scalar(cells[c], row, c));
    terms.emplace_back(std::move(e), tag);
  }
  if (terms.empty()) throw StructuralError("CSV series has no terms");
  return SeriesPrefix(std::move(terms), std::move(label));
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

inline Json to_json(const SearchBudget& b) {
  return Json{{"grid_per_axis", b.grid_per_axis},
              {"dense_grid_max_terms", b.dense_grid_max_terms},
              {"multistarts", b.multistarts},
              {"ascent_iterations", b.ascent_iterations},
              {"torus_points", b.torus_points},
              {"refinement_rounds", b.refinement_rounds},
              {"refinement_factor", b.refinement_factor},
              {"enumeration_cap", b.enumeration_cap},
              {"seed", b.seed}};
}

inline Json to_json(const Exactness& e) {
  Json j{{"kind", to_string(e)}};
  if (!e.is_exact()) {
    j["resolution"] = e.resolution;
    j["budget_exceeded"] = e.budget_exceeded;
  }
  return j;
}

inline Json to_json(const SupResult& r) {
  Json j{{"value", r.value},
         {"witness", detail::scalars_to_json(r.witness)},
         {"exact", r.exactness.is_exact()},
         {"exactness", to_json(r.exactness)},
         {"evaluations", r.evaluations}};
  if (r.closed_form) j["closed_form"] = *r.closed_form;
  return j;
}

inline Json to_json(const BoundCertificate& c) {
  Json j{{"k", c.k},
         {"field", to_string(c.field)},
         {"C_k", c.constant},
         {"lhs", Json{{"value", c.lhs.value},
                      {"witness", detail::scalars_to_json(c.lhs.witness)},
                      {"exact", c.lhs.exactness.is_exact()}}},
         {"rhs", Json{{"value", c.rhs.value}, {"witness", detail::scalars_to_json(c.rhs.witness)}}},
         {"margin", c.margin},
         {"verdict", to_string(c.verdict)},
         {"budget", to_json(c.budget)},
         {"seed", c.budget.seed}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  if (c.lhs_refined) j["lhs_refined"] = *c.lhs_refined;
  if (c.rhs_refined) j["rhs_refined"] = *c.rhs_refined;
  return j;
}

inline Json to_json(const SuiteSummary& s) {
  const SuiteConfig& c = s.config;
  Json tags = Json::array();
  for (const NormTag& t : c.tags) tags.push_back(to_json(t));
  Json certs = Json::array();
  for (const BoundCertificate& cert : s.certificates) certs.push_back(to_json(cert));
  Json j{{"config", Json{{"k", {c.k_min, c.k_max}},
                         {"dim", {c.dim_min, c.dim_max}},
                         {"codim", {c.codim_min, c.codim_max}},
                         {"terms", {c.terms_min, c.terms_max}},
                         {"count", c.count},
                         {"field", to_string(c.field)},
                         {"seed", c.seed},
                         {"tags", std::move(tags)}}},
         {"count", s.count},
         {"proved", s.proved},
         {"unresolved", s.unresolved},
         {"violations", s.violations},
         {"max_ratio", s.max_ratio}};
  j["tightest"] = s.tightest ? Json(*s.tightest) : Json(nullptr);
  j["certificates"] = std::move(certs);
  return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError("malformed JSON in " + source + ": " + e.what());
  }
}

inline Json load_json(const std::string& path) { return parse_json(read_file(path), "'" + path + "'"); }

}  // namespace ucpoly::io
