// Batch front end: certify, series, rademacher, polarize, norms, gallery.
// Exit codes: 0 success / proved, 2 unresolved or failed check, 1 error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ucpoly/io.hpp"
#include "ucpoly/ucpoly.hpp"

namespace {

using namespace ucpoly;
using io::Json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUnresolved = 2;

struct RunConfig {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::string field = "real";
  double slack = 1.05;
  SearchBudget budget;

  SearchBudget seeded_budget() const {
    SearchBudget b = budget;
    b.seed = seed;
    return b;
  }
  Field field_value() const { return io::parse_field(field); }
};

void add_common(CLI::App* sub, RunConfig& cfg, const std::string& default_format) {
  cfg.format = default_format;
  sub->add_option("--seed", cfg.seed, "64-bit seed for every random choice")->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", cfg.out, "output path (default: stdout)");
  sub->add_option("--field", cfg.field, "scalar field")->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  sub->add_option("--slack", cfg.slack, "slack factor on norm estimates")->capture_default_str();
  sub->add_option("--budget-grid", cfg.budget.grid_per_axis, "dense-grid points per axis")->capture_default_str();
  sub->add_option("--budget-grid-terms", cfg.budget.dense_grid_max_terms, "max terms for the dense grid")
      ->capture_default_str();
  sub->add_option("--budget-multistarts", cfg.budget.multistarts, "ascent multistarts")->capture_default_str();
  sub->add_option("--budget-iterations", cfg.budget.ascent_iterations, "ascent iterations per start")
      ->capture_default_str();
  sub->add_option("--budget-torus-points", cfg.budget.torus_points, "torus grid points per angle")
      ->capture_default_str();
  sub->add_option("--budget-rounds", cfg.budget.refinement_rounds, "torus refinement rounds")->capture_default_str();
  sub->add_option("--budget-factor", cfg.budget.refinement_factor, "refinement factor")->capture_default_str();
  sub->add_option("--budget-cap", cfg.budget.enumeration_cap, "enumeration cap")->capture_default_str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string num(double v) { return io::detail::format_number(v); }

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error("cannot write '" + cfg.out + "'");
  f << text;
}

GalleryEntry require_entry(const std::string& name, std::size_t dim) {
  auto e = find_gallery_entry(name, dim);
  if (!e) throw DomainError("no gallery entry named '" + name + "'");
  return *e;
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  RunConfig cfg;
  std::string poly, vectors, gallery;
  std::size_t dim = 12;
  bool suite = false;
  std::size_t count = 100, k_min = 2, k_max = 3, dim_max = 4, codim_max = 4, terms_max = 4;
};

std::string certificate_csv_header() { return "index,k,field,C_k,lhs,lhs_exact,rhs,margin,verdict\n"; }

std::string certificate_csv_row(std::size_t i, const BoundCertificate& c) {
  return std::to_string(i) + "," + std::to_string(c.k) + "," + to_string(c.field) + "," + num(c.constant) + "," +
         num(c.lhs.value) + "," + (c.lhs.exactness.is_exact() ? "1" : "0") + "," + num(c.rhs.value) + "," +
         num(c.margin) + "," + to_string(c.verdict) + "\n";
}

int cmd_certify(const CertifyArgs& a) {
  const RunConfig& cfg = a.cfg;
  const SearchBudget budget = cfg.seeded_budget();
  if (a.suite) {
    SuiteConfig sc;
    sc.count = a.count;
    sc.k_min = a.k_min;
    sc.k_max = a.k_max;
    sc.dim_max = a.dim_max;
    sc.codim_max = a.codim_max;
    sc.terms_max = a.terms_max;
    sc.field = cfg.field_value();
    sc.seed = cfg.seed;
    const SuiteSummary s = random_certification_suite(sc, budget);
    if (cfg.format == "json") {
      emit(cfg, dump(io::to_json(s)));
    } else {
      std::string text = certificate_csv_header();
      for (std::size_t i = 0; i < s.certificates.size(); ++i) text += certificate_csv_row(i, s.certificates[i]);
      emit(cfg, text);
    }
    if (s.violations > 0) {
      std::cerr << "ucpoly: " << s.violations << " instance(s) violate the inequality\n";
      return kError;
    }
    return s.unresolved == 0 ? kOk : kUnresolved;
  }

  std::optional<HomPoly> p;
  std::vector<Vec> vs;
  if (!a.gallery.empty()) {
    if (!a.poly.empty()) throw DomainError("--gallery and --poly are exclusive");
    p = require_entry(a.gallery, a.dim).poly;
    const std::size_t n = std::min<std::size_t>(p->domain().dim, 6);
    for (std::size_t i = 0; i < n; ++i) vs.push_back(Vec::basis(p->domain().dim, i, p->domain().tag));
  } else {
    if (a.poly.empty()) throw DomainError("certify needs --poly, --gallery or --suite");
    const Json doc = io::load_json(a.poly);
    if (a.vectors.empty()) {
      // single document {"polynomial": ..., "vectors": [...]}
      p = io::poly_from_json(io::detail::field(doc, "polynomial", "'" + a.poly + "'"), "polynomial");
      vs = io::vecs_from_json(io::detail::field(doc, "vectors", "'" + a.poly + "'"), "vectors");
    } else {
      p = io::poly_from_json(doc);
      const Json vdoc = io::load_json(a.vectors);
      vs = io::vecs_from_json(vdoc.is_object() ? io::detail::field(vdoc, "vectors", "'" + a.vectors + "'") : vdoc);
    }
  }
  if (cfg.field_value() == Field::Complex && p->field() == Field::Real) p = complexify(*p);
  const BoundCertificate c = check_unconditional_bound(*p, vs, budget);
  if (cfg.format == "json") {
    emit(cfg, dump(io::to_json(c)));
  } else {
    emit(cfg, certificate_csv_header() + certificate_csv_row(0, c));
  }
  return c.verdict == Verdict::Proved ? kOk : kUnresolved;
}

// ---------------------------------------------------------------------------

struct SeriesArgs {
  RunConfig cfg;
  std::string input, tag = "l2", poly, vstar;
  bool tail_inequality = false;
  double decay_ratio = 0.1;
};

SeriesPrefix load_series(const std::string& path, const std::string& tag) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return io::series_from_csv(io::read_file(path), io::parse_tag(tag), path);
  return io::series_from_json(io::load_json(path));
}

int cmd_series(const SeriesArgs& a) {
  const RunConfig& cfg = a.cfg;
  const SearchBudget budget = cfg.seeded_budget();
  const Field field = cfg.field_value();
  SeriesPrefix s = load_series(a.input, a.tag);

  std::optional<HomPoly> p;
  if (!a.poly.empty()) {
    p = io::poly_from_json(io::load_json(a.poly));
    if (field == Field::Complex && p->field() == Field::Real) p = complexify(*p);
  }

  if (a.tail_inequality) {
    if (!p) throw DomainError("--tail-inequality needs --poly");
    const SupResult norm_estimate = poly_norm(*p, budget);
    std::vector<TailInequalityCheck> checks;
    bool ok = true;
    for (std::size_t n = 1; n <= s.size(); ++n) {
      checks.push_back(check_tail_inequality(*p, s, n, norm_estimate, budget, cfg.slack));
      ok = ok && checks.back().holds;
    }
    if (cfg.format == "csv") {
      std::string text = "n,lhs,lhs_exact,rhs,tail_sup,holds\n";
      for (const auto& c : checks)
        text += std::to_string(c.start) + "," + num(c.lhs) + "," + (c.lhs_exact ? "1" : "0") + "," + num(c.rhs) + "," +
                num(c.tail_sup) + "," + (c.holds ? "1" : "0") + "\n";
      emit(cfg, text);
    } else {
      Json rows = Json::array();
      for (const auto& c : checks)
        rows.push_back(Json{{"n", c.start},
                            {"lhs", c.lhs},
                            {"lhs_exact", c.lhs_exact},
                            {"rhs", c.rhs},
                            {"tail_sup", c.tail_sup},
                            {"holds", c.holds}});
      emit(cfg, dump(Json{{"label", s.label()},
                          {"C_k", c_constant(p->degree(), p->field())},
                          {"slack", cfg.slack},
                          {"norm_estimate", io::to_json(norm_estimate)},
                          {"tails", std::move(rows)}}));
    }
    return ok ? kOk : kUnresolved;
  }

  if (p) s = image_series(*p, s);

  if (!a.vstar.empty()) {
    const Json doc = io::load_json(a.vstar);
    const Json& list = doc.is_object() ? io::detail::field(doc, "functionals", "'" + a.vstar + "'") : doc;
    if (!list.is_array()) throw StructuralError("functionals must be an array");
    std::vector<ScalarFunctional> fs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto c = io::detail::scalars_from_json(list[i], "functionals[" + std::to_string(i) + "]");
      if (c.size() != s.dim()) throw StructuralError("functional " + std::to_string(i) + " has the wrong dimension");
      fs.emplace_back(std::move(c), s.tag());
    }
    const auto profile = vstar_pairing(s.terms(), fs);
    if (cfg.format == "csv") {
      std::string text = "n,pairing\n";
      for (std::size_t i = 0; i < profile.size(); ++i) text += std::to_string(i + 1) + "," + num(profile[i]) + "\n";
      emit(cfg, text);
    } else {
      emit(cfg, dump(Json{{"label", s.label()}, {"pairing", profile}}));
    }
    return kOk;
  }

  const TailProfile t = uc_tail_profile(s, field, budget, a.decay_ratio);
  if (cfg.format == "csv") {
    std::string text = "n,t_n,exact\n";
    for (std::size_t i = 0; i < t.values.size(); ++i)
      text += std::to_string(i + 1) + "," + num(t.values[i]) + "," + (t.exactness[i].is_exact() ? "1" : "0") + "\n";
    emit(cfg, text);
  } else {
    Json ex = Json::array();
    for (const Exactness& e : t.exactness) ex.push_back(e.is_exact());
    emit(cfg, dump(Json{{"label", s.label()},
                        {"field", to_string(field)},
                        {"wuc_constant", t.values.front()},
                        {"tail_profile", t.values},
                        {"exact", std::move(ex)},
                        {"decay_ratio", t.decay_ratio},
                        {"decaying", t.decaying}}));
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RademacherArgs {
  RunConfig cfg;
  int k = 2;
  int max_level = 3;
  std::vector<std::string> tuples;
  bool table = false;
};

std::vector<int> parse_tuple(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse index tuple '" + s + "'");
    }
  }
  return out;
}

std::string rational_str(const Rational& r) {
  return std::to_string(r.numerator()) + (r.denominator() == 1 ? "" : "/" + std::to_string(r.denominator()));
}

int cmd_rademacher(const RademacherArgs& a) {
  const RunConfig& cfg = a.cfg;
  if (a.k < 2) throw DomainError("Rademacher order must be >= 2");
  if (a.max_level < 1) throw DomainError("--max-level must be >= 1");
  std::vector<std::vector<int>> tuples;
  for (const std::string& t : a.tuples) tuples.push_back(parse_tuple(t));
  if (tuples.empty()) {
    std::vector<int> t(static_cast<std::size_t>(a.k), 1);
    while (true) {
      tuples.push_back(t);
      std::size_t j = 0;
      while (j < t.size() && t[j] == a.max_level) t[j++] = 1;
      if (j == t.size()) break;
      ++t[j];
    }
  }

  bool ok = true;
  Json rows = Json::array();
  std::string csv = "tuple,re,im,expected,match\n";
  for (const auto& t : tuples) {
    const ProductIntegral pi = product_integral(a.k, t);
    const bool all_equal = std::all_of(t.begin(), t.end(), [&](int i) { return i == t.front(); });
    const Scalar v = pi.value();
    const bool match = all_equal ? pi.is_exactly_one() : std::abs(v) < tol::kStructural;
    ok = ok && match;
    std::string label;
    for (std::size_t i = 0; i < t.size(); ++i) label += (i ? " " : "") + std::to_string(t[i]);
    Json w = Json::array();
    for (const Rational& r : pi.weights) w.push_back(rational_str(r));
    rows.push_back(Json{{"tuple", t},
                        {"value", Json::array({v.real(), v.imag()})},
                        {"class_weights", std::move(w)},
                        {"expected", all_equal ? 1 : 0},
                        {"match", match}});
    csv += label + "," + num(v.real()) + "," + num(v.imag()) + "," + (all_equal ? "1" : "0") + "," +
           (match ? "1" : "0") + "\n";
  }

  if (cfg.format == "csv") {
    emit(cfg, csv);
  } else {
    Json doc{{"k", a.k}, {"max_level", a.max_level}};
    if (a.table) {
      Json levels = Json::array();
      for (int n = 1; n <= a.max_level; ++n) {
        const StepFunction s = rademacher(a.k, n);
        levels.push_back(Json{{"level", n},
                              {"intervals", s.intervals()},
                              {"exponents", std::vector<std::uint32_t>(s.exponents().begin(), s.exponents().end())}});
      }
      doc["step_table"] = std::move(levels);
    }
    doc["integrals"] = std::move(rows);
    doc["all_match"] = ok;
    emit(cfg, dump(doc));
  }
  return ok ? kOk : kUnresolved;
}

// ---------------------------------------------------------------------------

struct PolarizeArgs {
  RunConfig cfg;
  std::string poly, args, gallery;
  std::size_t dim = 12;
  bool tensor = false;
  std::size_t grid = 0;
};

HomPoly load_poly(const std::string& path, const std::string& gallery, std::size_t dim) {
  if (!gallery.empty()) {
    if (!path.empty()) throw DomainError("--gallery and --poly are exclusive");
    return require_entry(gallery, dim).poly;
  }
  if (path.empty()) throw DomainError("a polynomial is required: --poly or --gallery");
  return io::poly_from_json(io::load_json(path));
}

int cmd_polarize(const PolarizeArgs& a) {
  const RunConfig& cfg = a.cfg;
  const HomPoly p = load_poly(a.poly, a.gallery, a.dim);

  if (a.tensor) {
    const SymTensor t = tensor_from_blackbox(p);
    emit(cfg, dump(io::to_json(HomPoly(p.degree(), p.domain(), p.codomain(), p.field(), TensorBody{t}))));
    return kOk;
  }

  if (a.grid > 0) {
    if (p.domain().dim != 1) throw DomainError("--grid needs a one-dimensional domain");
    if (a.grid < 2) throw DomainError("--grid needs at least 2 points");
    const std::size_t k = p.degree();
    std::string text;
    for (std::size_t j = 0; j < k; ++j) text += "x" + std::to_string(j + 1) + ",";
    for (std::size_t i = 0; i < p.codomain().dim; ++i) text += (i ? "," : "") + std::string("A") + std::to_string(i);
    text += "\n";
    std::vector<std::size_t> digit(k, 0);
    std::vector<Vec> xs(k, Vec::zeros(1, p.domain().tag));
    const double spacing = 2.0 / static_cast<double>(a.grid - 1);
    while (true) {
      for (std::size_t j = 0; j < k; ++j) xs[j][0] = -1.0 + spacing * static_cast<double>(digit[j]);
      const Vec v = polarize(p, xs);
      for (std::size_t j = 0; j < k; ++j) text += num(xs[j][0].real()) + ",";
      for (std::size_t i = 0; i < v.dim(); ++i) text += (i ? "," : "") + io::detail::format_scalar(v[i]);
      text += "\n";
      std::size_t j = 0;
      while (j < k && digit[j] + 1 == a.grid) digit[j++] = 0;
      if (j == k) break;
      ++digit[j];
    }
    emit(cfg, text);
    return kOk;
  }

  if (a.args.empty()) throw DomainError("polarize needs --args, --grid or --tensor");
  const Json doc = io::load_json(a.args);
  const std::vector<Vec> xs =
      io::vecs_from_json(doc.is_object() ? io::detail::field(doc, "vectors", "'" + a.args + "'") : doc);
  const Vec v = polarize(p, xs);
  Json out{{"k", p.degree()}, {"polarization", io::to_json(v)}};
  if (p.tensor()) {
    const Vec m = eval_multilinear(p, xs);
    double dev = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) dev = std::max(dev, std::abs(v[i] - m[i]));
    out["multilinear"] = io::to_json(m);
    out["max_deviation"] = dev;
  }
  if (cfg.format == "csv") {
    std::string text;
    for (std::size_t i = 0; i < v.dim(); ++i) text += (i ? "," : "") + std::to_string(i);
    text += "\n";
    for (std::size_t i = 0; i < v.dim(); ++i) text += (i ? "," : "") + io::detail::format_scalar(v[i]);
    emit(cfg, text + "\n");
  } else {
    emit(cfg, dump(out));
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct NormsArgs {
  RunConfig cfg;
  std::string poly, gallery;
  std::size_t dim = 12;
  bool tails = false;
};

int cmd_norms(const NormsArgs& a) {
  const RunConfig& cfg = a.cfg;
  const SearchBudget budget = cfg.seeded_budget();
  HomPoly p = load_poly(a.poly, a.gallery, a.dim);
  if (cfg.field_value() == Field::Complex && p.field() == Field::Real) p = complexify(p);
  const SupResult r = poly_norm(p, budget);
  std::vector<SupResult> tails;
  if (a.tails)
    for (std::size_t n = 1; n <= p.domain().dim; ++n) tails.push_back(restricted_tail_norm(p, n, budget));

  if (cfg.format == "csv") {
    std::string text = "quantity,n,value,closed_form\n";
    text += "norm,," + num(r.value) + "," + (r.closed_form ? num(*r.closed_form) : "") + "\n";
    for (std::size_t i = 0; i < tails.size(); ++i)
      text += "tail_norm," + std::to_string(i + 1) + "," + num(tails[i].value) + ",\n";
    emit(cfg, text);
  } else {
    Json j{{"norm", io::to_json(r)}};
    if (r.closed_form) {
      j["comparison"] = "estimate " + num(r.value) + " vs closed form " + num(*r.closed_form) + ", relative gap " +
                        num(std::abs(r.value - *r.closed_form) / std::max(*r.closed_form, 1e-300));
    }
    if (a.tails) {
      Json t = Json::array();
      for (std::size_t i = 0; i < tails.size(); ++i) t.push_back(Json{{"n", i + 1}, {"value", tails[i].value}});
      j["tail_norms"] = std::move(t);
    }
    emit(cfg, dump(j));
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct GalleryArgs {
  RunConfig cfg;
  std::string action;
  std::string name;
  std::size_t dim = 12;
};

int cmd_gallery(const GalleryArgs& a) {
  const RunConfig& cfg = a.cfg;
  std::vector<GalleryEntry> entries;
  if (a.name.empty()) {
    entries = default_gallery(a.dim);
  } else {
    entries.push_back(require_entry(a.name, a.dim));
  }

  if (a.action == "list") {
    if (cfg.format == "csv") {
      std::string text = "name,parameters,description\n";
      for (const auto& e : entries) text += e.name + ",\"" + e.parameters + "\",\"" + e.description + "\"\n";
      emit(cfg, text);
    } else {
      Json list = Json::array();
      for (const auto& e : entries) {
        Json checks = Json::array();
        for (const auto& c : e.checks) checks.push_back(c.name);
        list.push_back(Json{{"name", e.name},
                            {"parameters", e.parameters},
                            {"description", e.description},
                            {"checks", std::move(checks)}});
      }
      emit(cfg, dump(list));
    }
    return kOk;
  }

  std::size_t passed = 0, total = 0;
  Json results = Json::array();
  std::string csv = "entry,check,passed,detail\n";
  for (const auto& e : entries) {
    for (const CheckOutcome& c : e.run_checks(cfg.seeded_budget())) {
      ++total;
      if (c.passed) ++passed;
      results.push_back(Json{{"entry", e.name}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      csv += e.name + "," + c.name + "," + (c.passed ? "1" : "0") + ",\"" + c.detail + "\"\n";
    }
  }
  if (cfg.format == "csv") {
    emit(cfg, csv);
  } else {
    emit(cfg, dump(Json{{"passed", passed}, {"total", total}, {"results", std::move(results)}}));
  }
  return passed == total ? kOk : kUnresolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous polynomials on finite-dimensional sequence spaces"};
  app.require_subcommand(1);

  CertifyArgs certify;
  auto* c = app.add_subcommand("certify", "certify the unconditional-sum inequality");
  add_common(c, certify.cfg, "json");
  c->add_option("--poly", certify.poly, "polynomial JSON (or {polynomial, vectors})");
  c->add_option("--vectors", certify.vectors, "vector family JSON");
  c->add_option("--gallery", certify.gallery, "gallery entry; vectors are the first unit vectors");
  c->add_option("--dim", certify.dim, "gallery dimension")->capture_default_str();
  c->add_flag("--suite", certify.suite, "run the random certification suite");
  c->add_option("--count", certify.count, "suite instances")->capture_default_str();
  c->add_option("--k-min", certify.k_min, "suite minimum degree")->capture_default_str();
  c->add_option("--k-max", certify.k_max, "suite maximum degree")->capture_default_str();
  c->add_option("--dim-max", certify.dim_max, "suite maximum domain dimension")->capture_default_str();
  c->add_option("--codim-max", certify.codim_max, "suite maximum codomain dimension")->capture_default_str();
  c->add_option("--terms-max", certify.terms_max, "suite maximum vector count")->capture_default_str();

  SeriesArgs series;
  auto* s = app.add_subcommand("series", "tail profiles and series diagnostics");
  add_common(s, series.cfg, "csv");
  s->add_option("--input", series.input, "series JSON or CSV")->required();
  s->add_option("--tag", series.tag, "norm tag for CSV input (l1, l2, lp:p, sup)")->capture_default_str();
  s->add_option("--poly", series.poly, "apply this polynomial to every term first");
  s->add_flag("--tail-inequality", series.tail_inequality, "both sides of the tail inequality per n (needs --poly)");
  s->add_option("--vstar", series.vstar, "functionals JSON; emits the pairing profile");
  s->add_option("--decay-ratio", series.decay_ratio, "declared decay ratio")->capture_default_str();

  RademacherArgs rad;
  auto* r = app.add_subcommand("rademacher", "orthogonality table of generalized Rademacher functions");
  add_common(r, rad.cfg, "json");
  r->add_option("--k", rad.k, "order")->capture_default_str();
  r->add_option("--max-level", rad.max_level, "largest level in generated tuples")->capture_default_str();
  r->add_option("--tuple", rad.tuples, "comma-separated index tuple (repeatable)");
  r->add_flag("--table", rad.table, "include the step table");

  PolarizeArgs pol;
  auto* p = app.add_subcommand("polarize", "symmetric multilinear form by polarization");
  add_common(p, pol.cfg, "json");
  p->add_option("--poly", pol.poly, "polynomial JSON");
  p->add_option("--gallery", pol.gallery, "gallery entry");
  p->add_option("--dim", pol.dim, "gallery dimension")->capture_default_str();
  p->add_option("--args", pol.args, "JSON array of k vectors");
  p->add_flag("--tensor", pol.tensor, "emit the polarized tensor as polynomial JSON");
  p->add_option("--grid", pol.grid, "grid points per argument on [-1, 1] (1-dimensional domains)");

  NormsArgs nrm;
  auto* n = app.add_subcommand("norms", "polynomial norm and restricted tail norms");
  add_common(n, nrm.cfg, "json");
  n->add_option("--poly", nrm.poly, "polynomial JSON");
  n->add_option("--gallery", nrm.gallery, "gallery entry");
  n->add_option("--dim", nrm.dim, "gallery dimension")->capture_default_str();
  n->add_flag("--tails", nrm.tails, "restricted tail norms for every start");

  GalleryArgs gal;
  auto* g = app.add_subcommand("gallery", "list or check the example polynomials");
  add_common(g, gal.cfg, "json");
  g->add_option("action", gal.action, "list or check")->required()->check(CLI::IsMember({"list", "check"}));
  g->add_option("--name", gal.name, "single entry");
  g->add_option("--dim", gal.dim, "dimension")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (c->parsed()) return cmd_certify(certify);
    if (s->parsed()) return cmd_series(series);
    if (r->parsed()) return cmd_rademacher(rad);
    if (p->parsed()) return cmd_polarize(pol);
    if (n->parsed()) return cmd_norms(nrm);
    if (g->parsed()) return cmd_gallery(gal);
  } catch (const std::exception& e) {
    std::cerr << "ucpoly: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
