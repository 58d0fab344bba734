#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucpoly/core.hpp"
#include "ucpoly/optimize.hpp"
#include "ucpoly/polys.hpp"
#include "ucpoly/random.hpp"

namespace ucpoly {

/// C_k for sup||sum eps_j P x_j|| <= C_k sup||P(sum nu_j x_j)||: 1 over C, (2k)^k / k! over R.
inline double c_constant(std::size_t k, Field field) {
  if (k == 0) throw DomainError("C_k is defined for k >= 1");
  if (field == Field::Complex) return 1.0;
  // numerator and denominator stay exact integers while below 2^53
  double power = 1.0, fact = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    power *= 2.0 * static_cast<double>(k);
    fact *= static_cast<double>(i);
  }
  return power / fact;
}

/// No refuted state: the right-hand side is only ever a lower bound.
enum class Verdict { Proved, Unresolved };

inline std::string to_string(Verdict v) { return v == Verdict::Proved ? "proved" : "unresolved"; }

struct BoundCertificate {
  std::size_t k = 0;
  Field field = Field::Real;
  double constant = 0.0;
  SupResult lhs;  ///< sup over the box of ||sum eps_j P(x_j)||
  SupResult rhs;  ///< sup over the box of ||P(sum nu_j x_j)||, lower bound
  double margin = 0.0;  ///< constant * rhs - lhs
  Verdict verdict = Verdict::Unresolved;
  std::string reason;
  SearchBudget budget;
  /// Complex field only: both sides after one extra refinement round.
  std::optional<double> lhs_refined;
  std::optional<double> rhs_refined;
};

/// Relative stability threshold applied to one extra refinement round.
inline constexpr double kRefinementStability = 1e-6;

inline BoundCertificate check_unconditional_bound(const HomPoly& p, std::span<const Vec> vs, const SearchBudget& budget = {}) {
  detail::require_in_domain(p, vs);
  BoundCertificate c;
  c.k = p.degree();
  c.field = p.field();
  c.constant = c_constant(c.k, c.field);
  c.budget = budget;

  std::vector<Vec> images;
  images.reserve(vs.size());
  for (const Vec& x : vs) images.push_back(eval_poly(p, x));

  auto lhs_at = [&](const SearchBudget& b) {
    const auto u = unconditional_sup(std::span<const Vec>(images), c.field, b);
    SupResult r;
    r.value = u.value;
    r.witness = u.witness.coefficients;
    r.exactness = u.exactness;
    r.evaluations = u.evaluations;
    return r;
  };

  try {
    c.lhs = lhs_at(budget);
  } catch (const BudgetError& e) {
    c.reason = e.what();
    return c;
  }
  c.rhs = cube_sup(p, vs, c.field, budget);
  c.margin = c.constant * c.rhs.value - c.lhs.value;
  const bool relation = c.lhs.value <= c.constant * c.rhs.value + tol::kNumeric;

  if (c.field == Field::Real) {
    if (!c.lhs.exactness.is_exact()) {
      c.reason = "left-hand side is not exact";
    } else if (!relation) {
      c.reason = "left-hand side exceeds C_k times the right-hand lower bound";
    } else {
      c.verdict = Verdict::Proved;
    }
    return c;
  }

  SearchBudget refined = budget;
  ++refined.refinement_rounds;
  const SupResult lhs2 = lhs_at(refined);
  const SupResult rhs2 = cube_sup(p, vs, c.field, refined);
  c.lhs_refined = lhs2.value;
  c.rhs_refined = rhs2.value;
  auto stable = [](double base, double next) {
    return std::abs(next - base) <= kRefinementStability * std::max(std::abs(base), 1e-300);
  };
  const bool relation_refined = lhs2.value <= c.constant * rhs2.value + tol::kNumeric;
  if (!relation || !relation_refined) {
    c.reason = "left-hand lower bound exceeds the right-hand lower bound";
  } else if (!stable(c.lhs.value, lhs2.value) || !stable(c.rhs.value, rhs2.value)) {
    c.reason = "not stable under one more refinement round";
  } else {
    c.verdict = Verdict::Proved;
  }
  return c;
}

inline BoundCertificate check_unconditional_bound(const HomPoly& p, const std::vector<Vec>& vs, const SearchBudget& budget = {}) {
  return check_unconditional_bound(p, std::span<const Vec>(vs), budget);
}

/// Parameters of a random certification run; all ranges are inclusive.
struct SuiteConfig {
  std::size_t k_min = 2, k_max = 3;
  std::size_t dim_min = 1, dim_max = 4;
  std::size_t codim_min = 1, codim_max = 4;
  std::size_t terms_min = 1, terms_max = 4;
  std::size_t count = 0;
  Field field = Field::Real;
  std::uint64_t seed = 0;
  std::vector<NormTag> tags = {NormTag::lp(1.0), NormTag::lp(2.0), NormTag::sup()};

  void validate() const {
    if (k_min < 1 || k_min > k_max) throw DomainError("invalid degree range");
    if (dim_min < 1 || dim_min > dim_max) throw DomainError("invalid dimension range");
    if (codim_min < 1 || codim_min > codim_max) throw DomainError("invalid codimension range");
    if (terms_min < 1 || terms_min > terms_max) throw DomainError("invalid term-count range");
    if (tags.empty()) throw DomainError("no norm tags to draw from");
  }
};

struct SuiteInstance {
  HomPoly poly;
  std::vector<Vec> vectors;
};

/// Instance `index` of a suite. Depends only on (config, index): coefficients i.i.d.
/// uniform in [-1, 1] per multiset, scaled so the norm estimate is about 1; complex
/// suites complexify the real tensor and draw complex vectors.
inline SuiteInstance make_suite_instance(const SuiteConfig& config, std::size_t index) {
  config.validate();
  CounterRng rng(config.seed, index);
  const auto k = static_cast<std::size_t>(rng.uniform_int(config.k_min, config.k_max));
  const auto n = static_cast<std::size_t>(rng.uniform_int(config.dim_min, config.dim_max));
  const auto m = static_cast<std::size_t>(rng.uniform_int(config.codim_min, config.codim_max));
  const auto terms = static_cast<std::size_t>(rng.uniform_int(config.terms_min, config.terms_max));
  const NormTag dom_tag = config.tags[rng.uniform_int(0, config.tags.size() - 1)];
  const NormTag cod_tag = config.tags[rng.uniform_int(0, config.tags.size() - 1)];

  SymTensor t(k, n, m, Field::Real);
  std::vector<Scalar> c(m);
  for (std::size_t r = 0; r < t.size(); ++r) {
    for (Scalar& z : c) z = rng.uniform(-1.0, 1.0);
    t.set_coefficient_at(r, c);
  }
  HomPoly p = HomPoly::from_tensor(t, dom_tag, cod_tag);

  SearchBudget quick;
  quick.multistarts = 4;
  quick.ascent_iterations = 50;
  quick.seed = config.seed;
  const double estimate = poly_norm(p, quick).value;
  if (estimate > 0.0) {
    SymTensor scaled(k, n, m, Field::Real);
    for (std::size_t r = 0; r < t.size(); ++r) {
      const auto v = t.coefficient_at(r);
      for (std::size_t i = 0; i < m; ++i) c[i] = v[i] / estimate;
      scaled.set_coefficient_at(r, c);
    }
    p = HomPoly::from_tensor(std::move(scaled), dom_tag, cod_tag);
  }
  if (config.field == Field::Complex) p = complexify(p);

  std::vector<Vec> vectors;
  vectors.reserve(terms);
  for (std::size_t j = 0; j < terms; ++j) {
    std::vector<Scalar> e(n);
    for (Scalar& z : e) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = config.field == Field::Complex ? rng.uniform(-1.0, 1.0) : 0.0;
      z = Scalar{re, im};
    }
    vectors.emplace_back(std::move(e), dom_tag);
  }
  return {std::move(p), std::move(vectors)};
}

struct SuiteSummary {
  SuiteConfig config;
  std::size_t count = 0;
  std::size_t proved = 0;
  std::size_t unresolved = 0;
  /// Real field: lhs > C_k * rhs with an exact lhs. Always a defect signal.
  std::size_t violations = 0;
  double max_ratio = 0.0;  ///< max lhs / rhs over instances with rhs > 0
  std::optional<std::size_t> tightest;
  std::vector<BoundCertificate> certificates;
};

inline SuiteSummary random_certification_suite(const SuiteConfig& config, const SearchBudget& budget = {}) {
  config.validate();
  SuiteSummary s;
  s.config = config;
  s.count = config.count;
  s.certificates.reserve(config.count);
  double tightest_margin = 0.0;
  for (std::size_t i = 0; i < config.count; ++i) {
    const SuiteInstance inst = make_suite_instance(config, i);
    BoundCertificate cert = check_unconditional_bound(inst.poly, inst.vectors, budget);
    if (cert.verdict == Verdict::Proved) {
      ++s.proved;
    } else {
      ++s.unresolved;
    }
    if (cert.field == Field::Real && cert.lhs.exactness.is_exact() &&
        cert.lhs.value > cert.constant * cert.rhs.value + tol::kNumeric)
      ++s.violations;
    if (cert.rhs.value > 0.0) s.max_ratio = std::max(s.max_ratio, cert.lhs.value / cert.rhs.value);
    const double relative_margin = cert.rhs.value > 0.0 ? cert.margin / (cert.constant * cert.rhs.value) : 1.0;
    if (!s.tightest || relative_margin < tightest_margin) {
      s.tightest = i;
      tightest_margin = relative_margin;
    }
    s.certificates.push_back(std::move(cert));
  }
  return s;
}

}  // namespace ucpoly
