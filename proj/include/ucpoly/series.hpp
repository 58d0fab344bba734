#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ucpoly/certify.hpp"
#include "ucpoly/core.hpp"
#include "ucpoly/optimize.hpp"
#include "ucpoly/polys.hpp"

namespace ucpoly {

/// The first N terms of a series, all in one space.
class SeriesPrefix {
 public:
  SeriesPrefix(std::vector<Vec> terms, std::string label = {}) : terms_(std::move(terms)), label_(std::move(label)) {
    if (terms_.empty()) throw StructuralError("series prefix '" + label_ + "' has no terms");
    for (const Vec& v : terms_) terms_.front().require_same_space(v);
  }

  std::size_t size() const { return terms_.size(); }
  const std::vector<Vec>& terms() const { return terms_; }
  const Vec& operator[](std::size_t i) const { return terms_[i]; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return terms_.front().dim(); }
  const NormTag& tag() const { return terms_.front().tag(); }

  /// Terms n..N (1-based start).
  std::span<const Vec> tail(std::size_t start) const {
    if (start < 1 || start > terms_.size())
      throw DomainError("tail start " + std::to_string(start) + " outside 1.." + std::to_string(terms_.size()));
    return std::span<const Vec>(terms_).subspan(start - 1);
  }

 private:
  std::vector<Vec> terms_;
  std::string label_;
};

/// e_1, ..., e_N in a dim-N space tagged `tag`.
inline SeriesPrefix unit_basis_series(std::size_t n, NormTag tag) {
  std::vector<Vec> terms;
  for (std::size_t i = 0; i < n; ++i) terms.push_back(Vec::basis(n, i, tag));
  return SeriesPrefix(std::move(terms), "unit_basis");
}

/// ratio^i e_i, i = 1..N.
inline SeriesPrefix geometric_series(std::size_t n, double ratio, NormTag tag) {
  std::vector<Vec> terms;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = Vec::basis(n, i, tag);
    v[i] = std::pow(ratio, static_cast<double>(i + 1));
    terms.push_back(std::move(v));
  }
  return SeriesPrefix(std::move(terms), "geometric");
}

namespace detail {
inline SupResult to_sup_result(const UnconditionalSup& u) {
  SupResult r;
  r.value = u.value;
  r.witness = u.witness.coefficients;
  r.exactness = u.exactness;
  r.evaluations = u.evaluations;
  return r;
}
}  // namespace detail

/// sup over |eps| <= 1 of ||sum eps_i x_i|| over the whole prefix.
inline SupResult wuc_constant(const SeriesPrefix& s, Field field, const SearchBudget& budget = {}) {
  return detail::to_sup_result(unconditional_sup(std::span<const Vec>(s.terms()), field, budget));
}

/// t_n = sup over |eps| <= 1 of ||sum_{i=n}^N eps_i x_i||, n = 1..N.
struct TailProfile {
  std::vector<double> values;
  std::vector<Exactness> exactness;
  double decay_ratio = 0.1;
  /// t_N <= decay_ratio * t_1. A finite-prefix diagnostic only.
  bool decaying = false;
};

inline TailProfile uc_tail_profile(const SeriesPrefix& s, Field field, const SearchBudget& budget = {},
                                   double decay_ratio = 0.1) {
  TailProfile out;
  out.decay_ratio = decay_ratio;
  for (std::size_t n = 1; n <= s.size(); ++n) {
    const auto u = unconditional_sup(s.tail(n), field, budget);
    out.values.push_back(u.value);
    out.exactness.push_back(u.exactness);
  }
  out.decaying = out.values.back() <= decay_ratio * out.values.front();
  return out;
}

inline SeriesPrefix image_series(const HomPoly& p, const SeriesPrefix& s) {
  std::vector<Vec> images;
  images.reserve(s.size());
  for (const Vec& x : s.terms()) images.push_back(eval_poly(p, x));
  return SeriesPrefix(std::move(images), s.label().empty() ? "image" : "image of " + s.label());
}

/// Both sides of sup||sum_{i>=n} eps_i P x_i|| <= C_k ||P|| sup||sum_{i>=n} nu_i x_i||^k.
struct TailInequalityCheck {
  std::size_t start = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double slack = 1.05;
  SupResult norm_estimate;
  double tail_sup = 0.0;
  bool lhs_exact = false;
  bool holds = false;
};

/// `norm_estimate` lets callers reuse one ||P|| search across many starts.
inline TailInequalityCheck check_tail_inequality(const HomPoly& p, const SeriesPrefix& s, std::size_t start,
                                         const SupResult& norm_estimate, const SearchBudget& budget = {},
                                         double slack = 1.05) {
  if (s.dim() != p.domain().dim || !(s.tag() == p.domain().tag))
    throw StructuralError("series is not in the polynomial's domain");
  if (!(slack >= 1.0)) throw DomainError("slack must be >= 1");
  TailInequalityCheck c;
  c.start = start;
  c.slack = slack;
  c.constant = c_constant(p.degree(), p.field());
  c.norm_estimate = norm_estimate;

  const auto tail = s.tail(start);
  std::vector<Vec> images;
  images.reserve(tail.size());
  for (const Vec& x : tail) images.push_back(eval_poly(p, x));
  const auto lhs = unconditional_sup(std::span<const Vec>(images), p.field(), budget);
  const auto t = unconditional_sup(tail, p.field(), budget);
  c.lhs = lhs.value;
  c.lhs_exact = lhs.exactness.is_exact();
  c.tail_sup = t.value;
  c.rhs = c.constant * (norm_estimate.value * slack) * std::pow(t.value, static_cast<double>(p.degree()));
  c.holds = c.lhs <= c.rhs + tol::kNumeric;
  return c;
}

inline TailInequalityCheck check_tail_inequality(const HomPoly& p, const SeriesPrefix& s, std::size_t start,
                                         const SearchBudget& budget = {}, double slack = 1.05) {
  return check_tail_inequality(p, s, start, poly_norm(p, budget), budget, slack);
}

/// For each functional f_n, max over the finite set A of |f_n(x)|.
inline std::vector<double> vstar_pairing(std::span<const Vec> set, std::span<const ScalarFunctional> functionals) {
  if (set.empty()) throw StructuralError("pairing needs a non-empty set");
  std::vector<double> profile;
  profile.reserve(functionals.size());
  for (const ScalarFunctional& f : functionals) {
    double m = 0.0;
    for (const Vec& x : set) m = std::max(m, std::abs(f(x)));
    profile.push_back(m);
  }
  return profile;
}

inline std::vector<double> vstar_pairing(const std::vector<Vec>& set, const std::vector<ScalarFunctional>& fs) {
  return vstar_pairing(std::span<const Vec>(set), std::span<const ScalarFunctional>(fs));
}

struct SummabilityBound {
  double lhs = 0.0;  ///< sum_i ||P x_i||
  double rhs = 0.0;  ///< sup_j ||x_j|| (sum_i |f(x_i)|)^{k-1}
  bool holds = false;
};

/// The absolute-summability bound for P(x) = f(x)^{k-1} x on a prefix.
inline SummabilityBound summability_bound(const HomPoly& p, const SeriesPrefix& s) {
  const auto* body = std::get_if<ScaledIdentityBody>(&p.body());
  if (body == nullptr) throw DomainError("summability_bound needs a scaled-identity polynomial");
  if (p.degree() < 2) throw DomainError("summability_bound needs degree >= 2");
  if (s.dim() != p.domain().dim) throw StructuralError("series is not in the polynomial's domain");
  SummabilityBound b;
  double sup_norm = 0.0, pairing_sum = 0.0;
  for (const Vec& x : s.terms()) {
    b.lhs += norm(eval_poly(p, x));
    sup_norm = std::max(sup_norm, norm(x));
    pairing_sum += std::abs(body->functional(x));
  }
  b.rhs = sup_norm * std::pow(pairing_sum, static_cast<double>(p.degree() - 1));
  b.holds = b.lhs <= b.rhs * (1.0 + tol::kStructural) + tol::kStructural;
  return b;
}

struct LiftedBlock {
  std::size_t begin = 0;  ///< 0-based, inclusive
  std::size_t end = 0;    ///< exclusive
  std::vector<Scalar> coefficients;
  Vec combination;  ///< y = sum c_i x_i over the block
  double image_norm = 0.0;
};

/// For each block (boundaries[b], boundaries[b+1]] picks |c_i| <= 1 maximizing
/// ||P(sum c_i x_i)|| over the block. `boundaries` starts at 0, ends at N, and increases.
inline std::vector<LiftedBlock> lift_blocks(const HomPoly& p, const SeriesPrefix& s,
                                            std::span<const std::size_t> boundaries, const SearchBudget& budget = {}) {
  if (boundaries.size() < 2 || boundaries.front() != 0 || boundaries.back() != s.size())
    throw DomainError("block boundaries must start at 0 and end at the prefix length");
  for (std::size_t b = 1; b < boundaries.size(); ++b)
    if (boundaries[b] <= boundaries[b - 1]) throw DomainError("block boundaries must increase strictly");
  std::vector<LiftedBlock> out;
  for (std::size_t b = 0; b + 1 < boundaries.size(); ++b) {
    const auto block = std::span<const Vec>(s.terms()).subspan(boundaries[b], boundaries[b + 1] - boundaries[b]);
    const SupResult r = cube_sup(p, block, p.field(), budget);
    Vec y = Vec::zeros(s.dim(), s.tag());
    for (std::size_t j = 0; j < block.size(); ++j) y += r.witness[j] * block[j];
    out.push_back({boundaries[b], boundaries[b + 1], r.witness, y, norm(eval_poly(p, y))});
  }
  return out;
}

inline std::vector<LiftedBlock> lift_blocks(const HomPoly& p, const SeriesPrefix& s,
                                            const std::vector<std::size_t>& boundaries,
                                            const SearchBudget& budget = {}) {
  return lift_blocks(p, s, std::span<const std::size_t>(boundaries), budget);
}

}  // namespace ucpoly
