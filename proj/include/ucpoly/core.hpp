#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ucpoly/budget.hpp"
#include "ucpoly/detail/search.hpp"
#include "ucpoly/error.hpp"

namespace ucpoly {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

inline std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Which norm a finite vector carries: a truncation of l_p (p >= 1) or of c_0 / l_inf.
class NormTag {
 public:
  enum class Kind { Lp, Sup };

  static NormTag lp(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("l_p norm needs finite p >= 1");
    return NormTag(Kind::Lp, p);
  }
  static NormTag sup() { return NormTag(Kind::Sup, std::numeric_limits<double>::infinity()); }

  Kind kind() const { return kind_; }
  /// Exponent; +inf for Sup.
  double p() const { return p_; }
  bool is_sup() const { return kind_ == Kind::Sup; }

  /// Tag of the dual norm under the pairing sum f_i x_i.
  NormTag dual() const {
    if (is_sup()) return lp(1.0);
    if (p_ == 1.0) return sup();
    return lp(p_ / (p_ - 1.0));
  }

  bool operator==(const NormTag&) const = default;

 private:
  NormTag(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

inline std::string to_string(const NormTag& t) {
  if (t.is_sup()) return "sup";
  std::string s = std::to_string(t.p());
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return "l" + s;
}

/// Norm of raw coordinates under `tag`.
inline double norm(std::span<const Scalar> x, const NormTag& tag) {
  if (tag.is_sup()) {
    double m = 0.0;
    for (const Scalar& z : x) m = std::max(m, std::abs(z));
    return m;
  }
  const double p = tag.p();
  if (p == 1.0) {
    double s = 0.0;
    for (const Scalar& z : x) s += std::abs(z);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (const Scalar& z : x) s += std::norm(z);
    return std::sqrt(s);
  }
  // scale by the largest modulus so pow() does not overflow
  double m = 0.0;
  for (const Scalar& z : x) m = std::max(m, std::abs(z));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (const Scalar& z : x) s += std::pow(std::abs(z) / m, p);
  return m * std::pow(s, 1.0 / p);
}

/// A vector of a truncated sequence space: coordinates plus the norm they carry.
class Vec {
 public:
  Vec(std::vector<Scalar> entries, NormTag tag) : entries_(std::move(entries)), tag_(tag) {
    if (entries_.empty()) throw StructuralError("vector dimension must be positive");
  }

  /// Checked construction from a declared dimension.
  Vec(std::size_t dim, std::vector<Scalar> entries, NormTag tag) : Vec(std::move(entries), tag) {
    if (entries_.size() != dim)
      throw StructuralError("vector declares dim " + std::to_string(dim) + " but has " +
                            std::to_string(entries_.size()) + " entries");
  }

  static Vec zeros(std::size_t dim, NormTag tag) {
    return Vec(std::vector<Scalar>(dim, Scalar{}), tag);
  }
  /// Unit vector e_{index+1} (index is 0-based).
  static Vec basis(std::size_t dim, std::size_t index, NormTag tag) {
    if (index >= dim) throw StructuralError("basis index out of range");
    Vec v = zeros(dim, tag);
    v.entries_[index] = 1.0;
    return v;
  }
  static Vec real(std::initializer_list<double> xs, NormTag tag) {
    return Vec(std::vector<Scalar>(xs.begin(), xs.end()), tag);
  }

  std::size_t dim() const { return entries_.size(); }
  const NormTag& tag() const { return tag_; }
  std::span<const Scalar> entries() const { return entries_; }
  std::span<Scalar> entries() { return entries_; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  Scalar& operator[](std::size_t i) { return entries_[i]; }

  bool is_real(double tolerance = 0.0) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const Scalar& z) { return std::abs(z.imag()) <= tolerance; });
  }

  Vec& operator+=(const Vec& o) {
    require_same_space(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    require_same_space(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  Vec& operator*=(Scalar c) {
    for (Scalar& z : entries_) z *= c;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Scalar c, Vec a) { return a *= c; }

  void require_same_space(const Vec& o) const {
    if (o.dim() != dim() || !(o.tag() == tag()))
      throw StructuralError("vectors live in different spaces (" + std::to_string(dim()) + "/" +
                            to_string(tag()) + " vs " + std::to_string(o.dim()) + "/" +
                            to_string(o.tag()) + ")");
  }

  bool operator==(const Vec&) const = default;

 private:
  std::vector<Scalar> entries_;
  NormTag tag_;
};

inline double norm(const Vec& v) { return norm(v.entries(), v.tag()); }

/// Coefficients of a combination with every |eps_j| <= 1.
struct CoeffBox {
  Field field = Field::Real;
  std::vector<Scalar> coefficients;

  void validate() const {
    for (const Scalar& c : coefficients) {
      if (std::abs(c) > 1.0 + tol::kStructural) throw DomainError("coefficient outside the unit disc");
      if (field == Field::Real && c.imag() != 0.0) throw DomainError("complex coefficient in real box");
    }
  }
};

/// alpha_1 = 1, ..., alpha_k = exp(2 pi i (k-1)/k). Quarter-turn values are exact.
inline std::vector<Scalar> kth_roots_of_unity(int k) {
  if (k < 2) throw DomainError("roots of unity need k >= 2");
  std::vector<Scalar> roots;
  roots.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    if ((4 * j) % k == 0) {
      static constexpr Scalar kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      roots.push_back(kQuarter[(4 * j) / k]);
    } else {
      const double angle = 2.0 * std::numbers::pi * j / k;
      roots.emplace_back(std::cos(angle), std::sin(angle));
    }
  }
  return roots;
}

/// Result of an unconditional-supremum computation.
struct UnconditionalSup {
  double value = 0.0;
  CoeffBox witness;
  Exactness exactness;
  std::uint64_t evaluations = 0;
};

namespace detail {

inline void require_family(std::span<const Vec> vs) {
  if (vs.empty()) throw StructuralError("empty vector family");
  for (const Vec& v : vs) vs.front().require_same_space(v);
}

inline double combination_norm(std::span<const Vec> vs, std::span<const Scalar> eps) {
  std::vector<Scalar> sum(vs.front().dim(), Scalar{});
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += eps[j] * vs[j][i];
  return norm(sum, vs.front().tag());
}

/// Fails unless 2^terms fits in `cap`.
inline void require_sign_budget(std::size_t terms, std::uint64_t cap) {
  if (terms >= 63 || (std::uint64_t{1} << terms) > cap)
    throw BudgetError(std::to_string(terms) + " terms need 2^" + std::to_string(terms) +
                      " sign patterns, cap is " + std::to_string(cap));
}

}  // namespace detail

/// sup over |eps_j| <= 1 of || sum_j eps_j v_j ||.
///
/// Sup-tagged or one-dimensional spaces have a closed form. Otherwise, over the reals the
/// objective is convex in eps, so the supremum sits on a vertex of the cube and full sign
/// enumeration is exact; over the complex field the search runs on the torus |eps_j| = 1
/// and only a lower bound is claimed.
inline UnconditionalSup unconditional_sup(std::span<const Vec> vs, Field field,
                                          const SearchBudget& budget = {}) {
  detail::require_family(vs);
  budget.validate();
  const std::size_t n = vs.size();
  const std::size_t dim = vs.front().dim();
  UnconditionalSup out;
  out.witness.field = field;

  if (vs.front().tag().is_sup() || dim == 1) {
    // sup_eps max_i |sum_j eps_j v_j[i]| = max_i sum_j |v_j[i]|, attained by aligning phases
    std::size_t best_i = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (const Vec& v : vs) s += std::abs(v[i]);
      if (s > best) {
        best = s;
        best_i = i;
      }
    }
    out.witness.coefficients.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar z = vs[j][best_i];
      const double r = std::abs(z);
      out.witness.coefficients[j] =
          r == 0.0 ? Scalar{1.0, 0.0} : (field == Field::Real ? Scalar{z.real() < 0.0 ? -1.0 : 1.0, 0.0} : std::conj(z) / r);
    }
    out.value = detail::combination_norm(vs, out.witness.coefficients);
    out.evaluations = dim;
    out.exactness = Exactness::exact();
    return out;
  }

  if (field == Field::Real || n == 1) {
    detail::require_sign_budget(n, budget.enumeration_cap);
    // eps and -eps give the same norm: fix eps_1 = +1 and walk the rest in Gray order
    std::vector<double> sign(n, 1.0);
    std::vector<Scalar> sum(dim, Scalar{});
    for (const Vec& v : vs)
      for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
    double best = norm(sum, vs.front().tag());
    std::vector<double> best_sign = sign;
    const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
    for (std::uint64_t g = 1; g < patterns; ++g) {
      const auto j = static_cast<std::size_t>(std::countr_zero(g)) + 1;
      sign[j] = -sign[j];
      for (std::size_t i = 0; i < dim; ++i) sum[i] += 2.0 * sign[j] * vs[j][i];
      const double v = norm(sum, vs.front().tag());
      if (v > best) {
        best = v;
        best_sign = sign;
      }
    }
    out.evaluations = patterns;
    out.witness.coefficients.assign(best_sign.begin(), best_sign.end());
    out.value = detail::combination_norm(vs, out.witness.coefficients);
    out.exactness = Exactness::exact();
    return out;
  }

  std::vector<Scalar> eps(n);
  auto objective = [&](std::span<const double> angles) {
    for (std::size_t j = 0; j < n; ++j) eps[j] = std::polar(1.0, angles[j]);
    return detail::combination_norm(vs, eps);
  };
  const auto torus = detail::torus_search(n, objective, budget, budget.refinement_rounds);
  out.witness.coefficients.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.witness.coefficients[j] = std::polar(1.0, torus.angles[j]);
  out.value = detail::combination_norm(vs, out.witness.coefficients);
  out.evaluations = torus.evaluations;
  out.exactness = Exactness::lower_bound(torus.resolution);
  return out;
}

inline UnconditionalSup unconditional_sup(const std::vector<Vec>& vs, Field field,
                                          const SearchBudget& budget = {}) {
  return unconditional_sup(std::span<const Vec>(vs), field, budget);
}

}  // namespace ucpoly
