#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ucpoly/core.hpp"

namespace ucpoly {

using Rational = boost::rational<std::int64_t>;

/// Largest number of intervals a step function (or a common refinement) may have.
inline constexpr std::uint64_t kStepIntervalCap = 10'000'000;

namespace detail {

/// k^n, or BudgetError when it exceeds kStepIntervalCap.
inline std::uint64_t checked_power(int k, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    r *= static_cast<std::uint64_t>(k);
    if (r > kStepIntervalCap)
      throw BudgetError(std::to_string(k) + "^" + std::to_string(n) + " intervals exceed the cap of " +
                        std::to_string(kStepIntervalCap));
  }
  return r;
}

}  // namespace detail

/// Generalized Rademacher function s_n of order k: constant on each of the k^n intervals
/// (j/k^n, (j+1)/k^n), with value alpha^{exponent} for alpha = exp(2 pi i / k).
class StepFunction {
 public:
  int order() const { return order_; }
  int level() const { return level_; }
  std::size_t intervals() const { return exponents_.size(); }
  std::span<const std::uint32_t> exponents() const { return exponents_; }

  /// Left end of interval j; breakpoint(intervals()) == 1.
  Rational breakpoint(std::size_t j) const {
    return Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(exponents_.size()));
  }
  Rational width() const { return Rational(1, static_cast<std::int64_t>(exponents_.size())); }

  Scalar value(std::size_t interval) const { return roots_[exponents_.at(interval)]; }

 private:
  friend StepFunction rademacher(int k, int n);
  int order_ = 2;
  int level_ = 1;
  std::vector<std::uint32_t> exponents_;
  std::vector<Scalar> roots_;
};

/// s_1 takes alpha_j on ((j-1)/k, j/k); s_n splits every interval of s_{n-1} into k
/// equal pieces carrying alpha_1..alpha_k in order.
inline StepFunction rademacher(int k, int n) {
  if (k < 2) throw DomainError("Rademacher order must be >= 2");
  if (n < 1) throw DomainError("Rademacher level must be >= 1");
  detail::checked_power(k, n);
  StepFunction s;
  s.order_ = k;
  s.level_ = n;
  s.roots_ = kth_roots_of_unity(k);
  std::vector<std::uint32_t> coarse(1, 0);
  for (int level = 1; level <= n; ++level) {
    std::vector<std::uint32_t> fine;
    fine.reserve(coarse.size() * static_cast<std::size_t>(k));
    for (std::size_t interval = 0; interval < coarse.size(); ++interval)
      for (int j = 0; j < k; ++j) fine.push_back(static_cast<std::uint32_t>(j));
    coarse = std::move(fine);
  }
  s.exponents_ = std::move(coarse);
  return s;
}

/// Value of s at t. Breakpoints carry no value and are rejected.
inline Scalar eval_step(const StepFunction& s, const Rational& t) {
  if (t <= Rational(0) || t >= Rational(1)) throw DomainError("t must lie strictly inside (0, 1)");
  const Rational scaled = t * static_cast<std::int64_t>(s.intervals());
  if (scaled.denominator() == 1)
    throw BoundaryError("t = " + std::to_string(t.numerator()) + "/" + std::to_string(t.denominator()) +
                        " is a breakpoint of s_" + std::to_string(s.level()));
  const auto j = static_cast<std::size_t>(scaled.numerator() / scaled.denominator());
  return s.value(j);
}

/// Exact integral of a product of Rademacher functions, kept as a rational weight per
/// root of unity: value = sum_e weight[e] * alpha^e.
struct ProductIntegral {
  int order = 2;
  std::vector<Rational> weights;

  Scalar value() const {
    const auto roots = kth_roots_of_unity(order);
    Scalar z{};
    for (std::size_t e = 0; e < weights.size(); ++e)
      z += roots[e] * (static_cast<double>(weights[e].numerator()) /
                       static_cast<double>(weights[e].denominator()));
    return z;
  }
  /// Whole mass on exponent 0, i.e. the integrand is identically 1.
  bool is_exactly_one() const {
    if (weights.empty() || weights[0] != Rational(1)) return false;
    for (std::size_t e = 1; e < weights.size(); ++e)
      if (weights[e] != Rational(0)) return false;
    return true;
  }
};

/// Integral over [0,1] of s_{i_1}(t) ... s_{i_k}(t) for exactly k = order indices (1-based).
/// Sums interval width times the product of values over the finest common partition.
inline ProductIntegral product_integral(int k, std::span<const int> indices) {
  if (k < 2) throw DomainError("Rademacher order must be >= 2");
  if (indices.size() != static_cast<std::size_t>(k))
    throw DomainError("product needs exactly " + std::to_string(k) + " factors, got " +
                      std::to_string(indices.size()));
  int finest = 0;
  for (int i : indices) {
    if (i < 1) throw DomainError("Rademacher indices start at 1");
    finest = std::max(finest, i);
  }
  const std::uint64_t cells = detail::checked_power(k, finest);

  std::vector<StepFunction> factors;
  factors.reserve(indices.size());
  for (int i : indices) factors.push_back(rademacher(k, i));

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(k), 0);
  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    std::uint32_t exponent = 0;
    for (const StepFunction& s : factors) {
      // cell of the finest partition lies inside interval cell / k^(finest - level) of s
      const std::uint64_t coarse = cell / (cells / s.intervals());
      exponent += s.exponents()[coarse];
    }
    ++counts[exponent % static_cast<std::uint32_t>(k)];
  }
  ProductIntegral out;
  out.order = k;
  out.weights.reserve(counts.size());
  for (std::uint64_t c : counts)
    out.weights.emplace_back(static_cast<std::int64_t>(c), static_cast<std::int64_t>(cells));
  return out;
}

inline ProductIntegral product_integral(int k, const std::vector<int>& indices) {
  return product_integral(k, std::span<const int>(indices));
}

}  // namespace ucpoly
