#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ucpoly/core.hpp"
#include "ucpoly/polys.hpp"
#include "ucpoly/random.hpp"

namespace ucpoly {

/// A certified lower bound: `value` is the objective re-evaluated at `witness`.
struct SupResult {
  double value = 0.0;
  std::vector<Scalar> witness;
  Exactness exactness = Exactness::lower_bound(0.0);
  std::uint64_t evaluations = 0;
  /// Known closed-form value of the supremum, when one applies.
  std::optional<double> closed_form;
};

namespace detail {

inline void require_in_domain(const HomPoly& p, std::span<const Vec> vs) {
  require_family(vs);
  if (vs.front().dim() != p.domain().dim || !(vs.front().tag() == p.domain().tag))
    throw StructuralError("vectors are not in the polynomial's domain");
}

inline void combine(std::span<const Vec> vs, std::span<const Scalar> nu, std::span<Scalar> y) {
  std::fill(y.begin(), y.end(), Scalar{});
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (nu[j] == Scalar{}) continue;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += nu[j] * vs[j][i];
  }
}

/// Real parameter vector <-> scalar coordinates (pairs (re, im) over the complex field).
inline void unpack(std::span<const double> params, Field field, std::span<Scalar> out) {
  if (field == Field::Real) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Scalar{params[i], 0.0};
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Scalar{params[2 * i], params[2 * i + 1]};
  }
}

inline std::vector<double> pack(std::span<const Scalar> x, Field field) {
  std::vector<double> p;
  p.reserve(field == Field::Real ? x.size() : 2 * x.size());
  for (const Scalar& z : x) {
    p.push_back(z.real());
    if (field == Field::Complex) p.push_back(z.imag());
  }
  return p;
}

inline std::optional<double> diagonal_closed_form(const HomPoly& p) {
  const auto* d = std::get_if<DiagonalBody>(&p.body());
  if (d == nullptr || p.degree() < 2 || p.domain().tag.is_sup() || p.domain().tag.p() != 2.0) return std::nullopt;
  double m = 0.0;
  for (const Scalar& a : d->weights) m = std::max(m, std::abs(a));
  return m;
}

}  // namespace detail

/// Lower bound on sup over |nu_j| <= 1 of ||P(sum_j nu_j v_j)||.
///
/// Real field: single-term points, every sign vertex (when 2^N fits the cap), a dense grid
/// for few terms, then projected multistart ascent in the box. The objective is not convex
/// in nu, so vertices alone do not settle it. Complex field: torus search (the supremum is
/// attained on |nu_j| = 1) plus the single-term points.
inline SupResult cube_sup(const HomPoly& p, std::span<const Vec> vs, Field field, const SearchBudget& budget = {}) {
  budget.validate();
  detail::require_in_domain(p, vs);
  const std::size_t terms = vs.size();
  const std::size_t n = p.domain().dim;
  const std::size_t m = p.codomain().dim;

  std::vector<Scalar> y(n), image(m);
  SupResult out;
  auto objective = [&](std::span<const Scalar> nu) {
    ++out.evaluations;
    detail::combine(vs, nu, y);
    p.evaluate_into(y, image);
    return norm(image, p.codomain().tag);
  };

  std::vector<Scalar> best(terms, Scalar{});
  double best_value = objective(best);
  auto offer = [&](std::span<const Scalar> nu, double v) {
    if (v > best_value) {
      best_value = v;
      best.assign(nu.begin(), nu.end());
    }
  };

  std::vector<Scalar> nu(terms, Scalar{});
  for (std::size_t j = 0; j < terms; ++j) {
    nu[j] = 1.0;
    offer(nu, objective(nu));
    nu[j] = 0.0;
  }

  bool exceeded = false;
  double resolution = 0.0;

  if (field == Field::Real) {
    if (terms < 63 && (std::uint64_t{1} << terms) <= budget.enumeration_cap) {
      // ||P(-y)|| = ||P(y)||: fix nu_1 = +1
      std::fill(nu.begin(), nu.end(), Scalar{1.0, 0.0});
      offer(nu, objective(nu));
      const std::uint64_t patterns = std::uint64_t{1} << (terms - 1);
      for (std::uint64_t g = 1; g < patterns; ++g) {
        const auto j = static_cast<std::size_t>(std::countr_zero(g)) + 1;
        nu[j] = -nu[j];
        offer(nu, objective(nu));
      }
    } else {
      exceeded = true;
    }

    const std::size_t g = budget.grid_per_axis;
    double cells = 1.0;
    for (std::size_t j = 0; j < terms; ++j) cells *= static_cast<double>(g);
    if (terms <= budget.dense_grid_max_terms && cells <= static_cast<double>(budget.enumeration_cap)) {
      const double spacing = 2.0 / static_cast<double>(g - 1);
      resolution = spacing;
      std::vector<std::size_t> digit(terms, 0);
      std::fill(nu.begin(), nu.end(), Scalar{-1.0, 0.0});
      while (true) {
        offer(nu, objective(nu));
        std::size_t j = 0;
        while (j < terms && digit[j] + 1 == g) {
          digit[j] = 0;
          nu[j] = -1.0;
          ++j;
        }
        if (j == terms) break;
        ++digit[j];
        nu[j] = -1.0 + spacing * static_cast<double>(digit[j]);
      }
    }

    std::vector<Scalar> trial(terms);
    auto param_objective = [&](std::span<const double> x) {
      detail::unpack(x, Field::Real, trial);
      return objective(trial);
    };
    auto clamp = [](std::vector<double>& x) {
      for (double& v : x) v = std::clamp(v, -1.0, 1.0);
    };
    CounterRng rng(budget.seed, 0xC0BEu);
    for (std::size_t s = 0; s <= budget.multistarts; ++s) {
      std::vector<double> x(terms);
      if (s == 0) {
        x = detail::pack(best, Field::Real);
      } else {
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
      }
      std::uint64_t evals = 0;
      detail::projected_ascent(x, param_objective, clamp, budget.ascent_iterations, 0.25, evals);
      detail::unpack(x, Field::Real, trial);
      offer(trial, objective(trial));
    }
  } else {
    std::vector<Scalar> eps(terms);
    auto torus_objective = [&](std::span<const double> angles) {
      for (std::size_t j = 0; j < terms; ++j) eps[j] = std::polar(1.0, angles[j]);
      return objective(eps);
    };
    const auto torus = detail::torus_search(terms, torus_objective, budget, budget.refinement_rounds);
    for (std::size_t j = 0; j < terms; ++j) eps[j] = std::polar(1.0, torus.angles[j]);
    offer(eps, objective(eps));
    resolution = torus.resolution;
  }

  out.witness = best;
  out.value = objective(best);
  out.exactness = Exactness::lower_bound(resolution, exceeded);
  return out;
}

inline SupResult cube_sup(const HomPoly& p, const std::vector<Vec>& vs, Field field, const SearchBudget& budget = {}) {
  return cube_sup(p, std::span<const Vec>(vs), field, budget);
}

/// Lower bound on ||P|| = sup over the domain unit ball of ||P(x)||.
///
/// Sup-tagged domains: the ball is the coefficient box of the unit basis, handled by
/// cube_sup. Otherwise: basis vectors, the normalized all-ones vector, then multistart
/// ascent on the unit sphere (homogeneity puts the supremum there).
inline SupResult poly_norm(const HomPoly& p, const SearchBudget& budget = {}) {
  budget.validate();
  const std::size_t n = p.domain().dim;
  const NormTag& tag = p.domain().tag;
  const Field field = p.field();

  if (tag.is_sup()) {
    std::vector<Vec> basis;
    basis.reserve(n);
    for (std::size_t i = 0; i < n; ++i) basis.push_back(Vec::basis(n, i, tag));
    SupResult r = cube_sup(p, basis, field, budget);
    r.closed_form = detail::diagonal_closed_form(p);
    return r;
  }

  SupResult out;
  std::vector<Scalar> x(n), image(p.codomain().dim);
  auto value_at = [&](std::span<const Scalar> v) {
    ++out.evaluations;
    p.evaluate_into(v, image);
    return norm(image, p.codomain().tag);
  };
  auto normalize = [&](std::span<Scalar> v) {
    const double r = norm(v, tag);
    if (r > 0.0)
      for (Scalar& z : v) z /= r;
  };

  std::vector<Scalar> best(n, Scalar{});
  double best_value = 0.0;
  auto offer = [&](std::span<const Scalar> v) {
    const double val = value_at(v);
    if (val > best_value) {
      best_value = val;
      best.assign(v.begin(), v.end());
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(x.begin(), x.end(), Scalar{});
    x[i] = 1.0;
    offer(x);
  }
  std::fill(x.begin(), x.end(), Scalar{1.0, 0.0});
  normalize(x);
  offer(x);

  auto param_objective = [&](std::span<const double> params) {
    detail::unpack(params, field, x);
    normalize(x);
    return value_at(x);
  };
  auto project = [&](std::vector<double>& params) {
    std::vector<Scalar> v(n);
    detail::unpack(params, field, v);
    normalize(v);
    params = detail::pack(v, field);
  };

  CounterRng rng(budget.seed, 0xBA11u);
  for (std::size_t s = 0; s <= budget.multistarts; ++s) {
    std::vector<double> params;
    if (s == 0) {
      params = detail::pack(best, field);
    } else {
      params.resize(field == Field::Real ? n : 2 * n);
      for (double& v : params) v = rng.uniform(-1.0, 1.0);
    }
    std::uint64_t evals = 0;
    detail::projected_ascent(params, param_objective, project, budget.ascent_iterations, 0.25, evals);
    std::vector<Scalar> v(n);
    detail::unpack(params, field, v);
    normalize(v);
    offer(v);
  }

  out.witness = best;
  out.value = value_at(best);
  out.exactness = Exactness::lower_bound(0.0);
  out.closed_form = detail::diagonal_closed_form(p);
  return out;
}

/// Lower bound on the norm of P restricted to vectors supported on coordinates start..dim
/// (1-based). The witness is returned in full coordinates.
inline SupResult restricted_tail_norm(const HomPoly& p, std::size_t start, const SearchBudget& budget = {}) {
  const std::size_t n = p.domain().dim;
  if (start < 1 || start > n)
    throw DomainError("tail start " + std::to_string(start) + " outside 1.." + std::to_string(n));
  const std::size_t width = n - start + 1;
  SupResult r;
  if (p.domain().tag.is_sup()) {
    std::vector<Vec> vs;
    vs.reserve(width);
    for (std::size_t i = start - 1; i < n; ++i) vs.push_back(Vec::basis(n, i, p.domain().tag));
    r = cube_sup(p, vs, p.field(), budget);
  } else {
    Matrix inject(n, width);
    for (std::size_t c = 0; c < width; ++c) inject(start - 1 + c, c) = 1.0;
    r = poly_norm(compose_linear(p, inject), budget);
    r.closed_form.reset();
  }
  std::vector<Scalar> full(n, Scalar{});
  std::copy(r.witness.begin(), r.witness.end(), full.begin() + static_cast<std::ptrdiff_t>(start - 1));
  r.witness = std::move(full);
  return r;
}

}  // namespace ucpoly
