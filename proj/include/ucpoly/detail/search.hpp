#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "ucpoly/budget.hpp"
#include "ucpoly/random.hpp"

namespace ucpoly::detail {

inline constexpr double kFiniteDifferenceStep = 1e-5;

/// Ascent with central finite-difference gradients and an adaptive step. `project`
/// maps a trial point back into the feasible set. On return `x` holds the best point
/// seen along the path and the function returns its value.
template <class Objective, class Project>
double projected_ascent(std::vector<double>& x, Objective&& f, Project&& project,
                        std::size_t iterations, double step, std::uint64_t& evaluations) {
  project(x);
  double fx = f(std::span<const double>(x));
  ++evaluations;
  std::vector<double> grad(x.size()), trial(x.size()), probe(x);
  for (std::size_t it = 0; it < iterations && step > 1e-12; ++it) {
    double gnorm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      probe[i] = x[i] + kFiniteDifferenceStep;
      const double up = f(std::span<const double>(probe));
      probe[i] = x[i] - kFiniteDifferenceStep;
      const double down = f(std::span<const double>(probe));
      probe[i] = x[i];
      evaluations += 2;
      grad[i] = (up - down) / (2.0 * kFiniteDifferenceStep);
      gnorm2 += grad[i] * grad[i];
    }
    const double gnorm = std::sqrt(gnorm2);
    if (!(gnorm > 1e-14)) break;
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * grad[i] / gnorm;
    project(trial);
    const double ft = f(std::span<const double>(trial));
    ++evaluations;
    if (ft > fx) {
      x = trial;
      probe = trial;
      fx = ft;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return fx;
}

struct TorusOutcome {
  std::vector<double> angles;
  double value = 0.0;
  double resolution = 0.0;
  std::uint64_t evaluations = 0;
};

/// Maximizes a phase-invariant objective over the torus (theta_1 fixed at 0).
/// Coarse grid (full enumeration when it fits the cap, coordinate sweeps from seeded
/// multistarts otherwise), then `rounds` local refinements by `refinement_factor`, then a
/// gradient polish and compass steps down to 1e-10. Every stage only accepts improvements.
template <class Objective>
TorusOutcome torus_search(std::size_t n, Objective&& f, const SearchBudget& budget,
                          std::size_t rounds) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  TorusOutcome out;
  out.angles.assign(n, 0.0);
  auto eval = [&](const std::vector<double>& a) {
    ++out.evaluations;
    return f(std::span<const double>(a));
  };
  out.value = eval(out.angles);
  if (n <= 1) return out;

  const std::size_t free = n - 1;
  const std::size_t g = budget.torus_points;
  const double coarse = kTwoPi / static_cast<double>(g);

  double cells = 1.0;
  for (std::size_t i = 0; i < free; ++i) cells *= static_cast<double>(g);

  // coordinate sweeps over a fixed offset set until a sweep brings no improvement
  auto sweep = [&](std::vector<double>& a, double& value, double h, long lo, long hi,
                   bool absolute) {
    for (int pass = 0; pass < 100; ++pass) {
      bool improved = false;
      for (std::size_t j = 1; j < n; ++j) {
        const double base = a[j];
        double best_angle = base;
        for (long m = lo; m <= hi; ++m) {
          const double cand = absolute ? h * static_cast<double>(m) : base + h * static_cast<double>(m);
          if (!absolute && m == 0) continue;
          a[j] = cand;
          const double v = eval(a);
          if (v > value) {
            value = v;
            best_angle = cand;
            improved = true;
          }
        }
        a[j] = best_angle;
      }
      if (!improved) break;
    }
  };

  if (cells <= static_cast<double>(budget.enumeration_cap)) {
    std::vector<std::size_t> digit(n, 0);
    std::vector<double> a(n, 0.0);
    while (true) {
      std::size_t j = 1;
      while (j < n && digit[j] + 1 == g) {
        digit[j] = 0;
        a[j] = 0.0;
        ++j;
      }
      if (j == n) break;
      ++digit[j];
      a[j] = coarse * static_cast<double>(digit[j]);
      const double v = eval(a);
      if (v > out.value) {
        out.value = v;
        out.angles = a;
      }
    }
  } else {
    CounterRng rng(budget.seed, 0x7045u);
    for (std::size_t s = 0; s < budget.multistarts; ++s) {
      std::vector<double> a(n, 0.0);
      if (s > 0)
        for (std::size_t j = 1; j < n; ++j)
          a[j] = coarse * static_cast<double>(rng.uniform_int(0, g - 1));
      double v = eval(a);
      sweep(a, v, coarse, 0, static_cast<long>(g) - 1, true);
      if (v > out.value) {
        out.value = v;
        out.angles = a;
      }
    }
  }

  double h = coarse;
  const long factor = static_cast<long>(budget.refinement_factor);
  for (std::size_t r = 0; r < rounds; ++r) {
    h /= static_cast<double>(budget.refinement_factor);
    sweep(out.angles, out.value, h, -factor, factor, false);
  }
  out.resolution = h;

  // polish over the free angles
  std::vector<double> free_angles(out.angles.begin() + 1, out.angles.end());
  std::vector<double> full(n, 0.0);
  auto reduced = [&](std::span<const double> fa) {
    std::copy(fa.begin(), fa.end(), full.begin() + 1);
    return f(std::span<const double>(full));
  };
  const double polished = projected_ascent(free_angles, reduced, [](std::vector<double>&) {},
                                           budget.ascent_iterations, h, out.evaluations);
  if (polished > out.value) {
    out.value = polished;
    std::copy(free_angles.begin(), free_angles.end(), out.angles.begin() + 1);
  }
  // compass steps below the grid
  for (double step = h / static_cast<double>(factor); step > 1e-10; step /= static_cast<double>(factor))
    sweep(out.angles, out.value, step, -1, 1, false);
  return out;
}

}  // namespace ucpoly::detail
