#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "ucpoly/error.hpp"

namespace ucpoly {

/// Knobs shared by every supremum search. Candidate sets are nested in each knob, so
/// raising any of them never lowers a reported value.
struct SearchBudget {
  std::size_t grid_per_axis = 41;       ///< dense box grid, used when the term count is small
  std::size_t dense_grid_max_terms = 3;
  std::size_t multistarts = 16;
  std::size_t ascent_iterations = 200;
  std::size_t torus_points = 24;        ///< angular grid per coordinate (complex field)
  std::size_t refinement_rounds = 2;
  std::size_t refinement_factor = 4;
  std::uint64_t enumeration_cap = std::uint64_t{1} << 20;  ///< max sign patterns / grid cells
  std::uint64_t seed = 0;

  void validate() const {
    if (grid_per_axis < 2) throw DomainError("grid_per_axis must be >= 2");
    if (multistarts == 0) throw DomainError("multistarts must be positive");
    if (ascent_iterations == 0) throw DomainError("ascent_iterations must be positive");
    if (torus_points < 2) throw DomainError("torus_points must be >= 2");
    if (refinement_factor < 2) throw DomainError("refinement_factor must be >= 2");
    if (enumeration_cap == 0) throw DomainError("enumeration_cap must be positive");
  }
};

/// How much a reported supremum can be trusted.
struct Exactness {
  enum class Kind { Exact, LowerBound };
  Kind kind = Kind::Exact;
  double resolution = 0.0;       ///< grid spacing of the last refinement (LowerBound only)
  bool budget_exceeded = false;  ///< a candidate family was skipped because of a cap

  static Exactness exact() { return {}; }
  static Exactness lower_bound(double resolution, bool exceeded = false) {
    return {Kind::LowerBound, resolution, exceeded};
  }
  bool is_exact() const { return kind == Kind::Exact; }
  bool operator==(const Exactness&) const = default;
};

inline std::string to_string(const Exactness& e) {
  return e.is_exact() ? "exact" : "lower_bound";
}

}  // namespace ucpoly
