#pragma once

#include <stdexcept>
#include <string>

namespace ucpoly {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, dimensions or norm tags that do not fit together.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error("structural error: " + what) {}
};

/// An argument outside the mathematical domain of an operation (k < 2, wrong arity, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};

/// A search or representation would exceed its configured cap.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error("budget exceeded: " + what) {}
};

/// Evaluation of a step function exactly at a breakpoint.
class BoundaryError : public Error {
 public:
  explicit BoundaryError(const std::string& what) : Error("boundary error: " + what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error("unsupported: " + what) {}
};

namespace tol {
inline constexpr double kStructural = 1e-12;
inline constexpr double kNumeric = 1e-9;
inline constexpr double kOptimization = 1e-6;
}  // namespace tol

}  // namespace ucpoly
