#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ucpoly/core.hpp"

namespace ucpoly {

/// Largest number of degree-k multisets a SymTensor may index.
inline constexpr std::uint64_t kMultisetCap = 1'000'000;
/// Largest degree accepted by the 2^k-term polarization sum.
inline constexpr std::size_t kMaxPolarizationDegree = 20;

namespace detail {

inline Scalar ipow(Scalar z, std::size_t k) {
  Scalar r{1.0, 0.0};
  while (k != 0) {
    if (k & 1U) r *= z;
    z *= z;
    k >>= 1U;
  }
  return r;
}

inline double factorial(std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 2; i <= k; ++i) r *= static_cast<double>(i);
  return r;
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

/// Number of multisets of size r drawn from s symbols, C(s + r - 1, r); saturates past `cap`.
inline std::uint64_t multichoose(std::uint64_t s, std::uint64_t r, std::uint64_t cap) {
  if (r == 0) return 1;
  if (s == 0) return 0;
  // C(s + r - 1, r) built incrementally; every prefix is an integer
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result = result * (s - 1 + i) / i;
    if (result > cap) return cap + 1;
  }
  return result;
}

}  // namespace detail

/// Symmetric k-linear map from K^n to K^m stored by multiset: the coefficient of the
/// sorted index tuple M is A(e_{M_1}, ..., e_{M_k}). Symmetry holds by construction.
class SymTensor {
 public:
  SymTensor(std::size_t degree, std::size_t dim, std::size_t codim, Field field = Field::Real)
      : degree_(degree), dim_(dim), codim_(codim), field_(field) {
    if (degree == 0) throw DomainError("tensor degree must be >= 1");
    if (dim == 0 || codim == 0) throw StructuralError("tensor dimensions must be positive");
    if (dim > 65535) throw BudgetError("tensor domain dimension above 65535");
    const std::uint64_t count = detail::multichoose(dim, degree, kMultisetCap);
    if (count > kMultisetCap)
      throw BudgetError("C(" + std::to_string(dim + degree - 1) + ", " + std::to_string(degree) +
                        ") multisets exceed the cap of " + std::to_string(kMultisetCap));
    count_ = static_cast<std::size_t>(count);
    // multichoose_[s][r] for the ranking below
    table_.assign((dim_ + 1) * (degree_ + 1), 0);
    for (std::size_t s = 0; s <= dim_; ++s)
      for (std::size_t r = 0; r <= degree_; ++r)
        table_[s * (degree_ + 1) + r] = detail::multichoose(s, r, kMultisetCap);
    data_.assign(count_ * codim_, Scalar{});
    build_multisets();
  }

  std::size_t degree() const { return degree_; }
  std::size_t dim() const { return dim_; }
  std::size_t codim() const { return codim_; }
  Field field() const { return field_; }
  /// Number of stored multisets.
  std::size_t size() const { return count_; }

  /// Position of a multiset (any order, 0-based indices) in lexicographic order.
  std::size_t rank(std::span<const std::size_t> multiset) const {
    if (multiset.size() != degree_) throw DomainError("multiset has the wrong size");
    std::vector<std::size_t> m(multiset.begin(), multiset.end());
    std::sort(m.begin(), m.end());
    if (m.back() >= dim_) throw StructuralError("multiset index out of range");
    std::uint64_t r = 0;
    std::size_t prev = 0;
    for (std::size_t pos = 0; pos < degree_; ++pos) {
      for (std::size_t v = prev; v < m[pos]; ++v) r += table_[(dim_ - v) * (degree_ + 1) + (degree_ - pos - 1)];
      prev = m[pos];
    }
    return static_cast<std::size_t>(r);
  }

  std::span<const std::uint16_t> multiset_at(std::size_t rank) const {
    return {multisets_.data() + rank * degree_, degree_};
  }
  /// k! / prod(multiplicity!) for the multiset at `rank`.
  double multiplicity(std::size_t rank) const { return multinomial_[rank]; }

  std::span<const Scalar> coefficient_at(std::size_t rank) const {
    return {data_.data() + rank * codim_, codim_};
  }
  std::span<const Scalar> coefficient(std::span<const std::size_t> multiset) const {
    return coefficient_at(rank(multiset));
  }
  void set_coefficient(std::span<const std::size_t> multiset, std::span<const Scalar> value) {
    set_coefficient_at(rank(multiset), value);
  }
  void set_coefficient_at(std::size_t rank, std::span<const Scalar> value) {
    if (value.size() != codim_) throw StructuralError("coefficient has the wrong codomain dimension");
    if (field_ == Field::Real)
      for (const Scalar& z : value)
        if (z.imag() != 0.0) throw DomainError("complex coefficient in a real tensor");
    std::copy(value.begin(), value.end(), data_.begin() + static_cast<std::ptrdiff_t>(rank * codim_));
  }

  /// P(x) = A(x, ..., x) = sum_M multiplicity(M) c_M prod_j x_{M_j}.
  void evaluate_diagonal(std::span<const Scalar> x, std::span<Scalar> out) const {
    std::fill(out.begin(), out.end(), Scalar{});
    for (std::size_t r = 0; r < count_; ++r) {
      Scalar w{multinomial_[r], 0.0};
      const std::uint16_t* m = multisets_.data() + r * degree_;
      for (std::size_t j = 0; j < degree_; ++j) w *= x[m[j]];
      if (w == Scalar{}) continue;
      const Scalar* c = data_.data() + r * codim_;
      for (std::size_t i = 0; i < codim_; ++i) out[i] += w * c[i];
    }
  }

  /// A(xs[0], ..., xs[k-1]) by summing over every index tuple.
  void evaluate(std::span<const std::span<const Scalar>> xs, std::span<Scalar> out) const {
    if (xs.size() != degree_)
      throw DomainError("multilinear form of degree " + std::to_string(degree_) + " got " +
                        std::to_string(xs.size()) + " arguments");
    std::fill(out.begin(), out.end(), Scalar{});
    std::vector<std::size_t> tuple(degree_);
    descend(xs, 0, Scalar{1.0, 0.0}, tuple, out);
  }

  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.degree_ == b.degree_ && a.dim_ == b.dim_ && a.codim_ == b.codim_ && a.field_ == b.field_ &&
           a.data_ == b.data_;
  }

 private:
  void build_multisets() {
    multisets_.resize(count_ * degree_);
    multinomial_.resize(count_);
    std::vector<std::size_t> m(degree_, 0);
    const double kfact = detail::factorial(degree_);
    for (std::size_t r = 0; r < count_; ++r) {
      double denom = 1.0;
      std::size_t run = 1;
      for (std::size_t j = 0; j < degree_; ++j) {
        multisets_[r * degree_ + j] = static_cast<std::uint16_t>(m[j]);
        if (j > 0 && m[j] == m[j - 1]) {
          ++run;
          denom *= static_cast<double>(run);
        } else {
          run = 1;
        }
      }
      multinomial_[r] = kfact / denom;
      // next multiset in lexicographic order
      std::size_t p = degree_;
      while (p > 0 && m[p - 1] + 1 == dim_) --p;
      if (p == 0) break;
      ++m[p - 1];
      for (std::size_t j = p; j < degree_; ++j) m[j] = m[p - 1];
    }
  }

  void descend(std::span<const std::span<const Scalar>> xs, std::size_t pos, Scalar prod,
               std::vector<std::size_t>& tuple, std::span<Scalar> out) const {
    if (pos == degree_) {
      const auto c = coefficient(tuple);
      for (std::size_t i = 0; i < codim_; ++i) out[i] += prod * c[i];
      return;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      const Scalar xi = xs[pos][i];
      if (xi == Scalar{}) continue;
      tuple[pos] = i;
      descend(xs, pos + 1, prod * xi, tuple, out);
    }
  }

  std::size_t degree_, dim_, codim_;
  Field field_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> table_;
  std::vector<std::uint16_t> multisets_;
  std::vector<double> multinomial_;
  std::vector<Scalar> data_;
};

/// A finite-dimensional normed space: dimension plus norm tag.
struct Space {
  std::size_t dim = 1;
  NormTag tag = NormTag::lp(2.0);
  bool operator==(const Space&) const = default;
};

/// One-dimensional codomain used for scalar-valued polynomials.
inline Space scalar_space() { return {1, NormTag::lp(1.0)}; }

/// Linear functional f(x) = sum_i f_i x_i on a space tagged `predual`.
class ScalarFunctional {
 public:
  ScalarFunctional(std::vector<Scalar> coefficients, NormTag predual)
      : coefficients_(std::move(coefficients)), predual_(predual) {
    if (coefficients_.empty()) throw StructuralError("functional dimension must be positive");
  }
  /// The coordinate functional e_{index+1}^*.
  static ScalarFunctional coordinate(std::size_t dim, std::size_t index, NormTag predual) {
    if (index >= dim) throw StructuralError("coordinate index out of range");
    std::vector<Scalar> c(dim, Scalar{});
    c[index] = 1.0;
    return {std::move(c), predual};
  }

  std::size_t dim() const { return coefficients_.size(); }
  const NormTag& predual_tag() const { return predual_; }
  std::span<const Scalar> coefficients() const { return coefficients_; }

  Scalar operator()(std::span<const Scalar> x) const {
    Scalar s{};
    for (std::size_t i = 0; i < coefficients_.size(); ++i) s += coefficients_[i] * x[i];
    return s;
  }
  Scalar operator()(const Vec& x) const {
    if (x.dim() != dim()) throw StructuralError("functional and vector dimensions differ");
    return (*this)(x.entries());
  }
  /// Dual norm.
  double norm() const { return ucpoly::norm(coefficients_, predual_.dual()); }

 private:
  std::vector<Scalar> coefficients_;
  NormTag predual_;
};

enum class DiagonalMode {
  Sum,             ///< x -> sum_i a_i x_i^k (scalar valued)
  Coordinatewise,  ///< x -> (a_i x_i^k)_i
};

struct TensorBody {
  SymTensor tensor;
};
struct DiagonalBody {
  std::vector<Scalar> weights;
  DiagonalMode mode = DiagonalMode::Sum;
};
/// x -> f(x)^{k-1} x
struct ScaledIdentityBody {
  ScalarFunctional functional;
};
/// x -> (sum_i w_i x_i) x, degree 2
struct WeightedScaleBody {
  std::vector<Scalar> weights;
};
/// Opaque evaluator; out has the codomain dimension and is overwritten.
struct BlackBoxBody {
  std::string name;
  std::function<void(std::span<const Scalar> x, std::span<Scalar> out)> evaluate;
};

using PolyBody = std::variant<TensorBody, DiagonalBody, ScaledIdentityBody, WeightedScaleBody, BlackBoxBody>;

/// k-homogeneous polynomial between finite-dimensional normed spaces.
class HomPoly {
 public:
  HomPoly(std::size_t degree, Space domain, Space codomain, Field field, PolyBody body)
      : degree_(degree), domain_(domain), codomain_(codomain), field_(field), body_(std::move(body)) {
    validate();
  }

  static HomPoly from_tensor(SymTensor t, NormTag domain_tag, NormTag codomain_tag) {
    const std::size_t k = t.degree();
    const Space dom{t.dim(), domain_tag}, cod{t.codim(), codomain_tag};
    const Field f = t.field();
    return HomPoly(k, dom, cod, f, TensorBody{std::move(t)});
  }
  static HomPoly diagonal(std::vector<Scalar> weights, std::size_t k, DiagonalMode mode, NormTag domain_tag,
                          NormTag codomain_tag, Field field = Field::Real) {
    const std::size_t n = weights.size();
    const Space cod = mode == DiagonalMode::Sum ? Space{1, codomain_tag} : Space{n, codomain_tag};
    return HomPoly(k, {n, domain_tag}, cod, field, DiagonalBody{std::move(weights), mode});
  }
  static HomPoly scaled_identity(ScalarFunctional f, std::size_t k, Field field = Field::Real) {
    const Space s{f.dim(), f.predual_tag()};
    return HomPoly(k, s, s, field, ScaledIdentityBody{std::move(f)});
  }
  static HomPoly weighted_scale(std::vector<Scalar> weights, NormTag tag, Field field = Field::Real) {
    const Space s{weights.size(), tag};
    return HomPoly(2, s, s, field, WeightedScaleBody{std::move(weights)});
  }
  static HomPoly black_box(std::string name, std::size_t k, Space domain, Space codomain, Field field,
                           std::function<void(std::span<const Scalar>, std::span<Scalar>)> fn) {
    return HomPoly(k, domain, codomain, field, BlackBoxBody{std::move(name), std::move(fn)});
  }

  std::size_t degree() const { return degree_; }
  const Space& domain() const { return domain_; }
  const Space& codomain() const { return codomain_; }
  Field field() const { return field_; }
  const PolyBody& body() const { return body_; }
  const SymTensor* tensor() const {
    const auto* t = std::get_if<TensorBody>(&body_);
    return t ? &t->tensor : nullptr;
  }

  /// Raw evaluation; `out` must have codomain().dim entries and is overwritten.
  void evaluate_into(std::span<const Scalar> x, std::span<Scalar> out) const {
    std::visit([&](const auto& b) { eval_body(b, x, out); }, body_);
  }

  std::vector<Scalar> evaluate(std::span<const Scalar> x) const {
    std::vector<Scalar> out(codomain_.dim);
    evaluate_into(x, out);
    return out;
  }

  /// Norm of P(x) in the codomain, on raw coordinates.
  double image_norm(std::span<const Scalar> x) const {
    std::vector<Scalar> out(codomain_.dim);
    evaluate_into(x, out);
    return norm(out, codomain_.tag);
  }

 private:
  void validate() const {
    if (degree_ == 0) throw DomainError("polynomial degree must be >= 1");
    if (domain_.dim == 0 || codomain_.dim == 0) throw StructuralError("polynomial spaces must be non-trivial");
    std::visit([&](const auto& b) { check_body(b); }, body_);
  }

  void check_body(const TensorBody& b) const {
    if (b.tensor.degree() != degree_ || b.tensor.dim() != domain_.dim || b.tensor.codim() != codomain_.dim)
      throw StructuralError("tensor shape does not match the polynomial");
  }
  void check_body(const DiagonalBody& b) const {
    if (b.weights.size() != domain_.dim) throw StructuralError("diagonal weights must match the domain");
    const std::size_t want = b.mode == DiagonalMode::Sum ? 1 : domain_.dim;
    if (codomain_.dim != want) throw StructuralError("diagonal codomain has the wrong dimension");
  }
  void check_body(const ScaledIdentityBody& b) const {
    if (b.functional.dim() != domain_.dim || codomain_.dim != domain_.dim)
      throw StructuralError("scaled identity needs functional, domain and codomain of equal dimension");
  }
  void check_body(const WeightedScaleBody& b) const {
    if (degree_ != 2) throw DomainError("weighted scale polynomials have degree 2");
    if (b.weights.size() != domain_.dim || codomain_.dim != domain_.dim)
      throw StructuralError("weighted scale needs weights, domain and codomain of equal dimension");
  }
  void check_body(const BlackBoxBody& b) const {
    if (!b.evaluate) throw StructuralError("black box without an evaluator");
  }

  void eval_body(const TensorBody& b, std::span<const Scalar> x, std::span<Scalar> out) const {
    b.tensor.evaluate_diagonal(x, out);
  }
  void eval_body(const DiagonalBody& b, std::span<const Scalar> x, std::span<Scalar> out) const {
    if (b.mode == DiagonalMode::Sum) {
      Scalar s{};
      for (std::size_t i = 0; i < x.size(); ++i) s += b.weights[i] * detail::ipow(x[i], degree_);
      out[0] = s;
    } else {
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = b.weights[i] * detail::ipow(x[i], degree_);
    }
  }
  void eval_body(const ScaledIdentityBody& b, std::span<const Scalar> x, std::span<Scalar> out) const {
    const Scalar c = detail::ipow(b.functional(x), degree_ - 1);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
  }
  void eval_body(const WeightedScaleBody& b, std::span<const Scalar> x, std::span<Scalar> out) const {
    Scalar s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += b.weights[i] * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  }
  void eval_body(const BlackBoxBody& b, std::span<const Scalar> x, std::span<Scalar> out) const {
    b.evaluate(x, out);
  }

  std::size_t degree_;
  Space domain_;
  Space codomain_;
  Field field_;
  PolyBody body_;
};

/// Zero polynomial of degree k between the given spaces.
inline HomPoly zero_poly(std::size_t k, Space domain, Space codomain, Field field = Field::Real) {
  return HomPoly(k, domain, codomain, field, TensorBody{SymTensor(k, domain.dim, codomain.dim, field)});
}

namespace detail {

inline void require_domain(const HomPoly& p, const Vec& x) {
  if (x.dim() != p.domain().dim || !(x.tag() == p.domain().tag))
    throw StructuralError("vector (" + std::to_string(x.dim()) + "/" + to_string(x.tag()) +
                          ") is not in the polynomial's domain (" + std::to_string(p.domain().dim) + "/" +
                          to_string(p.domain().tag) + ")");
}

inline void require_arguments(const HomPoly& p, std::span<const Vec> xs) {
  if (xs.size() != p.degree())
    throw DomainError("degree-" + std::to_string(p.degree()) + " form needs " + std::to_string(p.degree()) +
                      " arguments, got " + std::to_string(xs.size()));
  for (const Vec& x : xs) require_domain(p, x);
}

}  // namespace detail

inline Vec eval_poly(const HomPoly& p, const Vec& x) {
  detail::require_domain(p, x);
  return Vec(p.evaluate(x.entries()), p.codomain().tag);
}

/// Symmetric multilinear evaluation A(x_1, ..., x_k) of a tensor.
inline Vec eval_multilinear(const SymTensor& a, std::span<const Vec> xs, NormTag codomain_tag) {
  if (xs.size() != a.degree())
    throw DomainError("degree-" + std::to_string(a.degree()) + " form needs " + std::to_string(a.degree()) +
                      " arguments, got " + std::to_string(xs.size()));
  std::vector<std::span<const Scalar>> args;
  args.reserve(xs.size());
  for (const Vec& x : xs) {
    if (x.dim() != a.dim()) throw StructuralError("argument dimension does not match the tensor");
    args.push_back(x.entries());
  }
  std::vector<Scalar> out(a.codim());
  a.evaluate(args, out);
  return Vec(std::move(out), codomain_tag);
}

inline Vec eval_multilinear(const HomPoly& p, std::span<const Vec> xs) {
  const SymTensor* t = p.tensor();
  if (t == nullptr) throw UnsupportedError("eval_multilinear needs a tensor-backed polynomial");
  detail::require_arguments(p, xs);
  return eval_multilinear(*t, xs, p.codomain().tag);
}

/// Polarization: A(x_1..x_k) = 1/(k! 2^k) sum_{eps in {+-1}^k} eps_1...eps_k P(sum_j eps_j x_j).
/// Terms for eps and -eps coincide, so only eps_1 = +1 is summed and doubled.
inline Vec polarize(const HomPoly& p, std::span<const Vec> xs) {
  detail::require_arguments(p, xs);
  const std::size_t k = p.degree();
  if (k > kMaxPolarizationDegree)
    throw BudgetError("polarization of degree " + std::to_string(k) + " exceeds 2^" +
                      std::to_string(kMaxPolarizationDegree) + " terms");
  const std::size_t n = p.domain().dim;
  const std::size_t m = p.codomain().dim;
  std::vector<Scalar> acc(m, Scalar{}), y(n), image(m);
  const std::uint64_t patterns = std::uint64_t{1} << (k - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double sign = 1.0;
    std::copy(xs[0].entries().begin(), xs[0].entries().end(), y.begin());
    for (std::size_t j = 1; j < k; ++j) {
      const double e = (mask >> (j - 1)) & 1U ? -1.0 : 1.0;
      sign *= e;
      for (std::size_t i = 0; i < n; ++i) y[i] += e * xs[j][i];
    }
    p.evaluate_into(y, image);
    for (std::size_t i = 0; i < m; ++i) acc[i] += sign * image[i];
  }
  const double scale = 1.0 / (detail::factorial(k) * static_cast<double>(patterns));
  for (Scalar& z : acc) z *= scale;
  return Vec(std::move(acc), p.codomain().tag);
}

inline Vec polarize(const HomPoly& p, const std::vector<Vec>& xs) {
  return polarize(p, std::span<const Vec>(xs));
}

/// Tensor of P obtained by polarizing at every basis multiset. Tensor-backed
/// polynomials return their own tensor.
inline SymTensor tensor_from_blackbox(const HomPoly& p) {
  if (const SymTensor* t = p.tensor()) return *t;
  const std::size_t n = p.domain().dim;
  SymTensor out(p.degree(), n, p.codomain().dim, p.field());
  std::vector<Vec> args(p.degree(), Vec::zeros(n, p.domain().tag));
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto ms = out.multiset_at(r);
    for (std::size_t j = 0; j < ms.size(); ++j) args[j] = Vec::basis(n, ms[j], p.domain().tag);
    Vec c = polarize(p, args);
    if (p.field() == Field::Real)
      for (Scalar& z : c.entries()) z = Scalar{z.real(), 0.0};
    out.set_coefficient_at(r, c.entries());
  }
  return out;
}

/// Complex-multilinear extension of a real polynomial. Closed-form bodies keep their
/// formula (it already extends); tensors are reinterpreted over C; black boxes are
/// converted to tensors first.
inline HomPoly complexify(const HomPoly& p) {
  if (p.field() != Field::Real) throw DomainError("complexify expects a real polynomial");
  if (const auto* bb = std::get_if<BlackBoxBody>(&p.body())) {
    SymTensor real_tensor = [&] {
      try {
        return tensor_from_blackbox(p);
      } catch (const BudgetError& e) {
        throw UnsupportedError("black box '" + bb->name + "' cannot be converted to a tensor: " + e.what());
      }
    }();
    return complexify(HomPoly(p.degree(), p.domain(), p.codomain(), Field::Real, TensorBody{std::move(real_tensor)}));
  }
  if (const SymTensor* t = p.tensor()) {
    SymTensor c(t->degree(), t->dim(), t->codim(), Field::Complex);
    for (std::size_t r = 0; r < t->size(); ++r) c.set_coefficient_at(r, t->coefficient_at(r));
    return HomPoly(p.degree(), p.domain(), p.codomain(), Field::Complex, TensorBody{std::move(c)});
  }
  return HomPoly(p.degree(), p.domain(), p.codomain(), Field::Complex, p.body());
}

/// Terms T_l = C(k,l) A(h^(l), x^(k-l)), l = 0..k, whose sum is P(x + h).
inline std::vector<Vec> binomial_expand(const HomPoly& p, const Vec& x, const Vec& h) {
  detail::require_domain(p, x);
  detail::require_domain(p, h);
  const std::size_t k = p.degree();
  std::vector<Vec> terms;
  terms.reserve(k + 1);
  std::vector<Vec> args(k, x);
  for (std::size_t l = 0; l <= k; ++l) {
    for (std::size_t j = 0; j < k; ++j) args[j] = j < l ? h : x;
    Vec t = p.tensor() ? eval_multilinear(p, args) : polarize(p, args);
    t *= detail::binomial(k, l);
    terms.push_back(std::move(t));
  }
  return terms;
}

/// Dense matrix, row-major; maps K^cols into K^rows.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {
    if (rows == 0 || cols == 0) throw StructuralError("matrix dimensions must be positive");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool is_real() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& z) { return z.imag() == 0.0; });
  }
  void apply(std::span<const Scalar> x, std::span<Scalar> out) const {
    for (std::size_t r = 0; r < rows_; ++r) {
      Scalar s{};
      for (std::size_t c = 0; c < cols_; ++c) s += data_[r * cols_ + c] * x[c];
      out[r] = s;
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

/// P o T, where T maps `new_domain` into P's domain. Tensor-backed polynomials are pulled
/// back coefficientwise; other bodies become a black box.
inline HomPoly compose_linear(const HomPoly& p, const Matrix& t, NormTag new_domain_tag) {
  if (t.rows() != p.domain().dim)
    throw StructuralError("matrix has " + std::to_string(t.rows()) + " rows, polynomial domain has dim " +
                          std::to_string(p.domain().dim));
  const Space dom{t.cols(), new_domain_tag};
  const Field field = (p.field() == Field::Complex || !t.is_real()) ? Field::Complex : Field::Real;
  if (const SymTensor* a = p.tensor()) {
    if (detail::multichoose(t.cols(), p.degree(), kMultisetCap) <= kMultisetCap) {
      SymTensor pulled(p.degree(), t.cols(), p.codomain().dim, field);
      std::vector<std::vector<Scalar>> columns(t.cols(), std::vector<Scalar>(t.rows()));
      for (std::size_t c = 0; c < t.cols(); ++c)
        for (std::size_t r = 0; r < t.rows(); ++r) columns[c][r] = t(r, c);
      std::vector<std::span<const Scalar>> args(p.degree());
      std::vector<Scalar> value(p.codomain().dim);
      for (std::size_t r = 0; r < pulled.size(); ++r) {
        const auto ms = pulled.multiset_at(r);
        for (std::size_t j = 0; j < ms.size(); ++j) args[j] = columns[ms[j]];
        a->evaluate(args, value);
        pulled.set_coefficient_at(r, value);
      }
      return HomPoly(p.degree(), dom, p.codomain(), field, TensorBody{std::move(pulled)});
    }
  }
  auto inner = std::make_shared<const HomPoly>(p);
  auto matrix = std::make_shared<const Matrix>(t);
  return HomPoly::black_box("composition", p.degree(), dom, p.codomain(), field,
                            [inner, matrix](std::span<const Scalar> x, std::span<Scalar> out) {
                              std::vector<Scalar> y(matrix->rows());
                              matrix->apply(x, y);
                              inner->evaluate_into(y, out);
                            });
}

inline HomPoly compose_linear(const HomPoly& p, const Matrix& t) {
  return compose_linear(p, t, p.domain().tag);
}

/// The conjugate map f -> f o P: a scalar polynomial on P's domain.
inline HomPoly conjugate_apply(const HomPoly& p, const ScalarFunctional& f) {
  if (f.dim() != p.codomain().dim)
    throw StructuralError("functional has dim " + std::to_string(f.dim()) + ", codomain has dim " +
                          std::to_string(p.codomain().dim));
  const bool complex_f =
      std::any_of(f.coefficients().begin(), f.coefficients().end(), [](const Scalar& z) { return z.imag() != 0.0; });
  const Field field = (p.field() == Field::Complex || complex_f) ? Field::Complex : Field::Real;
  const Space out_space = scalar_space();

  if (const SymTensor* a = p.tensor()) {
    SymTensor s(p.degree(), a->dim(), 1, field);
    for (std::size_t r = 0; r < a->size(); ++r) {
      const Scalar v = f(a->coefficient_at(r));
      s.set_coefficient_at(r, std::span<const Scalar>(&v, 1));
    }
    return HomPoly(p.degree(), p.domain(), out_space, field, TensorBody{std::move(s)});
  }
  if (const auto* d = std::get_if<DiagonalBody>(&p.body())) {
    std::vector<Scalar> w(d->weights.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] = d->weights[i] * (d->mode == DiagonalMode::Sum ? f.coefficients()[0] : f.coefficients()[i]);
    return HomPoly(p.degree(), p.domain(), out_space, field, DiagonalBody{std::move(w), DiagonalMode::Sum});
  }
  auto inner = std::make_shared<const HomPoly>(p);
  auto functional = std::make_shared<const ScalarFunctional>(f);
  return HomPoly::black_box("conjugate", p.degree(), p.domain(), out_space, field,
                            [inner, functional](std::span<const Scalar> x, std::span<Scalar> out) {
                              std::vector<Scalar> y(inner->codomain().dim);
                              inner->evaluate_into(x, y);
                              out[0] = (*functional)(y);
                            });
}

}  // namespace ucpoly
