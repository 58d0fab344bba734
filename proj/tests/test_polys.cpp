#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "ucpoly/polys.hpp"

using namespace ucpoly;

namespace {

const NormTag L1 = NormTag::lp(1.0);
const NormTag L2 = NormTag::lp(2.0);
const NormTag SUP = NormTag::sup();

SymTensor random_tensor(CounterRng& rng, std::size_t k, std::size_t n, std::size_t m) {
  SymTensor t(k, n, m);
  for (std::size_t r = 0; r < t.size(); ++r) t.set_coefficient_at(r, oracle::random_real(rng, m));
  return t;
}

/// x_1 x_2 on K^2: c_{12} = 1/2.
HomPoly product_poly() {
  SymTensor t(2, 2, 1);
  const std::vector<Scalar> half{0.5};
  t.set_coefficient(std::vector<std::size_t>{0, 1}, half);
  return HomPoly::from_tensor(std::move(t), L2, scalar_space().tag);
}

/// x^2 on K.
HomPoly square_poly() { return HomPoly::diagonal({1.0}, 2, DiagonalMode::Sum, L2, scalar_space().tag); }

double max_dev(std::span<const Scalar> a, std::span<const Scalar> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(SymTensor, RankRoundTripAndOrderIndependence) {
  SymTensor t(3, 4, 1);
  EXPECT_EQ(t.size(), 20u);
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto ms = t.multiset_at(r);
    std::vector<std::size_t> m(ms.begin(), ms.end());
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
    EXPECT_EQ(t.rank(m), r);
    std::reverse(m.begin(), m.end());
    EXPECT_EQ(t.rank(m), r);
  }
}

TEST(SymTensor, MultiplicitiesSumToPower) {
  // sum over multisets of k!/prod(mult!) = n^k
  SymTensor t(4, 3, 1);
  double s = 0.0;
  for (std::size_t r = 0; r < t.size(); ++r) s += t.multiplicity(r);
  EXPECT_EQ(s, 81.0);
}

TEST(SymTensor, Errors) {
  EXPECT_THROW(SymTensor(0, 2, 1), DomainError);
  EXPECT_THROW(SymTensor(2, 0, 1), StructuralError);
  EXPECT_THROW(SymTensor(6, 100, 1), BudgetError);
  SymTensor t(2, 2, 1, Field::Real);
  const std::vector<Scalar> c{{0, 1}};
  EXPECT_THROW(t.set_coefficient_at(0, c), DomainError);
  const std::vector<Scalar> two{1.0, 2.0};
  EXPECT_THROW(t.set_coefficient_at(0, two), StructuralError);
  EXPECT_THROW(t.rank(std::vector<std::size_t>{0, 5}), StructuralError);
  EXPECT_THROW(t.rank(std::vector<std::size_t>{0}), DomainError);
}

TEST(SymTensor, DiagonalAndFullTupleMatchDenseOracle) {
  CounterRng rng(10, 0);
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t n = 1; n <= 4; ++n) {
      const SymTensor t = random_tensor(rng, k, n, 2);
      auto coeff = [&](const std::vector<std::size_t>& tuple) {
        const auto c = t.coefficient(tuple);
        return std::vector<Scalar>(c.begin(), c.end());
      };
      std::vector<std::vector<Scalar>> xs;
      for (std::size_t j = 0; j < k; ++j) xs.push_back(oracle::random_real(rng, n));
      std::vector<std::span<const Scalar>> args(xs.begin(), xs.end());
      std::vector<Scalar> full(2);
      t.evaluate(args, full);
      EXPECT_LT(max_dev(full, oracle::dense_multilinear(coeff, n, 2, xs)), 1e-12);
      std::vector<std::vector<Scalar>> same(k, xs[0]);
      std::vector<Scalar> diag(2);
      t.evaluate_diagonal(xs[0], diag);
      EXPECT_LT(max_dev(diag, oracle::dense_multilinear(coeff, n, 2, same)), 1e-12);
    }
}

TEST(EvalPoly, Examples) {
  const HomPoly d = HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, scalar_space().tag);
  const Vec v = eval_poly(d, Vec::real({1, 2}, L2));
  EXPECT_EQ(v.dim(), 1u);
  EXPECT_EQ(v[0], Scalar(5.0));
  EXPECT_EQ(eval_poly(d, Vec::zeros(2, L2))[0], Scalar(0.0));
  const HomPoly s = HomPoly::scaled_identity(ScalarFunctional::coordinate(2, 0, L2), 2);
  const Vec w = eval_poly(s, Vec::real({2, 3}, L2));
  EXPECT_EQ(w[0], Scalar(4.0));
  EXPECT_EQ(w[1], Scalar(6.0));
}

TEST(EvalPoly, DimensionAndTagChecked) {
  const HomPoly d = HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, scalar_space().tag);
  EXPECT_THROW(eval_poly(d, Vec::real({1, 2, 3}, L2)), StructuralError);
  EXPECT_THROW(eval_poly(d, Vec::real({1, 2}, L1)), StructuralError);
}

TEST(HomPoly, BodyValidation) {
  EXPECT_THROW(HomPoly(3, {2, L2}, {2, L2}, Field::Real, WeightedScaleBody{{1.0, 1.0}}), DomainError);
  EXPECT_THROW(HomPoly(2, {2, L2}, {2, L2}, Field::Real, DiagonalBody{{1.0, 1.0}, DiagonalMode::Sum}), StructuralError);
  EXPECT_THROW(HomPoly(2, {3, L2}, {1, L1}, Field::Real, DiagonalBody{{1.0, 1.0}, DiagonalMode::Sum}), StructuralError);
  EXPECT_THROW(HomPoly(2, {2, L2}, {2, L2}, Field::Real, TensorBody{SymTensor(2, 3, 2)}), StructuralError);
  EXPECT_THROW(HomPoly(0, {2, L2}, {1, L1}, Field::Real, DiagonalBody{{1.0, 1.0}, DiagonalMode::Sum}), DomainError);
  EXPECT_THROW(HomPoly::black_box("x", 2, {1, L2}, {1, L1}, Field::Real, nullptr), StructuralError);
}

TEST(EvalPoly, HomogeneityAllBodies) {
  CounterRng rng(11, 0);
  std::vector<HomPoly> polys{
      HomPoly::from_tensor(random_tensor(rng, 3, 3, 2), L2, L1),
      HomPoly::diagonal(oracle::random_real(rng, 3), 4, DiagonalMode::Coordinatewise, SUP, SUP),
      HomPoly::scaled_identity(ScalarFunctional(oracle::random_real(rng, 3), L2), 3),
      HomPoly::weighted_scale(oracle::random_real(rng, 3), L2),
  };
  for (const HomPoly& p : polys)
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = oracle::random_real(rng, 3);
      const double c = rng.uniform(-2.0, 2.0);
      std::vector<Scalar> cx(x);
      for (Scalar& z : cx) z *= c;
      auto lhs = p.evaluate(cx);
      auto rhs = p.evaluate(x);
      for (Scalar& z : rhs) z *= std::pow(c, static_cast<double>(p.degree()));
      EXPECT_LT(max_dev(lhs, rhs), 1e-12);
    }
}

TEST(EvalMultilinear, Examples) {
  const HomPoly p = product_poly();
  const std::vector<Vec> e{Vec::basis(2, 0, L2), Vec::basis(2, 1, L2)};
  EXPECT_EQ(eval_multilinear(p, e)[0], Scalar(0.5));
  const std::vector<Vec> z{Vec::zeros(2, L2), Vec::basis(2, 1, L2)};
  EXPECT_EQ(eval_multilinear(p, z)[0], Scalar(0.0));
  const HomPoly d = HomPoly::from_tensor(tensor_from_blackbox(HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, L1)), L2, L1);
  const std::vector<Vec> ones(2, Vec::real({1, 1}, L2));
  EXPECT_NEAR(std::abs(eval_multilinear(d, ones)[0] - Scalar(2.0)), 0.0, 1e-15);
}

TEST(EvalMultilinear, ArityAndBodyErrors) {
  const HomPoly p = product_poly();
  EXPECT_THROW(eval_multilinear(p, std::vector<Vec>{Vec::basis(2, 0, L2)}), DomainError);
  const HomPoly d = HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, L1);
  EXPECT_THROW(eval_multilinear(d, std::vector<Vec>(2, Vec::basis(2, 0, L2))), UnsupportedError);
}

TEST(Polarize, Examples) {
  const std::vector<Vec> xy{Vec::real({3}, L2), Vec::real({-2}, L2)};
  EXPECT_NEAR(std::abs(polarize(square_poly(), xy)[0] - Scalar(-6.0)), 0.0, 1e-14);
  const HomPoly cube = HomPoly::diagonal({1.0, 0.0}, 3, DiagonalMode::Sum, L2, L1);
  EXPECT_NEAR(std::abs(polarize(cube, std::vector<Vec>(3, Vec::basis(2, 0, L2)))[0] - Scalar(1.0)), 0.0, 1e-15);
  const std::vector<Vec> e{Vec::basis(2, 0, L2), Vec::basis(2, 1, L2)};
  EXPECT_NEAR(std::abs(polarize(product_poly(), e)[0] - Scalar(0.5)), 0.0, 1e-15);
}

TEST(Polarize, Errors) {
  EXPECT_THROW(polarize(product_poly(), std::vector<Vec>{Vec::basis(2, 0, L2)}), DomainError);
  EXPECT_THROW(polarize(product_poly(), std::vector<Vec>(2, Vec::basis(3, 0, L2))), StructuralError);
  const HomPoly big = HomPoly::diagonal({1.0}, 21, DiagonalMode::Sum, L2, L1);
  EXPECT_THROW(polarize(big, std::vector<Vec>(21, Vec::basis(1, 0, L2))), BudgetError);
}

TEST(Polarize, RoundTripAgainstMultilinear) {
  CounterRng rng(12, 0);
  for (int inst = 0; inst < 40; ++inst) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const HomPoly p = HomPoly::from_tensor(random_tensor(rng, k, n, 2), L2, L2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Vec> xs;
      for (std::size_t j = 0; j < k; ++j) xs.push_back(oracle::random_vec(rng, n, L2));
      const Vec a = polarize(p, xs);
      const Vec b = eval_multilinear(p, xs);
      EXPECT_LE(max_dev(a.entries(), b.entries()), 1e-9 * std::max(1.0, norm(b)));
    }
  }
}

TEST(Polarize, DiagonalArgumentsGiveP) {
  CounterRng rng(13, 0);
  const HomPoly p = HomPoly::scaled_identity(ScalarFunctional(oracle::random_real(rng, 3), L2), 4);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec x = oracle::random_vec(rng, 3, L2);
    EXPECT_LT(max_dev(polarize(p, std::vector<Vec>(4, x)).entries(), eval_poly(p, x).entries()), 1e-12);
  }
}

TEST(TensorFromBlackbox, Examples) {
  const SymTensor d = tensor_from_blackbox(HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, L1));
  EXPECT_NEAR(d.coefficient(std::vector<std::size_t>{0, 0})[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(d.coefficient(std::vector<std::size_t>{1, 1})[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.coefficient(std::vector<std::size_t>{0, 1})[0]), 0.0, 1e-15);

  const SymTensor z = tensor_from_blackbox(zero_poly(3, {3, L2}, {2, L2}));
  for (std::size_t r = 0; r < z.size(); ++r)
    for (const Scalar& c : z.coefficient_at(r)) EXPECT_EQ(c, Scalar(0.0));

  const SymTensor s = tensor_from_blackbox(HomPoly::scaled_identity(ScalarFunctional::coordinate(2, 0, L2), 2));
  const auto c11 = s.coefficient(std::vector<std::size_t>{0, 0});
  const auto c12 = s.coefficient(std::vector<std::size_t>{0, 1});
  const auto c22 = s.coefficient(std::vector<std::size_t>{1, 1});
  EXPECT_NEAR(std::abs(c11[0] - Scalar(1.0)) + std::abs(c11[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c12[0]) + std::abs(c12[1] - Scalar(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c22[0]) + std::abs(c22[1]), 0.0, 1e-15);
}

TEST(TensorFromBlackbox, ReproducesEvaluations) {
  CounterRng rng(14, 0);
  const HomPoly w = HomPoly::weighted_scale(oracle::random_real(rng, 4), L2);
  const HomPoly t = HomPoly::from_tensor(tensor_from_blackbox(w), L2, L2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_real(rng, 4);
    EXPECT_LT(max_dev(w.evaluate(x), t.evaluate(x)), 1e-12);
  }
  EXPECT_THROW(tensor_from_blackbox(HomPoly::diagonal(std::vector<Scalar>(200, 1.0), 5, DiagonalMode::Sum, L2, L1)),
               BudgetError);
}

TEST(Complexify, SquareOnTheLine) {
  const HomPoly q = complexify(square_poly());
  EXPECT_EQ(q.field(), Field::Complex);
  const std::vector<Scalar> i{{0, 1}};
  EXPECT_NEAR(std::abs(q.evaluate(i)[0] - Scalar(-1.0)), 0.0, 1e-15);
  EXPECT_THROW(complexify(q), DomainError);
}

TEST(Complexify, DegreeTwoFormula) {
  // P_C(x + iy) = P(x) - P(y) + 2i A(x, y) for real x, y
  CounterRng rng(15, 0);
  for (int inst = 0; inst < 10; ++inst) {
    const HomPoly p = HomPoly::from_tensor(random_tensor(rng, 2, 3, 2), L2, L2);
    const HomPoly q = complexify(p);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec x = oracle::random_vec(rng, 3, L2), y = oracle::random_vec(rng, 3, L2);
      std::vector<Scalar> z(3);
      for (int i = 0; i < 3; ++i) z[i] = Scalar{x[i].real(), y[i].real()};
      const auto px = eval_poly(p, x), py = eval_poly(p, y);
      const auto axy = polarize(p, std::vector<Vec>{x, y});
      const auto qz = q.evaluate(z);
      for (int i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(qz[i] - (px[i] - py[i] + Scalar{0, 2} * axy[i])), 0.0, 1e-12);
    }
  }
  // x_1 x_2 at (i, 1): A((i,0),(0,1)) + A((0,1),(i,0)) = i
  const HomPoly q = complexify(product_poly());
  const std::vector<Scalar> z{{0, 1}, {1, 0}};
  EXPECT_NEAR(std::abs(q.evaluate(z)[0] - Scalar(0, 1)), 0.0, 1e-15);
}

TEST(Complexify, RestrictionToRealsIsIdentity) {
  CounterRng rng(16, 0);
  std::vector<HomPoly> polys{
      HomPoly::from_tensor(random_tensor(rng, 3, 3, 2), L2, L1),
      HomPoly::diagonal(oracle::random_real(rng, 3), 3, DiagonalMode::Sum, L2, L1),
      HomPoly::scaled_identity(ScalarFunctional(oracle::random_real(rng, 3), L2), 2),
      HomPoly::weighted_scale(oracle::random_real(rng, 3), L2),
      compose_linear(HomPoly::weighted_scale(oracle::random_real(rng, 3), L2), Matrix::identity(3)),
  };
  for (const HomPoly& p : polys) {
    const HomPoly q = complexify(p);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = oracle::random_real(rng, 3);
      EXPECT_LT(max_dev(p.evaluate(x), q.evaluate(x)), 1e-12);
    }
  }
}

TEST(Complexify, OversizedBlackBoxUnsupported) {
  const HomPoly big = HomPoly::black_box("big", 6, {100, L2}, {1, L1}, Field::Real,
                                         [](std::span<const Scalar>, std::span<Scalar> out) { out[0] = 0.0; });
  EXPECT_THROW(complexify(big), UnsupportedError);
}

TEST(BinomialExpand, Examples) {
  const auto t = binomial_expand(square_poly(), Vec::real({1}, L2), Vec::real({1}, L2));
  ASSERT_EQ(t.size(), 3u);
  EXPECT_NEAR(t[0][0].real(), 1.0, 1e-15);
  EXPECT_NEAR(t[1][0].real(), 2.0, 1e-15);
  EXPECT_NEAR(t[2][0].real(), 1.0, 1e-15);

  const HomPoly d = HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, L1);
  const auto u = binomial_expand(d, Vec::real({1, 0}, L2), Vec::real({0, 1}, L2));
  EXPECT_NEAR(u[0][0].real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(u[1][0]), 0.0, 1e-15);
  EXPECT_NEAR(u[2][0].real(), 1.0, 1e-15);

  const auto z = binomial_expand(d, Vec::real({2, 1}, L2), Vec::zeros(2, L2));
  EXPECT_NEAR(z[0][0].real(), 5.0, 1e-14);
  EXPECT_EQ(z[1][0], Scalar(0.0));
  EXPECT_EQ(z[2][0], Scalar(0.0));
}

TEST(BinomialExpand, SumsToShiftedValue) {
  CounterRng rng(17, 0);
  for (std::size_t k = 1; k <= 5; ++k) {
    const HomPoly p = HomPoly::from_tensor(random_tensor(rng, k, 3, 2), L2, L2);
    const HomPoly s = HomPoly::scaled_identity(ScalarFunctional(oracle::random_real(rng, 3), L2), k);
    for (const HomPoly* q : {&p, &s}) {
      const Vec x = oracle::random_vec(rng, 3, L2), h = oracle::random_vec(rng, 3, L2);
      const auto terms = binomial_expand(*q, x, h);
      ASSERT_EQ(terms.size(), k + 1);
      Vec sum = Vec::zeros(terms[0].dim(), terms[0].tag());
      for (const Vec& t : terms) sum += t;
      EXPECT_LT(max_dev(sum.entries(), eval_poly(*q, x + h).entries()), 1e-12);
      EXPECT_LT(max_dev(terms[0].entries(), eval_poly(*q, x).entries()), 1e-12);
      EXPECT_LT(max_dev(terms[k].entries(), eval_poly(*q, h).entries()), 1e-12);
    }
  }
  EXPECT_THROW(binomial_expand(square_poly(), Vec::real({1}, L2), Vec::real({1, 2}, L2)), StructuralError);
}

TEST(ComposeLinear, Examples) {
  CounterRng rng(18, 0);
  const HomPoly p = HomPoly::from_tensor(random_tensor(rng, 2, 3, 2), L2, L2);
  const HomPoly id = compose_linear(p, Matrix::identity(3));
  Matrix two = Matrix::identity(3);
  for (int i = 0; i < 3; ++i) two(i, i) = 2.0;
  const HomPoly doubled = compose_linear(p, two);
  const HomPoly d = HomPoly::diagonal({1.0, 1.0}, 2, DiagonalMode::Sum, L2, L1);
  Matrix swap(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  const HomPoly ds = compose_linear(d, swap);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_real(rng, 3);
    EXPECT_LT(max_dev(id.evaluate(x), p.evaluate(x)), 1e-12);
    auto four = p.evaluate(x);
    for (Scalar& z : four) z *= 4.0;
    EXPECT_LT(max_dev(doubled.evaluate(x), four), 1e-12);
    const auto y = oracle::random_real(rng, 2);
    EXPECT_LT(max_dev(ds.evaluate(y), d.evaluate(y)), 1e-12);
  }
  EXPECT_THROW(compose_linear(p, Matrix::identity(2)), StructuralError);
}

TEST(ComposeLinear, RectangularPullback) {
  CounterRng rng(19, 0);
  const HomPoly p = HomPoly::from_tensor(random_tensor(rng, 3, 4, 2), L2, L2);
  Matrix t(4, 2);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 2; ++c) t(r, c) = rng.uniform(-1.0, 1.0);
  const HomPoly q = compose_linear(p, t, L1);
  EXPECT_NE(q.tensor(), nullptr);
  EXPECT_EQ(q.domain(), (Space{2, L1}));
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_real(rng, 2);
    std::vector<Scalar> y(4);
    t.apply(x, y);
    EXPECT_LT(max_dev(q.evaluate(x), p.evaluate(y)), 1e-12);
  }
}

TEST(ConjugateApply, Examples) {
  CounterRng rng(20, 0);
  const HomPoly p = HomPoly::from_tensor(random_tensor(rng, 2, 3, 3), L2, L1);
  const HomPoly zero = conjugate_apply(p, ScalarFunctional(std::vector<Scalar>(3, 0.0), L1));
  const HomPoly lin = HomPoly::from_tensor(
      [] {
        SymTensor t(1, 3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
          std::vector<Scalar> e(3, 0.0);
          e[i] = 1.0;
          t.set_coefficient(std::vector<std::size_t>{i}, e);
        }
        return t;
      }(),
      L2, L1);
  const ScalarFunctional f(oracle::random_real(rng, 3), L1);
  const HomPoly fl = conjugate_apply(lin, f);
  const HomPoly q = HomPoly::diagonal({1.0, 1.0, 1.0}, 2, DiagonalMode::Coordinatewise, L2, L1);
  const HomPoly fq = conjugate_apply(q, ScalarFunctional({1.0, 1.0, 1.0}, L1));
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_real(rng, 3);
    EXPECT_EQ(zero.evaluate(x)[0], Scalar(0.0));
    EXPECT_NEAR(std::abs(fl.evaluate(x)[0] - f(x)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(fq.evaluate(x)[0] - (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])), 0.0, 1e-12);
  }
  EXPECT_THROW(conjugate_apply(q, ScalarFunctional({1.0, 1.0}, L1)), StructuralError);
}

TEST(ConjugateApply, LinearInFunctional) {
  CounterRng rng(21, 0);
  const HomPoly p = HomPoly::weighted_scale(oracle::random_real(rng, 3), L2);
  const auto f = oracle::random_real(rng, 3), g = oracle::random_real(rng, 3);
  const double a = 0.7, b = -1.3;
  std::vector<Scalar> h(3);
  for (int i = 0; i < 3; ++i) h[i] = a * f[i] + b * g[i];
  const HomPoly pf = conjugate_apply(p, ScalarFunctional(f, L2));
  const HomPoly pg = conjugate_apply(p, ScalarFunctional(g, L2));
  const HomPoly ph = conjugate_apply(p, ScalarFunctional(h, L2));
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_real(rng, 3);
    EXPECT_NEAR(std::abs(ph.evaluate(x)[0] - (a * pf.evaluate(x)[0] + b * pg.evaluate(x)[0])), 0.0, 1e-12);
  }
}

TEST(ScalarFunctional, DualNorm) {
  EXPECT_EQ(ScalarFunctional({1.0, -2.0}, L1).norm(), 2.0);
  EXPECT_EQ(ScalarFunctional({1.0, -2.0}, SUP).norm(), 3.0);
  EXPECT_NEAR(ScalarFunctional({3.0, 4.0}, L2).norm(), 5.0, 1e-15);
  EXPECT_THROW(ScalarFunctional::coordinate(2, 2, L2), StructuralError);
  EXPECT_THROW(ScalarFunctional({1.0}, L2)(Vec::real({1, 2}, L2)), StructuralError);
}
