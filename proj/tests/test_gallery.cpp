#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "ucpoly/gallery.hpp"

using namespace ucpoly;

namespace {

const NormTag L1 = NormTag::lp(1.0);
const NormTag L2 = NormTag::lp(2.0);
const NormTag SUP = NormTag::sup();

void expect_vec_near(const Vec& a, std::initializer_list<double> b, double tol = 1e-15) {
  ASSERT_EQ(a.dim(), b.size());
  std::size_t i = 0;
  for (const double v : b) EXPECT_NEAR(std::abs(a[i++] - Scalar(v)), 0.0, tol);
}

}  // namespace

TEST(Gallery, EveryCheckPasses) {
  for (const std::size_t dim : {1, 5, 12}) {
    const auto g = default_gallery(dim);
    EXPECT_EQ(g.size(), 7u);
    std::set<std::string> names;
    for (const auto& e : g) {
      names.insert(e.name);
      EXPECT_GE(e.checks.size(), 4u);
      for (const auto& c : e.run_checks()) EXPECT_TRUE(c.passed) << e.name << "/" << c.name << ": " << c.detail;
    }
    EXPECT_EQ(names.size(), g.size());
  }
  EXPECT_THROW(default_gallery(0), DomainError);
}

TEST(Gallery, Lookup) {
  EXPECT_TRUE(find_gallery_entry("P_a").has_value());
  EXPECT_EQ(find_gallery_entry("intro_Q", 4)->poly.domain().dim, 4u);
  EXPECT_FALSE(find_gallery_entry("nope").has_value());
}

TEST(Gallery, FailingCheckIsReportedNotThrown) {
  GalleryEntry e{"broken", "", "", make_intro_Q(2), {}};
  e.checks.push_back({"throws", [](const SearchBudget&) -> CheckOutcome { throw DomainError("boom"); }});
  const auto out = e.run_checks();
  ASSERT_EQ(out.size(), 1u);
  EXPECT_FALSE(out[0].passed);
  EXPECT_NE(out[0].detail.find("boom"), std::string::npos);
}

TEST(IntroQ, Examples) {
  const HomPoly q = make_intro_Q(2);
  EXPECT_EQ(q.degree(), 2u);
  EXPECT_EQ(q.domain().tag, L2);
  EXPECT_EQ(q.codomain().tag, L1);
  expect_vec_near(eval_poly(q, Vec::basis(2, 0, L2)), {1, 0});
  const Vec h = Vec::real({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, L2);
  expect_vec_near(eval_poly(q, h), {0.5, 0.5}, 1e-15);
  EXPECT_NEAR(norm(eval_poly(q, h)), 1.0, 1e-15);
  EXPECT_NEAR(poly_norm(make_intro_Q(6)).value, 1.0, 1e-9);
}

TEST(ScalarP, Examples) {
  const HomPoly p = make_scalar_P(3);
  for (std::size_t i = 0; i < 3; ++i) expect_vec_near(eval_poly(p, Vec::basis(3, i, L2)), {1});
  expect_vec_near(eval_poly(p, Vec::zeros(3, L2)), {0});
  expect_vec_near(eval_poly(make_scalar_P(2), Vec::real({0.6, 0.8}, L2)), {1}, 1e-15);
}

TEST(WeightedQ, Examples) {
  for (std::size_t dim : {2, 12, 40}) {
    const HomPoly q = make_weighted_Q(dim);
    for (std::size_t n = 1; n <= dim; ++n) {
      const Vec x = Vec::basis(dim, 0, L2) + Vec::basis(dim, n - 1, L2);
      const Vec y = eval_poly(q, x);
      for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(std::abs(y[i] - (1.0 + 1.0 / n) * x[i]), 0.0, 1e-12);
    }
  }
  const HomPoly q = make_weighted_Q(3);
  expect_vec_near(eval_poly(q, Vec::basis(3, 1, L2)), {0, 0.5, 0});
  expect_vec_near(eval_poly(q, Vec::zeros(3, L2)), {0, 0, 0});
}

TEST(Pa, Examples) {
  EXPECT_NEAR(poly_norm(make_pa({1.0, 1.0}, 2)).value, 1.0, 1e-9);
  EXPECT_EQ(poly_norm(make_pa({0.0, 0.0, 0.0}, 2)).value, 0.0);
  EXPECT_NEAR(poly_norm(make_pa({1.0, 0.5, 0.25}, 3)).value, 1.0, 1e-9);
  EXPECT_THROW(make_pa({1.0}, 1), DomainError);
  EXPECT_THROW(make_pa({}, 2), DomainError);
  EXPECT_EQ(make_pa({Scalar{0, 1}}, 2).field(), Field::Complex);
}

TEST(Pa, IsometryOnRandomWeights) {
  CounterRng rng(60, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 50));
    const auto k = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const auto a = oracle::random_real(rng, dim);
    double m = 0.0;
    for (const Scalar& z : a) m = std::max(m, std::abs(z));
    const double v = poly_norm(make_pa(a, k)).value;
    EXPECT_NEAR(v, m, 1e-6 * m) << "dim " << dim << " k " << k;
  }
}

TEST(ScaledIdentity, Examples) {
  const HomPoly p = make_scaled_identity(ScalarFunctional::coordinate(4, 0, SUP), 2);
  const Vec ones = Vec::real({1, 1, 1, 1}, SUP);
  EXPECT_EQ(eval_poly(p, ones), ones);
  expect_vec_near(eval_poly(p, Vec::basis(4, 2, SUP)), {0, 0, 0, 0});
  const HomPoly c = make_scaled_identity(ScalarFunctional::coordinate(2, 0, SUP), 3);
  expect_vec_near(eval_poly(c, Vec::real({2, 1}, SUP)), {8, 4});
  EXPECT_THROW(make_scaled_identity(ScalarFunctional::coordinate(2, 0, SUP), 1), DomainError);
}

TEST(ScaledIdentity, PartialSumsAreFixed) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const HomPoly p = make_scaled_identity(ScalarFunctional::coordinate(12, 0, SUP), 2);
    Vec s = Vec::zeros(12, SUP);
    for (std::size_t i = 0; i < n; ++i) s += Vec::basis(12, i, SUP);
    EXPECT_EQ(eval_poly(p, s), s);
  }
}

TEST(L1Witness, Examples) {
  CounterRng rng(61, 0);
  std::vector<Vec> targets;
  for (int i = 0; i < 4; ++i) targets.push_back(oracle::random_vec(rng, 3, SUP));
  for (std::size_t k : {2, 3}) {
    const HomPoly p = make_l1_witness(targets, k);
    EXPECT_EQ(p.domain().tag, L1);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Vec y = eval_poly(p, Vec::basis(4, i, L1));
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(y[j] - targets[i][j]), 0.0, 1e-12);
    }
    EXPECT_EQ(norm(eval_poly(p, Vec::zeros(4, L1))), 0.0);
  }
  const Vec e1 = Vec::basis(2, 0, SUP);
  expect_vec_near(eval_poly(make_l1_witness({e1, e1}, 2), Vec::real({0.5, 0.5}, L1)), {0.5, 0});
  EXPECT_THROW(make_l1_witness({e1, Vec::basis(3, 0, SUP)}, 2), StructuralError);
  EXPECT_THROW(make_l1_witness({}, 2), StructuralError);
}

TEST(GeometricDiag, Examples) {
  const HomPoly g = make_geometric_diag(0.5, 2, 12);
  EXPECT_EQ(g.domain().tag, SUP);
  EXPECT_NEAR(restricted_tail_norm(g, 1).value, 1.0 - std::pow(0.5, 12), 1e-9);
  EXPECT_NEAR(restricted_tail_norm(g, 12).value, std::pow(0.5, 12), 1e-9);
  for (const double r : {0.1, 0.9}) EXPECT_EQ(norm(eval_poly(make_geometric_diag(r, 3, 5), Vec::zeros(5, SUP))), 0.0);
  for (const double r : {0.0, 1.0, -0.5, 2.0}) EXPECT_THROW(make_geometric_diag(r, 2, 4), DomainError);
}

TEST(GeometricDiag, TailNormsMatchGeometricSums) {
  for (const double r : {0.25, 0.5, 0.75}) {
    const HomPoly g = make_geometric_diag(r, 2, 10);
    for (std::size_t n = 1; n <= 10; ++n) {
      double expected = 0.0;
      for (std::size_t i = n; i <= 10; ++i) expected += std::pow(r, static_cast<double>(i));
      EXPECT_NEAR(restricted_tail_norm(g, n).value, expected, 1e-6);
    }
  }
}

TEST(Gallery, UnconditionalBoundProvedOnUnitFamilies) {
  for (const auto& e : default_gallery(8)) {
    for (std::size_t n = 1; n <= 6; ++n) {
      std::vector<Vec> vs;
      for (std::size_t i = 0; i < n; ++i) vs.push_back(Vec::basis(8, i, e.poly.domain().tag));
      EXPECT_EQ(check_unconditional_bound(e.poly, vs).verdict, Verdict::Proved) << e.name << " N=" << n;
    }
  }
}
