#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ucpoly/certify.hpp"
#include "ucpoly/core.hpp"
#include "ucpoly/optimize.hpp"
#include "ucpoly/polys.hpp"
#include "ucpoly/random.hpp"
#include "ucpoly/series.hpp"

namespace ucpoly {

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// x in l_2 -> (x_n^2) in l_1.
inline HomPoly make_intro_Q(std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be positive");
  return HomPoly::diagonal(std::vector<Scalar>(dim, 1.0), 2, DiagonalMode::Coordinatewise, NormTag::lp(2.0),
                           NormTag::lp(1.0));
}

/// x in l_2 -> sum_n x_n^2.
inline HomPoly make_scalar_P(std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be positive");
  return HomPoly::diagonal(std::vector<Scalar>(dim, 1.0), 2, DiagonalMode::Sum, NormTag::lp(2.0),
                           scalar_space().tag);
}

/// x in l_2 -> (sum_k x_k / k) x in l_2.
inline HomPoly make_weighted_Q(std::size_t dim) {
  if (dim == 0) throw DomainError("dimension must be positive");
  std::vector<Scalar> w(dim);
  for (std::size_t i = 0; i < dim; ++i) w[i] = 1.0 / static_cast<double>(i + 1);
  return HomPoly::weighted_scale(std::move(w), NormTag::lp(2.0));
}

/// x in l_2 -> sum_i a_i x_i^k; its norm is max |a_i|.
inline HomPoly make_pa(std::vector<Scalar> a, std::size_t k) {
  if (k < 2) throw DomainError("P_a needs k >= 2");
  if (a.empty()) throw DomainError("P_a needs at least one weight");
  const bool complex_a = std::any_of(a.begin(), a.end(), [](const Scalar& z) { return z.imag() != 0.0; });
  return HomPoly::diagonal(std::move(a), k, DiagonalMode::Sum, NormTag::lp(2.0), scalar_space().tag,
                           complex_a ? Field::Complex : Field::Real);
}

/// x -> f(x)^{k-1} x on the predual space of f.
inline HomPoly make_scaled_identity(ScalarFunctional f, std::size_t k) {
  if (k < 2) throw DomainError("scaled identity needs k >= 2");
  return HomPoly::scaled_identity(std::move(f), k);
}

/// (t_i) in l_1 -> sum_i t_i^k x_i, so P(e_i) = x_i.
inline HomPoly make_l1_witness(const std::vector<Vec>& targets, std::size_t k) {
  detail::require_family(targets);
  if (k < 1) throw DomainError("degree must be >= 1");
  const std::size_t n = targets.size();
  const std::size_t m = targets.front().dim();
  const bool complex = std::any_of(targets.begin(), targets.end(), [](const Vec& v) { return !v.is_real(); });
  SymTensor t(k, n, m, complex ? Field::Complex : Field::Real);
  std::vector<std::size_t> ms(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(ms.begin(), ms.end(), i);
    t.set_coefficient(ms, targets[i].entries());
  }
  return HomPoly::from_tensor(std::move(t), NormTag::lp(1.0), targets.front().tag());
}

/// x in c_0 -> sum_i r^i x_i^k.
inline HomPoly make_geometric_diag(double ratio, std::size_t k, std::size_t dim) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("ratio must lie in (0, 1)");
  if (dim == 0) throw DomainError("dimension must be positive");
  std::vector<Scalar> a(dim);
  for (std::size_t i = 0; i < dim; ++i) a[i] = std::pow(ratio, static_cast<double>(i + 1));
  return HomPoly::diagonal(std::move(a), k, DiagonalMode::Sum, NormTag::sup(), scalar_space().tag);
}

// ---------------------------------------------------------------------------
// Entries and property checks
// ---------------------------------------------------------------------------

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct GalleryCheck {
  std::string name;
  std::function<CheckOutcome(const SearchBudget&)> run;
};

struct GalleryEntry {
  std::string name;
  std::string parameters;
  std::string description;
  HomPoly poly;
  std::vector<GalleryCheck> checks;

  std::vector<CheckOutcome> run_checks(const SearchBudget& budget = {}) const {
    std::vector<CheckOutcome> out;
    out.reserve(checks.size());
    for (const GalleryCheck& c : checks) {
      try {
        out.push_back(c.run(budget));
      } catch (const Error& e) {
        out.push_back({c.name, false, e.what()});
      }
    }
    return out;
  }
};

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

inline double max_deviation(std::span<const Scalar> a, std::span<const Scalar> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline GalleryCheck homogeneity_check(HomPoly p) {
  return {"homogeneity", [p](const SearchBudget& budget) {
            CounterRng rng(budget.seed, 0x4011u);
            double worst = 0.0;
            for (int trial = 0; trial < 20; ++trial) {
              std::vector<Scalar> x(p.domain().dim);
              for (Scalar& z : x) z = rng.uniform(-1.0, 1.0);
              const double c = rng.uniform(-2.0, 2.0);
              std::vector<Scalar> cx(x);
              for (Scalar& z : cx) z *= c;
              auto lhs = p.evaluate(cx);
              auto rhs = p.evaluate(x);
              const Scalar ck = ipow(Scalar{c, 0.0}, p.degree());
              double scale = 1.0;
              for (std::size_t i = 0; i < rhs.size(); ++i) {
                rhs[i] *= ck;
                scale = std::max(scale, std::abs(rhs[i]));
              }
              worst = std::max(worst, max_deviation(lhs, rhs) / scale);
            }
            return CheckOutcome{"homogeneity", worst <= tol::kNumeric, "max relative deviation " + fmt_double(worst)};
          }};
}

inline GalleryCheck unconditional_bound_check(HomPoly p) {
  return {"unconditional_bound_unit_basis", [p](const SearchBudget& budget) {
            const std::size_t n = p.domain().dim;
            const std::size_t terms = std::min<std::size_t>(n, 6);
            std::vector<Vec> vs;
            for (std::size_t i = 0; i < terms; ++i) vs.push_back(Vec::basis(n, i, p.domain().tag));
            const auto cert = check_unconditional_bound(p, vs, budget);
            return CheckOutcome{"unconditional_bound_unit_basis", cert.verdict == Verdict::Proved,
                                "lhs " + fmt_double(cert.lhs.value) + " <= " + fmt_double(cert.constant) + " * rhs " +
                                    fmt_double(cert.rhs.value)};
          }};
}

inline GalleryCheck tail_inequality_check(HomPoly p) {
  return {"tail_inequality_tails", [p](const SearchBudget& budget) {
            const std::size_t n = p.domain().dim;
            const SupResult norm_estimate = poly_norm(p, budget);
            std::size_t checked = 0;
            double worst = -1.0;
            bool ok = true;
            for (const SeriesPrefix& s :
                 {unit_basis_series(n, p.domain().tag), geometric_series(n, 0.5, p.domain().tag)}) {
              for (std::size_t start = 1; start <= n; ++start) {
                const auto c = check_tail_inequality(p, s, start, norm_estimate, budget);
                ok = ok && c.holds && c.lhs_exact;
                if (c.rhs > 0.0) worst = std::max(worst, c.lhs / c.rhs);
                ++checked;
              }
            }
            return CheckOutcome{"tail_inequality_tails", ok,
                                std::to_string(checked) + " tails, max lhs/rhs " + fmt_double(worst)};
          }};
}

inline std::vector<Scalar> random_real(CounterRng& rng, std::size_t n) {
  std::vector<Scalar> x(n);
  for (Scalar& z : x) z = rng.uniform(-1.0, 1.0);
  return x;
}

}  // namespace detail

/// The default gallery at dimension `dim`.
inline std::vector<GalleryEntry> default_gallery(std::size_t dim = 12) {
  if (dim == 0) throw DomainError("gallery dimension must be positive");
  using detail::fmt_double;
  std::vector<GalleryEntry> g;
  const std::string dim_param = "dim=" + std::to_string(dim);

  {
    HomPoly q = make_intro_Q(dim);
    GalleryEntry e{"intro_Q", dim_param, "x in l_2 -> (x_n^2) in l_1", q, {}};
    e.checks.push_back({"maps_unit_basis_to_l1_basis", [q, dim](const SearchBudget&) {
                          const auto img = image_series(q, unit_basis_series(dim, NormTag::lp(2.0)));
                          const auto target = unit_basis_series(dim, NormTag::lp(1.0));
                          bool ok = true;
                          for (std::size_t i = 0; i < dim; ++i)
                            ok = ok && img[i].tag() == target[i].tag() &&
                                 detail::max_deviation(img[i].entries(), target[i].entries()) == 0.0;
                          return CheckOutcome{"maps_unit_basis_to_l1_basis", ok, ok ? "term-by-term equal" : "mismatch"};
                        }});
    e.checks.push_back({"norm_is_one", [q](const SearchBudget& b) {
                          const double v = poly_norm(q, b).value;
                          return CheckOutcome{"norm_is_one", std::abs(v - 1.0) <= tol::kOptimization,
                                              "norm estimate " + fmt_double(v)};
                        }});
    g.push_back(std::move(e));
  }
  {
    HomPoly p = make_scalar_P(dim);
    GalleryEntry e{"scalar_P", dim_param, "x in l_2 -> sum_n x_n^2", p, {}};
    e.checks.push_back({"equals_conjugate_of_intro_Q", [p, dim](const SearchBudget& b) {
                          const HomPoly fq = conjugate_apply(
                              make_intro_Q(dim), ScalarFunctional(std::vector<Scalar>(dim, 1.0), NormTag::lp(1.0)));
                          CounterRng rng(b.seed, 0x5CA1u);
                          double worst = 0.0;
                          for (int t = 0; t < 20; ++t) {
                            const auto x = detail::random_real(rng, dim);
                            worst = std::max(worst, detail::max_deviation(p.evaluate(x), fq.evaluate(x)));
                          }
                          return CheckOutcome{"equals_conjugate_of_intro_Q", worst <= tol::kNumeric,
                                              "max deviation " + fmt_double(worst)};
                        }});
    e.checks.push_back({"unit_vectors_map_to_one", [p, dim](const SearchBudget&) {
                          bool ok = true;
                          for (std::size_t i = 0; i < dim; ++i)
                            ok = ok && p.evaluate(Vec::basis(dim, i, NormTag::lp(2.0)).entries())[0] == Scalar{1.0};
                          return CheckOutcome{"unit_vectors_map_to_one", ok, ok ? "P(e_n) = 1" : "mismatch"};
                        }});
    g.push_back(std::move(e));
  }
  {
    HomPoly q = make_weighted_Q(dim);
    GalleryEntry e{"weighted_Q", dim_param, "x in l_2 -> (sum_k x_k / k) x in l_2", q, {}};
    e.checks.push_back({"e1_plus_en_identity", [q, dim](const SearchBudget&) {
                          double worst = 0.0;
                          for (std::size_t n = 1; n <= dim; ++n) {
                            Vec x = Vec::basis(dim, 0, NormTag::lp(2.0)) + Vec::basis(dim, n - 1, NormTag::lp(2.0));
                            Vec expected = (1.0 + 1.0 / static_cast<double>(n)) * x;
                            worst = std::max(worst, detail::max_deviation(eval_poly(q, x).entries(), expected.entries()));
                          }
                          return CheckOutcome{"e1_plus_en_identity", worst <= tol::kStructural,
                                              "max deviation " + fmt_double(worst)};
                        }});
    g.push_back(std::move(e));
  }
  {
    std::vector<Scalar> a(dim);
    for (std::size_t i = 0; i < dim; ++i) a[i] = std::pow(0.5, static_cast<double>(i));
    HomPoly p = make_pa(a, 3);
    GalleryEntry e{"P_a", dim_param + ",k=3,a_i=2^-(i-1)", "x in l_2 -> sum_i a_i x_i^k", p, {}};
    e.checks.push_back({"isometry", [p](const SearchBudget& b) {
                          const auto r = poly_norm(p, b);
                          const double expected = r.closed_form.value_or(1.0);
                          const double rel = std::abs(r.value - expected) / expected;
                          return CheckOutcome{"isometry", rel <= tol::kOptimization,
                                              "norm " + fmt_double(r.value) + " vs max|a| " + fmt_double(expected)};
                        }});
    g.push_back(std::move(e));
  }
  {
    HomPoly p = make_scaled_identity(ScalarFunctional::coordinate(dim, 0, NormTag::sup()), 2);
    GalleryEntry e{"scaled_identity", dim_param + ",k=2,f=e_1*", "x in c_0 -> f(x)^{k-1} x", p, {}};
    e.checks.push_back({"partial_sums_fixed", [p, dim](const SearchBudget&) {
                          bool ok = true;
                          Vec s = Vec::zeros(dim, NormTag::sup());
                          for (std::size_t n = 0; n < dim; ++n) {
                            s += Vec::basis(dim, n, NormTag::sup());
                            ok = ok && detail::max_deviation(eval_poly(p, s).entries(), s.entries()) == 0.0;
                          }
                          return CheckOutcome{"partial_sums_fixed", ok,
                                              ok ? "P(x_1+...+x_n) = x_1+...+x_n" : "mismatch"};
                        }});
    e.checks.push_back({"absolute_summability_bound", [p, dim](const SearchBudget&) {
                          const auto u = summability_bound(p, unit_basis_series(dim, NormTag::sup()));
                          const auto gsum = summability_bound(p, geometric_series(dim, 0.5, NormTag::sup()));
                          return CheckOutcome{"absolute_summability_bound", u.holds && gsum.holds,
                                              "unit basis " + fmt_double(u.lhs) + " <= " + fmt_double(u.rhs) +
                                                  ", geometric " + fmt_double(gsum.lhs) + " <= " + fmt_double(gsum.rhs)};
                        }});
    g.push_back(std::move(e));
  }
  {
    std::vector<Vec> targets;
    Vec partial = Vec::zeros(dim, NormTag::sup());
    for (std::size_t i = 0; i < dim; ++i) {
      partial += Vec::basis(dim, i, NormTag::sup());
      targets.push_back(partial);
    }
    HomPoly p = make_l1_witness(targets, 2);
    GalleryEntry e{"l1_witness", dim_param + ",k=2,x_i=e_1+...+e_i",
                   "t in l_1 -> sum_i t_i^k x_i with summing-basis targets in c_0", p, {}};
    e.checks.push_back({"basis_hits_targets", [p, targets, dim](const SearchBudget&) {
                          double worst = 0.0;
                          for (std::size_t i = 0; i < dim; ++i)
                            worst = std::max(worst, detail::max_deviation(
                                                        eval_poly(p, Vec::basis(dim, i, NormTag::lp(1.0))).entries(),
                                                        targets[i].entries()));
                          return CheckOutcome{"basis_hits_targets", worst <= tol::kStructural,
                                              "max deviation " + fmt_double(worst)};
                        }});
    g.push_back(std::move(e));
  }
  {
    HomPoly p = make_geometric_diag(0.5, 2, dim);
    GalleryEntry e{"geometric_diag", dim_param + ",k=2,r=0.5", "x in c_0 -> sum_i r^i x_i^k", p, {}};
    e.checks.push_back({"tail_norms_match_geometric_sums", [p, dim](const SearchBudget& b) {
                          double worst = 0.0;
                          for (std::size_t n = 1; n <= dim; ++n) {
                            double expected = 0.0;
                            for (std::size_t i = n; i <= dim; ++i) expected += std::pow(0.5, static_cast<double>(i));
                            worst = std::max(worst, std::abs(restricted_tail_norm(p, n, b).value - expected));
                          }
                          return CheckOutcome{"tail_norms_match_geometric_sums", worst <= tol::kOptimization,
                                              "max deviation " + fmt_double(worst)};
                        }});
    g.push_back(std::move(e));
  }

  for (GalleryEntry& e : g) {
    e.checks.push_back(detail::homogeneity_check(e.poly));
    e.checks.push_back(detail::unconditional_bound_check(e.poly));
    e.checks.push_back(detail::tail_inequality_check(e.poly));
  }
  return g;
}

inline std::optional<GalleryEntry> find_gallery_entry(const std::string& name, std::size_t dim = 12) {
  for (GalleryEntry& e : default_gallery(dim))
    if (e.name == name) return std::move(e);
  return std::nullopt;
}

}  // namespace ucpoly
