#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "supergeo/chart.hpp"
#include "supergeo/io.hpp"

using namespace supergeo;

namespace {

GradedMetric super_hyperbolic() { return metric_from_json(read_json_file(SUPERGEO_DATA_DIR "/super_hyperbolic.json")); }

// Classical Γ^k_ij of the body metric, by central differences of the bodies.
double fd_christoffel(const GradedMetric& g, std::vector<double> p, int i, int j, int k) {
  const int n = g.chart().n;
  auto body = [&](const std::vector<double>& q) {
    Eigen::MatrixXd b(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b(r, c) = sf_eval(g.entry(r, c), q).body();
    return b;
  };
  const double h = 1e-5;
  std::vector<Eigen::MatrixXd> d(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    auto up = p, dn = p;
    up[static_cast<std::size_t>(l)] += h;
    dn[static_cast<std::size_t>(l)] -= h;
    d[static_cast<std::size_t>(l)] = (body(up) - body(dn)) / (2 * h);
  }
  const Eigen::MatrixXd inv = body(p).inverse();
  double out = 0.0;
  for (int l = 0; l < n; ++l) {
    const auto L = static_cast<std::size_t>(l);
    out += 0.5 * inv(k, l) * (d[static_cast<std::size_t>(i)](j, l) + d[static_cast<std::size_t>(j)](i, l) - d[L](i, j));
  }
  return out;
}

}  // namespace

TEST_CASE("flat chart has vanishing Christoffel symbols and curvature") {
  const GradedMetric g = flat_metric(2, 2);
  const std::vector<double> p{0.3, -0.2};
  const ChristoffelAtPoint gam = christoffel_at(g, p);
  for (const auto& c : gam.gamma) CHECK(c.is_zero());
  for (const auto& r : curvature_at(g, p).r) CHECK(r.is_zero());
}

TEST_CASE("hyperbolic plane: Christoffel symbols and Gauss curvature") {
  const GradedMetric g = hyperbolic_metric();
  const std::vector<double> p{0.4, 2.0};
  const ChristoffelAtPoint gam = christoffel_at(g, p);
  CHECK(gam(0, 1, 0).body() == doctest::Approx(-0.5));
  CHECK(gam(1, 0, 0).body() == doctest::Approx(-0.5));
  CHECK(gam(0, 0, 1).body() == doctest::Approx(0.5));
  CHECK(gam(1, 1, 1).body() == doctest::Approx(-0.5));
  CHECK(gam(0, 0, 0).is_zero());
  CHECK(sectional_curvature(g, p, 0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  const ConnectionResiduals res = connection_residuals_at(g, p);
  CHECK(res.torsion <= 1e-14);
  CHECK(res.metricity <= 1e-14);
}

TEST_CASE("perturbed Christoffel symbols are caught") {
  const GradedMetric g = hyperbolic_metric();
  const std::vector<double> p{0.0, 1.5};
  ChristoffelAtPoint gam = christoffel_at(g, p);
  gam(0, 1, 0) += Grassmann::constant(0, 0.05);
  const ConnectionResiduals res = connection_residuals_at(g, p, gam);
  CHECK(res.torsion >= 0.05);
  CHECK(res.metricity >= 0.01);
}

TEST_CASE("m = 0 charts agree with a classical implementation") {
  const std::vector<std::pair<GradedMetric, fixtures::ClassicalSurface>> cases = {
      {hyperbolic_metric(), fixtures::hyperbolic_surface()}, {sphere_metric(), fixtures::sphere_surface()}};
  for (const auto& [g, s] : cases) {
    for (const Eigen::Vector2d x : {Eigen::Vector2d(0.3, 1.1), Eigen::Vector2d(1.2, 0.7)}) {
      const std::vector<double> p{x(0), x(1)};
      const ChristoffelAtPoint gam = christoffel_at(g, p);
      const auto ref = s.christoffel(x);
      const CurvatureAtPoint r = curvature_at(g, p);
      const Eigen::Matrix2d gm = s.metric(x);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          for (int c = 0; c < 2; ++c) CHECK(std::abs(gam(a, b, c).body() - ref[static_cast<std::size_t>(c)](a, b)) <= 1e-8);
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
              double lowered = 0.0;
              for (int e = 0; e < 2; ++e) lowered += r(a, b, c, e).body() * gm(e, d);
              CHECK(std::abs(lowered - fixtures::classical_riemann(s, x, a, b, c, d)) <= 1e-8);
            }
        }
    }
  }
}

TEST_CASE("degree-0 part of the graded Γ is the reduced metric's Γ") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 3;
    const GradedMetric g = fixtures::random_metric(n, 2, rng);
    const auto p = fixtures::random_point(n, rng);
    const ChristoffelAtPoint gam = christoffel_at(g, p);
    const ReducedChristoffel red = reduced_christoffel_at(g, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          CHECK(std::abs(gam(i, j, k).body() - fd_christoffel(g, p, i, j, k)) <= 1e-8);
          CHECK(std::abs(gam(i, j, k).body() - red(i, j, k)) <= 1e-14);
        }
  }
}

TEST_CASE("random graded metrics pass the connection gates") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3, m = (trial % 2) * 2;
    const GradedMetric g = fixtures::random_metric(n, m, rng);
    const auto p = fixtures::random_point(n, rng);
    const ChristoffelAtPoint gam = christoffel_at(g, p);
    const ConnectionResiduals res = connection_residuals_at(g, p, gam);
    CHECK(res.torsion <= 1e-9);
    CHECK(res.metricity <= 1e-9);
    CHECK(christoffel_parity_violation(g, gam) == 0.0);
    CHECK(curvature_symmetry_residuals(g, p).max() <= 1e-8);
  }
}

TEST_CASE("super hyperbolic chart") {
  const GradedMetric g = super_hyperbolic();
  const std::vector<double> p{0.3, 1.2};
  const ChristoffelAtPoint gam = christoffel_at(g, p);
  CHECK(christoffel_parity_violation(g, gam) == 0.0);
  const ConnectionResiduals res = connection_residuals_at(g, p, gam);
  CHECK(res.torsion <= 1e-12);
  CHECK(res.metricity <= 1e-12);
  CHECK(curvature_symmetry_residuals(g, p).max() <= 1e-10);
  CHECK(sectional_curvature(g, p, 0, 1) == doctest::Approx(-1.0));
  // ξ-dependence reaches the connection
  bool nilpotent = false;
  for (const auto& c : gam.gamma) nilpotent = nilpotent || !c.nilpotent_part().is_zero();
  CHECK(nilpotent);
}

TEST_CASE("Killing equation") {
  const int n = 2, m = 2;
  const GradedMetric flat = flat_metric(n, m);
  auto x = [&](int i) { return Superfunction::even_coordinate(n, m, i); };
  const Superfunction zero(n, m);
  const std::vector<double> p{0.4, -0.7};
  const std::vector<Superfunction> rotation{(-1.0) * x(1), x(0), zero, zero};
  const std::vector<Superfunction> dilation{x(0), x(1), zero, zero};
  CHECK(killing_residual_at(flat, rotation, p) <= 1e-14);
  CHECK(killing_residual_at(flat, dilation, p) >= 0.5);

  // on the upper half plane dilation is an isometry, vertical translation is not
  const GradedMetric hyp = hyperbolic_metric();
  auto y = [&](int i) { return Superfunction::even_coordinate(2, 0, i); };
  const std::vector<double> q{0.4, 1.3};
  CHECK(killing_residual_at(hyp, {y(0), y(1)}, q) <= 1e-12);
  CHECK(killing_residual_at(hyp, {Superfunction(2, 0), Superfunction::constant(2, 0, 1.0)}, q) >= 0.1);
}

TEST_CASE("metric validation reports each failure kind") {
  const int n = 1, m = 2;
  auto entries = [&] {
    std::vector<std::vector<Superfunction>> e(3, std::vector<Superfunction>(3, Superfunction(n, m)));
    e[0][0] = Superfunction::constant(n, m, 1.0);
    e[1][2] = Superfunction::constant(n, m, 1.0);
    e[2][1] = Superfunction::constant(n, m, -1.0);
    return e;
  };
  const std::vector<std::vector<double>> pts{{0.1}};
  CHECK(validate_metric(GradedMetric(Chart::standard(n, m), entries()), pts).ok);

  auto kinds = [&](const std::vector<std::vector<Superfunction>>& e) {
    std::set<std::string> out;
    for (const auto& v : validate_metric(GradedMetric(Chart::standard(n, m), e), pts).violations) out.insert(v.kind);
    return out;
  };
  auto mixed = entries();
  mixed[0][1] = mixed[1][0] = Superfunction::constant(n, m, 0.3);
  CHECK(kinds(mixed).count("parity") == 1);

  auto skew = entries();
  skew[2][1] = Superfunction::constant(n, m, 1.0);
  CHECK(kinds(skew).count("symmetry") == 1);

  auto degenerate = entries();
  degenerate[0][0] = Superfunction(n, m);
  CHECK(kinds(degenerate).count("degenerate") == 1);

  const MetricReport outside = validate_metric(hyperbolic_metric(), {{0.0, -1.0}});
  CHECK_FALSE(outside.ok);
  CHECK(outside.violations.at(0).kind == "domain");
  CHECK_THROWS_AS(christoffel_at(hyperbolic_metric(), std::vector<double>{0.0, -1.0}), DomainError);
}

TEST_CASE("graded inverse") {
  const GradedMetric g = super_hyperbolic();
  const std::vector<double> p{0.1, 0.8};
  const GrassmannMatrix gm = evaluate_metric(g, p);
  const auto par = g.parities();
  const GrassmannMatrix inv = graded_inverse(gm, par);
  CHECK((gm_mul(gm, inv) - GrassmannMatrix::identity(4, 2)).max_abs() <= 1e-14);
  CHECK((gm_mul(inv, gm) - GrassmannMatrix::identity(4, 2)).max_abs() <= 1e-14);
}

TEST_CASE("hyperbolic plane at (0, 1)") {
  const GradedMetric g = hyperbolic_metric();
  const std::vector<double> p{0.0, 1.0};
  const ChristoffelAtPoint gam = christoffel_at(g, p);
  CHECK(gam(0, 1, 0).body() == -1.0);
  CHECK(gam(0, 0, 1).body() == 1.0);
  CHECK(gam(1, 1, 1).body() == -1.0);
  const ConnectionResiduals res = connection_residuals_at(g, p, gam);
  CHECK(res.torsion <= 1e-10);
  CHECK(res.metricity <= 1e-10);
  CHECK(sectional_curvature(g, p, 0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  ChristoffelAtPoint bad = gam;
  bad(1, 1, 1) += Grassmann::constant(0, 0.1);
  const ConnectionResiduals off = connection_residuals_at(g, p, bad);
  CHECK(std::max(off.torsion, off.metricity) >= 0.05);
}

TEST_CASE("flat R^{2|2} is a valid metric with zero residuals") {
  const GradedMetric g = flat_metric(2, 2);
  const std::vector<double> p{1.0, 2.0};
  CHECK(validate_metric(g, {p}).ok);
  const ConnectionResiduals res = connection_residuals_at(g, p);
  CHECK(res.torsion == 0.0);
  CHECK(res.metricity == 0.0);
  CHECK(curvature_symmetry_residuals(g, p).max() == 0.0);
  const Superfunction zero(2, 2);
  CHECK(killing_residual_at(g, {Superfunction::constant(2, 2, 1.0), Superfunction::constant(2, 2, 2.0), zero, zero}, p) ==
        0.0);
  // symmetric odd block
  auto e = g.entries();
  e[3][2] = e[2][3];
  CHECK_FALSE(validate_metric(GradedMetric(g.chart(), e), {p}).ok);
}

TEST_CASE("dilation on Euclidean R^2 is not Killing, rotation is") {
  const GradedMetric g = flat_metric(2, 0);
  auto x = [](int i) { return Superfunction::even_coordinate(2, 0, i); };
  const std::vector<double> p{0.3, 0.9};
  CHECK(killing_residual_at(g, {(-1.0) * x(1), x(0)}, p) == 0.0);
  CHECK(killing_residual_at(g, {x(0), Superfunction(2, 0)}, p) > 0.0);
}
