#include <doctest.h>

#include "fixtures.hpp"
#include "supergeo/errors.hpp"
#include "supergeo/geodesic.hpp"
#include "supergeo/io.hpp"

using namespace supergeo;
using Eigen::VectorXd;

namespace {

GradedMetric super_hyperbolic() { return metric_from_json(read_json_file(SUPERGEO_DATA_DIR "/super_hyperbolic.json")); }

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("flat R^{1|2}: straight lines with constant odd data") {
  const GradedMetric g = flat_metric(1, 2);
  const GeodesicResult r = integrate_geodesic(g, vec({0.5}), vec({2.0}), vec({0.3, -0.7}), 1.0, 0.1);
  CHECK(r.steps == 10);
  const SupercurveState& end = r.states.back();
  CHECK(end.t == doctest::Approx(1.0));
  CHECK(end.g(0) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(end.v(0) == 2.0);
  CHECK(end.h(0) == 0.3);
  CHECK(end.h(1) == -0.7);
}

TEST_CASE("vertical hyperbolic geodesic reaches e") {
  const GeodesicResult r = integrate_geodesic(hyperbolic_metric(), vec({0.0, 1.0}), vec({0.0, 1.0}), VectorXd(0), 1.0,
                                              1e-3);
  CHECK(std::abs(r.states.back().g(1) - std::exp(1.0)) <= 1e-6);
  CHECK(std::abs(r.states.back().g(0)) <= 1e-15);
  CHECK(r.energy_drift <= 1e-9);
}

TEST_CASE("classical geodesics agree with an independent integrator") {
  const fixtures::ClassicalSurface s = fixtures::sphere_surface();
  const GeodesicResult r = integrate_geodesic(sphere_metric(), vec({1.0, 0.2}), vec({0.3, 0.8}), VectorXd(0), 1.0, 1e-3);
  const Eigen::Vector4d ref = fixtures::classical_geodesic(s, {1.0, 0.2}, {0.3, 0.8}, 1.0, 1000);
  CHECK((r.states.back().g - ref.head<2>()).norm() <= 1e-8);
  CHECK((r.states.back().v - ref.tail<2>()).norm() <= 1e-8);
}

TEST_CASE("step is adjusted to land on t_end") {
  const GeodesicResult r = integrate_geodesic(flat_metric(2, 0), vec({0, 0}), vec({1, 1}), VectorXd(0), 1.0, 0.3);
  CHECK(r.steps == 4);
  CHECK(r.step == doctest::Approx(0.25));
  CHECK(r.states.back().t == 1.0);
}

TEST_CASE("RK4 error ratio under step halving") {
  const GradedMetric g = super_hyperbolic();
  const VectorXd p = vec({0.0, 1.0}), v = vec({0.8, 0.5}), w = vec({0.4, -0.3});
  auto endpoint = [&](double h) {
    const SupercurveState e = integrate_geodesic(g, p, v, w, 2.0, h).states.back();
    VectorXd out(6);
    out << e.g, e.h, e.v;
    return out;
  };
  const VectorXd ref = endpoint(1e-3);
  const double coarse = (endpoint(0.1) - ref).norm(), fine = (endpoint(0.05) - ref).norm();
  const double ratio = coarse / fine;
  INFO("ratio " << ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("odd equations are linear in the odd data") {
  const GradedMetric g = super_hyperbolic();
  const VectorXd p = vec({0.0, 1.0}), v = vec({0.6, 0.4});
  const VectorXd w1 = vec({1.0, 0.0}), w2 = vec({0.2, -0.5});
  const auto a = integrate_geodesic(g, p, v, w1, 1.0, 0.01).states;
  const auto b = integrate_geodesic(g, p, v, w2, 1.0, 0.01).states;
  const auto c = integrate_geodesic(g, p, v, 2.0 * w1 - 3.0 * w2, 1.0, 0.01).states;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, (c[k].h - 2.0 * a[k].h + 3.0 * b[k].h).norm());
  CHECK(worst <= 1e-10);
  // the odd data actually moves
  CHECK((a.back().h - w1).norm() >= 1e-2);
  // and does not feed back into the reduced curve
  CHECK((a.back().g - b.back().g).norm() == 0.0);
}

TEST_CASE("integration is deterministic") {
  const GradedMetric g = super_hyperbolic();
  const auto a = integrate_geodesic(g, vec({0.1, 1.0}), vec({0.3, 0.2}), vec({0.5, 0.5}), 1.0, 0.01);
  const auto b = integrate_geodesic(g, vec({0.1, 1.0}), vec({0.3, 0.2}), vec({0.5, 0.5}), 1.0, 0.01);
  CHECK(a.states.back().g == b.states.back().g);
  CHECK(a.states.back().h == b.states.back().h);
}

TEST_CASE("invalid input is rejected") {
  const GradedMetric g = super_hyperbolic();
  CHECK_THROWS_AS(integrate_geodesic(g, vec({0.0}), vec({0.0, 1.0}), vec({0, 0}), 1.0, 0.1), DimensionMismatch);
  CHECK_THROWS_AS(integrate_geodesic(g, vec({0.0, 1.0}), vec({0.0, 1.0}), vec({0, 0}), 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(integrate_geodesic(g, vec({0.0, -1.0}), vec({0.0, 1.0}), vec({0, 0}), 1.0, 0.01), DomainError);
}

TEST_CASE("parallel transport is an isometry and keeps parity") {
  const GradedMetric g = super_hyperbolic();
  const auto curve = integrate_geodesic(g, vec({0.0, 1.0}), vec({0.5, 0.2}), vec({0.3, -0.4}), 1.0, 0.01).states;
  const TangentVector x{vec({1.0, 0.0}), vec({0.0, 0.0})};
  const TangentVector y{vec({0.2, 0.7}), vec({0.0, 0.0})};
  const TangentVector z{vec({0.0, 0.0}), vec({1.0, 0.5})};
  const TangentVector w{vec({0.0, 0.0}), vec({-0.3, 0.8})};
  const ParallelFrame fx = parallel_transport(g, curve, x), fy = parallel_transport(g, curve, y);
  const ParallelFrame fz = parallel_transport(g, curve, z), fw = parallel_transport(g, curve, w);
  CHECK(transport_inner_drift(g, curve, fx, fy) <= 1e-6);
  CHECK(transport_inner_drift(g, curve, fx, fx) <= 1e-6);
  CHECK(transport_inner_drift(g, curve, fz, fw) <= 1e-6);
  CHECK(std::abs(reduced_inner(g, curve.front().g, z, w)) >= 0.1);
  for (const auto& s : fx.samples) CHECK(s.f_odd.cwiseAbs().maxCoeff() == 0.0);
  for (const auto& s : fz.samples) CHECK(s.f_even.cwiseAbs().maxCoeff() == 0.0);
  // the even part genuinely rotates
  CHECK((fx.samples.back().f_even - x.even).norm() >= 1e-2);
}

TEST_CASE("transport matrix is block diagonal by parity") {
  const GradedMetric g = super_hyperbolic();
  const auto curve = integrate_geodesic(g, vec({0.0, 1.0}), vec({0.5, 0.2}), vec({0.3, -0.4}), 1.0, 0.01).states;
  const Eigen::MatrixXd t = transport_matrix(g, curve);
  CHECK(t.topRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t.bottomLeftCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("supergeodesic diagnostics") {
  const GradedMetric g = super_hyperbolic();
  const auto curve = integrate_geodesic(g, vec({0.0, 1.0}), vec({0.5, 0.2}), vec({0.3, -0.4}), 1.0, 1e-3).states;
  const SupercurveDiagnostics d = supercurve_diagnostics(g, curve);
  INFO("tt " << d.tt_reduced << " tx " << d.tx_reduced << " xt " << d.xt_reduced << " xx " << d.xx_reduced);
  CHECK(d.tt_reduced <= 1e-5);
  CHECK(d.tx_reduced <= 1e-5);
  CHECK(d.xt_reduced <= 1e-5);
}

TEST_CASE("geodesic right-hand side") {
  SupercurveState st;
  st.g = vec({0.0, 1.0});
  st.v = vec({1.0, 0.0});
  st.h = VectorXd(0);
  const GeodesicDerivative d = geodesic_rhs(hyperbolic_metric(), st);
  CHECK(d.dv(0) == 0.0);
  CHECK(d.dv(1) == doctest::Approx(-1.0).epsilon(1e-14));
  SupercurveState f;
  f.g = vec({0.3, 0.1});
  f.v = vec({1.0, 2.0});
  f.h = vec({0.5, 0.5});
  const GeodesicDerivative z = geodesic_rhs(flat_metric(2, 2), f);
  CHECK(z.dv.isZero(0.0));
  CHECK(z.dh.isZero(0.0));
}

TEST_CASE("flat R^{1|2} oracle") {
  const GeodesicResult r = integrate_geodesic(flat_metric(1, 2), vec({0.0}), vec({1.0}), vec({1.0, 0.0}), 1.0, 0.01);
  CHECK(r.states.back().g(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.states.back().h == vec({1.0, 0.0}));
  const ParallelFrame f = parallel_transport(flat_metric(1, 2), r.states, {vec({0.7}), vec({0.2, -0.1})});
  for (const auto& s : f.samples) {
    CHECK(s.f_even == vec({0.7}));
    CHECK(s.f_odd == vec({0.2, -0.1}));
  }
}

TEST_CASE("the odd-odd covariant term vanishes on every supercurve") {
  const GradedMetric g = super_hyperbolic();
  const auto curve = integrate_geodesic(g, vec({0.2, 0.9}), vec({-0.4, 0.3}), vec({0.7, 0.1}), 1.0, 1e-2).states;
  CHECK(supercurve_diagnostics(g, curve).xx_full <= 1e-12);
  // an arbitrary, non-geodesic supercurve
  std::vector<SupercurveState> wiggle;
  for (int k = 0; k <= 100; ++k) {
    SupercurveState s;
    s.t = 0.01 * k;
    s.g = vec({std::sin(s.t), 1.0 + 0.5 * s.t * s.t});
    s.v = vec({std::cos(s.t), s.t});
    s.h = vec({1.0 + s.t, -s.t});
    s.a = vec({-std::sin(s.t), 1.0});
    s.hdot = vec({1.0, -1.0});
    wiggle.push_back(s);
  }
  const SupercurveDiagnostics d = supercurve_diagnostics(g, wiggle);
  CHECK(d.xx_full <= 1e-12);
  CHECK(d.tt_reduced >= 0.1);
}
