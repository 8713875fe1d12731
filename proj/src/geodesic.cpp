#include "supergeo/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

std::span<const double> as_span(const Eigen::VectorXd& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }

void require_finite(const Eigen::VectorXd& x, double t) {
  if (!x.allFinite()) throw DomainError("non-finite state at t = " + std::to_string(t));
}

Eigen::MatrixXd even_body(const GradedMetric& metric, const Eigen::VectorXd& p) {
  const int n = metric.chart().n;
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = sf_eval(metric.entry(i, j), as_span(p)).body();
  }
  return out;
}

Eigen::MatrixXd odd_body(const GradedMetric& metric, const Eigen::VectorXd& p) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  Eigen::MatrixXd out(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) out(a, b) = sf_eval(metric.entry(n + a, n + b), as_span(p)).body();
  }
  return out;
}

// Weights of the second-order three-point derivative at sample k.
std::array<std::pair<std::size_t, double>, 3> diff_weights(const std::vector<SupercurveState>& c, std::size_t k) {
  const std::size_t last = c.size() - 1;
  if (k == 0) {
    const double h1 = c[1].t - c[0].t, h2 = c[2].t - c[1].t;
    return {{{0, -(2 * h1 + h2) / (h1 * (h1 + h2))}, {1, (h1 + h2) / (h1 * h2)}, {2, -h1 / (h2 * (h1 + h2))}}};
  }
  if (k == last) {
    const double h1 = c[last - 1].t - c[last - 2].t, h2 = c[last].t - c[last - 1].t;
    return {{{last - 2, h2 / (h1 * (h1 + h2))}, {last - 1, -(h1 + h2) / (h1 * h2)}, {last, (2 * h2 + h1) / (h2 * (h1 + h2))}}};
  }
  const double h1 = c[k].t - c[k - 1].t, h2 = c[k + 1].t - c[k].t;
  return {{{k - 1, -h2 / (h1 * (h1 + h2))}, {k, (h2 - h1) / (h1 * h2)}, {k + 1, h1 / (h2 * (h1 + h2))}}};
}

void require_samples(const std::vector<SupercurveState>& curve, std::size_t need) {
  if (curve.size() < need) {
    throw InvalidArgument("curve needs at least " + std::to_string(need) + " samples, got " + std::to_string(curve.size()));
  }
}

Eigen::VectorXd acceleration(const std::vector<SupercurveState>& curve, std::size_t k) {
  if (curve[k].a.size() == curve[k].v.size()) return curve[k].a;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(curve[k].v.size());
  for (const auto& [j, w] : diff_weights(curve, k)) out += w * curve[j].v;
  return out;
}

Eigen::VectorXd odd_rate(const std::vector<SupercurveState>& curve, std::size_t k) {
  if (curve[k].hdot.size() == curve[k].h.size()) return curve[k].hdot;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(curve[k].h.size());
  for (const auto& [j, w] : diff_weights(curve, k)) out += w * curve[j].h;
  return out;
}

// γ*Γ at a sample: ξ_α ↦ h_α ξ, products of two or more ξ vanish.
Grassmann pull_back(const Grassmann& x, const Eigen::VectorXd& h) {
  Grassmann out = Grassmann::constant(1, x.body());
  double lin = 0.0;
  for (int a = 0; a < h.size(); ++a) lin += h(a) * x.coefficient(OddIndexSet::from_mask(Mask{1} << a));
  out.add(1, lin);
  return out;
}

Grassmann g1(double body, double xi) {
  Grassmann out = Grassmann::constant(1, body);
  out.add(1, xi);
  return out;
}

}  // namespace

GeodesicDerivative geodesic_rhs(const GradedMetric& metric, const SupercurveState& s) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  if (s.g.size() != n || s.v.size() != n || s.h.size() != m) throw DimensionMismatch("state does not match chart");
  const ReducedChristoffel gam = reduced_christoffel_at(metric, as_span(s.g));
  GeodesicDerivative d{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(m)};
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) acc += s.v(i) * s.v(j) * gam(i, j, k);
    }
    d.dv(k) = -acc;
  }
  for (int dl = 0; dl < m; ++dl) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < m; ++b) acc += s.v(i) * s.h(b) * gam(i, n + b, n + dl);
    }
    d.dh(dl) = -acc;
  }
  return d;
}

GeodesicResult integrate_geodesic(const GradedMetric& metric, const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                                  const Eigen::VectorXd& w, double t_end, double step) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step must be positive and finite");
  if (!std::isfinite(t_end)) throw InvalidArgument("t_end must be finite");
  if (p.size() != n || v.size() != n) throw DimensionMismatch("initial point and velocity need " + std::to_string(n) + " entries");
  if (w.size() != m) throw DimensionMismatch("odd initial data needs " + std::to_string(m) + " entries");

  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t_end) / step - 1e-9)));
  const double dt = t_end / steps;
  GeodesicResult r;
  r.step = std::abs(dt);
  r.steps = steps;
  r.states.reserve(static_cast<std::size_t>(steps) + 1);

  auto fill = [&](SupercurveState s) {
    const GeodesicDerivative d = geodesic_rhs(metric, s);
    s.a = d.dv;
    s.hdot = d.dh;
    return s;
  };
  SupercurveState s{0.0, p, v, w, {}, {}};
  require_finite(p, 0.0);
  s = fill(s);
  r.states.push_back(s);
  auto energy = [&](const SupercurveState& x) { return x.v.dot(even_body(metric, x.g) * x.v); };
  const double e0 = energy(s);

  for (int k = 0; k < steps; ++k) {
    auto shifted = [&](const SupercurveState& base, double c, const Eigen::VectorXd& dg, const GeodesicDerivative& dd) {
      SupercurveState y;
      y.t = base.t + c;
      y.g = base.g + c * dg;
      y.v = base.v + c * dd.dv;
      y.h = base.h + c * dd.dh;
      return y;
    };
    const GeodesicDerivative k1{s.a, s.hdot};
    const Eigen::VectorXd g1v = s.v;
    const SupercurveState y2 = shifted(s, dt / 2, g1v, k1);
    const GeodesicDerivative k2 = geodesic_rhs(metric, y2);
    const SupercurveState y3 = shifted(s, dt / 2, y2.v, k2);
    const GeodesicDerivative k3 = geodesic_rhs(metric, y3);
    const SupercurveState y4 = shifted(s, dt, y3.v, k3);
    const GeodesicDerivative k4 = geodesic_rhs(metric, y4);
    SupercurveState next;
    next.t = (k + 1 == steps) ? t_end : (k + 1) * dt;
    next.g = s.g + dt / 6 * (g1v + 2 * y2.v + 2 * y3.v + y4.v);
    next.v = s.v + dt / 6 * (k1.dv + 2 * k2.dv + 2 * k3.dv + k4.dv);
    next.h = s.h + dt / 6 * (k1.dh + 2 * k2.dh + 2 * k3.dh + k4.dh);
    require_finite(next.g, next.t);
    require_finite(next.v, next.t);
    require_finite(next.h, next.t);
    s = fill(next);
    r.states.push_back(s);
    r.energy_drift = std::max(r.energy_drift, std::abs(energy(s) - e0));
  }
  for (std::size_t k = 1; k + 1 < r.states.size(); ++k) {
    const auto& a = r.states[k - 1];
    const auto& b = r.states[k];
    const auto& c = r.states[k + 1];
    const double span = c.t - a.t;
    const double rv = ((c.v - a.v) / span - b.a).cwiseAbs().maxCoeff();
    const double rh = m > 0 ? ((c.h - a.h) / span - b.hdot).cwiseAbs().maxCoeff() : 0.0;
    const double rg = ((c.g - a.g) / span - b.v).cwiseAbs().maxCoeff();
    r.equation_residual = std::max({r.equation_residual, rv, rh, rg});
  }
  return r;
}

ParallelFrame parallel_transport(const GradedMetric& metric, const std::vector<SupercurveState>& curve,
                                 const TangentVector& tau) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  require_samples(curve, 2);
  if (tau.even.size() != n || tau.odd.size() != m) throw DimensionMismatch("tangent vector does not match chart");
  if (curve.size() == 2 && (curve[0].a.size() != n)) require_samples(curve, 3);

  // f' = −A(g, v) f, block diagonal in (even, odd)
  auto rhs = [&](const Eigen::VectorXd& g, const Eigen::VectorXd& v, const Eigen::VectorXd& fe, const Eigen::VectorXd& fo) {
    const ReducedChristoffel gam = reduced_christoffel_at(metric, as_span(g));
    Eigen::VectorXd de = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dod = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) de(k) -= fe(j) * v(i) * gam(i, j, k);
      }
    }
    for (int dl = 0; dl < m; ++dl) {
      for (int i = 0; i < n; ++i) {
        for (int b = 0; b < m; ++b) dod(dl) -= fo(b) * v(i) * gam(i, n + b, n + dl);
      }
    }
    return std::pair{de, dod};
  };
  auto algebraic = [&](ParallelSample& s, const SupercurveState& c) {
    const ReducedChristoffel gam = reduced_christoffel_at(metric, as_span(c.g));
    s.g_even = Eigen::VectorXd::Zero(n);
    s.g_odd = Eigen::VectorXd::Zero(m);
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) s.g_even(k) -= s.f_odd(b) * c.h(a) * gam(n + a, n + b, k);
      }
    }
    for (int dl = 0; dl < m; ++dl) {
      for (int a = 0; a < m; ++a) {
        for (int j = 0; j < n; ++j) s.g_odd(dl) -= s.f_even(j) * c.h(a) * gam(n + a, j, n + dl);
      }
    }
  };

  ParallelFrame out;
  ParallelSample s{curve[0].t, tau.even, tau.odd, {}, {}};
  algebraic(s, curve[0]);
  out.samples.push_back(s);
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const auto& c0 = curve[k];
    const auto& c1 = curve[k + 1];
    const double dt = c1.t - c0.t;
    const Eigen::VectorXd a0 = acceleration(curve, k);
    const Eigen::VectorXd a1 = acceleration(curve, k + 1);
    const Eigen::VectorXd gm = 0.5 * (c0.g + c1.g) + dt / 8 * (c0.v - c1.v);
    const Eigen::VectorXd vm = 0.5 * (c0.v + c1.v) + dt / 8 * (a0 - a1);
    const auto [e1, o1] = rhs(c0.g, c0.v, s.f_even, s.f_odd);
    const auto [e2, o2] = rhs(gm, vm, s.f_even + dt / 2 * e1, s.f_odd + dt / 2 * o1);
    const auto [e3, o3] = rhs(gm, vm, s.f_even + dt / 2 * e2, s.f_odd + dt / 2 * o2);
    const auto [e4, o4] = rhs(c1.g, c1.v, s.f_even + dt * e3, s.f_odd + dt * o3);
    ParallelSample next;
    next.t = c1.t;
    next.f_even = s.f_even + dt / 6 * (e1 + 2 * e2 + 2 * e3 + e4);
    next.f_odd = s.f_odd + dt / 6 * (o1 + 2 * o2 + 2 * o3 + o4);
    require_finite(next.f_even, next.t);
    require_finite(next.f_odd, next.t);
    algebraic(next, c1);
    out.samples.push_back(next);
    s = next;
  }
  return out;
}

Eigen::MatrixXd transport_matrix(const GradedMetric& metric, const std::vector<SupercurveState>& curve) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  Eigen::MatrixXd out(n + m, n + m);
  for (int c = 0; c < n + m; ++c) {
    TangentVector tau{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(m)};
    if (c < n) tau.even(c) = 1.0;
    else tau.odd(c - n) = 1.0;
    const ParallelFrame f = parallel_transport(metric, curve, tau);
    out.col(c) << f.samples.back().f_even, f.samples.back().f_odd;
  }
  return out;
}

double reduced_inner(const GradedMetric& metric, const Eigen::VectorXd& point, const TangentVector& x,
                     const TangentVector& y) {
  double out = x.even.dot(even_body(metric, point) * y.even);
  if (metric.chart().m > 0) out += x.odd.dot(odd_body(metric, point) * y.odd);
  return out;
}

double transport_inner_drift(const GradedMetric& metric, const std::vector<SupercurveState>& curve,
                             const ParallelFrame& x, const ParallelFrame& y) {
  if (x.samples.size() != curve.size() || y.samples.size() != curve.size()) {
    throw DimensionMismatch("transported fields and curve have different sample counts");
  }
  const double base = reduced_inner(metric, curve[0].g, x.at(0), y.at(0));
  double worst = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    worst = std::max(worst, std::abs(reduced_inner(metric, curve[k].g, x.at(k), y.at(k)) - base));
  }
  return worst;
}

FieldAlongCurve velocity_even(const std::vector<SupercurveState>& curve, int n, int m) {
  require_samples(curve, 3);
  FieldAlongCurve f;
  f.parity = 0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const Eigen::VectorXd hd = odd_rate(curve, k);
    std::vector<Grassmann> row;
    for (int i = 0; i < n; ++i) row.push_back(g1(curve[k].v(i), 0.0));
    for (int a = 0; a < m; ++a) row.push_back(g1(0.0, hd(a)));
    f.samples.push_back(std::move(row));
  }
  return f;
}

FieldAlongCurve velocity_odd(const std::vector<SupercurveState>& curve, int n, int m) {
  FieldAlongCurve f;
  f.parity = 1;
  for (const auto& s : curve) {
    std::vector<Grassmann> row;
    for (int i = 0; i < n; ++i) row.push_back(Grassmann(1));
    for (int a = 0; a < m; ++a) row.push_back(g1(s.h(a), 0.0));
    f.samples.push_back(std::move(row));
  }
  return f;
}

FieldAlongCurve covariant_derivative_along(const GradedMetric& metric, const std::vector<SupercurveState>& curve,
                                           const FieldAlongCurve& field, CurveDerivative which) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  const int d = n + m;
  require_samples(curve, 3);
  if (field.samples.size() != curve.size()) throw DimensionMismatch("field and curve have different sample counts");
  FieldAlongCurve out;
  out.parity = which == CurveDerivative::Even ? field.parity : 1 - field.parity;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const auto& row = field.samples[k];
    if (static_cast<int>(row.size()) != d) throw DimensionMismatch("field sample has wrong length");
    const ChristoffelAtPoint gam = christoffel_at(metric, as_span(curve[k].g));
    // ∂_t(γ*η_i) or ∂_ξ(γ*η_i)
    std::vector<Grassmann> rate;
    const Eigen::VectorXd hd = which == CurveDerivative::Even ? odd_rate(curve, k) : Eigen::VectorXd();
    for (int i = 0; i < n; ++i) rate.push_back(g1(which == CurveDerivative::Even ? curve[k].v(i) : 0.0, 0.0));
    for (int a = 0; a < m; ++a) {
      rate.push_back(which == CurveDerivative::Even ? g1(0.0, hd(a)) : g1(curve[k].h(a), 0.0));
    }
    std::vector<Grassmann> res;
    for (int c = 0; c < d; ++c) {
      Grassmann v(1);
      if (which == CurveDerivative::Even) {
        for (const auto& [j, w] : diff_weights(curve, k)) v += w * field.samples[j][static_cast<std::size_t>(c)];
      } else {
        v = Grassmann::constant(1, row[static_cast<std::size_t>(c)].coefficient(OddIndexSet::from_mask(1)));
      }
      for (int j = 0; j < d; ++j) {
        const Grassmann& fj = row[static_cast<std::size_t>(j)];
        if (fj.is_zero()) continue;
        const double sign =
            (which == CurveDerivative::Odd && ((field.parity + metric.parity(j)) & 1)) ? -1.0 : 1.0;
        for (int i = 0; i < d; ++i) {
          if (rate[static_cast<std::size_t>(i)].is_zero()) continue;
          const Grassmann pb = pull_back(gam(i, j, c), curve[k].h);
          v += sign * gmul(gmul(fj, rate[static_cast<std::size_t>(i)]), pb);
        }
      }
      res.push_back(std::move(v));
    }
    out.samples.push_back(std::move(res));
  }
  return out;
}

SupercurveDiagnostics supercurve_diagnostics(const GradedMetric& metric, const std::vector<SupercurveState>& curve) {
  const int n = metric.chart().n;
  const int m = metric.chart().m;
  const FieldAlongCurve et = velocity_even(curve, n, m);
  const FieldAlongCurve ex = velocity_odd(curve, n, m);
  SupercurveDiagnostics out;
  auto measure = [&](const FieldAlongCurve& f, double& full, double& reduced) {
    for (std::size_t k = 1; k + 1 < f.samples.size(); ++k) {
      for (const auto& x : f.samples[k]) {
        full = std::max(full, x.max_abs());
        reduced = std::max(reduced, std::abs(x.body()));
      }
    }
  };
  measure(covariant_derivative_along(metric, curve, et, CurveDerivative::Even), out.tt_full, out.tt_reduced);
  measure(covariant_derivative_along(metric, curve, ex, CurveDerivative::Even), out.tx_full, out.tx_reduced);
  measure(covariant_derivative_along(metric, curve, et, CurveDerivative::Odd), out.xt_full, out.xt_reduced);
  measure(covariant_derivative_along(metric, curve, ex, CurveDerivative::Odd), out.xx_full, out.xx_reduced);
  return out;
}

}  // namespace supergeo
