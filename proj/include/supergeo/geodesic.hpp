#pragma once

#include <Eigen/Dense>
#include <vector>

#include "supergeo/chart.hpp"

namespace supergeo {

/// Supercurve γ: R^{1|1} → chart with γ*x_i = g_i(t) and γ*ξ_α = h_α(t) ξ.
/// `a` = g'' and `hdot` = h' are optional; integrators fill them.
struct SupercurveState {
  double t = 0.0;
  Eigen::VectorXd g;
  Eigen::VectorXd v;
  Eigen::VectorXd h;
  Eigen::VectorXd a;
  Eigen::VectorXd hdot;
};

struct GeodesicDerivative {
  Eigen::VectorXd dv;
  Eigen::VectorXd dh;
};

/// dv_k = −Σ v_i v_j Γ̃_ij^k(g), dh_δ = −Σ v_i h_β Γ̃_iβ^δ(g).
GeodesicDerivative geodesic_rhs(const GradedMetric& metric, const SupercurveState& state);

struct GeodesicResult {
  std::vector<SupercurveState> states;  // every step, including t = 0
  double step = 0.0;
  int steps = 0;
  double energy_drift = 0.0;       // max |<g',g'>(t) − <g',g'>(0)| on the reduced metric
  double equation_residual = 0.0;  // central differences of (v, h) against the right-hand side
};

/// Fixed-step RK4 on (g, v, h). The step is shrunk so that an integer number
/// of steps lands exactly on t_end.
GeodesicResult integrate_geodesic(const GradedMetric& metric, const Eigen::VectorXd& p, const Eigen::VectorXd& v,
                                  const Eigen::VectorXd& w, double t_end, double step);

/// τ ∈ T_pM split into its even coefficients f_j and odd coefficients f_β.
struct TangentVector {
  Eigen::VectorXd even;
  Eigen::VectorXd odd;
};

/// X = Σ (f_j + ξ g_j) ∂̂_j + Σ (f_β + ξ g_β) ∂̂_β at time t.
struct ParallelSample {
  double t = 0.0;
  Eigen::VectorXd f_even;
  Eigen::VectorXd f_odd;
  Eigen::VectorXd g_even;
  Eigen::VectorXd g_odd;
};

struct ParallelFrame {
  std::vector<ParallelSample> samples;
  TangentVector at(std::size_t k) const { return {samples[k].f_even, samples[k].f_odd}; }
};

/// Integrates the linear system for (f_j, f_β) with RK4 on the curve's time
/// grid, midpoints by cubic Hermite interpolation; g_j, g_β follow
/// algebraically.
ParallelFrame parallel_transport(const GradedMetric& metric, const std::vector<SupercurveState>& curve,
                                 const TangentVector& tau);

/// Columns: images of the coordinate basis vectors at the last sample.
Eigen::MatrixXd transport_matrix(const GradedMetric& metric, const std::vector<SupercurveState>& curve);

/// <X_t, Y_t> on the reduced curve.
double reduced_inner(const GradedMetric& metric, const Eigen::VectorXd& point, const TangentVector& x,
                     const TangentVector& y);

/// max_t |<X_t,Y_t> − <X_0,Y_0>|.
double transport_inner_drift(const GradedMetric& metric, const std::vector<SupercurveState>& curve,
                             const ParallelFrame& x, const ParallelFrame& y);

/// Vector field along a supercurve: per sample, coefficients in Λ[ξ] (one
/// generator) of ∂̂_a; `parity` is the parity of the field.
struct FieldAlongCurve {
  int parity = 0;
  std::vector<std::vector<Grassmann>> samples;
};

enum class CurveDerivative { Even, Odd };

/// ∇/dt or ∇/dξ along the curve; ∂_t by second-order differences over the
/// samples (at least three needed).
FieldAlongCurve covariant_derivative_along(const GradedMetric& metric, const std::vector<SupercurveState>& curve,
                                           const FieldAlongCurve& field, CurveDerivative which);

/// dγ(∂_t) = Σ g_i' ∂̂_i + Σ h_α' ξ ∂̂_α.
FieldAlongCurve velocity_even(const std::vector<SupercurveState>& curve, int n, int m);
/// dγ(∂_ξ) = Σ h_α ∂̂_α.
FieldAlongCurve velocity_odd(const std::vector<SupercurveState>& curve, int n, int m);

/// Norms of the four covariant terms ∇_t dγ(∂_t), ∇_t dγ(∂_ξ), ∇_ξ dγ(∂_t),
/// ∇_ξ dγ(∂_ξ): full Grassmann size and reduced (body) size.
struct SupercurveDiagnostics {
  double tt_full = 0.0, tt_reduced = 0.0;
  double tx_full = 0.0, tx_reduced = 0.0;
  double xt_full = 0.0, xt_reduced = 0.0;
  double xx_full = 0.0, xx_reduced = 0.0;
};

/// Interior samples only; endpoints use one-sided differences and are skipped.
SupercurveDiagnostics supercurve_diagnostics(const GradedMetric& metric, const std::vector<SupercurveState>& curve);

}  // namespace supergeo
