#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "supergeo/grassmann.hpp"
#include "supergeo/superfunction.hpp"

namespace supergeo {

using Grassmann = GrassmannNumber<double>;

/// Single chart R^{n|m}. Axis a < n is the even coordinate x_{a+1}; axis
/// n + α − 1 is ξ_α.
struct Chart {
  int n = 0;
  int m = 0;
  std::vector<std::string> even_names;
  std::vector<std::string> odd_names;
  std::vector<int> positive;                             // axes restricted to x > 0
  std::function<bool(std::span<const double>)> domain;  // extra condition; empty = none

  static Chart standard(int n, int m);
  int dim() const { return n + m; }
  int parity(int axis) const { return axis < n ? 0 : 1; }
  std::string axis_name(int axis) const;
  bool contains(std::span<const double> p) const {
    for (int ax : positive)
      if (!(p[static_cast<std::size_t>(ax)] > 0.0)) return false;
    return !domain || domain(p);
  }
};

/// Dense matrix with Grassmann entries, row-major.
class GrassmannMatrix {
 public:
  GrassmannMatrix() = default;
  GrassmannMatrix(int rows, int cols, int m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int generators() const { return m_; }
  Grassmann& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Grassmann& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  Eigen::MatrixXd body() const;
  double max_abs() const;

  static GrassmannMatrix identity(int d, int m);
  static GrassmannMatrix from_real(const Eigen::MatrixXd& a, int m);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int m_ = 0;
  std::vector<Grassmann> data_;
};

GrassmannMatrix gm_mul(const GrassmannMatrix& a, const GrassmannMatrix& b);
GrassmannMatrix operator+(const GrassmannMatrix& a, const GrassmannMatrix& b);
GrassmannMatrix operator-(const GrassmannMatrix& a, const GrassmannMatrix& b);
GrassmannMatrix operator*(double s, const GrassmannMatrix& a);

/// Inverse of an even supermatrix: body inverted per parity block, nilpotent
/// part by the terminating Neumann series.
GrassmannMatrix graded_inverse(const GrassmannMatrix& g, std::span<const int> parities);

/// Graded Riemannian metric g_ab = <∂_a, ∂_b> on a chart. Derivative tables
/// are built once at construction.
class GradedMetric {
 public:
  GradedMetric(Chart chart, std::vector<std::vector<Superfunction>> entries);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  int parity(int a) const { return chart_.parity(a); }
  std::vector<int> parities() const;
  const Superfunction& entry(int a, int b) const { return entries_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  const std::vector<std::vector<Superfunction>>& entries() const { return entries_; }

  /// ∂_c g_ab.
  const Superfunction& d1(int c, int a, int b) const;
  /// ∂_i ∂_c g_ab, i even.
  const Superfunction& d2(int i, int c, int a, int b) const;

 private:
  Chart chart_;
  std::vector<std::vector<Superfunction>> entries_;
  std::shared_ptr<const std::vector<Superfunction>> d1_;
  std::shared_ptr<const std::vector<Superfunction>> d2_;
};

/// g evaluated at a reduced point; entries keep their full ξ dependence.
GrassmannMatrix evaluate_metric(const GradedMetric& g, std::span<const double> p);

struct MetricViolation {
  std::string kind;  // "parity", "symmetry", "degenerate", "domain"
  int a = -1;
  int b = -1;
  std::vector<double> point;
  std::string detail;
};

struct MetricReport {
  bool ok = true;
  double symmetry_residual = 0.0;
  double min_even_singular = 0.0;
  double min_odd_singular = 0.0;
  std::vector<MetricViolation> violations;
};

MetricReport validate_metric(const GradedMetric& g, const std::vector<std::vector<double>>& points,
                             double tol = 1e-10);

/// Γ_{ab}^c at p with ∇_{∂_a}∂_b = Σ_c Γ_{ab}^c ∂_c, coefficient on the left.
struct ChristoffelAtPoint {
  std::vector<double> point;
  int dim = 0;
  int generators = 0;
  std::vector<Grassmann> gamma;

  Grassmann& operator()(int a, int b, int c) { return gamma[static_cast<std::size_t>((a * dim + b) * dim + c)]; }
  const Grassmann& operator()(int a, int b, int c) const {
    return gamma[static_cast<std::size_t>((a * dim + b) * dim + c)];
  }
};

ChristoffelAtPoint christoffel_at(const GradedMetric& g, std::span<const double> p);

/// Degree-0 parts only, computed from metric bodies: Γ̃_{ab}^c.
struct ReducedChristoffel {
  int dim = 0;
  std::vector<double> gamma;
  double operator()(int a, int b, int c) const { return gamma[static_cast<std::size_t>((a * dim + b) * dim + c)]; }
};

ReducedChristoffel reduced_christoffel_at(const GradedMetric& g, std::span<const double> p);

struct ConnectionResiduals {
  double torsion = 0.0;
  double metricity = 0.0;
};

ConnectionResiduals connection_residuals_at(const GradedMetric& g, std::span<const double> p);
/// Residuals of a supplied Γ, for checking perturbed or external symbols.
ConnectionResiduals connection_residuals_at(const GradedMetric& g, std::span<const double> p,
                                            const ChristoffelAtPoint& gamma);

/// Largest coefficient of a Christoffel component whose parity violates
/// |Γ_ab^c| = |a|+|b|+|c|.
double christoffel_parity_violation(const GradedMetric& g, const ChristoffelAtPoint& gamma);

/// R(∂_a,∂_b)∂_c = Σ_d R_abc^d ∂_d.
struct CurvatureAtPoint {
  int dim = 0;
  int generators = 0;
  std::vector<Grassmann> r;
  Grassmann& operator()(int a, int b, int c, int d) {
    return r[static_cast<std::size_t>(((a * dim + b) * dim + c) * dim + d)];
  }
  const Grassmann& operator()(int a, int b, int c, int d) const {
    return r[static_cast<std::size_t>(((a * dim + b) * dim + c) * dim + d)];
  }
};

CurvatureAtPoint curvature_at(const GradedMetric& g, std::span<const double> p);

struct CurvatureSymmetryResiduals {
  double antisym_xy = 0.0;  // <R(X,Y)Z,W> + (−1)^{|X||Y|} <R(Y,X)Z,W>
  double antisym_zw = 0.0;  // <R(X,Y)Z,W> + (−1)^{|Z||W|} <R(X,Y)W,Z>
  double pair_swap = 0.0;
  double bianchi = 0.0;
  double max() const;
};

CurvatureSymmetryResiduals curvature_symmetry_residuals(const GradedMetric& g, std::span<const double> p);

/// Sectional curvature of the reduced metric on the plane of even axes i, j.
double sectional_curvature(const GradedMetric& g, std::span<const double> p, int i, int j);

/// Homogeneous vector field X = Σ X^c ∂_c; max over coordinate pairs of the
/// Killing-equation defect at p.
double killing_residual_at(const GradedMetric& g, const std::vector<Superfunction>& field, std::span<const double> p);

// Fixture metrics.
GradedMetric flat_metric(int n, int m);
/// y⁻²(dx² + dy²) on y > 0.
GradedMetric hyperbolic_metric();
/// dθ² + sin²θ dφ², sin² as an evaluable with exact derivatives.
GradedMetric sphere_metric();

}  // namespace supergeo
