#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <variant>

#include "supergeo/polynomial.hpp"

namespace supergeo {

/// Finite-difference steps used for opaque coefficients without analytic
/// derivatives. Second derivatives lose roughly half the digits of the first.
inline constexpr double kFirstDerivativeStep = 1e-5;
inline constexpr double kSecondDerivativeStep = 1e-4;

/// Opaque smooth function of the even coordinates.
///
/// `gradient` and `hessian` are optional; when absent and
/// `finite_differences` is set, central differences stand in for them.
struct Evaluable {
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<Eigen::VectorXd(std::span<const double>)>;
  using HessianFn = std::function<Eigen::MatrixXd(std::span<const double>)>;
  using DomainFn = std::function<bool(std::span<const double>)>;

  int n = 0;
  ValueFn value;
  GradientFn gradient;
  HessianFn hessian;
  DomainFn domain;
  bool finite_differences = true;
};

/// Coefficient of one Grassmann monomial in a superfunction: either an exact
/// Laurent polynomial or an opaque evaluable.
class CoefficientFunction {
 public:
  CoefficientFunction() = default;
  CoefficientFunction(Polynomial p);  // NOLINT: implicit by intent
  CoefficientFunction(Evaluable e);   // NOLINT

  static CoefficientFunction constant(int n, double c) { return Polynomial::constant(n, c); }

  int variables() const;
  bool is_polynomial() const { return std::holds_alternative<Polynomial>(repr_); }
  const Polynomial& polynomial() const { return std::get<Polynomial>(repr_); }
  const Evaluable& evaluable() const { return std::get<Evaluable>(repr_); }

  /// Only polynomials can be recognised as identically zero.
  bool is_zero() const { return is_polynomial() && polynomial().is_zero(); }

  double evaluate(std::span<const double> x) const;
  CoefficientFunction partial(int i) const;

  /// Lifts a polynomial into an evaluable with exact derivative callbacks.
  Evaluable as_evaluable() const;

  CoefficientFunction& operator*=(double s);
  friend CoefficientFunction operator+(const CoefficientFunction& a, const CoefficientFunction& b);
  friend CoefficientFunction operator*(const CoefficientFunction& a, const CoefficientFunction& b);
  friend CoefficientFunction operator*(double s, CoefficientFunction a) { return a *= s; }
  CoefficientFunction operator-() const;

 private:
  std::variant<Polynomial, Evaluable> repr_;
};

}  // namespace supergeo
