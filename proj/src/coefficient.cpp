#include "supergeo/coefficient.hpp"

#include <string>
#include <vector>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

using Point = std::vector<double>;

double call(const Evaluable& e, std::span<const double> x) {
  if (static_cast<int>(x.size()) != e.n) {
    throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, expected " +
                            std::to_string(e.n));
  }
  if (e.domain && !e.domain(x)) throw DomainError("coefficient evaluated outside its domain");
  return e.value(x);
}

double central_first(const Evaluable::ValueFn& f, std::span<const double> x, int i, double h) {
  Point p(x.begin(), x.end());
  p[i] = x[i] + h;
  const double fp = f(p);
  p[i] = x[i] - h;
  const double fm = f(p);
  return (fp - fm) / (2.0 * h);
}

double central_mixed(const Evaluable::ValueFn& f, std::span<const double> x, int i, int j,
                     double h) {
  Point p(x.begin(), x.end());
  auto at = [&](double si, double sj) {
    p.assign(x.begin(), x.end());
    p[i] += si * h;
    p[j] += sj * h;
    return f(p);
  };
  return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
}

bool has_gradient(const Evaluable& e) { return static_cast<bool>(e.gradient); }

Evaluable::DomainFn both_domains(const Evaluable& a, const Evaluable& b) {
  if (!a.domain) return b.domain;
  if (!b.domain) return a.domain;
  return [da = a.domain, db = b.domain](std::span<const double> x) { return da(x) && db(x); };
}

}  // namespace

CoefficientFunction::CoefficientFunction(Polynomial p) : repr_(std::move(p)) {}
CoefficientFunction::CoefficientFunction(Evaluable e) : repr_(std::move(e)) {
  if (!evaluable().value) throw InvalidArgument("evaluable coefficient needs a value function");
}

int CoefficientFunction::variables() const {
  return is_polynomial() ? polynomial().variables() : evaluable().n;
}

double CoefficientFunction::evaluate(std::span<const double> x) const {
  if (is_polynomial()) return polynomial().evaluate(x);
  return call(evaluable(), x);
}

Evaluable CoefficientFunction::as_evaluable() const {
  if (!is_polynomial()) return evaluable();
  const Polynomial& p = polynomial();
  const int n = p.variables();
  std::vector<Polynomial> grad;
  std::vector<std::vector<Polynomial>> hess(n);
  for (int i = 0; i < n; ++i) grad.push_back(p.partial(i));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hess[i].push_back(grad[i].partial(j));
  }
  Evaluable e;
  e.n = n;
  e.value = [p](std::span<const double> x) { return p.evaluate(x); };
  e.gradient = [grad, n](std::span<const double> x) {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = grad[i].evaluate(x);
    return g;
  };
  e.hessian = [hess, n](std::span<const double> x) {
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) h(i, j) = hess[i][j].evaluate(x);
    }
    return h;
  };
  return e;
}

CoefficientFunction CoefficientFunction::partial(int i) const {
  if (i < 0 || i >= variables()) throw InvalidArgument("partial derivative axis out of range");
  if (is_polynomial()) return polynomial().partial(i);

  const Evaluable& f = evaluable();
  if (!has_gradient(f) && !f.finite_differences) {
    throw DerivativeUnavailable("opaque coefficient without derivative access");
  }
  Evaluable d;
  d.n = f.n;
  d.domain = f.domain;
  d.finite_differences = f.finite_differences;
  if (f.gradient) {
    d.value = [g = f.gradient, i](std::span<const double> x) { return g(x)[i]; };
  } else {
    d.value = [v = f.value, i](std::span<const double> x) {
      return central_first(v, x, i, kFirstDerivativeStep);
    };
  }
  if (f.hessian) {
    d.gradient = [h = f.hessian, i](std::span<const double> x) -> Eigen::VectorXd {
      return h(x).row(i).transpose();
    };
  } else if (!f.gradient && f.finite_differences) {
    d.gradient = [v = f.value, i, n = f.n](std::span<const double> x) {
      Eigen::VectorXd g(n);
      for (int j = 0; j < n; ++j) g[j] = central_mixed(v, x, i, j, kSecondDerivativeStep);
      return g;
    };
  }
  return d;
}

CoefficientFunction& CoefficientFunction::operator*=(double s) {
  if (is_polynomial()) {
    std::get<Polynomial>(repr_) *= s;
    return *this;
  }
  Evaluable& e = std::get<Evaluable>(repr_);
  e.value = [v = e.value, s](std::span<const double> x) { return s * v(x); };
  if (e.gradient) {
    e.gradient = [g = e.gradient, s](std::span<const double> x) -> Eigen::VectorXd {
      return s * g(x);
    };
  }
  if (e.hessian) {
    e.hessian = [h = e.hessian, s](std::span<const double> x) -> Eigen::MatrixXd {
      return s * h(x);
    };
  }
  return *this;
}

CoefficientFunction CoefficientFunction::operator-() const {
  CoefficientFunction out = *this;
  return out *= -1.0;
}

CoefficientFunction operator+(const CoefficientFunction& a, const CoefficientFunction& b) {
  if (a.variables() != b.variables()) throw DimensionMismatch("coefficient variable count mismatch");
  if (a.is_polynomial() && b.is_polynomial()) return a.polynomial() + b.polynomial();
  const Evaluable ea = a.as_evaluable();
  const Evaluable eb = b.as_evaluable();
  Evaluable s;
  s.n = ea.n;
  s.domain = both_domains(ea, eb);
  s.finite_differences = ea.finite_differences && eb.finite_differences;
  s.value = [va = ea.value, vb = eb.value](std::span<const double> x) { return va(x) + vb(x); };
  if (ea.gradient && eb.gradient) {
    s.gradient = [ga = ea.gradient, gb = eb.gradient](std::span<const double> x) -> Eigen::VectorXd {
      return ga(x) + gb(x);
    };
  }
  if (ea.hessian && eb.hessian) {
    s.hessian = [ha = ea.hessian, hb = eb.hessian](std::span<const double> x) -> Eigen::MatrixXd {
      return ha(x) + hb(x);
    };
  }
  return s;
}

CoefficientFunction operator*(const CoefficientFunction& a, const CoefficientFunction& b) {
  if (a.variables() != b.variables()) throw DimensionMismatch("coefficient variable count mismatch");
  if (a.is_polynomial() && b.is_polynomial()) return a.polynomial() * b.polynomial();
  const Evaluable ea = a.as_evaluable();
  const Evaluable eb = b.as_evaluable();
  Evaluable p;
  p.n = ea.n;
  p.domain = both_domains(ea, eb);
  p.finite_differences = ea.finite_differences && eb.finite_differences;
  p.value = [va = ea.value, vb = eb.value](std::span<const double> x) { return va(x) * vb(x); };
  if (ea.gradient && eb.gradient) {
    p.gradient = [ea, eb](std::span<const double> x) -> Eigen::VectorXd {
      return ea.gradient(x) * eb.value(x) + ea.value(x) * eb.gradient(x);
    };
  }
  if (ea.gradient && eb.gradient && ea.hessian && eb.hessian) {
    p.hessian = [ea, eb](std::span<const double> x) -> Eigen::MatrixXd {
      const Eigen::VectorXd ga = ea.gradient(x);
      const Eigen::VectorXd gb = eb.gradient(x);
      return ea.hessian(x) * eb.value(x) + ga * gb.transpose() + gb * ga.transpose() +
             ea.value(x) * eb.hessian(x);
    };
  }
  return p;
}

}  // namespace supergeo
