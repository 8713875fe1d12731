#include "supergeo/polynomial.hpp"

#include <cmath>
#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 0) throw InvalidArgument("negative variable count");
}

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add(Exponents(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 0 || i >= n) throw InvalidArgument("polynomial variable out of range");
  Exponents e(n, 0);
  e[i] = 1;
  return monomial(n, e, 1.0);
}

Polynomial Polynomial::monomial(int n, Exponents exponents, double c) {
  if (static_cast<int>(exponents.size()) != n) {
    throw DimensionMismatch("exponent tuple has " + std::to_string(exponents.size()) +
                            " entries, expected " + std::to_string(n));
  }
  Polynomial p(n);
  p.add(exponents, c);
  return p;
}

bool Polynomial::is_constant() const {
  for (const auto& [e, c] : terms_) {
    for (int k : e) {
      if (k != 0) return false;
    }
  }
  return true;
}

void Polynomial::add(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw DimensionMismatch("point has " + std::to_string(x.size()) + " coordinates, expected " +
                            std::to_string(n_));
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && x[i] == 0.0) {
        throw DomainError("Laurent monomial evaluated where variable " + std::to_string(i) +
                          " vanishes");
      }
      term *= std::pow(x[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::partial(int i) const {
  if (i < 0 || i >= n_) throw InvalidArgument("partial derivative axis out of range");
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    d[i] -= 1;
    out.add(d, c * e[i]);
  }
  return out;
}

void Polynomial::require_same(const Polynomial& other) const {
  if (other.n_ != n_) throw DimensionMismatch("polynomial variable count mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(other);
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same(other);
  for (const auto& [e, c] : other.terms_) add(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  return out *= -1.0;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same(b);
  Polynomial out(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(a.n_);
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      out.add(e, ca * cb);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*x" << i;
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os;
}

}  // namespace supergeo
