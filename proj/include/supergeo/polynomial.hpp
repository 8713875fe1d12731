#pragma once

#include <map>
#include <ostream>
#include <span>
#include <vector>

namespace supergeo {

/// Laurent polynomial with real coefficients in n even variables.
///
/// Exponents may be negative; such monomials are undefined where their
/// variable vanishes and evaluation there raises DomainError. Partial
/// derivatives are exact.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, double>;

  Polynomial() = default;
  explicit Polynomial(int n);

  static Polynomial constant(int n, double c);
  static Polynomial variable(int n, int i);
  static Polynomial monomial(int n, Exponents exponents, double c);

  int variables() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Adds c·x^e; exact cancellation removes the entry.
  void add(const Exponents& e, double c);

  double evaluate(std::span<const double> x) const;
  Polynomial partial(int i) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void require_same(const Polynomial& other) const;

  int n_ = 0;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace supergeo
