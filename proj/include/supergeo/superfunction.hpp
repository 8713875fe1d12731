#pragma once

#include <map>
#include <span>

#include "supergeo/coefficient.hpp"
#include "supergeo/grassmann.hpp"

namespace supergeo {

enum class Parity { Even, Odd, Mixed };

inline int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }

/// Section of the structure sheaf on a chart R^{n|m}: a finite sum of
/// Grassmann monomials with coefficient functions of the even coordinates.
///
/// Coordinates are addressed by a single axis index: 0..n-1 are the even
/// coordinates x_i, n..n+m-1 the odd coordinates ξ_1..ξ_m.
class Superfunction {
 public:
  using Terms = std::map<OddIndexSet, CoefficientFunction>;

  Superfunction() = default;
  Superfunction(int n, int m);

  static Superfunction constant(int n, int m, double c);
  static Superfunction from_coefficient(int n, int m, OddIndexSet set, CoefficientFunction f);
  static Superfunction even_coordinate(int n, int m, int i);
  /// ξ_alpha, 1-based.
  static Superfunction odd_coordinate(int n, int m, int alpha);

  int even_dim() const { return n_; }
  int odd_dim() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Parity of the stored terms; the zero function counts as even.
  Parity parity() const;

  /// Adds f·ξ^set. Polynomial coefficients that cancel are removed.
  void add_term(OddIndexSet set, const CoefficientFunction& f);

  /// Component of Grassmann degree k.
  Superfunction degree_part(int k) const;

  Superfunction& operator+=(const Superfunction& other);
  Superfunction& operator*=(double s);
  friend Superfunction operator+(Superfunction a, const Superfunction& b) { return a += b; }
  friend Superfunction operator-(Superfunction a, const Superfunction& b) {
    return a += (-1.0) * b;
  }
  friend Superfunction operator*(double s, Superfunction a) { return a *= s; }

  void require_same(const Superfunction& other) const;

 private:
  int n_ = 0;
  int m_ = 0;
  Terms terms_;
};

/// Product with the Grassmann sign rule on the odd parts.
Superfunction sf_mul(const Superfunction& f, const Superfunction& g);

/// Partial derivative along a chart axis; odd axes act as left derivatives.
Superfunction sf_partial(const Superfunction& f, int axis);

/// Evaluates every coefficient at p; the body of the result is f̃(p).
GrassmannNumber<double> sf_eval(const Superfunction& f, std::span<const double> p);

inline Superfunction operator*(const Superfunction& f, const Superfunction& g) {
  return sf_mul(f, g);
}

}  // namespace supergeo
