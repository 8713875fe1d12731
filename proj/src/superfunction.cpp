#include "supergeo/superfunction.hpp"

#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {

Superfunction::Superfunction(int n, int m) : n_(n), m_(m) {
  if (n < 0) throw InvalidArgument("negative even dimension");
  detail::check_generator_count(m);
}

Superfunction Superfunction::constant(int n, int m, double c) {
  Superfunction f(n, m);
  f.add_term(OddIndexSet{}, CoefficientFunction::constant(n, c));
  return f;
}

Superfunction Superfunction::from_coefficient(int n, int m, OddIndexSet set, CoefficientFunction c) {
  Superfunction f(n, m);
  f.add_term(set, c);
  return f;
}

Superfunction Superfunction::even_coordinate(int n, int m, int i) {
  return from_coefficient(n, m, OddIndexSet{}, Polynomial::variable(n, i));
}

Superfunction Superfunction::odd_coordinate(int n, int m, int alpha) {
  const int idx[] = {alpha};
  return from_coefficient(n, m, OddIndexSet::from_indices(idx, m), Polynomial::constant(n, 1.0));
}

Parity Superfunction::parity() const {
  bool even = false;
  bool odd = false;
  for (const auto& [set, c] : terms_) (set.parity() ? odd : even) = true;
  if (even && odd) return Parity::Mixed;
  return odd ? Parity::Odd : Parity::Even;
}

void Superfunction::add_term(OddIndexSet set, const CoefficientFunction& f) {
  if (set.mask() >> m_) throw InvalidArgument("monomial uses odd generators beyond m");
  if (f.variables() != n_) {
    throw DimensionMismatch("coefficient has " + std::to_string(f.variables()) +
                            " variables, chart has " + std::to_string(n_));
  }
  if (f.is_zero()) return;
  auto it = terms_.find(set);
  if (it == terms_.end()) {
    terms_.emplace(set, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.is_zero()) terms_.erase(it);
}

Superfunction Superfunction::degree_part(int k) const {
  Superfunction out(n_, m_);
  for (const auto& [set, c] : terms_) {
    if (set.size() == k) out.terms_.emplace(set, c);
  }
  return out;
}

void Superfunction::require_same(const Superfunction& other) const {
  if (other.n_ != n_ || other.m_ != m_) {
    throw DimensionMismatch("superfunction chart signature mismatch: (" + std::to_string(n_) + "|" +
                            std::to_string(m_) + ") vs (" + std::to_string(other.n_) + "|" +
                            std::to_string(other.m_) + ")");
  }
}

Superfunction& Superfunction::operator+=(const Superfunction& other) {
  require_same(other);
  for (const auto& [set, c] : other.terms_) add_term(set, c);
  return *this;
}

Superfunction& Superfunction::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [set, c] : terms_) c *= s;
  return *this;
}

Superfunction sf_mul(const Superfunction& f, const Superfunction& g) {
  f.require_same(g);
  Superfunction out(f.even_dim(), f.odd_dim());
  for (const auto& [sf, cf] : f.terms()) {
    for (const auto& [sg, cg] : g.terms()) {
      if (sf.mask() & sg.mask()) continue;
      const int sign = detail::merge_sign(sf.mask(), sg.mask());
      out.add_term(OddIndexSet::from_mask(sf.mask() | sg.mask()),
                   static_cast<double>(sign) * (cf * cg));
    }
  }
  return out;
}

Superfunction sf_partial(const Superfunction& f, int axis) {
  const int n = f.even_dim();
  const int m = f.odd_dim();
  if (axis < 0 || axis >= n + m) {
    throw InvalidArgument("axis " + std::to_string(axis) + " out of range for chart (" +
                          std::to_string(n) + "|" + std::to_string(m) + ")");
  }
  Superfunction out(n, m);
  if (axis < n) {
    for (const auto& [set, c] : f.terms()) out.add_term(set, c.partial(axis));
    return out;
  }
  const int alpha = axis - n + 1;
  const Mask bit = Mask{1} << (alpha - 1);
  for (const auto& [set, c] : f.terms()) {
    if (!(set.mask() & bit)) continue;
    const double sign = detail::left_removal_sign(set.mask(), alpha);
    out.add_term(OddIndexSet::from_mask(set.mask() & ~bit), sign * c);
  }
  return out;
}

GrassmannNumber<double> sf_eval(const Superfunction& f, std::span<const double> p) {
  if (static_cast<int>(p.size()) != f.even_dim()) {
    throw DimensionMismatch("evaluation point has " + std::to_string(p.size()) +
                            " coordinates, chart has " + std::to_string(f.even_dim()));
  }
  GrassmannNumber<double> out(f.odd_dim());
  for (const auto& [set, c] : f.terms()) out.add(set.mask(), c.evaluate(p));
  return out;
}

}  // namespace supergeo
