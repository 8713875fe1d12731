#pragma once

// Finite Grassmann algebra Λ[ξ1..ξm] over a real scalar type.
//
// Monomials are stored as bitmasks (bit α-1 set <=> ξ_α present), which keeps
// index sets sorted ascending by construction. Every sign is normalised to that
// ascending order.

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "supergeo/errors.hpp"

namespace supergeo {

using Mask = std::uint32_t;
inline constexpr int kMaxOddGenerators = 24;

/// Strictly increasing set of odd generator indices, 1-based.
class OddIndexSet {
 public:
  constexpr OddIndexSet() = default;

  static constexpr OddIndexSet from_mask(Mask mask) {
    OddIndexSet s;
    s.mask_ = mask;
    return s;
  }

  /// Validates strict increase and the bound `m`.
  static OddIndexSet from_indices(std::span<const int> indices, int m) {
    Mask mask = 0;
    int previous = 0;
    for (int alpha : indices) {
      if (alpha <= previous) {
        throw InvalidArgument("odd index set must be strictly increasing");
      }
      if (alpha > m) {
        throw InvalidArgument("odd index " + std::to_string(alpha) + " exceeds generator count " +
                              std::to_string(m));
      }
      mask |= Mask{1} << (alpha - 1);
      previous = alpha;
    }
    return from_mask(mask);
  }
  static OddIndexSet from_indices(std::initializer_list<int> indices, int m) {
    return from_indices(std::span<const int>(indices.begin(), indices.size()), m);
  }

  constexpr Mask mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr int parity() const { return size() & 1; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int alpha) const { return (mask_ >> (alpha - 1)) & 1U; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (Mask rest = mask_; rest != 0; rest &= rest - 1) {
      out.push_back(std::countr_zero(rest) + 1);
    }
    return out;
  }

  constexpr auto operator<=>(const OddIndexSet&) const = default;

 private:
  Mask mask_ = 0;
};

namespace detail {

/// Sign of ξ^a ξ^b after reordering into ascending order; requires a & b == 0.
constexpr int merge_sign(Mask a, Mask b) {
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const Mask above = (j + 1 >= 32) ? Mask{0} : (~Mask{0} << (j + 1));
    swaps += std::popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

/// Sign of removing ξ_α (bit alpha-1) from the front: (-1)^(number of smaller indices).
constexpr int left_removal_sign(Mask mask, int alpha) {
  const Mask below = (Mask{1} << (alpha - 1)) - 1;
  return (std::popcount(mask & below) & 1) ? -1 : 1;
}

inline void check_generator_count(int m) {
  if (m < 0 || m > kMaxOddGenerators) {
    throw InvalidArgument("odd generator count out of range: " + std::to_string(m));
  }
}

}  // namespace detail

/// Element of Λ_R[ξ1..ξm]. Zero coefficients are never stored.
template <typename Scalar = double>
class GrassmannNumber {
 public:
  using Terms = std::map<Mask, Scalar>;

  GrassmannNumber() = default;
  explicit GrassmannNumber(int m) : m_(m) { detail::check_generator_count(m); }

  static GrassmannNumber constant(int m, Scalar c) {
    GrassmannNumber out(m);
    out.add(0, c);
    return out;
  }

  /// ξ_alpha, 1-based.
  static GrassmannNumber generator(int m, int alpha) {
    if (alpha < 1 || alpha > m) throw InvalidArgument("generator index out of range");
    GrassmannNumber out(m);
    out.add(Mask{1} << (alpha - 1), Scalar(1));
    return out;
  }

  static GrassmannNumber monomial(int m, OddIndexSet set, Scalar c) {
    GrassmannNumber out(m);
    if (set.mask() >> m) throw InvalidArgument("monomial uses generators beyond m");
    out.add(set.mask(), c);
    return out;
  }

  int generators() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar body() const { return coefficient(OddIndexSet{}); }

  Scalar coefficient(OddIndexSet set) const {
    auto it = terms_.find(set.mask());
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// 0 or 1 for homogeneous elements (zero counts as even), nullopt if mixed.
  std::optional<int> parity() const {
    bool has_even = false;
    bool has_odd = false;
    for (const auto& [mask, c] : terms_) {
      (std::popcount(mask) & 1 ? has_odd : has_even) = true;
    }
    if (has_even && has_odd) return std::nullopt;
    return has_odd ? 1 : 0;
  }

  /// Component of Grassmann degree `k`.
  GrassmannNumber degree_part(int k) const {
    GrassmannNumber out(m_);
    for (const auto& [mask, c] : terms_) {
      if (std::popcount(mask) == k) out.terms_.emplace(mask, c);
    }
    return out;
  }

  GrassmannNumber parity_part(int p) const {
    GrassmannNumber out(m_);
    for (const auto& [mask, c] : terms_) {
      if ((std::popcount(mask) & 1) == p) out.terms_.emplace(mask, c);
    }
    return out;
  }

  GrassmannNumber nilpotent_part() const {
    GrassmannNumber out = *this;
    out.terms_.erase(0);
    return out;
  }

  Scalar max_abs() const {
    Scalar best(0);
    for (const auto& [mask, c] : terms_) {
      using std::abs;
      if (abs(c) > best) best = abs(c);
    }
    return best;
  }

  /// Adds c·ξ^mask, dropping the entry if it cancels exactly.
  void add(Mask mask, Scalar c) {
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  GrassmannNumber& operator+=(const GrassmannNumber& other) {
    require_same(other);
    for (const auto& [mask, c] : other.terms_) add(mask, c);
    return *this;
  }
  GrassmannNumber& operator-=(const GrassmannNumber& other) {
    require_same(other);
    for (const auto& [mask, c] : other.terms_) add(mask, -c);
    return *this;
  }
  GrassmannNumber& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [mask, c] : terms_) c *= s;
    return *this;
  }
  GrassmannNumber operator-() const {
    GrassmannNumber out = *this;
    for (auto& [mask, c] : out.terms_) c = -c;
    return out;
  }

  friend GrassmannNumber operator+(GrassmannNumber a, const GrassmannNumber& b) { return a += b; }
  friend GrassmannNumber operator-(GrassmannNumber a, const GrassmannNumber& b) { return a -= b; }
  friend GrassmannNumber operator*(GrassmannNumber a, Scalar s) { return a *= s; }
  friend GrassmannNumber operator*(Scalar s, GrassmannNumber a) { return a *= s; }
  friend GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) {
    return gmul(a, b);
  }
  friend bool operator==(const GrassmannNumber& a, const GrassmannNumber& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }

  void require_same(const GrassmannNumber& other) const {
    if (other.m_ != m_) {
      throw DimensionMismatch("Grassmann generator count mismatch: " + std::to_string(m_) +
                              " vs " + std::to_string(other.m_));
    }
  }

 private:
  int m_ = 0;
  Terms terms_;
};

/// Product in Λ[ξ]; graded-commutative with the ascending-order sign rule.
template <typename Scalar>
GrassmannNumber<Scalar> gmul(const GrassmannNumber<Scalar>& a, const GrassmannNumber<Scalar>& b) {
  a.require_same(b);
  GrassmannNumber<Scalar> out(a.generators());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      out.add(ma | mb, detail::merge_sign(ma, mb) * ca * cb);
    }
  }
  return out;
}

/// Inverse via the terminating Neumann series b⁻¹ Σ_{k≤m} (−b⁻¹ν)^k.
template <typename Scalar>
GrassmannNumber<Scalar> ginv(const GrassmannNumber<Scalar>& a) {
  const Scalar b = a.body();
  if (b == Scalar(0)) throw NotInvertible("Grassmann number with zero body is not invertible");
  const int m = a.generators();
  const GrassmannNumber<Scalar> step = a.nilpotent_part() * (-Scalar(1) / b);
  GrassmannNumber<Scalar> power = GrassmannNumber<Scalar>::constant(m, Scalar(1));
  GrassmannNumber<Scalar> sum = power;
  for (int k = 1; k <= m && !power.is_zero(); ++k) {
    power = gmul(power, step);
    sum += power;
  }
  return sum * (Scalar(1) / b);
}

/// Left derivative ∂/∂ξ_alpha (alpha 1-based).
template <typename Scalar>
GrassmannNumber<Scalar> left_derivative(const GrassmannNumber<Scalar>& a, int alpha) {
  if (alpha < 1 || alpha > a.generators()) throw InvalidArgument("odd axis out of range");
  const Mask bit = Mask{1} << (alpha - 1);
  GrassmannNumber<Scalar> out(a.generators());
  for (const auto& [mask, c] : a.terms()) {
    if (!(mask & bit)) continue;
    out.add(mask & ~bit, detail::left_removal_sign(mask, alpha) * c);
  }
  return out;
}

/// Human-readable form, e.g. "2 + 0.5 ξ1ξ2".
template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const GrassmannNumber<Scalar>& a) {
  if (a.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [mask, c] : a.terms()) {
    if (!first) os << (c < Scalar(0) ? " - " : " + ");
    else if (c < Scalar(0)) os << "-";
    first = false;
    using std::abs;
    const Scalar mag = abs(c);
    if (mask == 0 || mag != Scalar(1)) os << mag;
    if (mask != 0 && mag != Scalar(1)) os << " ";
    for (int alpha : OddIndexSet::from_mask(mask).indices()) os << "ξ" << alpha;
  }
  return os;
}

}  // namespace supergeo
