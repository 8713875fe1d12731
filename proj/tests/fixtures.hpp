#pragma once

// Shared fixtures: random polynomial graded metrics and a plain classical
// Riemannian toolkit for m = 0 cross-checks.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "supergeo/chart.hpp"

namespace fixtures {

using supergeo::OddIndexSet;
using supergeo::Polynomial;
using supergeo::Superfunction;

inline Polynomial random_poly(int n, std::mt19937& rng, double scale, int max_degree = 2) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Polynomial p(n);
  p.add(std::vector<int>(static_cast<std::size_t>(n), 0), u(rng));
  for (int i = 0; i < n && max_degree >= 1; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add(e, u(rng));
    for (int j = i; j < n && max_degree >= 2; ++j) {
      auto f = e;
      f[static_cast<std::size_t>(j)] += 1;
      p.add(f, u(rng));
    }
  }
  return p;
}

inline Superfunction term(int n, int m, std::vector<int> odd, Polynomial p) {
  return Superfunction::from_coefficient(n, m, OddIndexSet::from_indices(std::span<const int>(odd), m), std::move(p));
}

/// Random polynomial graded metric on R^{n|m} (m even), close enough to the
/// standard one to stay non-degenerate on [-0.5, 0.5]^n.
inline supergeo::GradedMetric random_metric(int n, int m, std::mt19937& rng) {
  const int d = n + m;
  std::vector<std::vector<Superfunction>> e(static_cast<std::size_t>(d),
                                            std::vector<Superfunction>(static_cast<std::size_t>(d), Superfunction(n, m)));
  auto at = [&](int a, int b) -> Superfunction& { return e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
  // even pairs of odd generators, for the nilpotent even parts
  std::vector<std::vector<int>> even_sets;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) even_sets.push_back({a, b});
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Superfunction f = term(n, m, {}, random_poly(n, rng, 0.15));
      if (i == j) f += Superfunction::constant(n, m, 1.0);
      for (const auto& s : even_sets) f += term(n, m, s, random_poly(n, rng, 0.3));
      at(i, j) = f;
      at(j, i) = f;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) {
      Superfunction f(n, m);
      for (int b = 1; b <= m; ++b) f += term(n, m, {b}, random_poly(n, rng, 0.3));
      if (m >= 3) f += term(n, m, {1, 2, 3}, random_poly(n, rng, 0.3));
      at(i, n + a) = f;
      at(n + a, i) = f;
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      Superfunction f = term(n, m, {}, random_poly(n, rng, 0.1));
      if (b == a + 1 && a % 2 == 0) f += Superfunction::constant(n, m, 1.0);
      for (const auto& s : even_sets) f += term(n, m, s, random_poly(n, rng, 0.3));
      at(n + a, n + b) = f;
      at(n + b, n + a) = (-1.0) * f;
    }
  }
  return supergeo::GradedMetric(supergeo::Chart::standard(n, m), std::move(e));
}

inline std::vector<double> random_point(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& x : p) x = u(rng);
  return p;
}

// Classical surfaces with hand-written Levi-Civita data.
struct ClassicalSurface {
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> metric;
  // gamma(x)[k](i, j) = Γ^k_ij
  std::function<std::array<Eigen::Matrix2d, 2>(const Eigen::Vector2d&)> christoffel;
  double gauss_curvature = 0.0;
};

inline ClassicalSurface hyperbolic_surface() {
  ClassicalSurface s;
  s.metric = [](const Eigen::Vector2d& x) { return Eigen::Matrix2d(Eigen::Matrix2d::Identity() / (x(1) * x(1))); };
  s.christoffel = [](const Eigen::Vector2d& x) {
    const double y = x(1);
    std::array<Eigen::Matrix2d, 2> g;
    g[0] << 0, -1 / y, -1 / y, 0;
    g[1] << 1 / y, 0, 0, -1 / y;
    return g;
  };
  s.gauss_curvature = -1.0;
  return s;
}

inline ClassicalSurface sphere_surface() {
  ClassicalSurface s;
  s.metric = [](const Eigen::Vector2d& x) {
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    g(0, 0) = 1;
    g(1, 1) = std::sin(x(0)) * std::sin(x(0));
    return g;
  };
  s.christoffel = [](const Eigen::Vector2d& x) {
    const double th = x(0);
    std::array<Eigen::Matrix2d, 2> g;
    g[0] << 0, 0, 0, -std::sin(th) * std::cos(th);
    const double cot = std::cos(th) / std::sin(th);
    g[1] << 0, cot, cot, 0;
    return g;
  };
  s.gauss_curvature = 1.0;
  return s;
}

/// <R(e_a,e_b)e_c, e_d> = K (g_bc g_ad − g_ac g_bd) on a surface.
inline double classical_riemann(const ClassicalSurface& s, const Eigen::Vector2d& x, int a, int b, int c, int d) {
  const Eigen::Matrix2d g = s.metric(x);
  return s.gauss_curvature * (g(b, c) * g(a, d) - g(a, c) * g(b, d));
}

/// Plain RK4 on the classical geodesic equation.
inline Eigen::Vector4d classical_geodesic(const ClassicalSurface& s, Eigen::Vector2d x, Eigen::Vector2d v, double t_end,
                                          int steps) {
  auto f = [&](const Eigen::Vector4d& y) {
    const auto gam = s.christoffel(y.head<2>());
    Eigen::Vector4d out;
    out.head<2>() = y.tail<2>();
    for (int k = 0; k < 2; ++k) out(2 + k) = -y.tail<2>().dot(gam[k] * y.tail<2>());
    return out;
  };
  Eigen::Vector4d y;
  y << x, v;
  const double h = t_end / steps;
  for (int i = 0; i < steps; ++i) {
    const Eigen::Vector4d k1 = f(y), k2 = f(y + h / 2 * k1), k3 = f(y + h / 2 * k2), k4 = f(y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

}  // namespace fixtures
