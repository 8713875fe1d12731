#include "supergeo/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

int koszul_sign(int a, int b) { return (a & b & 1) ? -1 : 1; }

std::size_t idx3(int d, int a, int b, int c) { return static_cast<std::size_t>((a * d + b) * d + c); }

std::string point_text(std::span<const double> p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

void require_point(const GradedMetric& g, std::span<const double> p) {
  if (static_cast<int>(p.size()) != g.chart().n) {
    throw DimensionMismatch("point has " + std::to_string(p.size()) + " coordinates, chart has " +
                            std::to_string(g.chart().n));
  }
  if (!g.chart().contains(p)) throw DomainError("point " + point_text(p) + " lies outside the chart domain");
}

// Lowered symbols L_{ab,c} = <∇_a ∂_b, ∂_c> from the graded Koszul formula.
// `deriv(c, a, b)` supplies ∂_c g_ab at the point.
template <typename Deriv>
std::vector<Grassmann> lowered_symbols(const GradedMetric& g, int m, Deriv&& deriv) {
  const int d = g.dim();
  std::vector<Grassmann> low(static_cast<std::size_t>(d * d * d), Grassmann(m));
  for (int a = 0; a < d; ++a) {
    const int pa = g.parity(a);
    for (int b = 0; b < d; ++b) {
      const int pb = g.parity(b);
      for (int c = 0; c < d; ++c) {
        const int pc = g.parity(c);
        Grassmann v = deriv(a, b, c);
        v += static_cast<double>(koszul_sign(pa, pb)) * deriv(b, a, c);
        v -= static_cast<double>(koszul_sign(pc, pa + pb)) * deriv(c, a, b);
        low[idx3(d, a, b, c)] = 0.5 * v;
      }
    }
  }
  return low;
}

// Γ_ab^· = L_ab,· · H
std::vector<Grassmann> raise(const std::vector<Grassmann>& low, const GrassmannMatrix& h) {
  const int d = h.rows();
  const int m = h.generators();
  std::vector<Grassmann> out(low.size(), Grassmann(m));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int e = 0; e < d; ++e) {
        Grassmann s(m);
        for (int c = 0; c < d; ++c) {
          const Grassmann& l = low[idx3(d, a, b, c)];
          if (l.is_zero() || h(c, e).is_zero()) continue;
          s += gmul(l, h(c, e));
        }
        out[idx3(d, a, b, e)] = std::move(s);
      }
    }
  }
  return out;
}

// ∂_c g_ab at p, with the left derivative on odd axes.
GrassmannMatrix first_derivative(const GradedMetric& g, int c, std::span<const double> p) {
  const int d = g.dim();
  GrassmannMatrix out(d, d, g.chart().m);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out(a, b) = sf_eval(g.d1(c, a, b), p);
  }
  return out;
}

}  // namespace

Chart Chart::standard(int n, int m) {
  if (n < 0 || m < 0) throw InvalidArgument("chart dimensions must be non-negative");
  detail::check_generator_count(m);
  Chart c;
  c.n = n;
  c.m = m;
  for (int i = 1; i <= n; ++i) c.even_names.push_back("x" + std::to_string(i));
  for (int a = 1; a <= m; ++a) c.odd_names.push_back("xi" + std::to_string(a));
  return c;
}

std::string Chart::axis_name(int axis) const {
  if (axis < n) return axis < static_cast<int>(even_names.size()) ? even_names[axis] : "x" + std::to_string(axis + 1);
  const int alpha = axis - n;
  return alpha < static_cast<int>(odd_names.size()) ? odd_names[alpha] : "xi" + std::to_string(alpha + 1);
}

GrassmannMatrix::GrassmannMatrix(int rows, int cols, int m)
    : rows_(rows), cols_(cols), m_(m), data_(static_cast<std::size_t>(rows * cols), Grassmann(m)) {}

Eigen::MatrixXd GrassmannMatrix::body() const {
  Eigen::MatrixXd out(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).body();
  }
  return out;
}

double GrassmannMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& x : data_) best = std::max(best, x.max_abs());
  return best;
}

GrassmannMatrix GrassmannMatrix::identity(int d, int m) { return from_real(Eigen::MatrixXd::Identity(d, d), m); }

GrassmannMatrix GrassmannMatrix::from_real(const Eigen::MatrixXd& a, int m) {
  GrassmannMatrix out(static_cast<int>(a.rows()), static_cast<int>(a.cols()), m);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = Grassmann::constant(m, a(i, j));
  }
  return out;
}

GrassmannMatrix gm_mul(const GrassmannMatrix& a, const GrassmannMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("Grassmann matrix product: inner dimensions differ");
  if (a.generators() != b.generators()) throw DimensionMismatch("Grassmann matrix product: generator counts differ");
  GrassmannMatrix out(a.rows(), b.cols(), a.generators());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += gmul(a(i, k), b(k, j));
      }
    }
  }
  return out;
}

GrassmannMatrix operator+(const GrassmannMatrix& a, const GrassmannMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("Grassmann matrix sum: shapes differ");
  GrassmannMatrix out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

GrassmannMatrix operator-(const GrassmannMatrix& a, const GrassmannMatrix& b) { return a + (-1.0) * b; }

GrassmannMatrix operator*(double s, const GrassmannMatrix& a) {
  GrassmannMatrix out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) *= s;
  }
  return out;
}

GrassmannMatrix graded_inverse(const GrassmannMatrix& g, std::span<const int> parities) {
  const int d = g.rows();
  const int m = g.generators();
  if (g.cols() != d || static_cast<int>(parities.size()) != d) throw DimensionMismatch("graded_inverse: shape mismatch");
  const Eigen::MatrixXd body = g.body();
  Eigen::MatrixXd body_inv = Eigen::MatrixXd::Zero(d, d);
  for (int par = 0; par < 2; ++par) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i) {
      if (parities[static_cast<std::size_t>(i)] == par) idx.push_back(i);
    }
    const int k = static_cast<int>(idx.size());
    if (k == 0) continue;
    Eigen::MatrixXd blk(k, k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) blk(r, c) = body(idx[r], idx[c]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(blk);
    const auto& sv = svd.singularValues();
    if (sv(k - 1) <= 1e-13 * std::max(1.0, sv(0))) {
      throw NotInvertible(std::string(par ? "odd" : "even") + " block of the reduced metric is singular");
    }
    const Eigen::MatrixXd inv = blk.partialPivLu().inverse();
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) body_inv(idx[r], idx[c]) = inv(r, c);
    }
  }
  // G = B(1 + K), K = B⁻¹ν nilpotent
  GrassmannMatrix nil = g;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) nil(i, j) = nil(i, j).nilpotent_part();
  }
  const GrassmannMatrix binv = GrassmannMatrix::from_real(body_inv, m);
  const GrassmannMatrix step = (-1.0) * gm_mul(binv, nil);
  GrassmannMatrix power = GrassmannMatrix::identity(d, m);
  GrassmannMatrix sum = power;
  for (int k = 1; k <= m; ++k) {
    power = gm_mul(power, step);
    if (power.max_abs() == 0.0) break;
    sum = sum + power;
  }
  return gm_mul(sum, binv);
}

GradedMetric::GradedMetric(Chart chart, std::vector<std::vector<Superfunction>> entries)
    : chart_(std::move(chart)), entries_(std::move(entries)) {
  const int d = chart_.dim();
  if (static_cast<int>(entries_.size()) != d) throw DimensionMismatch("metric needs one row per coordinate");
  for (auto& row : entries_) {
    if (static_cast<int>(row.size()) != d) throw DimensionMismatch("metric rows must have one entry per coordinate");
    for (auto& f : row) {
      if (f.even_dim() == 0 && f.odd_dim() == 0 && f.is_zero()) f = Superfunction(chart_.n, chart_.m);
      if (f.even_dim() != chart_.n || f.odd_dim() != chart_.m) {
        throw DimensionMismatch("metric entry lives on a different chart signature");
      }
    }
  }
  auto d1 = std::make_shared<std::vector<Superfunction>>();
  d1->reserve(static_cast<std::size_t>(d * d * d));
  for (int c = 0; c < d; ++c) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) d1->push_back(sf_partial(entry(a, b), c));
    }
  }
  auto d2 = std::make_shared<std::vector<Superfunction>>();
  d2->reserve(static_cast<std::size_t>(chart_.n * d * d * d));
  for (int i = 0; i < chart_.n; ++i) {
    for (std::size_t k = 0; k < d1->size(); ++k) d2->push_back(sf_partial((*d1)[k], i));
  }
  d1_ = std::move(d1);
  d2_ = std::move(d2);
}

std::vector<int> GradedMetric::parities() const {
  std::vector<int> out(static_cast<std::size_t>(dim()));
  for (int a = 0; a < dim(); ++a) out[static_cast<std::size_t>(a)] = parity(a);
  return out;
}

const Superfunction& GradedMetric::d1(int c, int a, int b) const { return (*d1_)[idx3(dim(), c, a, b)]; }

const Superfunction& GradedMetric::d2(int i, int c, int a, int b) const {
  if (i < 0 || i >= chart_.n) throw InvalidArgument("second derivative axis must be even");
  const int d = dim();
  return (*d2_)[static_cast<std::size_t>(i) * static_cast<std::size_t>(d * d * d) + idx3(d, c, a, b)];
}

GrassmannMatrix evaluate_metric(const GradedMetric& g, std::span<const double> p) {
  require_point(g, p);
  const int d = g.dim();
  GrassmannMatrix out(d, d, g.chart().m);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out(a, b) = sf_eval(g.entry(a, b), p);
  }
  return out;
}

MetricReport validate_metric(const GradedMetric& g, const std::vector<std::vector<double>>& points, double tol) {
  MetricReport r;
  const int d = g.dim();
  const int n = g.chart().n;
  r.min_even_singular = std::numeric_limits<double>::infinity();
  r.min_odd_singular = std::numeric_limits<double>::infinity();
  auto fail = [&](MetricViolation v) {
    r.ok = false;
    r.violations.push_back(std::move(v));
  };
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const int want = (g.parity(a) + g.parity(b)) & 1;
      for (const auto& [set, c] : g.entry(a, b).terms()) {
        if (set.parity() != want) {
          fail({"parity", a, b, {}, "g(" + g.chart().axis_name(a) + "," + g.chart().axis_name(b) + ") has a term of parity " +
                                       std::to_string(set.parity()) + ", expected " + std::to_string(want)});
          break;
        }
      }
    }
  }
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      const Superfunction diff =
          g.entry(a, b) - static_cast<double>(koszul_sign(g.parity(a), g.parity(b))) * g.entry(b, a);
      bool symbolic = true;
      for (const auto& [set, c] : diff.terms()) symbolic = symbolic && c.is_polynomial();
      double worst = 0.0;
      if (symbolic) {
        for (const auto& [set, c] : diff.terms()) {
          for (const auto& [e, v] : c.polynomial().terms()) worst = std::max(worst, std::abs(v));
        }
      } else {
        for (const auto& p : points) {
          if (g.chart().contains(p)) worst = std::max(worst, sf_eval(diff, p).max_abs());
        }
      }
      r.symmetry_residual = std::max(r.symmetry_residual, worst);
      if (worst > tol) {
        fail({"symmetry", a, b, {}, "g(" + g.chart().axis_name(a) + "," + g.chart().axis_name(b) +
                                        ") violates graded symmetry by " + std::to_string(worst)});
      }
    }
  }
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != n || !g.chart().contains(p)) {
      fail({"domain", -1, -1, p, "sample point " + point_text(p) + " is not in the chart"});
      continue;
    }
    const Eigen::MatrixXd body = evaluate_metric(g, p).body();
    const int m = g.chart().m;
    if (n > 0) {
      const double s = Eigen::JacobiSVD<Eigen::MatrixXd>(body.topLeftCorner(n, n)).singularValues().minCoeff();
      r.min_even_singular = std::min(r.min_even_singular, s);
      if (s <= tol) fail({"degenerate", -1, -1, p, "even block singular at " + point_text(p)});
    }
    if (m > 0) {
      const double s = Eigen::JacobiSVD<Eigen::MatrixXd>(body.bottomRightCorner(m, m)).singularValues().minCoeff();
      r.min_odd_singular = std::min(r.min_odd_singular, s);
      if (s <= tol) fail({"degenerate", -1, -1, p, "odd block singular at " + point_text(p)});
    }
  }
  if (n == 0 || points.empty()) r.min_even_singular = 0.0;
  if (g.chart().m == 0 || points.empty()) r.min_odd_singular = 0.0;
  return r;
}

ChristoffelAtPoint christoffel_at(const GradedMetric& g, std::span<const double> p) {
  const GrassmannMatrix gm = evaluate_metric(g, p);
  const int d = g.dim();
  const int m = g.chart().m;
  std::vector<GrassmannMatrix> dg;
  dg.reserve(static_cast<std::size_t>(d));
  for (int c = 0; c < d; ++c) dg.push_back(first_derivative(g, c, p));
  const auto parities = g.parities();
  const GrassmannMatrix h = graded_inverse(gm, parities);
  const auto low = lowered_symbols(g, m, [&](int c, int a, int b) -> const Grassmann& { return dg[static_cast<std::size_t>(c)](a, b); });
  ChristoffelAtPoint out;
  out.point.assign(p.begin(), p.end());
  out.dim = d;
  out.generators = m;
  out.gamma = raise(low, h);
  return out;
}

ReducedChristoffel reduced_christoffel_at(const GradedMetric& g, std::span<const double> p) {
  require_point(g, p);
  const int d = g.dim();
  Eigen::MatrixXd body(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) body(a, b) = sf_eval(g.entry(a, b), p).body();
  }
  // body blocks are separate; the mixed block has no body
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(d, d);
  const int n = g.chart().n;
  const int m = g.chart().m;
  if (n > 0) inv.topLeftCorner(n, n) = body.topLeftCorner(n, n).partialPivLu().inverse();
  if (m > 0) inv.bottomRightCorner(m, m) = body.bottomRightCorner(m, m).partialPivLu().inverse();
  if (!inv.allFinite()) throw NotInvertible("reduced metric is singular at " + point_text(p));
  std::vector<double> dbody(static_cast<std::size_t>(d * d * d));
  for (int c = 0; c < d; ++c) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) dbody[idx3(d, c, a, b)] = sf_eval(g.d1(c, a, b), p).body();
    }
  }
  ReducedChristoffel out;
  out.dim = d;
  out.gamma.assign(static_cast<std::size_t>(d * d * d), 0.0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Eigen::RowVectorXd low(d);
      for (int c = 0; c < d; ++c) {
        const int pa = g.parity(a), pb = g.parity(b), pc = g.parity(c);
        low(c) = 0.5 * (dbody[idx3(d, a, b, c)] + koszul_sign(pa, pb) * dbody[idx3(d, b, a, c)] -
                        koszul_sign(pc, pa + pb) * dbody[idx3(d, c, a, b)]);
      }
      const Eigen::RowVectorXd up = low * inv;
      for (int e = 0; e < d; ++e) out.gamma[idx3(d, a, b, e)] = up(e);
    }
  }
  return out;
}

ConnectionResiduals connection_residuals_at(const GradedMetric& g, std::span<const double> p) {
  return connection_residuals_at(g, p, christoffel_at(g, p));
}

ConnectionResiduals connection_residuals_at(const GradedMetric& g, std::span<const double> p,
                                            const ChristoffelAtPoint& gamma) {
  const int d = g.dim();
  if (gamma.dim != d) throw DimensionMismatch("Christoffel table does not match the metric");
  const GrassmannMatrix gm = evaluate_metric(g, p);
  ConnectionResiduals r;
  // ∇_a∂_b − (−1)^{|a||b|}∇_b∂_a, coordinate brackets vanish
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double s = koszul_sign(g.parity(a), g.parity(b));
      for (int c = 0; c < d; ++c) {
        r.torsion = std::max(r.torsion, (gamma(a, b, c) - s * gamma(b, a, c)).max_abs());
      }
    }
  }
  // ∂_a<∂_b,∂_c> − <∇_a∂_b,∂_c> − (−1)^{|a||b|}<∂_b,∇_a∂_c>
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        Grassmann defect = sf_eval(g.d1(a, b, c), p);
        const int pa = g.parity(a), pb = g.parity(b), pc = g.parity(c);
        for (int e = 0; e < d; ++e) {
          defect -= gmul(gamma(a, b, e), gm(e, c));
          // <∂_b, f ∂_e> = (−1)^{|f||b|} f <∂_b, ∂_e>
          const int pf = (pa + pc + g.parity(e)) & 1;
          const double s = koszul_sign(pa, pb) * koszul_sign(pf, pb);
          defect -= s * gmul(gamma(a, c, e), gm(b, e));
        }
        r.metricity = std::max(r.metricity, defect.max_abs());
      }
    }
  }
  return r;
}

double christoffel_parity_violation(const GradedMetric& g, const ChristoffelAtPoint& gamma) {
  const int d = g.dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        const int want = (g.parity(a) + g.parity(b) + g.parity(c)) & 1;
        worst = std::max(worst, gamma(a, b, c).parity_part(1 - want).max_abs());
      }
    }
  }
  return worst;
}

CurvatureAtPoint curvature_at(const GradedMetric& g, std::span<const double> p) {
  const int d = g.dim();
  const int n = g.chart().n;
  const int m = g.chart().m;
  const GrassmannMatrix gm = evaluate_metric(g, p);
  const auto parities = g.parities();
  const GrassmannMatrix h = graded_inverse(gm, parities);
  std::vector<GrassmannMatrix> dg;
  for (int c = 0; c < d; ++c) dg.push_back(first_derivative(g, c, p));
  const auto low = lowered_symbols(g, m, [&](int c, int a, int b) -> const Grassmann& { return dg[static_cast<std::size_t>(c)](a, b); });
  const std::vector<Grassmann> gamma = raise(low, h);

  // ∂_a Γ_bc^e: even axes by differentiating Γ = L·H, odd axes directly on
  // the Grassmann value.
  std::vector<std::vector<Grassmann>> dgamma(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    std::vector<GrassmannMatrix> d2(static_cast<std::size_t>(d), GrassmannMatrix(d, d, m));
    for (int c = 0; c < d; ++c) {
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) d2[static_cast<std::size_t>(c)](a, b) = sf_eval(g.d2(i, c, a, b), p);
      }
    }
    const auto dlow =
        lowered_symbols(g, m, [&](int c, int a, int b) -> const Grassmann& { return d2[static_cast<std::size_t>(c)](a, b); });
    const GrassmannMatrix dh = (-1.0) * gm_mul(gm_mul(h, dg[static_cast<std::size_t>(i)]), h);
    auto part1 = raise(dlow, h);
    const auto part2 = raise(low, dh);
    for (std::size_t k = 0; k < part1.size(); ++k) part1[k] += part2[k];
    dgamma[static_cast<std::size_t>(i)] = std::move(part1);
  }
  for (int a = n; a < d; ++a) {
    std::vector<Grassmann> out(gamma.size(), Grassmann(m));
    for (std::size_t k = 0; k < gamma.size(); ++k) out[k] = left_derivative(gamma[k], a - n + 1);
    dgamma[static_cast<std::size_t>(a)] = std::move(out);
  }

  // ∇_a∇_b∂_c = Σ_e [∂_aΓ_bc^e + Σ_d (−1)^{|a|(|b|+|c|+|d|)} Γ_bc^d Γ_ad^e] ∂_e
  auto second = [&](int a, int b, int c, int e) {
    Grassmann v = dgamma[static_cast<std::size_t>(a)][idx3(d, b, c, e)];
    for (int k = 0; k < d; ++k) {
      const Grassmann& x = gamma[idx3(d, b, c, k)];
      const Grassmann& y = gamma[idx3(d, a, k, e)];
      if (x.is_zero() || y.is_zero()) continue;
      const double s = koszul_sign(parities[a], parities[b] + parities[c] + parities[k]);
      v += s * gmul(x, y);
    }
    return v;
  };
  CurvatureAtPoint r;
  r.dim = d;
  r.generators = m;
  r.r.assign(static_cast<std::size_t>(d * d * d * d), Grassmann(m));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double s = koszul_sign(parities[a], parities[b]);
      for (int c = 0; c < d; ++c) {
        for (int e = 0; e < d; ++e) r(a, b, c, e) = second(a, b, c, e) - s * second(b, a, c, e);
      }
    }
  }
  return r;
}

double CurvatureSymmetryResiduals::max() const { return std::max({antisym_xy, antisym_zw, pair_swap, bianchi}); }

CurvatureSymmetryResiduals curvature_symmetry_residuals(const GradedMetric& g, std::span<const double> p) {
  const int d = g.dim();
  const int m = g.chart().m;
  const CurvatureAtPoint r = curvature_at(g, p);
  const GrassmannMatrix gm = evaluate_metric(g, p);
  const auto par = g.parities();
  // lowered <R(a,b)c, d>
  std::vector<Grassmann> low(static_cast<std::size_t>(d * d * d * d), Grassmann(m));
  auto at = [&](int a, int b, int c, int e) -> Grassmann& {
    return low[static_cast<std::size_t>(((a * d + b) * d + c) * d + e)];
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          Grassmann s(m);
          for (int k = 0; k < d; ++k) {
            if (!r(a, b, c, k).is_zero() && !gm(k, e).is_zero()) s += gmul(r(a, b, c, k), gm(k, e));
          }
          at(a, b, c, e) = std::move(s);
        }
  CurvatureSymmetryResiduals out;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          out.antisym_xy = std::max(out.antisym_xy, (at(a, b, c, e) + koszul_sign(par[a], par[b]) * at(b, a, c, e)).max_abs());
          out.antisym_zw = std::max(out.antisym_zw, (at(a, b, c, e) + koszul_sign(par[c], par[e]) * at(a, b, e, c)).max_abs());
          out.pair_swap = std::max(
              out.pair_swap, (at(a, b, c, e) - koszul_sign(par[a] + par[b], par[c] + par[e]) * at(c, e, a, b)).max_abs());
          const Grassmann bi = r(a, b, c, e) + koszul_sign(par[c], par[a] + par[b]) * r(c, a, b, e) +
                               koszul_sign(par[a], par[b] + par[c]) * r(b, c, a, e);
          out.bianchi = std::max(out.bianchi, bi.max_abs());
        }
  return out;
}

double sectional_curvature(const GradedMetric& g, std::span<const double> p, int i, int j) {
  const int n = g.chart().n;
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw InvalidArgument("sectional curvature needs two distinct even axes");
  const CurvatureAtPoint r = curvature_at(g, p);
  const Eigen::MatrixXd body = evaluate_metric(g, p).body();
  double num = 0.0;
  for (int k = 0; k < n; ++k) num += r(i, j, j, k).body() * body(k, i);
  const double den = body(i, i) * body(j, j) - body(i, j) * body(i, j);
  if (std::abs(den) < 1e-300) throw NotInvertible("degenerate plane for sectional curvature");
  return num / den;
}

double killing_residual_at(const GradedMetric& g, const std::vector<Superfunction>& field, std::span<const double> p) {
  const int d = g.dim();
  const int m = g.chart().m;
  if (static_cast<int>(field.size()) != d) throw DimensionMismatch("vector field needs one component per coordinate");
  // parity of X from its first non-zero component
  int px = -1;
  for (int c = 0; c < d; ++c) {
    const Parity q = field[static_cast<std::size_t>(c)].parity();
    if (q == Parity::Mixed) throw InvalidArgument("vector field component is not homogeneous");
    if (field[static_cast<std::size_t>(c)].is_zero()) continue;
    const int cand = (parity_bit(q) + g.parity(c)) & 1;
    if (px >= 0 && cand != px) throw InvalidArgument("vector field is not homogeneous");
    px = cand;
  }
  if (px < 0) return 0.0;
  const ChristoffelAtPoint gamma = christoffel_at(g, p);
  const GrassmannMatrix gm = evaluate_metric(g, p);
  // (∇_a X)^e = ∂_a X^e + Σ_c (−1)^{|a||X^c|} X^c Γ_ac^e
  std::vector<std::vector<Grassmann>> nab(static_cast<std::size_t>(d), std::vector<Grassmann>(static_cast<std::size_t>(d), Grassmann(m)));
  std::vector<Grassmann> xv;
  for (int c = 0; c < d; ++c) xv.push_back(sf_eval(field[static_cast<std::size_t>(c)], p));
  for (int a = 0; a < d; ++a) {
    for (int e = 0; e < d; ++e) {
      Grassmann v = sf_eval(sf_partial(field[static_cast<std::size_t>(e)], a), p);
      for (int c = 0; c < d; ++c) {
        if (xv[static_cast<std::size_t>(c)].is_zero()) continue;
        const int pxc = (px + g.parity(c)) & 1;
        v += static_cast<double>(koszul_sign(g.parity(a), pxc)) * gmul(xv[static_cast<std::size_t>(c)], gamma(a, c, e));
      }
      nab[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)] = std::move(v);
    }
  }
  auto inner = [&](int a, int b) {
    Grassmann s(m);
    for (int e = 0; e < d; ++e) s += gmul(nab[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)], gm(e, b));
    return s;
  };
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const int pa = g.parity(a), pb = g.parity(b);
      const double s = ((px * pa + px * pb + pa * pb) & 1) ? -1.0 : 1.0;
      worst = std::max(worst, (inner(a, b) + s * inner(b, a)).max_abs());
    }
  }
  return worst;
}

GradedMetric flat_metric(int n, int m) {
  if (m % 2 != 0) throw InvalidArgument("a graded metric needs an even number of odd coordinates");
  const int d = n + m;
  std::vector<std::vector<Superfunction>> e(static_cast<std::size_t>(d), std::vector<Superfunction>(static_cast<std::size_t>(d), Superfunction(n, m)));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Superfunction::constant(n, m, 1.0);
  for (int k = 0; k < m; k += 2) {
    const auto a = static_cast<std::size_t>(n + k);
    e[a][a + 1] = Superfunction::constant(n, m, 1.0);
    e[a + 1][a] = Superfunction::constant(n, m, -1.0);
  }
  return GradedMetric(Chart::standard(n, m), std::move(e));
}

GradedMetric hyperbolic_metric() {
  Chart c = Chart::standard(2, 0);
  c.even_names = {"x", "y"};
  c.positive = {1};
  const Polynomial w = Polynomial::monomial(2, {0, -2}, 1.0);
  std::vector<std::vector<Superfunction>> e(2, std::vector<Superfunction>(2, Superfunction(2, 0)));
  e[0][0] = Superfunction::from_coefficient(2, 0, {}, w);
  e[1][1] = Superfunction::from_coefficient(2, 0, {}, w);
  return GradedMetric(std::move(c), std::move(e));
}

GradedMetric sphere_metric() {
  Chart c = Chart::standard(2, 0);
  c.even_names = {"theta", "phi"};
  c.domain = [](std::span<const double> p) { return std::sin(p[0]) != 0.0; };
  Evaluable s2;
  s2.n = 2;
  s2.value = [](std::span<const double> x) { return std::sin(x[0]) * std::sin(x[0]); };
  s2.gradient = [](std::span<const double> x) {
    Eigen::VectorXd gr = Eigen::VectorXd::Zero(2);
    gr(0) = std::sin(2 * x[0]);
    return gr;
  };
  s2.hessian = [](std::span<const double> x) {
    Eigen::MatrixXd hs = Eigen::MatrixXd::Zero(2, 2);
    hs(0, 0) = 2 * std::cos(2 * x[0]);
    return hs;
  };
  s2.finite_differences = true;
  std::vector<std::vector<Superfunction>> e(2, std::vector<Superfunction>(2, Superfunction(2, 0)));
  e[0][0] = Superfunction::constant(2, 0, 1.0);
  e[1][1] = Superfunction::from_coefficient(2, 0, {}, s2);
  return GradedMetric(std::move(c), std::move(e));
}

}  // namespace supergeo
