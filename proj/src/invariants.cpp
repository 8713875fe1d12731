#include "supergeo/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

Eigen::VectorXd parity_signs(const std::vector<int>& parities) {
  Eigen::VectorXd s(parities.size());
  for (std::size_t k = 0; k < parities.size(); ++k) s[k] = parities[k] ? -1.0 : 1.0;
  return s;
}

// Rows j of ⟨[X,·],·⟩ + (−1)^{|X||j|}⟨·,[X,·]⟩ for homogeneous X of parity px.
Eigen::MatrixXd invariance_defect(const LieSuperalgebra& a, const Eigen::MatrixXd& adx, int px,
                                  const BilinearForm& f) {
  Eigen::MatrixXd m1 = adx.transpose() * f;
  const Eigen::MatrixXd m2 = f * adx;
  for (int j = 0; j < a.dim(); ++j) m1.row(j) += koszul(px, a.parity(j)) * m2.row(j);
  return m1;
}

std::vector<int> indices_of_parity(const LieSuperalgebra& a, int p) {
  std::vector<int> out;
  for (int i = 0; i < a.dim(); ++i) {
    if (a.parity(i) == p) out.push_back(i);
  }
  return out;
}

// Basis of even graded-symmetric forms: symmetric even block, antisymmetric odd block.
std::vector<BilinearForm> form_basis(const LieSuperalgebra& a, bool include_even, bool include_odd) {
  std::vector<BilinearForm> out;
  const int d = a.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      if (a.parity(i) != a.parity(j)) continue;
      if (a.parity(i) == 0 && include_even) {
        BilinearForm b = BilinearForm::Zero(d, d);
        b(i, j) = 1.0;
        b(j, i) = 1.0;
        out.push_back(b);
      } else if (a.parity(i) == 1 && include_odd && i != j) {
        BilinearForm b = BilinearForm::Zero(d, d);
        b(i, j) = 1.0;
        b(j, i) = -1.0;
        out.push_back(b);
      }
    }
  }
  return out;
}

// Stacked defect over all basis X, as a vector.
Eigen::VectorXd stacked_defect(const LieSuperalgebra& a, const BilinearForm& f) {
  const int d = a.dim();
  Eigen::VectorXd out(static_cast<Eigen::Index>(d) * d * d);
  for (int i = 0; i < d; ++i) {
    const Eigen::MatrixXd r = invariance_defect(a, a.ad(i), a.parity(i), f);
    out.segment(static_cast<Eigen::Index>(i) * d * d, d * d) = Eigen::Map<const Eigen::VectorXd>(r.data(), d * d);
  }
  return out;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int k = 0; k < s.size(); ++k) {
    if (s[k] > tol * std::max(1.0, s[0])) ++r;
  }
  return r;
}

}  // namespace

BilinearForm killing_form(const LieSuperalgebra& a) {
  const int d = a.dim();
  const Eigen::VectorXd s = parity_signs(a.parities());
  std::vector<Eigen::MatrixXd> signed_ad(d);
  for (int i = 0; i < d; ++i) signed_ad[i] = s.asDiagonal() * a.ad(i);
  BilinearForm b(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      b(i, j) = signed_ad[i].cwiseProduct(a.ad(j).transpose()).sum();
      b(j, i) = koszul(a.parity(i), a.parity(j)) * b(i, j);
    }
  }
  return b;
}

BilinearForm supertrace_form(const LieSuperalgebra& a) {
  if (!a.has_realization()) throw InvalidArgument("algebra '" + a.name() + "' has no matrix realization");
  const auto& mats = a.realization()->matrices;
  const int d = a.dim();
  BilinearForm f(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(i, j) = supertrace(a, mats[i] * mats[j]);
  }
  return f;
}

double check_ad_invariance(const LieSuperalgebra& a, const BilinearForm& form, const Eigen::MatrixXd& generators) {
  const int d = a.dim();
  if (form.rows() != d || form.cols() != d) throw DimensionMismatch("form does not match algebra dimension");
  if (generators.rows() != d) throw DimensionMismatch("generators do not match algebra dimension");
  double worst = 0.0;
  for (int c = 0; c < generators.cols(); ++c) {
    for (int p = 0; p < 2; ++p) {
      Eigen::VectorXd x = generators.col(c);
      for (int i = 0; i < d; ++i) {
        if (a.parity(i) != p) x[i] = 0.0;
      }
      if (x.isZero(0.0)) continue;
      worst = std::max(worst, invariance_defect(a, a.ad(x), p, form).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_ad_invariance(const LieSuperalgebra& a, const BilinearForm& form) {
  return check_ad_invariance(a, form, Eigen::MatrixXd::Identity(a.dim(), a.dim()));
}

FormReport analyze_form(const std::vector<int>& parities, const BilinearForm& form, double tol) {
  const int d = static_cast<int>(parities.size());
  if (form.rows() != d || form.cols() != d) throw DimensionMismatch("form does not match parity list");
  FormReport r;
  std::vector<int> ev;
  std::vector<int> od;
  for (int i = 0; i < d; ++i) (parities[i] ? od : ev).push_back(i);
  const double scale = std::max(1.0, d ? form.cwiseAbs().maxCoeff() : 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      r.symmetry_residual = std::max(r.symmetry_residual,
                                     std::abs(form(i, j) - koszul(parities[i], parities[j]) * form(j, i)));
      if (parities[i] != parities[j]) r.parity_residual = std::max(r.parity_residual, std::abs(form(i, j)));
    }
  }
  auto block = [&](const std::vector<int>& idx) {
    Eigen::MatrixXd b(idx.size(), idx.size());
    for (std::size_t p = 0; p < idx.size(); ++p) {
      for (std::size_t q = 0; q < idx.size(); ++q) b(p, q) = form(idx[p], idx[q]);
    }
    return b;
  };
  auto min_sv = [](const Eigen::MatrixXd& b) {
    if (b.size() == 0) return std::numeric_limits<double>::infinity();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    return svd.singularValues().minCoeff();
  };
  const Eigen::MatrixXd be = block(ev);
  const Eigen::MatrixXd bo = block(od);
  r.min_singular_even = min_sv(be);
  r.min_singular_odd = min_sv(bo);
  r.rank_even = numerical_rank(be, tol);
  r.rank_odd = numerical_rank(bo, tol);
  r.graded_symmetric = r.symmetry_residual <= tol * scale;
  r.even = r.parity_residual <= tol * scale;
  r.nondegenerate = r.rank_even == static_cast<int>(ev.size()) && r.rank_odd == static_cast<int>(od.size());
  return r;
}

std::vector<BilinearForm> invariant_forms(const LieSuperalgebra& a, double tol) {
  const std::vector<BilinearForm> basis = form_basis(a, true, true);
  const int nb = static_cast<int>(basis.size());
  if (nb == 0) return {};
  const int d = a.dim();
  Eigen::MatrixXd sys(static_cast<Eigen::Index>(d) * d * d, nb);
  for (int t = 0; t < nb; ++t) sys.col(t) = stacked_defect(a, basis[t]);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() ? std::max(1.0, s[0]) : 1.0;
  std::vector<BilinearForm> out;
  for (int k = 0; k < nb; ++k) {
    const double sk = k < s.size() ? s[k] : 0.0;
    if (sk > tol * top) continue;
    BilinearForm f = BilinearForm::Zero(d, d);
    for (int t = 0; t < nb; ++t) f += svd.matrixV()(t, k) * basis[t];
    out.push_back(f);
  }
  return out;
}

InvariantFormSearch search_invariant_superproduct(const LieSuperalgebra& a, double tol) {
  InvariantFormSearch res;
  const auto sols = invariant_forms(a, tol);
  res.solution_dim = static_cast<int>(sols.size());
  if (sols.empty()) return res;
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 8; ++trial) {
    BilinearForm f = BilinearForm::Zero(a.dim(), a.dim());
    for (const auto& s : sols) f += gauss(rng) * s;
    if (analyze_form(a.parities(), f, 1e-8).nondegenerate) {
      res.nondegenerate_exists = true;
      res.witness = f;
      return res;
    }
  }
  return res;
}

BilinearForm extend_odd_form(const LieSuperalgebra& a, const Eigen::MatrixXd& odd_form, double tol) {
  const std::vector<int> ev = indices_of_parity(a, 0);
  const std::vector<int> od = indices_of_parity(a, 1);
  const int n0 = static_cast<int>(ev.size());
  const int n1 = static_cast<int>(od.size());
  const int d = a.dim();
  if (odd_form.rows() != n1 || odd_form.cols() != n1) throw DimensionMismatch("odd form must be square on g_1");

  // [g1, g1] = g0
  Eigen::MatrixXd spans(n0, std::max(1, n1 * n1));
  spans.setZero();
  for (int p = 0; p < n1; ++p) {
    for (int q = 0; q < n1; ++q) {
      const Eigen::VectorXd br = a.ad(od[p]).col(od[q]);
      for (int r = 0; r < n0; ++r) spans(r, p * n1 + q) = br[ev[r]];
    }
  }
  const int span_rank = numerical_rank(spans, tol);
  if (span_rank != n0) {
    throw HypothesisFailure("[g1,g1] != g0: odd brackets span " + std::to_string(span_rank) + " of " +
                            std::to_string(n0) + " even dimensions");
  }
  // faithfulness of ad on g1
  Eigen::MatrixXd rep(std::max(1, n1 * n1), n0);
  rep.setZero();
  for (int r = 0; r < n0; ++r) {
    for (int p = 0; p < n1; ++p) {
      for (int q = 0; q < n1; ++q) rep(p * n1 + q, r) = a.ad(ev[r])(od[p], od[q]);
    }
  }
  const int rep_rank = numerical_rank(rep, tol);
  if (rep_rank != n0) {
    throw HypothesisFailure("ad of g0 on g1 is not faithful: kernel of dimension " + std::to_string(n0 - rep_rank));
  }
  // the odd form itself
  const double scale = std::max(1.0, odd_form.cwiseAbs().maxCoeff());
  if ((odd_form + odd_form.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw HypothesisFailure("odd form is not skew-symmetric");
  }
  if (numerical_rank(odd_form, tol) != n1) throw HypothesisFailure("odd form is degenerate");
  BilinearForm fixed = BilinearForm::Zero(d, d);
  for (int p = 0; p < n1; ++p) {
    for (int q = 0; q < n1; ++q) fixed(od[p], od[q]) = odd_form(p, q);
  }
  double g0_defect = 0.0;
  for (int i : ev) {
    const Eigen::MatrixXd r = invariance_defect(a, a.ad(i), 0, fixed);
    for (int p : od) {
      for (int q : od) g0_defect = std::max(g0_defect, std::abs(r(p, q)));
    }
  }
  if (g0_defect > tol * scale) {
    throw HypothesisFailure("odd form is not ad_{g0}-invariant (defect " + std::to_string(g0_defect) + ")");
  }

  const std::vector<BilinearForm> unknowns = form_basis(a, true, false);
  const int nu = static_cast<int>(unknowns.size());
  Eigen::MatrixXd sys(static_cast<Eigen::Index>(d) * d * d, nu);
  for (int t = 0; t < nu; ++t) sys.col(t) = stacked_defect(a, unknowns[t]);
  const Eigen::VectorXd rhs = -stacked_defect(a, fixed);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys);
  qr.setThreshold(tol);
  if (qr.rank() != nu) {
    throw HypothesisFailure("extension is not unique: solution space has dimension " + std::to_string(nu - qr.rank()));
  }
  const Eigen::VectorXd sol = qr.solve(rhs);
  const double resid = (sys * sol - rhs).cwiseAbs().maxCoeff();
  if (resid > 1e3 * tol * std::max(1.0, rhs.cwiseAbs().maxCoeff())) {
    throw HypothesisFailure("invariance system is inconsistent (residual " + std::to_string(resid) + ")");
  }
  BilinearForm out = fixed;
  for (int t = 0; t < nu; ++t) out += sol[t] * unknowns[t];
  return out;
}

Eigen::VectorXd biinv_connection(const LieSuperalgebra& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return 0.5 * a.bracket(x, y);
}

Eigen::VectorXd biinv_curvature(const LieSuperalgebra& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z) {
  return -0.25 * a.bracket(a.bracket(x, y), z);
}

Eigen::VectorXd curvature_from_connection(const LieSuperalgebra& a, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
  const int px = a.parity_of(x);
  const int py = a.parity_of(y);
  if (px < 0 || py < 0) throw InvalidArgument("curvature needs homogeneous arguments");
  auto nabla = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return biinv_connection(a, u, v); };
  return nabla(x, nabla(y, z)) - koszul(px, py) * nabla(y, nabla(x, z)) - nabla(a.bracket(x, y), z);
}

double CurvatureSymmetry::max() const { return std::max({antisym_xy, antisym_zw, pair_swap, bianchi}); }

CurvatureSymmetry biinv_curvature_symmetries(const LieSuperalgebra& a, const BilinearForm& form) {
  const int d = a.dim();
  if (form.rows() != d || form.cols() != d) throw DimensionMismatch("form does not match algebra dimension");
  // m[i*d+j] = ad_{[e_i,e_j]};  R(e_i,e_j)e_k = −¼ m.col(k)
  std::vector<Eigen::MatrixXd> m(static_cast<std::size_t>(d) * d);
  std::vector<Eigen::MatrixXd> q(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m[i * d + j] = -0.25 * a.ad(Eigen::VectorXd(a.ad(i).col(j)));
      q[i * d + j] = m[i * d + j].transpose() * form;
    }
  }
  const auto& p = a.parities();
  CurvatureSymmetry s;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto& qij = q[i * d + j];
      const auto& qji = q[j * d + i];
      for (int k = 0; k < d; ++k) {
        const Eigen::VectorXd bian = m[i * d + j].col(k) + koszul(p[k], p[i] + p[j]) * m[k * d + i].col(j) +
                                     koszul(p[i], p[j] + p[k]) * m[j * d + k].col(i);
        s.bianchi = std::max(s.bianchi, bian.cwiseAbs().maxCoeff());
        for (int w = 0; w < d; ++w) {
          const double v = qij(k, w);
          s.antisym_xy = std::max(s.antisym_xy, std::abs(v + koszul(p[i], p[j]) * qji(k, w)));
          s.antisym_zw = std::max(s.antisym_zw, std::abs(v + koszul(p[k], p[w]) * qij(w, k)));
          s.pair_swap = std::max(s.pair_swap,
                                 std::abs(v - koszul(p[i] + p[j], p[k] + p[w]) * q[k * d + w](i, j)));
        }
      }
    }
  }
  return s;
}

BilinearForm restrict_form(const BilinearForm& form, const Eigen::MatrixXd& basis) {
  return basis.transpose() * form * basis;
}

Signature signature(const Eigen::MatrixXd& sym, double tol) {
  Signature s;
  if (sym.size() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int k = 0; k < ev.size(); ++k) {
    if (ev[k] > tol * scale) ++s.positive;
    else if (ev[k] < -tol * scale) ++s.negative;
    else ++s.zero;
  }
  return s;
}

}  // namespace supergeo
