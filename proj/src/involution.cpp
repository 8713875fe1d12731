#include "supergeo/involution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {

InvolutionCheck check_involution(const LieSuperalgebra& a, const Eigen::MatrixXd& sigma, double tol) {
  const int d = a.dim();
  if (sigma.rows() != d || sigma.cols() != d) throw DimensionMismatch("involution matrix has wrong size");
  InvolutionCheck c;
  c.square_residual = (sigma * sigma - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (a.parity(i) != a.parity(j)) c.parity_residual = std::max(c.parity_residual, std::abs(sigma(i, j)));
    }
  }
  // σ[e_j, e_i] − [σe_j, σe_i] is column i of σ ad_j − ad_{σe_j} σ
  for (int j = 0; j < d; ++j) {
    const Eigen::MatrixXd defect = sigma * a.ad(j) - a.ad(Eigen::VectorXd(sigma.col(j))) * sigma;
    for (int i = 0; i < d; ++i) {
      const double r = defect.col(i).cwiseAbs().maxCoeff();
      if (r > c.automorphism_residual) {
        c.automorphism_residual = r;
        c.worst_i = j;
        c.worst_j = i;
      }
    }
  }
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if (c.square_residual > tol * scale) {
    c.message = "sigma^2 != id (residual " + std::to_string(c.square_residual) + ")";
  } else if (c.parity_residual > tol * scale) {
    c.message = "sigma mixes parities (residual " + std::to_string(c.parity_residual) + ")";
  } else if (c.automorphism_residual > tol * scale * scale) {
    c.message = "sigma is not a bracket automorphism on (" + a.labels()[c.worst_i] + ", " + a.labels()[c.worst_j] +
                "), residual " + std::to_string(c.automorphism_residual);
  } else {
    c.valid = true;
  }
  return c;
}

Involution make_involution(const LieSuperalgebra& a, const Eigen::MatrixXd& sigma, double tol) {
  const InvolutionCheck c = check_involution(a, sigma, tol);
  if (!c.valid) throw InvalidArgument(c.message);
  return Involution{sigma};
}

Eigen::MatrixXd matrix_map_to_coordinates(const LieSuperalgebra& a,
                                          const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& map) {
  if (!a.has_realization()) throw InvalidArgument("algebra '" + a.name() + "' has no matrix realization");
  const int d = a.dim();
  Eigen::MatrixXd sigma(d, d);
  for (int i = 0; i < d; ++i) {
    const Eigen::MatrixXd img = map(a.realization()->matrices[i]);
    const double resid = a.span_residual(img);
    if (resid > 1e-10 * std::max(1.0, img.cwiseAbs().maxCoeff())) {
      throw InvalidArgument("matrix map sends " + a.labels()[i] + " outside the algebra");
    }
    Eigen::VectorXd c = a.coordinates_of(img);
    for (int k = 0; k < d; ++k) {
      if (std::abs(c[k]) < 1e-13) c[k] = 0.0;
    }
    sigma.col(i) = c;
  }
  return sigma;
}

int SymmetricDecomposition::k_even() const {
  return static_cast<int>(std::count(k_parities.begin(), k_parities.end(), 0));
}
int SymmetricDecomposition::p_even() const {
  return static_cast<int>(std::count(p_parities.begin(), p_parities.end(), 0));
}
double SymmetricDecomposition::max_residual() const { return std::max({kk_residual, kp_residual, pp_residual}); }

SymmetricDecomposition eigensplit(const LieSuperalgebra& a, const Involution& inv) {
  const int d = a.dim();
  const Eigen::MatrixXd& sigma = inv.sigma;
  if (sigma.rows() != d || sigma.cols() != d) throw DimensionMismatch("involution matrix has wrong size");
  SymmetricDecomposition out;
  std::vector<Eigen::VectorXd> kcols;
  std::vector<Eigen::VectorXd> pcols;
  for (int par = 0; par < 2; ++par) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i) {
      if (a.parity(i) == par) idx.push_back(i);
    }
    const int b = static_cast<int>(idx.size());
    if (b == 0) continue;
    Eigen::MatrixXd s(b, b);
    for (int r = 0; r < b; ++r) {
      for (int c = 0; c < b; ++c) s(r, c) = sigma(idx[r], idx[c]);
    }
    for (int sign = 1; sign >= -1; sign -= 2) {
      const Eigen::MatrixXd proj = 0.5 * (Eigen::MatrixXd::Identity(b, b) + sign * s);
      // absolute threshold: proj is O(1) and may be exactly zero
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
      const int rank = static_cast<int>((svd.singularValues().array() > 1e-10).count());
      const Eigen::MatrixXd img = svd.matrixU().leftCols(rank);
      for (int c = 0; c < img.cols(); ++c) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        for (int r = 0; r < b; ++r) v[idx[r]] = img(r, c);
        (sign == 1 ? kcols : pcols).push_back(v);
        (sign == 1 ? out.k_parities : out.p_parities).push_back(par);
      }
    }
  }
  if (static_cast<int>(kcols.size() + pcols.size()) != d) {
    throw NotInvertible("eigenspaces of sigma do not span the algebra");
  }
  out.k.resize(d, static_cast<Eigen::Index>(kcols.size()));
  out.p.resize(d, static_cast<Eigen::Index>(pcols.size()));
  for (std::size_t c = 0; c < kcols.size(); ++c) out.k.col(c) = kcols[c];
  for (std::size_t c = 0; c < pcols.size(); ++c) out.p.col(c) = pcols[c];

  auto plus_part = [&](const Eigen::VectorXd& w) { return (0.5 * (w + sigma * w)).cwiseAbs().maxCoeff(); };
  auto minus_part = [&](const Eigen::VectorXd& w) { return (0.5 * (w - sigma * w)).cwiseAbs().maxCoeff(); };
  for (int i = 0; i < out.k.cols(); ++i) {
    const Eigen::MatrixXd adk = a.ad(Eigen::VectorXd(out.k.col(i)));
    const Eigen::MatrixXd kk = adk * out.k;
    const Eigen::MatrixXd kp = adk * out.p;
    for (int j = 0; j < kk.cols(); ++j) out.kk_residual = std::max(out.kk_residual, minus_part(kk.col(j)));
    for (int j = 0; j < kp.cols(); ++j) out.kp_residual = std::max(out.kp_residual, plus_part(kp.col(j)));
  }
  for (int i = 0; i < out.p.cols(); ++i) {
    const Eigen::MatrixXd pp = a.ad(Eigen::VectorXd(out.p.col(i))) * out.p;
    for (int j = 0; j < pp.cols(); ++j) out.pp_residual = std::max(out.pp_residual, minus_part(pp.col(j)));
  }
  return out;
}

}  // namespace supergeo
