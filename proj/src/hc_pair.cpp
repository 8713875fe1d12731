#include "supergeo/hc_pair.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

void require_even(const LieSuperalgebra& a, const Eigen::VectorXd& x) {
  if (x.size() != a.dim()) throw DimensionMismatch("vector length differs from algebra dimension");
  if (a.parity_of(x) != 0) throw InvalidArgument("reduced group elements come from g_0 only");
}

std::vector<Eigen::VectorXd> even_basis(const LieSuperalgebra& a) {
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < a.dim(); ++i) {
    if (a.parity(i) == 0) out.push_back(basis_vector(a.dim(), i));
  }
  return out;
}

}  // namespace

HarishChandraPair hc_pair_by_conjugation(ReducedGroup group, LieSuperalgebra algebra) {
  if (!algebra.has_realization()) throw InvalidArgument("conjugation needs a matrix realization");
  HarishChandraPair pair{std::move(group), std::move(algebra), {}};
  // sampler holds its own copy so the pair stays copyable
  pair.adjoint = [alg = pair.algebra](const Eigen::VectorXd& x, double t) {
    require_even(alg, x);
    const Eigen::MatrixXd gen = t * alg.matrix_of(x);
    const Eigen::MatrixXd g = gen.exp();
    const Eigen::MatrixXd ginv = (-gen).exp();
    const int d = alg.dim();
    Eigen::MatrixXd out(d, d);
    for (int j = 0; j < d; ++j) {
      const Eigen::MatrixXd img = g * alg.realization()->matrices[j] * ginv;
      const double resid = alg.span_residual(img);
      if (resid > 1e-8 * std::max(1.0, img.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("conjugation leaves the realised algebra");
      }
      out.col(j) = alg.coordinates_of(img);
    }
    return out;
  };
  return pair;
}

HarishChandraPair hc_pair_by_adjoint(ReducedGroup group, LieSuperalgebra algebra) {
  HarishChandraPair pair{std::move(group), std::move(algebra), {}};
  pair.adjoint = [alg = pair.algebra](const Eigen::VectorXd& x, double t) {
    require_even(alg, x);
    return Eigen::MatrixXd((t * alg.ad(x)).exp());
  };
  return pair;
}

HCReport validate_hc_pair(const HarishChandraPair& pair, double automorphism_tol, double derivative_tol) {
  const LieSuperalgebra& a = pair.algebra;
  HCReport r;
  r.group_dim = pair.group.dim;
  r.even_dim = a.even_dim();
  r.dimension_ok = r.group_dim == r.even_dim;
  if (!r.dimension_ok) {
    r.failures.push_back("dim " + pair.group.name + " = " + std::to_string(r.group_dim) + " but dim g0 = " +
                         std::to_string(r.even_dim));
  }
  const double times[] = {1e-3, 1e-2, 0.1, 1.0};
  for (const auto& x : even_basis(a)) {
    for (double t : times) {
      const Eigen::MatrixXd ad_g = pair.adjoint(x, t);
      const double scale = std::max(1.0, ad_g.cwiseAbs().maxCoeff());
      for (int j = 0; j < a.dim(); ++j) {
        const Eigen::MatrixXd defect = ad_g * a.ad(j) - a.ad(Eigen::VectorXd(ad_g.col(j))) * ad_g;
        r.automorphism_residual = std::max(r.automorphism_residual, defect.cwiseAbs().maxCoeff() / (scale * scale));
      }
    }
    const double h = 1e-2;
    auto central = [&](double step) { return Eigen::MatrixXd((pair.adjoint(x, step) - pair.adjoint(x, -step)) / (2 * step)); };
    const Eigen::MatrixXd deriv = (4.0 * central(h / 2) - central(h)) / 3.0;
    r.derivative_residual = std::max(r.derivative_residual, (deriv - a.ad(x)).cwiseAbs().maxCoeff());
  }
  r.automorphism_ok = r.automorphism_residual <= automorphism_tol;
  r.derivative_ok = r.derivative_residual <= derivative_tol;
  if (!r.automorphism_ok) {
    r.failures.push_back("Ad_g is not a bracket automorphism (residual " + std::to_string(r.automorphism_residual) + ")");
  }
  if (!r.derivative_ok) {
    r.failures.push_back("d/dt Ad_exp(tX) at 0 differs from ad_X by " + std::to_string(r.derivative_residual));
  }
  return r;
}

double ad_reduced_invariance(const HarishChandraPair& pair, const BilinearForm& form,
                             const std::vector<std::pair<Eigen::VectorXd, double>>& samples) {
  const int d = pair.algebra.dim();
  if (form.rows() != d || form.cols() != d) throw DimensionMismatch("form does not match algebra dimension");
  double worst = 0.0;
  for (const auto& [x, t] : samples) {
    const Eigen::MatrixXd g = pair.adjoint(x, t);
    worst = std::max(worst, (g.transpose() * form * g - form).cwiseAbs().maxCoeff());
  }
  return worst;
}

double ad_reduced_invariance(const HarishChandraPair& pair, const BilinearForm& form) {
  std::vector<std::pair<Eigen::VectorXd, double>> samples;
  for (const auto& x : even_basis(pair.algebra)) {
    for (double t : {0.1, -0.1, 1.0, -1.0}) samples.emplace_back(x, t);
  }
  return ad_reduced_invariance(pair, form, samples);
}

}  // namespace supergeo
