#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "supergeo/algebra.hpp"

namespace supergeo {

/// Validated involutive automorphism, as a matrix on the basis coordinates.
struct Involution {
  Eigen::MatrixXd sigma;
};

struct InvolutionCheck {
  double square_residual = 0.0;        // |σ² − id|
  double parity_residual = 0.0;        // mixed-parity entries of σ
  double automorphism_residual = 0.0;  // max |σ[e_i,e_j] − [σe_i, σe_j]|
  int worst_i = -1;
  int worst_j = -1;
  bool valid = false;
  std::string message;
};

InvolutionCheck check_involution(const LieSuperalgebra& a, const Eigen::MatrixXd& sigma, double tol = 1e-12);

/// Throws InvalidArgument naming the failed property (and offending pair).
Involution make_involution(const LieSuperalgebra& a, const Eigen::MatrixXd& sigma, double tol = 1e-12);

/// σ on coordinates induced by a linear map of realised matrices.
Eigen::MatrixXd matrix_map_to_coordinates(const LieSuperalgebra& a,
                                          const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& map);

/// k = +1 and p = −1 eigenspaces; columns in the algebra's coordinates,
/// even columns first in each.
struct SymmetricDecomposition {
  Eigen::MatrixXd k;
  Eigen::MatrixXd p;
  std::vector<int> k_parities;
  std::vector<int> p_parities;
  double kk_residual = 0.0;  // [k,k] ⊂ k
  double kp_residual = 0.0;  // [k,p] ⊂ p
  double pp_residual = 0.0;  // [p,p] ⊂ k
  int k_even() const;
  int k_odd() const { return static_cast<int>(k_parities.size()) - k_even(); }
  int p_even() const;
  int p_odd() const { return static_cast<int>(p_parities.size()) - p_even(); }
  double max_residual() const;
};

SymmetricDecomposition eigensplit(const LieSuperalgebra& a, const Involution& sigma);

}  // namespace supergeo
