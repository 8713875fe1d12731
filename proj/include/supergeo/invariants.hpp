#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "supergeo/algebra.hpp"

namespace supergeo {

/// Bilinear form on the algebra's coordinate space, F(i, j) = ⟨e_i, e_j⟩.
using BilinearForm = Eigen::MatrixXd;

/// B(X, Y) = str(ad_X ∘ ad_Y), supertrace graded by basis parities.
BilinearForm killing_form(const LieSuperalgebra& a);

/// (X, Y) ↦ str(XY) in the matrix realization.
BilinearForm supertrace_form(const LieSuperalgebra& a);

/// Max over X in `generators` (columns, any parity mix) and Y, Z in the basis
/// of |⟨[X,Y],Z⟩ + (−1)^{|X||Y|}⟨Y,[X,Z]⟩|. Mixed generators are split into
/// their homogeneous parts.
double check_ad_invariance(const LieSuperalgebra& a, const BilinearForm& form,
                           const Eigen::MatrixXd& generators);
double check_ad_invariance(const LieSuperalgebra& a, const BilinearForm& form);

struct FormReport {
  double symmetry_residual = 0.0;  // max |F_ij − (−1)^{|i||j|} F_ji|
  double parity_residual = 0.0;    // max |F_ij| over mixed-parity pairs
  double min_singular_even = 0.0;
  double min_singular_odd = 0.0;
  int rank_even = 0;
  int rank_odd = 0;
  bool graded_symmetric = false;
  bool even = false;
  bool nondegenerate = false;
  bool is_scalar_superproduct() const { return graded_symmetric && even && nondegenerate; }
};

/// Graded symmetry, evenness and nondegeneracy of a form w.r.t. parities.
FormReport analyze_form(const std::vector<int>& parities, const BilinearForm& form, double tol = 1e-9);

/// Basis of the space of even graded-symmetric ad-invariant forms.
std::vector<BilinearForm> invariant_forms(const LieSuperalgebra& a, double tol = 1e-9);

struct InvariantFormSearch {
  int solution_dim = 0;
  bool nondegenerate_exists = false;
  BilinearForm witness;  // nondegenerate solution when one exists
};

/// Exhaustive linear solve; nondegeneracy is tested on generic combinations
/// of the solution basis, which is decisive since det is polynomial.
InvariantFormSearch search_invariant_superproduct(const LieSuperalgebra& a, double tol = 1e-9);

/// Unique ad-invariant extension of an ad_{g0}-invariant symplectic form on
/// g_1 (given on the odd coordinates). Raises HypothesisFailure naming the
/// failed hypothesis, or if the linear system is inconsistent.
BilinearForm extend_odd_form(const LieSuperalgebra& a, const Eigen::MatrixXd& odd_form, double tol = 1e-9);

/// ∇_X Y = ½[X, Y] and R(X,Y)Z = −¼[[X,Y],Z].
Eigen::VectorXd biinv_connection(const LieSuperalgebra& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
Eigen::VectorXd biinv_curvature(const LieSuperalgebra& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z);

/// ∇_X∇_Y Z − (−1)^{|X||Y|}∇_Y∇_X Z − ∇_{[X,Y]}Z with ∇ = ½[·,·]; inputs must
/// be homogeneous.
Eigen::VectorXd curvature_from_connection(const LieSuperalgebra& a, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& y, const Eigen::VectorXd& z);

struct CurvatureSymmetry {
  double antisym_xy = 0.0;  // ⟨R(X,Y)Z,W⟩ + (−1)^{|X||Y|}⟨R(Y,X)Z,W⟩
  double antisym_zw = 0.0;  // ⟨R(X,Y)Z,W⟩ + (−1)^{|Z||W|}⟨R(X,Y)W,Z⟩
  double pair_swap = 0.0;   // ⟨R(X,Y)Z,W⟩ − (−1)^{(|X|+|Y|)(|Z|+|W|)}⟨R(Z,W)X,Y⟩
  double bianchi = 0.0;     // cyclic sum with signs
  double max() const;
};

/// Symmetries of R(X,Y)Z = −¼[[X,Y],Z] with respect to `form`, over all basis quadruples.
CurvatureSymmetry biinv_curvature_symmetries(const LieSuperalgebra& a, const BilinearForm& form);

/// Restriction Pᵀ F P to the span of the columns of P.
BilinearForm restrict_form(const BilinearForm& form, const Eigen::MatrixXd& basis);

/// Signature of a symmetric matrix: (positive, negative, zero) eigenvalue counts.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};
Signature signature(const Eigen::MatrixXd& sym, double tol = 1e-8);

}  // namespace supergeo
