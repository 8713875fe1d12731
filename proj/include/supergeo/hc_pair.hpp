#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "supergeo/algebra.hpp"
#include "supergeo/invariants.hpp"

namespace supergeo {

struct ReducedGroup {
  std::string name;
  int dim = 0;
};

/// Ad_{exp(tX)} for X ∈ g_0, as a matrix on the algebra's coordinates.
using AdjointSampler = std::function<Eigen::MatrixXd(const Eigen::VectorXd& x, double t)>;

struct HarishChandraPair {
  ReducedGroup group;
  LieSuperalgebra algebra;
  AdjointSampler adjoint;
};

/// Adjoint action by conjugation g Y g⁻¹ with g = exp(t X) in the realization.
HarishChandraPair hc_pair_by_conjugation(ReducedGroup group, LieSuperalgebra algebra);

/// Adjoint action exp(t ad_X), for algebras without a realization.
HarishChandraPair hc_pair_by_adjoint(ReducedGroup group, LieSuperalgebra algebra);

struct HCReport {
  int group_dim = 0;
  int even_dim = 0;
  double automorphism_residual = 0.0;  // relative, over sampled t
  double derivative_residual = 0.0;    // |d/dt Ad − ad_X| at t = 0
  bool dimension_ok = false;
  bool automorphism_ok = false;
  bool derivative_ok = false;
  std::vector<std::string> failures;
  bool passed() const { return dimension_ok && automorphism_ok && derivative_ok; }
};

/// Samples X over the g_0 basis and t ∈ {1e-3, 1e-2, 0.1, 1}; the derivative
/// uses Richardson-extrapolated central differences.
HCReport validate_hc_pair(const HarishChandraPair& pair, double automorphism_tol = 1e-9,
                          double derivative_tol = 1e-6);

/// max |Ad_gᵀ F Ad_g − F| over g = exp(tX), X in the g_0 basis, t ∈ {±0.1, ±1}.
double ad_reduced_invariance(const HarishChandraPair& pair, const BilinearForm& form);

/// Same with explicit samples (X, t).
double ad_reduced_invariance(const HarishChandraPair& pair, const BilinearForm& form,
                             const std::vector<std::pair<Eigen::VectorXd, double>>& samples);

}  // namespace supergeo
