#pragma once

#include <map>
#include <string>
#include <vector>

#include "supergeo/algebra.hpp"
#include "supergeo/invariants.hpp"
#include "supergeo/involution.hpp"

namespace supergeo {

using Params = std::map<std::string, double>;

struct ExampleSummary {
  std::string name;
  std::string title;
  std::vector<std::string> parameters;
  Params defaults;
  bool non_example = false;
};

/// Registered symmetric superspaces plus the R^{1|2} non-example.
std::vector<ExampleSummary> list_examples();

/// Parameter sets of the standard verification sweep for one family.
std::vector<Params> desk_grid(const std::string& name);

struct StageResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

/// Jacobi-invariant data used to recognise k: dimensions, rank and
/// signature of its own Killing form on k_0, dimensions of [k, k].
struct Fingerprint {
  int even_dim = 0;
  int odd_dim = 0;
  int killing_rank = 0;
  Signature killing_signature;
  int derived_even = 0;
  int derived_odd = 0;
  bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const LieSuperalgebra& a, double tol = 1e-8);

struct CatalogReport {
  std::string family;
  Params params;
  std::string algebra;
  std::string expected_k;
  int k_even = 0, k_odd = 0, p_even = 0, p_odd = 0;
  std::vector<StageResult> stages;
  /// Stages whose failure the theory predicts for these parameters.
  std::vector<std::string> expected_failures;

  bool passed() const;
  const StageResult* stage(const std::string& name) const;
};

/// Runs the full pipeline; invalid parameters raise InvalidArgument.
CatalogReport verify_example(const std::string& name, const Params& params, double tol = 1e-9);

// Involutions of the registered families, exposed for tests and the CLI.
Eigen::MatrixXd sl_sosp_sigma_matrix(const Eigen::MatrixXd& x, int n, int m);
Eigen::MatrixXd sosp_u_sigma_matrix(const Eigen::MatrixXd& x, int n, int m);
Eigen::MatrixXd d21_sigma(const LieSuperalgebra& d21_algebra);

}  // namespace supergeo
