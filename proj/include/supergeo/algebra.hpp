#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace supergeo {

inline constexpr double kDefaultTolerance = 1e-10;

/// Block matrices realising each basis element; block sizes (n, m).
///
/// With `quotient_by_identity` the matrices are representatives modulo the
/// identity matrix (psl and its relatives); coordinates are read off after
/// discarding the identity component.
struct Realization {
  int n = 0;
  int m = 0;
  std::vector<Eigen::MatrixXd> matrices;
  bool quotient_by_identity = false;
};

/// Sparse structure constant entry [e_i, e_j] ∋ value · e_k.
using StructureConstant = std::tuple<int, int, int, double>;

/// Finite-dimensional real Lie superalgebra given by structure constants.
///
/// Stored as adjoint matrices: ad(i)(k, j) = c[i][j][k], so that
/// ad(i) * Y is the coordinate vector of [e_i, Y].
class LieSuperalgebra {
 public:
  LieSuperalgebra() = default;

  /// Validates parity consistency (exact) and graded antisymmetry.
  LieSuperalgebra(std::string name, std::vector<std::string> labels, std::vector<int> parities,
                  std::vector<Eigen::MatrixXd> ad, std::optional<Realization> realization = {});

  static LieSuperalgebra from_constants(std::string name, std::vector<std::string> labels,
                                        std::vector<int> parities,
                                        const std::vector<StructureConstant>& constants,
                                        std::optional<Realization> realization = {});

  /// Structure constants read off the super-commutator of the given matrices.
  /// Brackets are computed for i <= j and mirrored, so graded antisymmetry
  /// and the parity rule hold exactly. Throws if the span is not closed.
  static LieSuperalgebra from_realization(std::string name, std::vector<std::string> labels,
                                          std::vector<int> parities, Realization realization);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& parities() const { return parities_; }
  int parity(int i) const { return parities_.at(i); }
  int dim() const { return static_cast<int>(parities_.size()); }
  int even_dim() const;
  int odd_dim() const { return dim() - even_dim(); }

  double structure_constant(int i, int j, int k) const { return ad_[i](k, j); }
  const Eigen::MatrixXd& ad(int i) const { return ad_.at(i); }
  const std::vector<Eigen::MatrixXd>& ad_matrices() const { return ad_; }
  /// ad_X for an arbitrary coefficient vector.
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Non-zero structure constants, for serialisation.
  std::vector<StructureConstant> constants() const;

  const std::optional<Realization>& realization() const { return realization_; }
  bool has_realization() const { return realization_.has_value(); }
  Eigen::MatrixXd matrix_of(const Eigen::VectorXd& x) const;
  /// Least-squares coordinates of a matrix in the realised span.
  Eigen::VectorXd coordinates_of(const Eigen::MatrixXd& mat) const;
  /// Distance of a matrix from the realised span (modulo identity if quotient).
  double span_residual(const Eigen::MatrixXd& mat) const;

  /// Copy with c[i][j][k] set to `value` and the graded-antisymmetric mirror
  /// entry adjusted to match. The realization is dropped.
  LieSuperalgebra with_structure_constant(int i, int j, int k, double value) const;

  /// Parity of a coefficient vector: 0/1, or -1 when mixed. Zero counts as even.
  int parity_of(const Eigen::VectorXd& x, double tol = 0.0) const;

 private:
  void prepare_coordinates();

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<int> parities_;
  std::vector<Eigen::MatrixXd> ad_;
  std::optional<Realization> realization_;
  // Column-pivoted QR of the vectorised basis (plus identity for quotients).
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> coords_qr_;
};

/// (−1)^{ab}
inline double koszul(int a, int b) { return (a & b & 1) ? -1.0 : 1.0; }

/// Max over basis triples of |[X,[Y,Z]] − [[X,Y],Z] − (−1)^{|X||Y|}[Y,[X,Z]]|.
double check_jacobi(const LieSuperalgebra& a);

/// tr(A) − tr(D) for a block matrix with blocks (n, m).
double supertrace(int n, int m, const Eigen::MatrixXd& mat);
double supertrace(const LieSuperalgebra& a, const Eigen::MatrixXd& mat);

/// Even basis of a first, then of b; odd likewise. Realizations are combined
/// block-diagonally when both exist and neither is a quotient.
LieSuperalgebra direct_sum(const LieSuperalgebra& a, const LieSuperalgebra& b, std::string name = {});

/// Subalgebra spanned by homogeneous columns of `basis` (given in a's
/// coordinates); columns must be ordered evens first. Throws if not closed.
LieSuperalgebra subalgebra(const LieSuperalgebra& a, const Eigen::MatrixXd& basis,
                           std::string name = {}, double tol = 1e-9);

/// Quotient by the ideal spanned by homogeneous columns of `ideal`. The
/// complement is the Euclidean orthogonal complement in each parity.
LieSuperalgebra quotient(const LieSuperalgebra& a, const Eigen::MatrixXd& ideal,
                         std::string name = {}, double tol = 1e-9);

/// Abelian superalgebra of dimension p|q.
LieSuperalgebra abelian(int p, int q, std::string name = {});

/// Coordinates -> parity-sorted column helpers.
Eigen::VectorXd basis_vector(int dim, int i);

}  // namespace supergeo
