#include <doctest.h>

#include "supergeo/catalog.hpp"
#include "supergeo/errors.hpp"
#include "supergeo/families.hpp"
#include "supergeo/hc_pair.hpp"
#include "supergeo/invariants.hpp"
#include "supergeo/involution.hpp"

using namespace supergeo;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("dimensions of the standard constructors") {
  auto dims = [](const LieSuperalgebra& a) { return std::pair{a.even_dim(), a.odd_dim()}; };
  CHECK(dims(gl(1, 1)) == std::pair{2, 2});
  CHECK(dims(gl(2, 1)) == std::pair{5, 4});
  CHECK(dims(sl(2, 1)) == std::pair{4, 4});
  CHECK(dims(sl(3, 2)) == std::pair{12, 12});
  CHECK(dims(psl(2)) == std::pair{6, 8});
  CHECK(dims(osp(3, 1)) == std::pair{6, 6});
  CHECK(dims(osp(1, 1)) == std::pair{3, 2});
  CHECK(dims(osp(4, 2)) == std::pair{16, 16});
  CHECK(dims(u(1, 1)) == std::pair{2, 2});
  CHECK(dims(u(2, 2)) == std::pair{8, 8});
  CHECK(dims(d21(1.0, 2.0)) == std::pair{9, 8});
  CHECK(dims(r12_algebra()) == std::pair{1, 2});
}

TEST_CASE("bracket of odd matrix units in gl(1|1)") {
  const LieSuperalgebra g = gl(1, 1);
  const VectorXd e12 = g.coordinates_of(matrix_unit(2, 0, 1));
  const VectorXd e21 = g.coordinates_of(matrix_unit(2, 1, 0));
  CHECK(g.parity_of(e12) == 1);
  const MatrixXd br = g.matrix_of(g.bracket(e12, e21));
  CHECK(max_abs(br - MatrixXd::Identity(2, 2)) <= 1e-15);
  // graded symmetry on odd-odd
  CHECK(max_abs(g.bracket(e12, e21) - g.bracket(e21, e12)) <= 1e-15);
}

TEST_CASE("graded Jacobi holds for every constructor") {
  for (const LieSuperalgebra& a : {gl(2, 1), sl(3, 1), psl(2), psl(3), osp(3, 1), osp(2, 2), u(2, 1), d21(1.0, -0.3),
                                   r12_algebra(), abelian(2, 3)}) {
    INFO(a.name());
    CHECK(check_jacobi(a) <= 1e-10);
  }
}

TEST_CASE("perturbing a structure constant breaks Jacobi") {
  const LieSuperalgebra a = gl(2, 1);
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (a.structure_constant(i, j, k) != 0.0 && worst == 0.0)
          worst = check_jacobi(a.with_structure_constant(i, j, k, a.structure_constant(i, j, k) + 0.1));
  CHECK(worst >= 0.1);
  CHECK(check_jacobi(d21_unchecked(1.0, 2.0, -2.9)) >= 1e-3);
  CHECK_THROWS_AS(d21(1.0, 2.0, -2.9), InvalidArgument);
}

TEST_CASE("Killing form of sl(n|m) is 2(n-m) str") {
  for (auto [n, m] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
    const LieSuperalgebra a = sl(n, m);
    CHECK(max_abs(killing_form(a) - 2.0 * (n - m) * supertrace_form(a)) <= 1e-9);
  }
}

TEST_CASE("degenerate Killing forms") {
  CHECK(max_abs(killing_form(sl(2, 2))) <= 1e-9);
  CHECK(max_abs(killing_form(psl(2))) <= 1e-9);
  CHECK(max_abs(killing_form(osp(4, 1))) <= 1e-9);
  const FormReport gl11 = analyze_form(gl(1, 1).parities(), killing_form(gl(1, 1)));
  CHECK(gl11.graded_symmetric);
  CHECK(gl11.even);
  CHECK_FALSE(gl11.nondegenerate);
}

TEST_CASE("Killing form of osp(n|2m) is (n-2m-2) str") {
  for (auto [n, m] : {std::pair{1, 1}, {3, 1}, {2, 2}}) {
    const LieSuperalgebra a = osp(n, m);
    CHECK(max_abs(killing_form(a) - double(n - 2 * m - 2) * supertrace_form(a)) <= 1e-9);
  }
}

TEST_CASE("Killing and str forms are invariant scalar superproducts") {
  const LieSuperalgebra a = osp(3, 1);
  CHECK(check_ad_invariance(a, killing_form(a)) <= 1e-10);
  CHECK(check_ad_invariance(a, supertrace_form(a)) <= 1e-10);
  CHECK(analyze_form(a.parities(), supertrace_form(a)).is_scalar_superproduct());
  const LieSuperalgebra d = d21(1.0, 2.0);
  CHECK(check_ad_invariance(d, killing_form(d)) <= 1e-10);
}

TEST_CASE("a non-invariant form is detected") {
  const LieSuperalgebra a = sl(2, 1);
  MatrixXd f = supertrace_form(a);
  f(0, 0) += 0.5;
  CHECK(check_ad_invariance(a, f) >= 0.1);
}

TEST_CASE("psl(n|n) carries a nondegenerate invariant form, n <= 3") {
  for (int n = 2; n <= 3; ++n) {
    const LieSuperalgebra a = psl(n);
    const InvariantFormSearch s = search_invariant_superproduct(a);
    CHECK(s.nondegenerate_exists);
    CHECK(check_ad_invariance(a, s.witness) <= 1e-9);
    CHECK(analyze_form(a.parities(), s.witness).is_scalar_superproduct());
  }
}

TEST_CASE("involution validation") {
  const LieSuperalgebra a = sl(3, 2);
  const MatrixXd sigma = matrix_map_to_coordinates(a, [](const MatrixXd& x) { return sl_sosp_sigma_matrix(x, 3, 1); });
  const InvolutionCheck ok = check_involution(a, sigma);
  CHECK(ok.valid);
  CHECK(ok.square_residual <= 1e-12);
  CHECK(ok.automorphism_residual <= 1e-12);

  // −id squares to id but is not an automorphism
  const InvolutionCheck bad = check_involution(a, -MatrixXd::Identity(a.dim(), a.dim()));
  CHECK_FALSE(bad.valid);
  CHECK(bad.automorphism_residual > 0.5);
  CHECK_THROWS_AS(make_involution(a, -MatrixXd::Identity(a.dim(), a.dim())), InvalidArgument);

  // parity-mixing map
  MatrixXd mix = MatrixXd::Identity(a.dim(), a.dim());
  mix(0, a.dim() - 1) = 1.0;
  CHECK(check_involution(a, mix).parity_residual > 0.5);
}

TEST_CASE("eigensplit of sl(3|2) and d(2,1)") {
  const LieSuperalgebra a = sl(3, 2);
  const MatrixXd sigma = matrix_map_to_coordinates(a, [](const MatrixXd& x) { return sl_sosp_sigma_matrix(x, 3, 1); });
  const SymmetricDecomposition s = eigensplit(a, make_involution(a, sigma));
  CHECK(s.k_even() == 6);
  CHECK(s.k_odd() == 6);
  CHECK(s.p_even() == 6);
  CHECK(s.p_odd() == 6);
  CHECK(s.max_residual() <= 1e-10);

  const LieSuperalgebra d = d21(1.0, 2.0);
  const SymmetricDecomposition t = eigensplit(d, make_involution(d, d21_sigma(d)));
  CHECK(t.k_even() == 5);
  CHECK(t.k_odd() == 4);
  CHECK(t.p_even() == 4);
  CHECK(t.p_odd() == 4);
  CHECK(t.max_residual() <= 1e-10);
}

TEST_CASE("extension of an odd symplectic form") {
  const LieSuperalgebra d = d21(1.0, 2.0);
  const int o = d.odd_dim();
  // ψ⊗ψ⊗ψ on the three two-dimensional factors
  MatrixXd psi = MatrixXd::Zero(o, o);
  const Eigen::Matrix2d j = symplectic_j();
  for (int p = 0; p < o; ++p)
    for (int q = 0; q < o; ++q) psi(p, q) = j(p >> 2, q >> 2) * j((p >> 1) & 1, (q >> 1) & 1) * j(p & 1, q & 1);
  const MatrixXd ext = extend_odd_form(d, psi);
  CHECK(check_ad_invariance(d, ext) <= 1e-9);
  CHECK(analyze_form(d.parities(), ext).is_scalar_superproduct());
  CHECK(max_abs(ext.bottomRightCorner(o, o) - psi) <= 1e-12);
  // linear in the input
  CHECK(max_abs(extend_odd_form(d, 2.0 * psi) - 2.0 * ext) <= 1e-9);

  CHECK_THROWS_AS(extend_odd_form(gl(1, 1), symplectic_j()), HypothesisFailure);
  CHECK_THROWS_AS(extend_odd_form(d, MatrixXd::Identity(o, o)), HypothesisFailure);
}

TEST_CASE("Harish-Chandra pairs") {
  const HCReport osp32 = validate_hc_pair(hc_pair_by_conjugation({"SO(3) x Sp(2)", 6}, osp(3, 1)));
  CHECK(osp32.passed());
  const HCReport u11 = validate_hc_pair(hc_pair_by_conjugation({"U(1) x U(1)", 2}, u(1, 1)));
  CHECK(u11.passed());
  const HCReport adj = validate_hc_pair(hc_pair_by_adjoint({"SL(2)^3", 9}, d21(1.0, 2.0)));
  CHECK(adj.passed());
  const HCReport wrong = validate_hc_pair(hc_pair_by_conjugation({"SO(3)", 3}, osp(3, 1)));
  CHECK_FALSE(wrong.dimension_ok);
  CHECK_FALSE(wrong.passed());
}

TEST_CASE("Ad-invariance of the str form under the reduced group") {
  const HarishChandraPair pair = hc_pair_by_conjugation({"SO(3) x Sp(2)", 6}, osp(3, 1));
  CHECK(ad_reduced_invariance(pair, supertrace_form(pair.algebra)) <= 1e-9);
}

TEST_CASE("bi-invariant curvature matches the connection") {
  const LieSuperalgebra a = sl(3, 1);
  for (int x = 0; x < a.dim(); x += 3)
    for (int y = 1; y < a.dim(); y += 4)
      for (int z = 0; z < a.dim(); z += 5) {
        const VectorXd X = basis_vector(a.dim(), x), Y = basis_vector(a.dim(), y), Z = basis_vector(a.dim(), z);
        CHECK((biinv_curvature(a, X, Y, Z) + 0.25 * a.bracket(a.bracket(X, Y), Z)).norm() == 0.0);
        CHECK((biinv_curvature(a, X, Y, Z) - curvature_from_connection(a, X, Y, Z)).norm() <= 1e-12);
      }
  CHECK(biinv_curvature_symmetries(a, supertrace_form(a)).max() <= 1e-10);
}

TEST_CASE("invariant superproduct search on the R^{1|2} algebra") {
  const LieSuperalgebra r = r12_algebra();
  const InvariantFormSearch s = search_invariant_superproduct(r);
  CHECK_FALSE(s.nondegenerate_exists);
  CHECK(s.solution_dim >= 1);
}

TEST_CASE("supertrace") {
  const LieSuperalgebra a = gl(2, 1);
  CHECK(supertrace(2, 1, MatrixXd::Identity(3, 3)) == 1.0);
  MatrixXd odd = MatrixXd::Zero(3, 3);
  odd(0, 2) = 4.0;
  odd(2, 1) = -1.0;
  CHECK(supertrace(a, odd) == 0.0);
  const MatrixXd diag = Eigen::Vector3d(1.5, 2.0, 0.25).asDiagonal();
  CHECK(supertrace(a, diag) == 3.25);
  const LieSuperalgebra s = sl(2, 1);
  for (int i = 0; i < s.dim(); ++i) CHECK(supertrace(s, s.matrix_of(basis_vector(s.dim(), i))) == 0.0);
}

TEST_CASE("trivial brackets") {
  const LieSuperalgebra g = gl(1, 1);
  const VectorXd e12 = g.coordinates_of(matrix_unit(2, 0, 1));
  CHECK(g.bracket(e12, e12).isZero(0.0));
  const LieSuperalgebra ab = abelian(2, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(ab.bracket(basis_vector(4, i), basis_vector(4, j)).isZero(0.0));
  CHECK(check_jacobi(gl(2, 1)) <= 1e-12);
}

TEST_CASE("Killing forms of all constructors are ad-invariant") {
  for (const LieSuperalgebra& a : {gl(2, 1), sl(3, 1), psl(2), osp(2, 1), u(1, 2), d21(0.5, 1.5), r12_algebra()}) {
    INFO(a.name());
    CHECK(check_ad_invariance(a, killing_form(a)) <= 1e-10);
  }
}

TEST_CASE("reduced-group invariance is exact at the identity") {
  const HarishChandraPair pair = hc_pair_by_conjugation({"SO(3) x Sp(2)", 6}, osp(3, 1));
  const LieSuperalgebra& a = pair.algebra;
  CHECK(ad_reduced_invariance(pair, killing_form(a)) <= 1e-9);
  MatrixXd junk = MatrixXd::Random(a.dim(), a.dim());
  // coordinates come back through a least-squares solve
  CHECK(ad_reduced_invariance(pair, junk, {{basis_vector(a.dim(), 0), 0.0}}) <= 1e-14);
}

TEST_CASE("identity involution") {
  const LieSuperalgebra a = osp(3, 1);
  const MatrixXd id = MatrixXd::Identity(a.dim(), a.dim());
  CHECK(check_involution(a, id).valid);
  const SymmetricDecomposition s = eigensplit(a, make_involution(a, id));
  CHECK(s.k.cols() == a.dim());
  CHECK(s.p.cols() == 0);
}

TEST_CASE("bi-invariant connection and curvature vanish on abelian algebras") {
  const LieSuperalgebra a = abelian(2, 2);
  const VectorXd x = VectorXd::LinSpaced(4, 1, 4), y = VectorXd::LinSpaced(4, -1, 2);
  CHECK(biinv_connection(a, x, y).isZero(0.0));
  CHECK(biinv_curvature(a, x, y, x).isZero(0.0));
}
