#pragma once

#include <map>
#include <string>

#include "supergeo/algebra.hpp"

namespace supergeo {

/// Matrix unit E_{rc} of size n×n (0-based).
Eigen::MatrixXd matrix_unit(int n, int r, int c);

/// gl(n|m): even basis A-block then D-block entries row-major, odd basis
/// B-block then C-block entries.
LieSuperalgebra gl(int n, int m);

/// sl(n|m). Off-diagonal entries as in gl; the diagonal is replaced by
/// E_ii + E_LL (A-block) and E_jj − E_LL (D-block, j < L), L the last index.
/// Without odd block (m = 0) the diagonal uses E_ii − E_nn.
LieSuperalgebra sl(int n, int m);

/// psl(n|n) = sl(n|n)/R·I. Representatives: traceless A-diagonal and
/// traceless D-diagonal plus the off-diagonal entries.
LieSuperalgebra psl(int n);

/// osp(n|2m) in the block form
///   [ A     B1   B2  ]
///   [ -B2ᵗ  C1   C2  ]
///   [ B1ᵗ   C3  -C1ᵗ ]
/// with A antisymmetric and C2, C3 symmetric. Pivots are ordered row-major.
LieSuperalgebra osp(int n, int m);

/// u(n|m) = {[A B; −iB* C] : A, C anti-Hermitian}, realified. Each complex
/// position contributes its real part, then its imaginary part. The matrix
/// realization is real of size 2(n+m) with blocks (2n, 2m); complex index k
/// maps to rows (Re k, Im k) with the even and odd indices grouped.
LieSuperalgebra u(int n, int m);

/// d(2,1;α) with σ3 = −σ1 − σ2. Requires σ1, σ2, σ1+σ2 non-zero.
LieSuperalgebra d21(double s1, double s2);

/// Checked variant: rejects σ1 + σ2 + σ3 ≠ 0.
LieSuperalgebra d21(double s1, double s2, double s3);

/// Same bracket with arbitrary σ3; no constraint check. Even basis
/// H_f, E_f, F_f for the three sl(2) factors, odd basis e_a⊗e_b⊗e_c in
/// lexicographic order.
LieSuperalgebra d21_unchecked(double s1, double s2, double s3);

/// The 1|2-dimensional algebra of the group law
///   (x, ξ) · (t, θ) = (x + t + ξ1θ1 + ξ2θ2, ξ + θ):
/// basis e | f1, f2 with [f_α, f_α] = 2e and everything else zero.
LieSuperalgebra r12_algebra();

/// Dispatch by family name: gl, sl, psl, osp, sosp, u, d21.
/// Integer parameters "n", "m"; d21 uses "s1", "s2" (optional "s3").
LieSuperalgebra construct_algebra(const std::string& family, const std::map<std::string, double>& params);

/// J_1 = [[0, 1], [−1, 0]]; ψ(a, b) = aᵀ J_1 b.
Eigen::Matrix2d symplectic_j();

}  // namespace supergeo
