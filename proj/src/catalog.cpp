#include "supergeo/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "supergeo/errors.hpp"
#include "supergeo/families.hpp"
#include "supergeo/hc_pair.hpp"

namespace supergeo {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int int_param(const Params& p, const std::string& key, int min_value) {
  auto it = p.find(key);
  if (it == p.end()) throw InvalidArgument("missing parameter '" + key + "'");
  const double v = it->second;
  if (std::round(v) != v || v < min_value)
    throw InvalidArgument("parameter '" + key + "' must be an integer >= " + std::to_string(min_value));
  return static_cast<int>(v);
}

double real_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw InvalidArgument("missing parameter '" + key + "'");
  if (!std::isfinite(it->second)) throw InvalidArgument("parameter '" + key + "' is not finite");
  return it->second;
}

void reject_unknown(const Params& p, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : p) {
    (void)v;
    if (std::none_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; }))
      throw InvalidArgument("unknown parameter '" + k + "'");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

int rank_of(const MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol) ++r;
  return r;
}

MatrixXd random_matrix(int r, int c, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

// Stage bookkeeping for one run.
struct Pipeline {
  CatalogReport report;
  double tol;

  StageResult& add(std::string name, bool passed, double residual, std::string detail = {}) {
    report.stages.push_back({std::move(name), passed, residual, std::move(detail)});
    return report.stages.back();
  }
  StageResult& below(std::string name, double residual, double limit, std::string detail = {}) {
    return add(std::move(name), residual <= limit, residual, std::move(detail));
  }
};

// What each family contributes to the shared pipeline.
struct FamilySetup {
  LieSuperalgebra algebra;
  MatrixXd sigma;
  LieSuperalgebra reference_k;
  std::string expected_k;
  std::function<MatrixXd(const LieSuperalgebra&)> form;  // on g
  std::function<HarishChandraPair(const LieSuperalgebra&)> hc;
  std::function<void(Pipeline&, const LieSuperalgebra&, const MatrixXd& p_basis, const MatrixXd& form_p)> extras;
  std::vector<std::string> expected_failures;
};

// Coordinates of a matrix in g, plus how far it is from being in p.
struct PMember {
  VectorXd x;
  double residual;
};

PMember in_p(const LieSuperalgebra& a, const MatrixXd& sigma, const MatrixXd& mat) {
  VectorXd x = a.coordinates_of(mat);
  const double r = std::max(a.span_residual(mat), (sigma * x + x).cwiseAbs().maxCoeff());
  return {x, r};
}

// Odd pairing identity of the sl-type families: X, Y built from B1, B2.
void sl_odd_identity(Pipeline& pl, const LieSuperalgebra& a, const MatrixXd& sigma, const MatrixXd& form, int n,
                     int m) {
  std::mt19937 rng(20240611u);
  double worst = 0.0, min_value = 1e300, form_gap = 0.0, membership = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const MatrixXd b1 = random_matrix(n, m, rng), b2 = random_matrix(n, m, rng);
    MatrixXd x = MatrixXd::Zero(n + 2 * m, n + 2 * m), y = x;
    x.block(0, n, n, m) = b1;
    x.block(0, n + m, n, m) = b2;
    x.block(n, 0, m, n) = b2.transpose();
    x.block(n + m, 0, m, n) = -b1.transpose();
    y.block(0, n, n, m) = -b2;
    y.block(0, n + m, n, m) = b1;
    y.block(n, 0, m, n) = b1.transpose();
    y.block(n + m, 0, m, n) = b2.transpose();
    const PMember px = in_p(a, sigma, x), py = in_p(a, sigma, y);
    membership = std::max({membership, px.residual, py.residual});
    const double value = supertrace(n, 2 * m, x * y);
    const double expected = 2.0 * ((b1 * b1.transpose()).trace() + (b2 * b2.transpose()).trace());
    worst = std::max(worst, std::abs(value - expected));
    min_value = std::min(min_value, value);
    form_gap = std::max(form_gap, std::abs(px.x.dot(form * py.x) - value));
  }
  const double r = std::max({worst, form_gap, membership});
  pl.add("odd-pairing-identity", r <= pl.tol * 100 && min_value > 0, r,
         "str(XY) = 2(tr B1B1^t + tr B2B2^t), min value " + fmt(min_value));
}

// Every stage that depends only on the decomposition and the form.
void run_pipeline(Pipeline& pl, FamilySetup& s) {
  const LieSuperalgebra& a = s.algebra;
  const double tol = pl.tol;
  pl.report.algebra = a.name();
  pl.report.expected_k = s.expected_k;
  pl.report.expected_failures = s.expected_failures;

  pl.below("construct", check_jacobi(a), tol, a.name() + ", dim " + std::to_string(a.even_dim()) + "|" +
                                                  std::to_string(a.odd_dim()));

  const InvolutionCheck ic = check_involution(a, s.sigma, tol);
  pl.add("involution", ic.valid,
         std::max({ic.square_residual, ic.parity_residual, ic.automorphism_residual}), ic.message);
  if (!ic.valid) return;

  const SymmetricDecomposition dec = eigensplit(a, Involution{s.sigma});
  pl.report.k_even = dec.k_even();
  pl.report.k_odd = dec.k_odd();
  pl.report.p_even = dec.p_even();
  pl.report.p_odd = dec.p_odd();
  const bool dims_ok = dec.k_even() == s.reference_k.even_dim() && dec.k_odd() == s.reference_k.odd_dim();
  pl.add("eigensplit", dims_ok && dec.max_residual() <= tol, dec.max_residual(),
         "k " + std::to_string(dec.k_even()) + "|" + std::to_string(dec.k_odd()) + ", p " +
             std::to_string(dec.p_even()) + "|" + std::to_string(dec.p_odd()) + ", expected k " +
             std::to_string(s.reference_k.even_dim()) + "|" + std::to_string(s.reference_k.odd_dim()));
  if (!dims_ok) return;

  const LieSuperalgebra k_alg = subalgebra(a, dec.k, "k", 1e-8);
  const Fingerprint got = fingerprint(k_alg), want = fingerprint(s.reference_k);
  {
    std::ostringstream os;
    os << "k ~ " << s.expected_k << ": Killing rank " << got.killing_rank << " (" << got.killing_signature.positive
       << "+," << got.killing_signature.negative << "-), [k,k] " << got.derived_even << "|" << got.derived_odd;
    if (!(got == want))
      os << "; expected rank " << want.killing_rank << " (" << want.killing_signature.positive << "+,"
         << want.killing_signature.negative << "-), [k,k] " << want.derived_even << "|" << want.derived_odd;
    pl.add("identify-k", got == want, 0.0, os.str());
  }

  const MatrixXd form = s.form(a);
  const MatrixXd& p = dec.p;
  const MatrixXd fp = restrict_form(form, p);
  const FormReport fr = analyze_form(dec.p_parities, fp, tol);
  pl.below("form-graded-symmetric", fr.symmetry_residual, tol);
  pl.below("form-even", fr.parity_residual, tol);

  // ad_k-invariance of the form on p: C = P⁺ ad_X P, defect CᵀF + S F C.
  const MatrixXd p_pinv = p.completeOrthogonalDecomposition().pseudoInverse();
  double defect = 0.0, leak = 0.0;
  for (int c = 0; c < dec.k.cols(); ++c) {
    const int px = dec.k_parities[static_cast<std::size_t>(c)];
    const MatrixXd adp = a.ad(VectorXd(dec.k.col(c))) * p;
    const MatrixXd cm = p_pinv * adp;
    leak = std::max(leak, max_abs(adp - p * cm));
    VectorXd sgn(p.cols());
    for (int j = 0; j < p.cols(); ++j) sgn(j) = koszul(px, dec.p_parities[static_cast<std::size_t>(j)]);
    defect = std::max(defect, max_abs(cm.transpose() * fp + sgn.asDiagonal() * fp * cm));
  }
  pl.below("ad-k-invariant", std::max(defect, leak), tol, "leakage " + fmt(leak));

  // Ad_{K_red}: exp of k_0 directions through the group's adjoint action.
  const HarishChandraPair pair = s.hc(a);
  const HCReport hr = validate_hc_pair(pair, 1e-9, 1e-6);
  {
    std::string why;
    for (const auto& f : hr.failures) why += (why.empty() ? "" : "; ") + f;
    pl.add("hc-pair", hr.passed(), hr.automorphism_residual, pair.group.name + (why.empty() ? "" : ": " + why));
  }
  double ad_red = 0.0;
  const double scale = std::max(1.0, max_abs(fp));
  for (int c = 0; c < dec.k_even(); ++c) {
    for (double t : {0.3, -0.7, 1.0}) {
      const MatrixXd ad = pair.adjoint(VectorXd(dec.k.col(c)), t);
      const MatrixXd adp = ad * p;
      const MatrixXd cm = p_pinv * adp;
      const double norm = std::max(1.0, max_abs(adp));
      ad_red = std::max(ad_red, max_abs(adp - p * cm) / norm);
      ad_red = std::max(ad_red, max_abs(cm.transpose() * fp * cm - fp) / (scale * norm * norm));
    }
  }
  pl.below("Ad-K-invariant", ad_red, 1e-8, "relative, sampled exp(t X), X in k_0");

  {
    std::ostringstream os;
    os << "rank " << fr.rank_even << "|" << fr.rank_odd << " of " << dec.p_even() << "|" << dec.p_odd()
       << ", min singular " << fmt(fr.min_singular_even) << "|" << fmt(fr.min_singular_odd);
    pl.add("nondegenerate", fr.nondegenerate, std::min(fr.min_singular_even, fr.min_singular_odd), os.str());
  }

  if (s.extras) s.extras(pl, a, p, fp);
}

// --- family definitions ----------------------------------------------------

HarishChandraPair by_conjugation(const std::string& name, const LieSuperalgebra& a) {
  return hc_pair_by_conjugation(ReducedGroup{name, a.even_dim()}, a);
}

std::string nm(int n, int m) { return std::to_string(n) + "|" + std::to_string(m); }

FamilySetup sl_sosp(const Params& prm) {
  reject_unknown(prm, {"n", "m"});
  const int n = int_param(prm, "n", 1), m = int_param(prm, "m", 1);
  FamilySetup s;
  s.algebra = sl(n, 2 * m);
  s.sigma = matrix_map_to_coordinates(s.algebra, [n, m](const MatrixXd& x) { return sl_sosp_sigma_matrix(x, n, m); });
  s.reference_k = osp(n, m);
  s.expected_k = "osp(" + nm(n, 2 * m) + ")";
  s.form = [](const LieSuperalgebra& a) { return supertrace_form(a); };
  s.hc = [n, m](const LieSuperalgebra& a) { return by_conjugation("SL(" + nm(n, 2 * m) + ")_red", a); };
  if (n == 2 * m) s.expected_failures = {"nondegenerate"};
  const MatrixXd sigma = s.sigma;
  s.extras = [n, m, sigma](Pipeline& pl, const LieSuperalgebra& a, const MatrixXd& p, const MatrixXd& fp) {
    sl_odd_identity(pl, a, sigma, supertrace_form(a), n, m);
    // Killing form on p against the str-form.
    const double factor = 2.0 * (n - 2 * m);
    const MatrixXd kp = restrict_form(killing_form(a), p);
    const double r = max_abs(kp - factor * fp);
    pl.add("killing-multiple", r <= pl.tol * std::max(1.0, max_abs(kp)), r,
           "B = " + fmt(factor) + " str on p" + (n == 2 * m ? " (Killing form vanishes)" : ""));
    // u(1) direction Z = diag(I/n | I/2m) and the radical of the form on p.
    MatrixXd z = MatrixXd::Zero(n + 2 * m, n + 2 * m);
    z.topLeftCorner(n, n).setIdentity();
    z.topLeftCorner(n, n) /= n;
    z.bottomRightCorner(2 * m, 2 * m).setIdentity();
    z.bottomRightCorner(2 * m, 2 * m) /= 2.0 * m;
    const PMember pz = in_p(a, sigma, z);
    const VectorXd zp = p.completeOrthogonalDecomposition().solve(pz.x);
    const double pairing = (fp * zp).cwiseAbs().maxCoeff();
    Eigen::JacobiSVD<MatrixXd> svd(fp);
    const auto& sv = svd.singularValues();
    const int radical = static_cast<int>((sv.array() <= pl.tol * std::max(1.0, sv(0))).count());
    if (n == 2 * m) {
      pl.add("u1-radical", radical == 1 && pairing <= pl.tol && pz.residual <= pl.tol, pairing,
             "radical of str on p has dim " + std::to_string(radical) + ", spanned by diag(I/n | I/2m)");
    } else {
      pl.add("u1-radical", radical == 0 && pairing > pl.tol, pairing,
             "diag(I/n | I/2m) pairs non-trivially, str(Z^2) = " + fmt(supertrace(n, 2 * m, z * z)));
    }
  };
  return s;
}

FamilySetup psl_sosp(const Params& prm) {
  reject_unknown(prm, {"m"});
  const int m = int_param(prm, "m", 1), n = 2 * m;
  FamilySetup s;
  s.algebra = psl(n);
  s.sigma = matrix_map_to_coordinates(s.algebra, [n, m](const MatrixXd& x) { return sl_sosp_sigma_matrix(x, n, m); });
  s.reference_k = osp(n, m);
  s.expected_k = "osp(" + nm(n, n) + ")";
  s.form = [](const LieSuperalgebra& a) { return supertrace_form(a); };
  s.hc = [n](const LieSuperalgebra& a) { return by_conjugation("PSL(" + nm(n, n) + ")_red", a); };
  const MatrixXd sigma = s.sigma;
  s.extras = [n, m, sigma](Pipeline& pl, const LieSuperalgebra& a, const MatrixXd&, const MatrixXd&) {
    sl_odd_identity(pl, a, sigma, supertrace_form(a), n, m);
    const double k = max_abs(killing_form(a));
    pl.below("killing-vanishes", k, pl.tol, "Killing form of psl(" + nm(n, n) + ")");
  };
  return s;
}

// s(gl(n1|m1) x gl(n2|m2)), divided by the identity when N = M.
LieSuperalgebra s_gl_gl(int n1, int m1, int n2, int m2) {
  const LieSuperalgebra g1 = gl(n1, m1), g2 = gl(n2, m2);
  const LieSuperalgebra sum = direct_sum(g1, g2);
  const int e1 = g1.even_dim(), e2 = g2.even_dim(), o1 = g1.odd_dim(), o2 = g2.odd_dim();
  // even coordinates: g1 evens, g2 evens; odd: g1 odds, g2 odds
  VectorXd str_fn(e1 + e2), identity = VectorXd::Zero(sum.dim());
  for (int i = 0; i < e1; ++i) str_fn(i) = supertrace(n1, m1, g1.realization()->matrices[static_cast<std::size_t>(i)]);
  for (int i = 0; i < e2; ++i)
    str_fn(e1 + i) = supertrace(n2, m2, g2.realization()->matrices[static_cast<std::size_t>(i)]);
  identity.head(e1) = g1.coordinates_of(MatrixXd::Identity(n1 + m1, n1 + m1)).head(e1);
  identity.segment(e1, e2) = g2.coordinates_of(MatrixXd::Identity(n2 + m2, n2 + m2)).head(e2);
  const MatrixXd kernel = Eigen::FullPivLU<MatrixXd>(str_fn.transpose()).kernel();
  MatrixXd basis = MatrixXd::Zero(sum.dim(), kernel.cols() + o1 + o2);
  basis.topLeftCorner(e1 + e2, kernel.cols()) = kernel;
  for (int j = 0; j < o1 + o2; ++j) basis(e1 + e2 + j, kernel.cols() + j) = 1.0;
  const std::string name = "s(gl(" + nm(n1, m1) + ")+gl(" + nm(n2, m2) + "))";
  const LieSuperalgebra sub = subalgebra(sum, basis, name);
  if (n1 + n2 != m1 + m2) return sub;
  const VectorXd id_sub = basis.colPivHouseholderQr().solve(identity);
  return quotient(sub, id_sub, "p" + name);
}

FamilySetup sl_s_gl_gl(const Params& prm) {
  reject_unknown(prm, {"n1", "n2", "m1", "m2"});
  const int n1 = int_param(prm, "n1", 0), n2 = int_param(prm, "n2", 0);
  const int m1 = int_param(prm, "m1", 0), m2 = int_param(prm, "m2", 0);
  if (n1 + m1 == 0 || n2 + m2 == 0) throw InvalidArgument("both gl factors must be non-trivial");
  const int n = n1 + n2, m = m1 + m2;
  if (n == 0 || m == 0) throw InvalidArgument("need n1+n2 >= 1 and m1+m2 >= 1");
  if (n == m && n < 2) throw InvalidArgument("psl(1|1) is abelian; need n1+n2 = m1+m2 >= 2");
  FamilySetup s;
  s.algebra = n == m ? psl(n) : sl(n, m);
  s.sigma = matrix_map_to_coordinates(s.algebra, [=](const MatrixXd& x) {
    VectorXd d(n + m);
    d << VectorXd::Ones(n1), -VectorXd::Ones(n2), VectorXd::Ones(m1), -VectorXd::Ones(m2);
    return MatrixXd(d.asDiagonal() * x * d.asDiagonal());
  });
  s.reference_k = s_gl_gl(n1, m1, n2, m2);
  s.expected_k = s.reference_k.name();
  s.form = [](const LieSuperalgebra& a) { return supertrace_form(a); };
  s.hc = [n, m](const LieSuperalgebra& a) {
    return by_conjugation((n == m ? "PSL(" : "SL(") + nm(n, m) + ")_red", a);
  };
  s.extras = [n, m](Pipeline& pl, const LieSuperalgebra& a, const MatrixXd& p, const MatrixXd& fp) {
    const MatrixXd kp = restrict_form(killing_form(a), p);
    if (n == m) {
      pl.below("killing-vanishes", max_abs(kp), pl.tol, "str on the quotient is used instead");
    } else {
      const double r = max_abs(kp - 2.0 * (n - m) * fp);
      pl.add("killing-multiple", r <= pl.tol * std::max(1.0, max_abs(kp)), r, "B = " + fmt(2.0 * (n - m)) + " str on p");
    }
  };
  return s;
}

FamilySetup sosp_u(const Params& prm) {
  reject_unknown(prm, {"n", "m"});
  const int n = int_param(prm, "n", 1), m = int_param(prm, "m", 1);
  FamilySetup s;
  s.algebra = osp(2 * n, m);
  s.sigma = matrix_map_to_coordinates(s.algebra, [n, m](const MatrixXd& x) { return sosp_u_sigma_matrix(x, n, m); });
  s.reference_k = u(n, m);
  s.expected_k = "u(" + nm(n, m) + ")";
  s.form = [](const LieSuperalgebra& a) { return MatrixXd(-supertrace_form(a)); };
  s.hc = [n, m](const LieSuperalgebra& a) { return by_conjugation("SOSp(" + nm(2 * n, 2 * m) + ")_red", a); };
  const MatrixXd sigma = s.sigma;
  s.extras = [n, m, sigma](Pipeline& pl, const LieSuperalgebra& a, const MatrixXd& p, const MatrixXd&) {
    const int d = 2 * n + 2 * m;
    const MatrixXd str = supertrace_form(a);
    std::mt19937 rng(977u);
    double worst = 0.0, max_value = -1e300, membership = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      MatrixXd a1 = random_matrix(n, n, rng), a2 = random_matrix(n, n, rng);
      MatrixXd c1 = random_matrix(m, m, rng), c2 = random_matrix(m, m, rng);
      a1 = (a1 - a1.transpose()).eval();
      a2 = (a2 - a2.transpose()).eval();
      c1 = (c1 + c1.transpose()).eval();
      c2 = (c2 + c2.transpose()).eval();
      MatrixXd x = MatrixXd::Zero(d, d);
      x.block(0, 0, n, n) = a1;
      x.block(0, n, n, n) = a2;
      x.block(n, 0, n, n) = a2;
      x.block(n, n, n, n) = -a1;
      x.block(2 * n, 2 * n, m, m) = c1;
      x.block(2 * n, 2 * n + m, m, m) = c2;
      x.block(2 * n + m, 2 * n, m, m) = c2;
      x.block(2 * n + m, 2 * n + m, m, m) = -c1;
      membership = std::max(membership, in_p(a, sigma, x).residual);
      const double value = supertrace(2 * n, 2 * m, x * x);
      const double expected = 2.0 * (a1 * a1 + a2 * a2).trace() - 2.0 * (c1 * c1 + c2 * c2).trace();
      worst = std::max(worst, std::abs(value - expected));
      max_value = std::max(max_value, value);
    }
    // definiteness on all of p_0, not just the samples
    std::vector<int> even_cols;
    for (int j = 0; j < p.cols(); ++j)
      if (a.parity_of(VectorXd(p.col(j))) == 0) even_cols.push_back(j);
    const MatrixXd str_p0 = restrict_form(str, p(Eigen::all, even_cols));
    const Signature sig = signature(str_p0, 1e-9 * std::max(1.0, max_abs(str_p0)));
    const double r = std::max(worst, membership);
    pl.add("even-negative-definite", r <= pl.tol * 100 && max_value < 0 && sig.positive == 0 && sig.zero == 0, r,
           "str(X^2) = 2 tr(A1^2+A2^2) - 2 tr(C1^2+C2^2); str on p_0 has signature (" +
               std::to_string(sig.positive) + "+," + std::to_string(sig.negative) + "-)");

    worst = 0.0;
    membership = 0.0;
    double min_value = 1e300, form_gap = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      const MatrixXd b1 = random_matrix(n, m, rng), b2 = random_matrix(n, m, rng);
      // odd blocks in the osp layout: first column block [top; bottom], second likewise
      auto build = [&](const MatrixXd& f_top, const MatrixXd& f_bot, const MatrixXd& s_top, const MatrixXd& s_bot) {
        MatrixXd x = MatrixXd::Zero(d, d);
        MatrixXd first(2 * n, m), second(2 * n, m);
        first << f_top, f_bot;
        second << s_top, s_bot;
        x.block(0, 2 * n, 2 * n, m) = first;
        x.block(0, 2 * n + m, 2 * n, m) = second;
        x.block(2 * n, 0, m, 2 * n) = -second.transpose();
        x.block(2 * n + m, 0, m, 2 * n) = first.transpose();
        return x;
      };
      const MatrixXd x = build(b1, b2, b2, -b1);
      const MatrixXd y = build(b2, -b1, -b1, -b2);
      const PMember px = in_p(a, sigma, x), py = in_p(a, sigma, y);
      membership = std::max({membership, px.residual, py.residual});
      const double value = supertrace(2 * n, 2 * m, x * y);
      const double expected = 4.0 * (b1 * b1.transpose() + b2 * b2.transpose()).trace();
      worst = std::max(worst, std::abs(value - expected));
      min_value = std::min(min_value, value);
      form_gap = std::max(form_gap, std::abs(px.x.dot(str * py.x) - value));
    }
    const double r2 = std::max({worst, membership, form_gap});
    pl.add("odd-pairing-identity", r2 <= pl.tol * 100 && min_value > 0, r2,
           "str(XY) = 4 tr(B1B1^t + B2B2^t), min value " + fmt(min_value));
  };
  return s;
}

FamilySetup sosp_s_osp_osp(const Params& prm) {
  reject_unknown(prm, {"n1", "n2", "m1", "m2"});
  const int n1 = int_param(prm, "n1", 0), n2 = int_param(prm, "n2", 0);
  const int m1 = int_param(prm, "m1", 0), m2 = int_param(prm, "m2", 0);
  if (n1 + m1 == 0 || n2 + m2 == 0) throw InvalidArgument("both osp factors must be non-trivial");
  if (m1 + m2 == 0) throw InvalidArgument("need m1 + m2 >= 1");
  const int n = n1 + n2, m = m1 + m2;
  FamilySetup s;
  s.algebra = osp(n, m);
  s.sigma = matrix_map_to_coordinates(s.algebra, [=](const MatrixXd& x) {
    VectorXd d(n + 2 * m);
    d << VectorXd::Ones(n1), -VectorXd::Ones(n2), VectorXd::Ones(m1), -VectorXd::Ones(m2), VectorXd::Ones(m1),
        -VectorXd::Ones(m2);
    return MatrixXd(d.asDiagonal() * x * d.asDiagonal());
  });
  const std::string k1 = "osp(" + nm(n1, 2 * m1) + ")", k2 = "osp(" + nm(n2, 2 * m2) + ")";
  s.reference_k = direct_sum(osp(n1, m1), osp(n2, m2), k1 + "+" + k2);
  s.expected_k = k1 + "+" + k2;
  s.form = [](const LieSuperalgebra& a) { return supertrace_form(a); };
  s.hc = [n, m](const LieSuperalgebra& a) { return by_conjugation("SOSp(" + nm(n, 2 * m) + ")_red", a); };
  return s;
}

// <u1⊗u2⊗u3, v1⊗v2⊗v3>_1 = ψ(u1,v1)ψ(u2,v2)ψ(u3,v3)
MatrixXd triple_psi() {
  MatrixXd f(8, 8);
  const Eigen::Matrix2d j = symplectic_j();
  for (int u = 0; u < 8; ++u)
    for (int v = 0; v < 8; ++v) f(u, v) = j(u >> 2, v >> 2) * j((u >> 1) & 1, (v >> 1) & 1) * j(u & 1, v & 1);
  return f;
}

FamilySetup d21_family(const Params& prm) {
  reject_unknown(prm, {"s1", "s2"});
  const double s1 = real_param(prm, "s1"), s2 = real_param(prm, "s2");
  FamilySetup s;
  s.algebra = d21(s1, s2);
  s.sigma = d21_sigma(s.algebra);
  s.reference_k = direct_sum(abelian(1, 0, "so(2)"), osp(2, 1), "so(2)+osp(2|2)");
  s.expected_k = "so(2)+osp(2|2)";
  s.form = [](const LieSuperalgebra& a) { return extend_odd_form(a, triple_psi()); };
  s.hc = [](const LieSuperalgebra& a) { return hc_pair_by_adjoint(ReducedGroup{"SL(2)^3", a.even_dim()}, a); };
  const MatrixXd sigma = s.sigma;
  s.extras = [sigma](Pipeline& pl, const LieSuperalgebra& a, const MatrixXd& p, const MatrixXd&) {
    const MatrixXd form = extend_odd_form(a, triple_psi());
    const double inv = check_ad_invariance(a, form);
    pl.below("extension-invariant", inv, pl.tol, "extended form is ad_g-invariant on all of g");
    pl.below("sigma-orthogonal", max_abs(sigma.transpose() * form * sigma - form), pl.tol);
    // k ⊥ p: k is the complement eigenspace
    const SymmetricDecomposition dec = eigensplit(a, Involution{sigma});
    pl.below("k-perp-p", max_abs(dec.k.transpose() * form * p), pl.tol);
  };
  return s;
}

CatalogReport verify_r12(const Params& prm, double tol) {
  reject_unknown(prm, {});
  Pipeline pl{{}, tol};
  pl.report.family = "r12-group";
  const LieSuperalgebra a = r12_algebra();
  pl.report.algebra = a.name();
  pl.below("construct", check_jacobi(a), tol, "group law (x,xi)(t,theta) = (x+t+xi1 theta1+xi2 theta2, xi+theta)");

  const InvariantFormSearch search = search_invariant_superproduct(a, tol);
  pl.add("no-ad-invariant-superproduct", !search.nondegenerate_exists, search.solution_dim,
         "ad_g-invariant even graded-symmetric forms: " + std::to_string(search.solution_dim) +
             "-dimensional, none non-degenerate");

  MatrixXd w = MatrixXd::Zero(3, 3);
  w(0, 0) = 1.0;
  w(1, 2) = 1.0;
  w(2, 1) = -1.0;
  const FormReport fr = analyze_form(a.parities(), w, tol);
  pl.add("witness-scalar-superproduct", fr.is_scalar_superproduct(), fr.symmetry_residual,
         "<e,e> = 1, <f1,f2> = 1");
  const HarishChandraPair pair = hc_pair_by_adjoint(ReducedGroup{"R", 1}, a);
  pl.below("witness-Ad-Gred-invariant", ad_reduced_invariance(pair, w), tol);
  const double inv = check_ad_invariance(a, w);
  pl.add("witness-not-ad-invariant", inv > tol, inv, "<[f1,f1],e> + <f1,[f1,e]> = 2");
  return pl.report;
}

}  // namespace

MatrixXd sl_sosp_sigma_matrix(const MatrixXd& x, int n, int m) {
  const int d = n + 2 * m;
  if (x.rows() != d || x.cols() != d) throw DimensionMismatch("sl-sosp involution expects size n + 2m");
  auto blk = [&](int r, int c, int h, int w) { return MatrixXd(x.block(r, c, h, w)); };
  const MatrixXd a = blk(0, 0, n, n), b1 = blk(0, n, n, m), b2 = blk(0, n + m, n, m);
  const MatrixXd c1 = blk(n, 0, m, n), d1 = blk(n, n, m, m), d2 = blk(n, n + m, m, m);
  const MatrixXd c2 = blk(n + m, 0, m, n), d3 = blk(n + m, n, m, m), d4 = blk(n + m, n + m, m, m);
  MatrixXd y(d, d);
  y << -a.transpose(), c2.transpose(), -c1.transpose(),  //
      -b2.transpose(), -d4.transpose(), d2.transpose(),  //
      b1.transpose(), d3.transpose(), -d1.transpose();
  return y;
}

MatrixXd sosp_u_sigma_matrix(const MatrixXd& x, int n, int m) {
  const int d = 2 * n + 2 * m;
  if (x.rows() != d || x.cols() != d) throw DimensionMismatch("sosp-u involution expects size 2n + 2m");
  auto blk = [&](int r, int c, int h, int w) { return MatrixXd(x.block(r, c, h, w)); };
  const int o = 2 * n;
  const MatrixXd a1 = blk(0, 0, n, n), a2 = blk(0, n, n, n), a3 = blk(n, n, n, n);
  const MatrixXd b1 = blk(0, o, n, m), b2 = blk(0, o + m, n, m), b3 = blk(n, o, n, m), b4 = blk(n, o + m, n, m);
  const MatrixXd c1 = blk(o, o, m, m), c2 = blk(o, o + m, m, m), c3 = blk(o + m, o, m, m);
  MatrixXd y(d, d);
  y << a3, a2.transpose(), b4, -b3,                  //
      -a2, a1, -b2, b1,                              //
      b3.transpose(), -b1.transpose(), -c1.transpose(), -c3,  //
      b4.transpose(), -b2.transpose(), -c2, c1;
  return y;
}

MatrixXd d21_sigma(const LieSuperalgebra& a) {
  if (a.dim() != 17 || a.even_dim() != 9) throw DimensionMismatch("d21 involution expects the 9|8 basis");
  MatrixXd s = MatrixXd::Zero(17, 17);
  for (int f = 0; f < 2; ++f) {
    s(3 * f, 3 * f) = -1.0;          // H -> -H
    s(3 * f + 2, 3 * f + 1) = -1.0;  // E -> -F
    s(3 * f + 1, 3 * f + 2) = -1.0;  // F -> -E
  }
  for (int t = 6; t < 9; ++t) s(t, t) = 1.0;
  // J e1 = -e2, J e2 = e1 on the first two tensor factors
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const double sign = (a1 == 0 ? -1.0 : 1.0) * (b == 0 ? -1.0 : 1.0);
        s(9 + 4 * (1 - a1) + 2 * (1 - b) + c, 9 + 4 * a1 + 2 * b + c) = sign;
      }
  return s;
}

Fingerprint fingerprint(const LieSuperalgebra& a, double tol) {
  Fingerprint fp;
  fp.even_dim = a.even_dim();
  fp.odd_dim = a.odd_dim();
  std::vector<int> ev, od;
  for (int i = 0; i < a.dim(); ++i) (a.parity(i) == 0 ? ev : od).push_back(i);
  const MatrixXd k = killing_form(a);
  const MatrixXd k0 = k(ev, ev);
  const double ktol = tol * std::max(1.0, max_abs(k0));
  fp.killing_rank = rank_of(k0, ktol);
  fp.killing_signature = signature(k0, ktol);
  MatrixXd brackets(a.dim(), a.dim() * (a.dim() + 1) / 2);
  int col = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) brackets.col(col++) = a.ad(i).col(j);
  const double btol = tol * std::max(1.0, max_abs(brackets));
  fp.derived_even = rank_of(brackets(ev, Eigen::all), btol);
  fp.derived_odd = rank_of(brackets(od, Eigen::all), btol);
  return fp;
}

bool CatalogReport::passed() const {
  return !stages.empty() && std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.passed; });
}

const StageResult* CatalogReport::stage(const std::string& name) const {
  for (const auto& s : stages)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<ExampleSummary> list_examples() {
  return {
      {"sl-sosp", "SL(n|2m)/SOSp(n|2m)", {"n", "m"}, {{"n", 3}, {"m", 1}}, false},
      {"psl-sosp", "PSL(2m|2m)/SOSp(2m|2m)", {"m"}, {{"m", 1}}, false},
      {"sl-s-gl-gl", "SL(n1+n2|m1+m2)/S(GL(n1|m1) x GL(n2|m2))", {"n1", "n2", "m1", "m2"},
       {{"n1", 1}, {"n2", 1}, {"m1", 1}, {"m2", 0}}, false},
      {"sosp-u", "SOSp(2n|2m)/U(n|m)", {"n", "m"}, {{"n", 2}, {"m", 1}}, false},
      {"sosp-s-osp-osp", "SOSp(n1+n2|2m1+2m2)/S(OSp(n1|2m1) x OSp(n2|2m2))", {"n1", "n2", "m1", "m2"},
       {{"n1", 1}, {"n2", 1}, {"m1", 1}, {"m2", 1}}, false},
      {"d21-so2-sosp22", "D(2,1;alpha)/SO(2) x SOSp(2|2)", {"s1", "s2"}, {{"s1", 1}, {"s2", 2}}, false},
      {"r12-group", "R^{1|2} with (x,xi)(t,theta) = (x+t+xi.theta, xi+theta)", {}, {}, true},
  };
}

std::vector<Params> desk_grid(const std::string& name) {
  std::vector<Params> out;
  if (name == "sl-sosp") {
    for (int n : {1, 3, 4}) out.push_back({{"n", n}, {"m", 1}});
  } else if (name == "psl-sosp") {
    out.push_back({{"m", 1}});
  } else if (name == "sl-s-gl-gl") {
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int n2 = 0; n1 + n2 <= 3; ++n2)
        for (int m1 = 0; m1 <= 2; ++m1)
          for (int m2 = 0; m1 + m2 <= 2; ++m2) {
            if (n1 + m1 == 0 || n2 + m2 == 0 || n1 + n2 == 0 || m1 + m2 == 0) continue;
            if (n1 + n2 == m1 + m2 && n1 + n2 < 2) continue;
            out.push_back({{"n1", n1}, {"n2", n2}, {"m1", m1}, {"m2", m2}});
          }
  } else if (name == "sosp-u") {
    for (int n : {1, 2}) out.push_back({{"n", n}, {"m", 1}});
  } else if (name == "sosp-s-osp-osp") {
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int n2 = 0; n1 + n2 <= 3; ++n2) out.push_back({{"n1", n1}, {"n2", n2}, {"m1", 1}, {"m2", 1}});
  } else if (name == "d21-so2-sosp22") {
    std::mt19937 rng(31337u);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    while (out.size() < 5) {
      const double s1 = u(rng), s2 = u(rng);
      if (std::abs(s1) < 0.2 || std::abs(s2) < 0.2 || std::abs(s1 + s2) < 0.2) continue;
      out.push_back({{"s1", s1}, {"s2", s2}});
    }
  } else if (name == "r12-group") {
    out.push_back({});
  } else {
    throw InvalidArgument("unknown example '" + name + "'");
  }
  return out;
}

CatalogReport verify_example(const std::string& name, const Params& params, double tol) {
  if (name == "r12-group") return verify_r12(params, tol);
  FamilySetup setup;
  if (name == "sl-sosp")
    setup = sl_sosp(params);
  else if (name == "psl-sosp")
    setup = psl_sosp(params);
  else if (name == "sl-s-gl-gl")
    setup = sl_s_gl_gl(params);
  else if (name == "sosp-u")
    setup = sosp_u(params);
  else if (name == "sosp-s-osp-osp")
    setup = sosp_s_osp_osp(params);
  else if (name == "d21-so2-sosp22")
    setup = d21_family(params);
  else
    throw InvalidArgument("unknown example '" + name + "'");
  Pipeline pl{{}, tol};
  pl.report.family = name;
  pl.report.params = params;
  run_pipeline(pl, setup);
  return pl.report;
}

}  // namespace supergeo
