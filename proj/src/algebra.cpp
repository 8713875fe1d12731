#include "supergeo/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

Eigen::VectorXd vectorize(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd supercommutator(const Eigen::MatrixXd& x, int px, const Eigen::MatrixXd& y, int py) {
  return x * y - koszul(px, py) * (y * x);
}

void check_parities(const std::vector<int>& parities) {
  bool seen_odd = false;
  for (int p : parities) {
    if (p != 0 && p != 1) throw InvalidArgument("parity must be 0 or 1");
    if (p == 1) seen_odd = true;
    if (p == 0 && seen_odd) throw InvalidArgument("basis must list even elements before odd ones");
  }
}

// Parity-sorted orthonormal complement of span(cols) inside the coordinate
// subspace of parity p.
Eigen::MatrixXd parity_complement(const LieSuperalgebra& a, const Eigen::MatrixXd& cols, int p) {
  std::vector<int> idx;
  for (int i = 0; i < a.dim(); ++i) {
    if (a.parity(i) == p) idx.push_back(i);
  }
  const int k = static_cast<int>(idx.size());
  Eigen::MatrixXd sub(k, cols.cols());
  for (int r = 0; r < k; ++r) sub.row(r) = cols.row(idx[r]);
  Eigen::MatrixXd comp;
  if (cols.cols() == 0 || sub.norm() == 0.0) {
    comp = Eigen::MatrixXd::Identity(k, k);
  } else {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub.transpose());
    comp = lu.kernel();
    if (lu.rank() == 0) comp = Eigen::MatrixXd::Identity(k, k);
    if (lu.rank() == k) comp = Eigen::MatrixXd(k, 0);
  }
  if (comp.cols() > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(comp);
    comp = qr.householderQ() * Eigen::MatrixXd::Identity(k, comp.cols());
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.dim(), comp.cols());
  for (int r = 0; r < k; ++r) out.row(idx[r]) = comp.row(r);
  return out;
}

}  // namespace

Eigen::VectorXd basis_vector(int dim, int i) { return Eigen::VectorXd::Unit(dim, i); }

LieSuperalgebra::LieSuperalgebra(std::string name, std::vector<std::string> labels,
                                 std::vector<int> parities, std::vector<Eigen::MatrixXd> ad,
                                 std::optional<Realization> realization)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      parities_(std::move(parities)),
      ad_(std::move(ad)),
      realization_(std::move(realization)) {
  check_parities(parities_);
  const int d = dim();
  if (static_cast<int>(labels_.size()) != d) throw DimensionMismatch("label count differs from dimension");
  if (static_cast<int>(ad_.size()) != d) throw DimensionMismatch("need one ad matrix per basis element");
  double scale = 0.0;
  for (const auto& m : ad_) {
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("ad matrix has wrong shape");
    scale = std::max(scale, m.cwiseAbs().maxCoeff());
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const double c = ad_[i](k, j);
        if (c != 0.0 && parities_[k] != ((parities_[i] + parities_[j]) & 1)) {
          throw InvalidArgument("structure constant [" + labels_[i] + "," + labels_[j] + "] -> " +
                                labels_[k] + " violates the parity rule");
        }
        const double mirror = -koszul(parities_[i], parities_[j]) * ad_[j](k, i);
        if (std::abs(c - mirror) > 1e-9 * std::max(1.0, scale)) {
          throw InvalidArgument("structure constants not graded antisymmetric at (" + labels_[i] +
                                "," + labels_[j] + "," + labels_[k] + ")");
        }
      }
    }
  }
  if (realization_) {
    if (static_cast<int>(realization_->matrices.size()) != d) {
      throw DimensionMismatch("realization needs one matrix per basis element");
    }
    prepare_coordinates();
  }
}

void LieSuperalgebra::prepare_coordinates() {
  const int size = realization_->n + realization_->m;
  const int d = dim();
  const int cols = d + (realization_->quotient_by_identity ? 1 : 0);
  Eigen::MatrixXd basis(size * size, cols);
  for (int i = 0; i < d; ++i) {
    const auto& mat = realization_->matrices[i];
    if (mat.rows() != size || mat.cols() != size) throw DimensionMismatch("realization matrix has wrong size");
    basis.col(i) = vectorize(mat);
  }
  if (realization_->quotient_by_identity) {
    basis.col(d) = vectorize(Eigen::MatrixXd::Identity(size, size));
  }
  coords_qr_.compute(basis);
  if (coords_qr_.rank() != cols) throw InvalidArgument("realization matrices are linearly dependent");
}

int LieSuperalgebra::even_dim() const {
  return static_cast<int>(std::count(parities_.begin(), parities_.end(), 0));
}

Eigen::MatrixXd LieSuperalgebra::ad(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw DimensionMismatch("vector length differs from algebra dimension");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i] != 0.0) out += x[i] * ad_[i];
  }
  return out;
}

Eigen::VectorXd LieSuperalgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (y.size() != dim()) throw DimensionMismatch("vector length differs from algebra dimension");
  return ad(x) * y;
}

std::vector<StructureConstant> LieSuperalgebra::constants() const {
  std::vector<StructureConstant> out;
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      for (int k = 0; k < dim(); ++k) {
        if (ad_[i](k, j) != 0.0) out.emplace_back(i, j, k, ad_[i](k, j));
      }
    }
  }
  return out;
}

Eigen::MatrixXd LieSuperalgebra::matrix_of(const Eigen::VectorXd& x) const {
  if (!realization_) throw InvalidArgument("algebra '" + name_ + "' has no matrix realization");
  if (x.size() != dim()) throw DimensionMismatch("vector length differs from algebra dimension");
  const int size = realization_->n + realization_->m;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < dim(); ++i) {
    if (x[i] != 0.0) out += x[i] * realization_->matrices[i];
  }
  return out;
}

Eigen::VectorXd LieSuperalgebra::coordinates_of(const Eigen::MatrixXd& mat) const {
  if (!realization_) throw InvalidArgument("algebra '" + name_ + "' has no matrix realization");
  const Eigen::VectorXd full = coords_qr_.solve(vectorize(mat));
  return full.head(dim());
}

double LieSuperalgebra::span_residual(const Eigen::MatrixXd& mat) const {
  if (!realization_) throw InvalidArgument("algebra '" + name_ + "' has no matrix realization");
  const Eigen::VectorXd v = vectorize(mat);
  const Eigen::VectorXd full = coords_qr_.solve(v);
  const int size = realization_->n + realization_->m;
  Eigen::MatrixXd recon = matrix_of(full.head(dim()));
  if (realization_->quotient_by_identity) recon += full[dim()] * Eigen::MatrixXd::Identity(size, size);
  return (recon - mat).cwiseAbs().maxCoeff();
}

LieSuperalgebra LieSuperalgebra::from_constants(std::string name, std::vector<std::string> labels,
                                                std::vector<int> parities,
                                                const std::vector<StructureConstant>& constants,
                                                std::optional<Realization> realization) {
  const int d = static_cast<int>(parities.size());
  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  for (const auto& [i, j, k, v] : constants) {
    if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d) {
      throw InvalidArgument("structure constant index out of range");
    }
    ad[i](k, j) = v;
  }
  return LieSuperalgebra(std::move(name), std::move(labels), std::move(parities), std::move(ad),
                         std::move(realization));
}

LieSuperalgebra LieSuperalgebra::from_realization(std::string name, std::vector<std::string> labels,
                                                  std::vector<int> parities, Realization realization) {
  const int d = static_cast<int>(parities.size());
  // Coordinates need a realised algebra first; build one with zero brackets.
  LieSuperalgebra probe(name, labels, parities, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)),
                        realization);
  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  const auto& mats = realization.matrices;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const Eigen::MatrixXd br = supercommutator(mats[i], parities[i], mats[j], parities[j]);
      const double resid = probe.span_residual(br);
      if (resid > 1e-9 * std::max(1.0, br.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("realization of '" + name + "' not closed under the bracket: [" +
                              labels[i] + "," + labels[j] + "] leaves the span by " + std::to_string(resid));
      }
      Eigen::VectorXd c = probe.coordinates_of(br);
      const int pk = (parities[i] + parities[j]) & 1;
      for (int k = 0; k < d; ++k) {
        if (parities[k] != pk) c[k] = 0.0;
        else if (std::abs(c[k]) < 1e-14) c[k] = 0.0;
      }
      ad[i].col(j) = c;
      ad[j].col(i) = -koszul(parities[i], parities[j]) * c;
    }
  }
  return LieSuperalgebra(std::move(name), std::move(labels), std::move(parities), std::move(ad),
                         std::move(realization));
}

LieSuperalgebra LieSuperalgebra::with_structure_constant(int i, int j, int k, double value) const {
  std::vector<Eigen::MatrixXd> ad = ad_;
  ad.at(i)(k, j) = value;
  if (i != j || parities_[i] == 1) ad[j](k, i) = -koszul(parities_[i], parities_[j]) * value;
  if (i == j && parities_[i] == 0) throw InvalidArgument("[e_i,e_i] vanishes for even e_i");
  return LieSuperalgebra(name_ + "~", labels_, parities_, std::move(ad));
}

int LieSuperalgebra::parity_of(const Eigen::VectorXd& x, double tol) const {
  bool even = false;
  bool odd = false;
  for (int i = 0; i < dim(); ++i) {
    if (std::abs(x[i]) > tol) (parities_[i] ? odd : even) = true;
  }
  if (even && odd) return -1;
  return odd ? 1 : 0;
}

double check_jacobi(const LieSuperalgebra& a) {
  const int d = a.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXd lhs = a.ad(i) * a.ad(j) - koszul(a.parity(i), a.parity(j)) * (a.ad(j) * a.ad(i));
      for (int k = 0; k < d; ++k) {
        const double c = a.structure_constant(i, j, k);
        if (c != 0.0) lhs -= c * a.ad(k);
      }
      worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double supertrace(int n, int m, const Eigen::MatrixXd& mat) {
  if (mat.rows() != n + m || mat.cols() != n + m) throw DimensionMismatch("matrix does not match blocks");
  return mat.topLeftCorner(n, n).trace() - mat.bottomRightCorner(m, m).trace();
}

double supertrace(const LieSuperalgebra& a, const Eigen::MatrixXd& mat) {
  if (!a.has_realization()) throw InvalidArgument("algebra '" + a.name() + "' has no matrix realization");
  return supertrace(a.realization()->n, a.realization()->m, mat);
}

LieSuperalgebra direct_sum(const LieSuperalgebra& a, const LieSuperalgebra& b, std::string name) {
  if (name.empty()) name = a.name() + "+" + b.name();
  const int na = a.even_dim();
  const int nb = b.even_dim();
  const int ma = a.odd_dim();
  const int d = a.dim() + b.dim();
  // position of a's and b's basis elements in the sum
  auto pos_a = [&](int i) { return i < na ? i : nb + i; };
  auto pos_b = [&](int i) { return i < nb ? na + i : na + ma + i; };

  std::vector<std::string> labels(d);
  std::vector<int> parities(d);
  for (int i = 0; i < a.dim(); ++i) {
    labels[pos_a(i)] = a.labels()[i];
    parities[pos_a(i)] = a.parity(i);
  }
  for (int i = 0; i < b.dim(); ++i) {
    labels[pos_b(i)] = b.labels()[i] + "'";
    parities[pos_b(i)] = b.parity(i);
  }
  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      for (int k = 0; k < a.dim(); ++k) ad[pos_a(i)](pos_a(k), pos_a(j)) = a.structure_constant(i, j, k);
    }
  }
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      for (int k = 0; k < b.dim(); ++k) ad[pos_b(i)](pos_b(k), pos_b(j)) = b.structure_constant(i, j, k);
    }
  }

  std::optional<Realization> real;
  if (a.has_realization() && b.has_realization() && !a.realization()->quotient_by_identity &&
      !b.realization()->quotient_by_identity) {
    const Realization& ra = *a.realization();
    const Realization& rb = *b.realization();
    const int n = ra.n + rb.n;
    const int m = ra.m + rb.m;
    auto row_a = [&](int r) { return r < ra.n ? r : rb.n + r; };
    auto row_b = [&](int r) { return r < rb.n ? ra.n + r : ra.n + ra.m + r; };
    Realization r{n, m, std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(n + m, n + m)), false};
    for (int i = 0; i < a.dim(); ++i) {
      const auto& src = ra.matrices[i];
      for (int p = 0; p < src.rows(); ++p) {
        for (int q = 0; q < src.cols(); ++q) r.matrices[pos_a(i)](row_a(p), row_a(q)) = src(p, q);
      }
    }
    for (int i = 0; i < b.dim(); ++i) {
      const auto& src = rb.matrices[i];
      for (int p = 0; p < src.rows(); ++p) {
        for (int q = 0; q < src.cols(); ++q) r.matrices[pos_b(i)](row_b(p), row_b(q)) = src(p, q);
      }
    }
    real = std::move(r);
  }
  return LieSuperalgebra(std::move(name), std::move(labels), std::move(parities), std::move(ad), std::move(real));
}

LieSuperalgebra subalgebra(const LieSuperalgebra& a, const Eigen::MatrixXd& basis, std::string name,
                           double tol) {
  if (basis.rows() != a.dim()) throw DimensionMismatch("subalgebra basis has wrong length");
  if (name.empty()) name = "sub(" + a.name() + ")";
  const int k = static_cast<int>(basis.cols());
  std::vector<int> parities(k);
  std::vector<std::string> labels(k);
  for (int c = 0; c < k; ++c) {
    const int p = a.parity_of(basis.col(c), 1e-12 * std::max(1.0, basis.col(c).cwiseAbs().maxCoeff()));
    if (p < 0) throw InvalidArgument("subalgebra basis vectors must be homogeneous");
    parities[c] = p;
    labels[c] = "k" + std::to_string(c + 1);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  if (qr.rank() != k) throw InvalidArgument("subalgebra basis is linearly dependent");

  std::vector<Eigen::MatrixXd> adk(k, Eigen::MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i) {
    const Eigen::MatrixXd adi = a.ad(Eigen::VectorXd(basis.col(i)));
    for (int j = i; j < k; ++j) {
      const Eigen::VectorXd br = adi * basis.col(j);
      Eigen::VectorXd c = qr.solve(br);
      const double resid = (basis * c - br).cwiseAbs().maxCoeff();
      if (resid > tol * std::max(1.0, br.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("span is not closed under the bracket (residual " + std::to_string(resid) + ")");
      }
      const int pk = (parities[i] + parities[j]) & 1;
      for (int r = 0; r < k; ++r) {
        if (parities[r] != pk || std::abs(c[r]) < 1e-13) c[r] = 0.0;
      }
      adk[i].col(j) = c;
      adk[j].col(i) = -koszul(parities[i], parities[j]) * c;
    }
  }
  return LieSuperalgebra(std::move(name), std::move(labels), std::move(parities), std::move(adk));
}

LieSuperalgebra quotient(const LieSuperalgebra& a, const Eigen::MatrixXd& ideal, std::string name,
                         double tol) {
  if (ideal.rows() != a.dim()) throw DimensionMismatch("ideal basis has wrong length");
  if (name.empty()) name = a.name() + "/I";
  // ideal check: [e_i, v] stays in the span
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> iqr(ideal);
  for (int i = 0; i < a.dim(); ++i) {
    for (int c = 0; c < ideal.cols(); ++c) {
      const Eigen::VectorXd br = a.ad(i) * ideal.col(c);
      if ((ideal * iqr.solve(br) - br).cwiseAbs().maxCoeff() > tol) {
        throw InvalidArgument("span is not an ideal");
      }
    }
  }
  Eigen::MatrixXd even = parity_complement(a, ideal, 0);
  Eigen::MatrixXd odd = parity_complement(a, ideal, 1);
  Eigen::MatrixXd comp(a.dim(), even.cols() + odd.cols());
  comp << even, odd;
  const int k = static_cast<int>(comp.cols());
  Eigen::MatrixXd full(a.dim(), k + ideal.cols());
  full << comp, ideal;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(full);
  if (qr.rank() != a.dim()) throw InvalidArgument("ideal basis is linearly dependent");

  std::vector<int> parities(k);
  std::vector<std::string> labels(k);
  for (int c = 0; c < k; ++c) {
    parities[c] = c < even.cols() ? 0 : 1;
    labels[c] = "q" + std::to_string(c + 1);
  }
  std::vector<Eigen::MatrixXd> adq(k, Eigen::MatrixXd::Zero(k, k));
  for (int i = 0; i < k; ++i) {
    const Eigen::MatrixXd adi = a.ad(Eigen::VectorXd(comp.col(i)));
    for (int j = i; j < k; ++j) {
      Eigen::VectorXd c = qr.solve(Eigen::VectorXd(adi * comp.col(j))).head(k);
      const int pk = (parities[i] + parities[j]) & 1;
      for (int r = 0; r < k; ++r) {
        if (parities[r] != pk || std::abs(c[r]) < 1e-13) c[r] = 0.0;
      }
      adq[i].col(j) = c;
      adq[j].col(i) = -koszul(parities[i], parities[j]) * c;
    }
  }
  return LieSuperalgebra(std::move(name), std::move(labels), std::move(parities), std::move(adq));
}

LieSuperalgebra abelian(int p, int q, std::string name) {
  if (p < 0 || q < 0) throw InvalidArgument("negative dimension");
  if (name.empty()) name = "R^{" + std::to_string(p) + "|" + std::to_string(q) + "}";
  std::vector<int> parities(p, 0);
  parities.insert(parities.end(), q, 1);
  std::vector<std::string> labels;
  for (int i = 0; i < p + q; ++i) labels.push_back("a" + std::to_string(i + 1));
  const int d = p + q;
  return LieSuperalgebra(std::move(name), std::move(labels), std::move(parities),
                         std::vector<Eigen::MatrixXd>(d, Eigen::MatrixXd::Zero(d, d)));
}

}  // namespace supergeo
