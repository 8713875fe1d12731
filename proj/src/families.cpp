#include "supergeo/families.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {
namespace {

struct Pivot {
  int parity;
  int row;
  int col;
  Eigen::MatrixXd mat;
  std::string label;
};

std::string entry_label(const std::string& prefix, int r, int c, int size) {
  if (size < 10) return prefix + std::to_string(r + 1) + std::to_string(c + 1);
  return prefix + std::to_string(r + 1) + "," + std::to_string(c + 1);
}

int block_parity(int n, int r, int c) { return (r < n) == (c < n) ? 0 : 1; }

LieSuperalgebra build(std::string name, int n, int m, std::vector<Pivot> pivots, bool quotient = false) {
  std::stable_sort(pivots.begin(), pivots.end(), [](const Pivot& a, const Pivot& b) {
    return std::tie(a.parity, a.row, a.col) < std::tie(b.parity, b.row, b.col);
  });
  std::vector<std::string> labels;
  std::vector<int> parities;
  Realization r{n, m, {}, quotient};
  for (auto& p : pivots) {
    labels.push_back(p.label);
    parities.push_back(p.parity);
    r.matrices.push_back(std::move(p.mat));
  }
  return LieSuperalgebra::from_realization(std::move(name), std::move(labels), std::move(parities), std::move(r));
}

std::string sup_name(const std::string& fam, int n, int m) {
  return fam + "(" + std::to_string(n) + "|" + std::to_string(m) + ")";
}

void check_dims(int n, int m) {
  if (n < 0 || m < 0) throw InvalidArgument("block sizes must be non-negative");
  if (n + m == 0) throw InvalidArgument("empty matrix algebra");
}

// Off-diagonal matrix units of gl(n|m).
std::vector<Pivot> off_diagonal(int n, int m) {
  const int size = n + m;
  std::vector<Pivot> out;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      if (r != c) out.push_back({block_parity(n, r, c), r, c, matrix_unit(size, r, c), entry_label("E", r, c, size)});
    }
  }
  return out;
}

Eigen::Matrix2d sl2_basis(int t) {
  Eigen::Matrix2d x = Eigen::Matrix2d::Zero();
  if (t == 0) {
    x(0, 0) = 1;
    x(1, 1) = -1;
  } else if (t == 1) {
    x(0, 1) = 1;
  } else {
    x(1, 0) = 1;
  }
  return x;
}

Eigen::Vector3d sl2_coords(const Eigen::Matrix2d& x) { return {x(0, 0), x(0, 1), x(1, 0)}; }

int odd_index(int a, int b, int c) { return 9 + 4 * a + 2 * b + c; }

int integer_param(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw InvalidArgument("missing parameter '" + key + "'");
  const double v = it->second;
  if (v != std::floor(v)) throw InvalidArgument("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

double real_param(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw InvalidArgument("missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

Eigen::MatrixXd matrix_unit(int n, int r, int c) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  e(r, c) = 1.0;
  return e;
}

Eigen::Matrix2d symplectic_j() {
  Eigen::Matrix2d j;
  j << 0, 1, -1, 0;
  return j;
}

LieSuperalgebra gl(int n, int m) {
  check_dims(n, m);
  const int size = n + m;
  std::vector<Pivot> pivots;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      pivots.push_back({block_parity(n, r, c), r, c, matrix_unit(size, r, c), entry_label("E", r, c, size)});
    }
  }
  // gl orders the A-block before the D-block, which row-major order already does
  return build(sup_name("gl", n, m), n, m, std::move(pivots));
}

LieSuperalgebra sl(int n, int m) {
  check_dims(n, m);
  const int size = n + m;
  if (size < 2) throw InvalidArgument("sl(n|m) needs n + m >= 2");
  std::vector<Pivot> pivots = off_diagonal(n, m);
  const int last = size - 1;
  for (int i = 0; i < last; ++i) {
    Eigen::MatrixXd x = matrix_unit(size, i, i);
    std::string label;
    if (m == 0) {
      x(last, last) = -1.0;
      label = entry_label("E", i, i, size) + "-" + entry_label("E", last, last, size);
    } else if (i < n) {
      x(last, last) = 1.0;
      label = entry_label("E", i, i, size) + "+" + entry_label("E", last, last, size);
    } else {
      x(last, last) = -1.0;
      label = entry_label("E", i, i, size) + "-" + entry_label("E", last, last, size);
    }
    pivots.push_back({0, i, i, std::move(x), label});
  }
  return build(sup_name("sl", n, m), n, m, std::move(pivots));
}

LieSuperalgebra psl(int n) {
  if (n < 1) throw InvalidArgument("psl(n|n) needs n >= 1");
  const int size = 2 * n;
  std::vector<Pivot> pivots = off_diagonal(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    Eigen::MatrixXd x = matrix_unit(size, i, i);
    x(n - 1, n - 1) = -1.0;
    pivots.push_back({0, i, i, std::move(x), entry_label("E", i, i, size) + "-" + entry_label("E", n - 1, n - 1, size)});
  }
  for (int j = n; j + 1 < size; ++j) {
    Eigen::MatrixXd x = matrix_unit(size, j, j);
    x(size - 1, size - 1) = -1.0;
    pivots.push_back({0, j, j, std::move(x), entry_label("E", j, j, size) + "-" + entry_label("E", size - 1, size - 1, size)});
  }
  return build(sup_name("psl", n, n), n, n, std::move(pivots), true);
}

LieSuperalgebra osp(int n, int m) {
  if (n < 0 || m < 0 || n + m == 0) throw InvalidArgument("osp(n|2m) needs n, m >= 0, not both zero");
  const int size = n + 2 * m;
  const int q = n;      // first symplectic half
  const int p = n + m;  // second symplectic half
  std::vector<Pivot> pivots;
  auto lab = [](const std::string& b, int r, int c) {
    return b + "_" + std::to_string(r + 1) + std::to_string(c + 1);
  };
  for (int r = 0; r < n; ++r) {
    for (int c = r + 1; c < n; ++c) {
      Eigen::MatrixXd x = matrix_unit(size, r, c) - matrix_unit(size, c, r);
      pivots.push_back({0, r, c, std::move(x), lab("A", r, c)});
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      Eigen::MatrixXd x = matrix_unit(size, q + r, q + c) - matrix_unit(size, p + c, p + r);
      pivots.push_back({0, q + r, q + c, std::move(x), lab("C1", r, c)});
      if (r <= c) {
        Eigen::MatrixXd y = matrix_unit(size, q + r, p + c);
        if (r != c) y(q + c, p + r) = 1.0;
        pivots.push_back({0, q + r, p + c, std::move(y), lab("C2", r, c)});
        Eigen::MatrixXd z = matrix_unit(size, p + r, q + c);
        if (r != c) z(p + c, q + r) = 1.0;
        pivots.push_back({0, p + r, q + c, std::move(z), lab("C3", r, c)});
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      // B1 at (r, q+c) mirrored as B1ᵗ at (p+c, r)
      Eigen::MatrixXd x = matrix_unit(size, r, q + c) + matrix_unit(size, p + c, r);
      pivots.push_back({1, r, q + c, std::move(x), lab("B1", r, c)});
      // B2 at (r, p+c) mirrored as −B2ᵗ at (q+c, r)
      Eigen::MatrixXd y = matrix_unit(size, r, p + c) - matrix_unit(size, q + c, r);
      pivots.push_back({1, r, p + c, std::move(y), lab("B2", r, c)});
    }
  }
  return build(sup_name("osp", n, 2 * m), n, 2 * m, std::move(pivots));
}

LieSuperalgebra u(int n, int m) {
  check_dims(n, m);
  using C = std::complex<double>;
  const int size = n + m;
  const int rsize = 2 * size;
  auto re_index = [&](int k) { return k < n ? k : 2 * n + (k - n); };
  auto im_index = [&](int k) { return k < n ? n + k : 2 * n + m + (k - n); };
  auto realify = [&](const Eigen::MatrixXcd& z) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rsize, rsize);
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        const double x = z(a, b).real();
        const double y = z(a, b).imag();
        out(re_index(a), re_index(b)) = x;
        out(re_index(a), im_index(b)) = -y;
        out(im_index(a), re_index(b)) = y;
        out(im_index(a), im_index(b)) = x;
      }
    }
    return out;
  };
  auto unit = [&](int r, int c, C v) {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(size, size);
    z(r, c) = v;
    return z;
  };
  const C i1(0.0, 1.0);
  std::vector<Pivot> pivots;
  auto lab = [](const std::string& part, const std::string& b, int r, int c) {
    return part + b + std::to_string(r + 1) + std::to_string(c + 1);
  };
  // anti-Hermitian diagonal blocks: A (offset 0) and C (offset n)
  for (int blk = 0; blk < 2; ++blk) {
    const int off = blk == 0 ? 0 : n;
    const int dim = blk == 0 ? n : m;
    const std::string b = blk == 0 ? "A" : "C";
    for (int r = 0; r < dim; ++r) {
      for (int c = r; c < dim; ++c) {
        const int R = off + r;
        const int Cc = off + c;
        if (r != c) {
          Eigen::MatrixXcd re = unit(R, Cc, 1.0) - unit(Cc, R, 1.0);
          pivots.push_back({0, R, 2 * Cc, realify(re), lab("Re", b, r, c)});
          Eigen::MatrixXcd im = unit(R, Cc, i1) + unit(Cc, R, i1);
          pivots.push_back({0, R, 2 * Cc + 1, realify(im), lab("Im", b, r, c)});
        } else {
          pivots.push_back({0, R, 2 * Cc + 1, realify(unit(R, R, i1)), lab("Im", b, r, c)});
        }
      }
    }
  }
  // odd block B at (r, n+c) with lower-left entry −i·conj(B)ᵗ
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      Eigen::MatrixXcd re = unit(r, n + c, 1.0) + unit(n + c, r, -i1);
      pivots.push_back({1, r, 2 * (n + c), realify(re), lab("Re", "B", r, c)});
      Eigen::MatrixXcd im = unit(r, n + c, i1) + unit(n + c, r, -1.0);
      pivots.push_back({1, r, 2 * (n + c) + 1, realify(im), lab("Im", "B", r, c)});
    }
  }
  return build(sup_name("u", n, m), 2 * n, 2 * m, std::move(pivots));
}

LieSuperalgebra d21_unchecked(double s1, double s2, double s3) {
  const int d = 17;
  const double sig[3] = {s1, s2, s3};
  const Eigen::Matrix2d j = symplectic_j();
  std::vector<Eigen::MatrixXd> ad(d, Eigen::MatrixXd::Zero(d, d));
  std::vector<std::string> labels;
  std::vector<int> parities(9, 0);
  parities.insert(parities.end(), 8, 1);
  const char* names[3] = {"H", "E", "F"};
  for (int f = 0; f < 3; ++f) {
    for (int t = 0; t < 3; ++t) labels.push_back(std::string(names[t]) + std::to_string(f + 1));
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) labels.push_back("u" + std::to_string(a + 1) + std::to_string(b + 1) + std::to_string(c + 1));
    }
  }
  // even-even
  for (int f = 0; f < 3; ++f) {
    for (int t = 0; t < 3; ++t) {
      for (int s = 0; s < 3; ++s) {
        const Eigen::Matrix2d x = sl2_basis(t);
        const Eigen::Matrix2d y = sl2_basis(s);
        ad[3 * f + t].col(3 * f + s).segment<3>(3 * f) = sl2_coords(x * y - y * x);
      }
    }
  }
  // even-odd and odd-even
  for (int f = 0; f < 3; ++f) {
    for (int t = 0; t < 3; ++t) {
      const Eigen::Matrix2d x = sl2_basis(t);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          for (int c = 0; c < 2; ++c) {
            int idx[3] = {a, b, c};
            const int col = odd_index(a, b, c);
            for (int r = 0; r < 2; ++r) {
              int nidx[3] = {a, b, c};
              nidx[f] = r;
              ad[3 * f + t](odd_index(nidx[0], nidx[1], nidx[2]), col) += x(r, idx[f]);
            }
          }
        }
      }
      for (int k = 9; k < d; ++k) {
        for (int col = 9; col < d; ++col) ad[col](k, 3 * f + t) = -ad[3 * f + t](k, col);
      }
    }
  }
  // odd-odd: (σ_f ψψ P(u_f, v_f))_f
  for (int ui = 0; ui < 8; ++ui) {
    const int uu[3] = {(ui >> 2) & 1, (ui >> 1) & 1, ui & 1};
    for (int vi = 0; vi < 8; ++vi) {
      const int vv[3] = {(vi >> 2) & 1, (vi >> 1) & 1, vi & 1};
      for (int f = 0; f < 3; ++f) {
        double w = sig[f];
        for (int g = 0; g < 3; ++g) {
          if (g != f) w *= j(uu[g], vv[g]);
        }
        if (w == 0.0) continue;
        const Eigen::Vector2d uf = Eigen::Vector2d::Unit(uu[f]);
        const Eigen::Vector2d vf = Eigen::Vector2d::Unit(vv[f]);
        const Eigen::Matrix2d pm = (uf * vf.transpose() + vf * uf.transpose()) * j;
        ad[9 + ui].col(9 + vi).segment<3>(3 * f) += w * sl2_coords(pm);
      }
    }
  }
  return LieSuperalgebra("d(2,1;" + std::to_string(s1) + "," + std::to_string(s2) + "," + std::to_string(s3) + ")",
                         std::move(labels), std::move(parities), std::move(ad));
}

LieSuperalgebra d21(double s1, double s2, double s3) {
  if (s1 == 0.0 || s2 == 0.0 || s3 == 0.0) throw InvalidArgument("d(2,1) parameters must be non-zero");
  if (std::abs(s1 + s2 + s3) > 1e-12 * std::max({1.0, std::abs(s1), std::abs(s2), std::abs(s3)})) {
    throw InvalidArgument("d(2,1) needs s1 + s2 + s3 = 0");
  }
  return d21_unchecked(s1, s2, s3);
}

LieSuperalgebra d21(double s1, double s2) { return d21(s1, s2, -s1 - s2); }

LieSuperalgebra r12_algebra() {
  std::vector<Eigen::MatrixXd> ad(3, Eigen::MatrixXd::Zero(3, 3));
  ad[1](0, 1) = 2.0;
  ad[2](0, 2) = 2.0;
  return LieSuperalgebra("r12", {"e", "f1", "f2"}, {0, 1, 1}, std::move(ad));
}

LieSuperalgebra construct_algebra(const std::string& family, const std::map<std::string, double>& params) {
  if (family == "d21") {
    const double s1 = real_param(params, "s1");
    const double s2 = real_param(params, "s2");
    if (params.count("s3")) return d21(s1, s2, params.at("s3"));
    return d21(s1, s2);
  }
  if (family == "r12") return r12_algebra();
  const int n = integer_param(params, "n");
  if (family == "psl") {
    if (params.count("m") && integer_param(params, "m") != n) throw InvalidArgument("psl(n|m) needs n = m");
    return psl(n);
  }
  const int m = integer_param(params, "m");
  if (family == "gl") return gl(n, m);
  if (family == "sl") return sl(n, m);
  if (family == "osp" || family == "sosp") return osp(n, m);
  if (family == "u") return u(n, m);
  throw InvalidArgument("unknown algebra family '" + family + "'");
}

}  // namespace supergeo
