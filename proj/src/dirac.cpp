/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "aholo/dirac.hpp"

#include "aholo/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace aholo {

namespace {

using cd = std::complex<double>;

// Complex coordinates of h = alpha + j beta in (H, R_i).
Eigen::Vector2cd w_coords(const Quaternion& h) {
  return {cd(h.w, h.x), cd(h.y, -h.z)};
}

Mat block_left(const Quaternion& q, int n) { return block_diag(left_mult_matrix(q), n); }

double max_over(const std::vector<double>& a, const std::vector<double>& b, int c) {
  double worst = 0.0;
  for (std::size_t i = 0; i * c < a.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < c; ++k) {
      const double d = a[i * c + k] - b[i * c + k];
      s += d * d;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace

Mat4 frame_matrix() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

HyperComplexTriple horizontal_structure() { return standard_triple(Side::Right, 1); }

std::pair<Vec, Vec> clifford_reduce(const Quaternion& c, const Vec& x) {
  require(x.size() % 4 == 0, ErrorCode::DimensionMismatch, "spinor value must lie in R^{4n}");
  const Mat I1 = block_left(Quaternion::i(), static_cast<int>(x.size() / 4));
  const Vec ix = I1 * x;
  return {c.w * x + c.x * ix, c.y * x - c.z * ix};
}

Vec clifford_mul(const Quaternion& h, const Vec& w) {
  const Mat I2 = block_left(Quaternion::j(), static_cast<int>(w.size() / 4));
  const auto first = clifford_reduce(h, w);
  const auto second = clifford_reduce(h * Quaternion::j(), I2 * w);
  return first.first - second.first;
}

Vec dirac_at(const Mat& A, const Mat4& frame) {
  const Mat W = A * frame;
  Vec out = Vec::Zero(A.rows());
  for (int a = 0; a < 4; ++a) out += clifford_mul(Quaternion::basis(a), W.col(a));
  return out;
}

std::vector<double> dirac_apply(const SpinorField& u, const Mat4& frame) {
  const auto& dom = u.base.domain();
  const int c = u.base.components();
  std::vector<double> out(dom.size() * c, 0.0);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Vec v = dirac_at(differential_at(u.base, p), frame);
    std::copy(v.data(), v.data() + c, out.begin() + static_cast<std::ptrdiff_t>(i * c));
  }
  return out;
}

std::vector<double> dirac_apply(const SpinorField& u) {
  return dirac_apply(u, frame_matrix() * spin4_to_so4(u.gauge));
}

std::pair<Vec, Vec> two_component(const Mat& A) {
  const int n = static_cast<int>(A.rows() / 4);
  const Mat W = A * frame_matrix();
  const Mat I1 = block_left(Quaternion::i(), n);
  const Mat I2 = block_left(Quaternion::j(), n);
  const Mat I3 = block_left(Quaternion::k(), n);
  Vec a = W.col(0) + I1 * W.col(1) + I2 * W.col(2) + I3 * W.col(3);
  Vec b = -I2 * W.col(0) + I3 * W.col(1) + W.col(2) - I1 * W.col(3);
  return {a, b};
}

HarmonicityResult harmonicity_equivalence(const SpinorField& u) {
  require((u.gauge.q_plus() - Quaternion::one()).norm() <= 1e-14 &&
              (u.gauge.q_minus() - Quaternion::one()).norm() <= 1e-14,
          ErrorCode::Precondition, "harmonicity equivalence is evaluated in the trivial gauge");
  const auto& dom = u.base.domain();
  const int n = u.base.target_dim();
  const Mat4 F = frame_matrix();
  const HyperComplexTriple Jh = horizontal_structure();
  const Mat I2 = block_left(Quaternion::j(), n);
  Accumulator dn, tn, cn;
  HarmonicityResult r;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Mat A = differential_at(u.base, p);
    const Vec a = dirac_at(A, F);
    const auto [ta, tb] = two_component(A);
    const Mat W = A * F;
    const double crf = (apply_C(W, Jh, u.base.target().triple) - W).norm();
    dn.add(2.0 * a.squaredNorm());
    tn.add(ta.squaredNorm() + tb.squaredNorm());
    cn.add(crf * crf);
    r.real_part_residual = std::max(r.real_part_residual, (tb + I2 * ta).norm());
    r.locus_mismatch = std::max(r.locus_mismatch, std::abs(a.norm() - 0.5 * crf));
  }
  const double vol = dom.cell_volume();
  r.dirac_norm = std::sqrt(vol * dn.value());
  r.two_component_norm = std::sqrt(vol * tn.value());
  r.crf_norm = std::sqrt(vol * cn.value());
  return r;
}

Eigen::Matrix2cd w_action(const Quaternion& q) {
  Eigen::Matrix2cd M;
  M.col(0) = w_coords(q * Quaternion::one());
  M.col(1) = w_coords(q * Quaternion::j());
  return M;
}

Lemma8Split lemma8_split(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "target dimension must be >= 1");
  Lemma8Split s;
  s.n = n;
  const int c = 4 * n;
  s.T = Eigen::MatrixXcd::Zero(c, c);
  // Images of e_col (x) 1; complex linearity fixes the rest.
  for (int col = 0; col < c; ++col) {
    const int block = col / 4;
    const Quaternion x = Quaternion::basis(col % 4);
    s.T.block(2 * block, col, 2, 1) = w_coords(x);
    s.T.block(2 * (n + block), col, 2, 1) = w_coords(x * Quaternion::j());
  }
  s.sigma_min = Eigen::JacobiSVD<Eigen::MatrixXcd>(s.T).singularValues()(c - 1);
  for (int g = 1; g <= 3; ++g) {
    const Quaternion q = Quaternion::basis(g);
    const Eigen::MatrixXcd lhs = s.T * block_left(q, n).cast<cd>();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(c, c);
    for (int e = 0; e < 2 * n; ++e) rho.block(2 * e, 2 * e, 2, 2) = w_action(q);
    s.residual[g - 1] = (lhs - rho * s.T).norm();
    require(s.residual[g - 1] <= 1e-12, ErrorCode::Internal,
            "intertwining residual above tolerance for generator " + std::to_string(g));
  }
  require(s.sigma_min > 1e-12, ErrorCode::Internal, "intertwiner is singular");
  return s;
}

double gauge_equivariance_check(const SpinorField& u, const SpinPair& g) {
  const int n = u.base.target_dim();
  require(u.base.target().triple.relation_residual() < 1e-9 && !u.base.target().is_torus(),
          ErrorCode::Precondition, "gauge check runs on flat targets");
  const SpinorField transformed{u.base.transformed(block_left(g.q_plus().conj(), n)), u.gauge * g};
  const std::vector<double> lhs = dirac_apply(transformed);
  std::vector<double> rhs = dirac_apply(u);
  const Mat Lm = block_left(g.q_minus().conj(), n);
  const int c = 4 * n;
  for (std::size_t i = 0; i * c < rhs.size(); ++i) {
    Eigen::Map<Vec> v(rhs.data() + i * c, c);
    v = Lm * v.eval();
  }
  return max_over(lhs, rhs, c);
}

KernelSpectrum dirac_kernel_spectrum(const GridDomain& domain, int n, KernelOperator op,
                                     double threshold) {
  require(domain.periodic(), ErrorCode::Precondition, "kernel computation needs a torus");
  require(n >= 1, ErrorCode::InvalidArgument, "target dimension must be >= 1");
  using CMat = Eigen::MatrixXcd;
  const int N = domain.N();
  const double h = domain.h();
  const int c = 4 * n;
  const Mat4 F = frame_matrix();
  const Mat id = Mat::Identity(c, c);
  Mat Ia[4];
  for (int a = 0; a < 4; ++a) Ia[a] = block_left(Quaternion::basis(a), n);
  const int extra = op == KernelOperator::Regularized ? c : 0;

  std::vector<double> sigmas;
  sigmas.reserve(domain.size() * c);
  CMat block(c + extra, c);
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    const LatticePoint m = domain.point(idx);
    Mat sym = Mat::Zero(c, c);
    double lap = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double th = 2.0 * std::numbers::pi * m[a] / N;
      sym += (std::sin(th) / h) * F(a, a) * Ia[a];
      lap -= 4.0 * std::sin(0.5 * th) * std::sin(0.5 * th) / (h * h);
    }
    block.topRows(c) = cd(0, 1) * sym.cast<cd>();
    if (extra) block.bottomRows(c) = (0.5 * h * lap * id).cast<cd>();
    Eigen::JacobiSVD<CMat> svd(block);
    for (int k = 0; k < c; ++k) sigmas.push_back(svd.singularValues()(k));
  }

  return classify_spectrum(sigmas, threshold);
}

void write_basis_table(std::ostream& os, int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "target dimension must be >= 1");
  const Lemma8Split s = lemma8_split(n);
  os << "# aholo basis identification, target H^" << n << "\n";
  os << "quaternion_basis 1 i j k\n";
  os << "spinor_coordinate c -> block " << "floor(c/4), quaternion unit c mod 4\n";
  os << "frame v0=+e0 v1=-e1 v2=-e2 v3=-e3\n";
  os << "horizontal_structure J_l = R(-e_l)\n";
  os << "target_structure I_l = L(e_l) blockwise\n";
  os << "reduction c(x)x -> (c0 x + c1 I1 x, c2 x - c3 I1 x)\n";
  os << "real_part b = -I2 a; clifford_target stores a\n";
  os << "w_complex_structure R_i; w_basis 1 j; coords(w+xi+yj+zk) = (w+ix, y-iz)\n";
  os << "e_factor C^" << 2 * n << " trivial action\n";
  os << "intertwiner rows " << 4 * n << " cols " << 4 * n << "\n";
  for (int r = 0; r < s.T.rows(); ++r) {
    os << "T";
    for (int c = 0; c < s.T.cols(); ++c) {
      const cd z = s.T(r, c);
      os << ' ' << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
    }
    os << '\n';
  }
  os << "residual_i " << s.residual[0] << "\nresidual_j " << s.residual[1] << "\nresidual_k "
     << s.residual[2] << "\n";
}

void write_basis_table(const std::string& path, int n) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path + " for writing");
  write_basis_table(os, n);
  require(static_cast<bool>(os), ErrorCode::Io, "write failed on " + path);
}

}  // namespace aholo
