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
#include "aholo/crf.hpp"

#include "aholo/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace aholo {

CrfResidualField::CrfResidualField(GridDomain domain, int rows, std::vector<double> data,
                                   double l2)
    : domain_(std::move(domain)), rows_(rows), data_(std::move(data)), l2_(l2) {}

double CrfResidualField::max_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < domain_.size(); ++i) m = std::max(m, at(i).norm());
  return m;
}

CrfResidualField crf_residual(const GridMap& u) {
  const auto& dom = u.domain();
  const auto& J = torus_source_triple();
  const auto& I = u.target().triple;
  const int rows = u.components();
  std::vector<double> data(dom.size() * rows * 4, 0.0);
  Accumulator acc;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Mat A = differential_at(u, p);
    const Mat R = apply_C(A, J, I) - A;
    acc.add(R.squaredNorm());
    std::copy(R.data(), R.data() + rows * 4, data.begin() + static_cast<std::ptrdiff_t>(i * rows * 4));
  }
  const double l2 = std::sqrt(dom.cell_volume() * acc.value());
  return CrfResidualField(dom, rows, std::move(data), l2);
}

GridMap fueter_residual(const GridMap& u) {
  require(u.target_dim() == 1, ErrorCode::DimensionMismatch,
          "Fueter residual is defined for maps H -> H");
  const auto& dom = u.domain();
  std::vector<double> out(dom.size() * 4, 0.0);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Mat A = differential_at(u, p);
    Quaternion r = Quaternion::from_vec(A.col(0));
    for (int l = 1; l < 4; ++l) r -= Quaternion::basis(l) * Quaternion::from_vec(A.col(l));
    out[4 * i + 0] = r.w;
    out[4 * i + 1] = r.x;
    out[4 * i + 2] = r.y;
    out[4 * i + 3] = r.z;
  }
  // The residual is a plain quaternion field: no winding even for torus targets.
  return GridMap(dom, TargetSpec::flat(1), std::move(out));
}

double crf_fueter_consistency(const GridMap& u) {
  const GridMap F = fueter_residual(u);
  const auto& dom = u.domain();
  const auto& J = torus_source_triple();
  double worst = 0.0;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Mat A = differential_at(u, p);
    const Vec r0 = (apply_C(A, J, u.target().triple) - A).col(0);
    worst = std::max(worst, std::abs(F.value(i).norm() - r0.norm()));
  }
  return worst;
}

double energy(const GridMap& u) {
  const auto& dom = u.domain();
  require(dom.periodic(), ErrorCode::Precondition, "energy requires a periodic domain");
  Accumulator acc;
  for (std::size_t i = 0; i < dom.size(); ++i)
    acc.add(differential_at(u, dom.point(i)).squaredNorm());
  return 0.5 * dom.cell_volume() * acc.value();
}

WeitzenboeckResult weitzenboeck_check(const GridMap& u) {
  const auto& dom = u.domain();
  require(dom.periodic(), ErrorCode::Precondition, "energy identity requires a torus source");
  const auto& J = torus_source_triple();
  const auto& I = u.target().triple;
  Accumulator en, res, pair[3];
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Mat A = differential_at(u, dom.point(i));
    en.add(A.squaredNorm());
    res.add((A - apply_C(A, J, I)).squaredNorm());
    for (int l = 1; l <= 3; ++l) pair[l - 1].add(kaehler_density(A, l, J, I));
  }
  const double vol = dom.cell_volume();
  WeitzenboeckResult r;
  r.lhs = 0.5 * vol * en.value();
  r.residual_term = 0.125 * vol * res.value();
  for (int l = 0; l < 3; ++l) r.pairing[l] = vol * pair[l].value();
  r.rhs = r.residual_term - r.topological();
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

KernelSpectrum crf_kernel_spectrum(const GridDomain& domain, int n, KernelOperator op,
                                   double threshold) {
  require(domain.periodic(), ErrorCode::Precondition, "kernel computation needs a torus");
  require(n >= 1, ErrorCode::InvalidArgument, "target dimension must be >= 1");
  using CMat = Eigen::MatrixXcd;
  const int N = domain.N();
  const double h = domain.h();
  const int c = 4 * n;
  const auto& J = torus_source_triple();
  const HyperComplexTriple I = standard_triple(Side::Left, n);
  const Mat id = Mat::Identity(c, c);
  const int extra = op == KernelOperator::Regularized ? c : 0;

  std::vector<double> sigmas;
  sigmas.reserve(domain.size() * c);
  CMat block(4 * c + extra, c);
  for (std::size_t idx = 0; idx < domain.size(); ++idx) {
    const LatticePoint m = domain.point(idx);
    Eigen::Vector4d s;  // central-difference symbol is i * s
    double lap = 0.0;
    for (int a = 0; a < 4; ++a) {
      const double th = 2.0 * std::numbers::pi * m[a] / N;
      s[a] = std::sin(th) / h;
      lap -= 4.0 * std::sin(0.5 * th) * std::sin(0.5 * th) / (h * h);
    }
    // vec(I v s^T J) = kron(J^T s, I) v on column-major vec.
    Mat real_part = Mat::Zero(4 * c, c);
    for (int a = 0; a < 4; ++a) real_part.block(a * c, 0, c, c) -= s[a] * id;
    for (int l = 0; l < 3; ++l) {
      const Eigen::Vector4d js = J[l].transpose() * s;
      for (int a = 0; a < 4; ++a) real_part.block(a * c, 0, c, c) += js[a] * I[l];
    }
    block.topRows(4 * c) = std::complex<double>(0, 1) * real_part.cast<std::complex<double>>();
    if (extra) block.bottomRows(c) = (0.5 * h * lap * id).cast<std::complex<double>>();
    Eigen::JacobiSVD<CMat> svd(block);
    for (int k = 0; k < c; ++k) sigmas.push_back(svd.singularValues()(k));
  }

  return classify_spectrum(sigmas, threshold);
}

KernelSpectrum classify_spectrum(const std::vector<double>& sigmas, double threshold) {
  require(!sigmas.empty() && threshold > 0, ErrorCode::InvalidArgument,
          "spectrum classification needs singular values and a positive threshold");
  KernelSpectrum out;
  out.sigma_max = *std::max_element(sigmas.begin(), sigmas.end());
  out.largest_zero = 0.0;
  out.smallest_nonzero = 1.0;
  out.conclusive = true;
  for (double sg : sigmas) {
    const double r = sg / out.sigma_max;
    if (r <= threshold) {
      ++out.dimension;
      out.largest_zero = std::max(out.largest_zero, r);
    } else {
      out.smallest_nonzero = std::min(out.smallest_nonzero, r);
    }
    if (r > threshold / 100 && r < threshold * 100) out.conclusive = false;
  }
  return out;
}

int crf_kernel_dimension(const GridDomain& domain, int n, double threshold) {
  const KernelSpectrum s = crf_kernel_spectrum(domain, n, KernelOperator::Regularized, threshold);
  require(s.conclusive, ErrorCode::Inconclusive,
          "spectral gap does not clear the kernel threshold (largest zero " +
              std::to_string(s.largest_zero) + ", smallest nonzero " +
              std::to_string(s.smallest_nonzero) + ")");
  return s.dimension;
}

std::vector<double> energy_gradient(const GridMap& u) {
  const auto& dom = u.domain();
  require(dom.periodic(), ErrorCode::Precondition, "energy gradient requires a periodic domain");
  const DifferentialField du = differential(u);
  const int c = u.components();
  const double w = dom.cell_volume() / (2.0 * dom.h());
  std::vector<double> g(u.values().size(), 0.0);
  const int N = dom.N();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    Eigen::Map<Vec> gi(g.data() + i * c, c);
    for (int a = 0; a < 4; ++a) {
      LatticePoint fw = p, bw = p;
      fw[a] = (p[a] + 1) % N;
      bw[a] = (p[a] + N - 1) % N;
      gi += w * (du.at(dom.index(bw)).col(a) - du.at(dom.index(fw)).col(a));
    }
  }
  return g;
}

MinimizeResult minimize_energy(const GridMap& u0, const MinimizeOptions& opts) {
  const auto& dom = u0.domain();
  require(!u0.target().is_torus() || u0.winding().has_value(), ErrorCode::InvalidArgument,
          "torus target without winding");
  require(opts.steps >= 0, ErrorCode::InvalidArgument, "step count must be >= 0");
  double tau = opts.step_size > 0 ? opts.step_size : dom.h() * dom.h() / 8.0;
  const double inv_vol = 1.0 / dom.cell_volume();

  MinimizeResult out{u0, {energy(u0)}};
  for (int step = 0; step < opts.steps; ++step) {
    const std::vector<double> g = energy_gradient(out.map);
    const double e_old = out.energies.back();
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
      GridMap trial = out.map;
      auto& v = trial.mutable_values();
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= tau * inv_vol * g[k];
      const double e_new = energy(trial);
      if (e_new <= e_old + opts.increase_tol * std::max(e_old, 1e-300)) {
        out.map = std::move(trial);
        out.energies.push_back(e_new);
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    require(accepted, ErrorCode::Divergence,
            "energy increased at step " + std::to_string(step) + "; reduce the step size");
  }
  return out;
}

Mat S1ActionModel::rotation(std::complex<double> z) const {
  return block_diag(left_mult_matrix({z.real(), z.imag(), 0, 0}), n);
}

Vec S1ActionModel::killing_field(const Vec& h) const {
  return killing_coefficient * (triple()[0] * h);
}

S1RotationResult s1_rotation_check(const S1ActionModel& model, std::complex<double> z,
                                   std::complex<double> w) {
  require(std::abs(std::abs(z) - 1.0) <= 1e-9 && std::abs(std::abs(w) - 1.0) <= 1e-9,
          ErrorCode::InvalidArgument, "circle parameters must have unit modulus");
  const HyperComplexTriple I = model.triple();
  const Mat P = model.rotation(z);
  const Mat Pinv = model.rotation(std::conj(z));
  S1RotationResult r;
  r.commute_residual = (P * I[0] - I[0] * P).norm();
  const Mat Iw = w.real() * I[1] + w.imag() * I[2];
  const Mat rotated = P * Iw * Pinv;
  const double nrm = I[1].squaredNorm();
  const double a = (rotated.array() * I[1].array()).sum() / nrm;
  const double b = (rotated.array() * I[2].array()).sum() / nrm;
  r.w_prime = {a, b};
  r.structure_residual = (rotated - (a * I[1] + b * I[2])).norm();
  r.residual = std::max({r.commute_residual, r.structure_residual, std::abs(r.w_prime - z * z * w)});
  return r;
}

double exactness_check(const S1ActionModel& model, const GridDomain& box) {
  require(model.n == 1, ErrorCode::DimensionMismatch, "exactness check runs on the target H");
  require(!box.periodic(), ErrorCode::InvalidArgument, "exactness check runs on a box domain");
  const HyperComplexTriple I = model.triple();
  // alpha = iota_K omega_2, alpha_b(x) = <I2 K(x), e_b>
  std::vector<Vec4> alpha(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Point4 x = box.coords(box.point(i));
    const Vec xv = Eigen::Map<const Vec4>(x.data());
    alpha[i] = I[1] * model.killing_field(xv);
  }
  const Mat4 omega3 = I[2].transpose();  // omega_3(e_a, e_b) = (I3)_{ba}
  const double inv = 0.5 / box.h();
  double worst = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const LatticePoint p = box.point(i);
    if (!box.has_differential(p)) continue;
    Mat4 grad;  // grad(a, b) = d_a alpha_b
    for (int a = 0; a < 4; ++a) {
      LatticePoint fw = p, bw = p;
      ++fw[a];
      --bw[a];
      grad.row(a) = inv * (alpha[box.index(fw)] - alpha[box.index(bw)]).transpose();
    }
    const Mat4 d_alpha = grad - grad.transpose();
    worst = std::max(worst, (d_alpha - omega3).norm());
  }
  return worst;
}

bool antiholomorphy_witness(const GridMap& u, const S1ActionModel& model, double tol) {
  require(u.target_dim() == model.n, ErrorCode::DimensionMismatch,
          "circle model and map differ in target dimension");
  const auto& dom = u.domain();
  const auto& J = torus_source_triple();
  const HyperComplexTriple I = model.triple();
  const Mat flip = model.rotation({0.0, 1.0});
  bool all = true;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Mat A = differential_at(u, p);
    const double scale = std::max(1.0, A.norm());
    require((apply_C(A, J, I) - A).norm() <= tol * scale, ErrorCode::Precondition,
            "antiholomorphy witness: map is not aholomorphic");
    const Mat Az = flip * A;
    require((apply_C(Az, J, I) - Az).norm() <= tol * scale, ErrorCode::Precondition,
            "antiholomorphy witness: rotated map is not aholomorphic");
    all = all && antiholomorphic_reduction(RealLinearMap(A, J, I), tol);
  }
  return all;
}

}  // namespace aholo
