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
#include "aholo/quaternion.hpp"

#include "aholo/error.hpp"

#include <algorithm>
#include <string>

namespace aholo {

Mat4 left_mult_matrix(const Quaternion& q) {
  Mat4 M;
  for (int c = 0; c < 4; ++c) M.col(c) = (q * Quaternion::basis(c)).to_vec();
  return M;
}

Mat4 right_mult_matrix(const Quaternion& q) {
  Mat4 M;
  for (int c = 0; c < 4; ++c) M.col(c) = (Quaternion::basis(c) * q).to_vec();
  return M;
}

Mat block_diag(const Mat4& B, int m) {
  Mat M = Mat::Zero(4 * m, 4 * m);
  for (int b = 0; b < m; ++b) M.block<4, 4>(4 * b, 4 * b) = B;
  return M;
}

HyperComplexTriple::HyperComplexTriple(Mat I1, Mat I2, Mat I3, double tol) {
  require(I1.rows() == I1.cols() && I1.rows() % 4 == 0 && I1.rows() > 0,
          ErrorCode::DimensionMismatch, "triple matrices must be square 4m x 4m");
  require(I2.rows() == I1.rows() && I2.cols() == I1.cols() &&
              I3.rows() == I1.rows() && I3.cols() == I1.cols(),
          ErrorCode::DimensionMismatch, "triple matrices differ in shape");
  I_ = {std::move(I1), std::move(I2), std::move(I3)};
  const double r = relation_residual();
  require(r <= tol, ErrorCode::InvalidArgument,
          "quaternion relations violated (residual " + std::to_string(r) + ")");
}

HyperComplexTriple HyperComplexTriple::unchecked(Mat I1, Mat I2, Mat I3) {
  HyperComplexTriple t;
  t.I_ = {std::move(I1), std::move(I2), std::move(I3)};
  return t;
}

double HyperComplexTriple::relation_residual() const {
  const auto n = I_[0].rows();
  const Mat id = Mat::Identity(n, n);
  double r = 0.0;
  for (const auto& I : I_) {
    r = std::max(r, (I * I + id).cwiseAbs().maxCoeff());
    r = std::max(r, (I.transpose() * I - id).cwiseAbs().maxCoeff());
  }
  r = std::max(r, (I_[0] * I_[1] - I_[2]).cwiseAbs().maxCoeff());
  r = std::max(r, (I_[1] * I_[0] + I_[2]).cwiseAbs().maxCoeff());
  return r;
}

HyperComplexTriple HyperComplexTriple::conjugated(const Mat& Q) const {
  require(Q.rows() == I_[0].rows() && Q.cols() == I_[0].cols(),
          ErrorCode::DimensionMismatch, "conjugating matrix has wrong shape");
  return unchecked(Q * I_[0] * Q.transpose(), Q * I_[1] * Q.transpose(),
                   Q * I_[2] * Q.transpose());
}

HyperComplexTriple standard_triple(Side side, int m) {
  require(m >= 1, ErrorCode::InvalidArgument, "quaternionic dimension must be >= 1");
  std::array<Mat, 3> I;
  for (int l = 0; l < 3; ++l) {
    const Quaternion e = Quaternion::basis(l + 1);
    I[l] = block_diag(side == Side::Left ? left_mult_matrix(e) : right_mult_matrix(-e), m);
  }
  return HyperComplexTriple(I[0], I[1], I[2], kExactTol);
}

SpinPair::SpinPair(Quaternion q_plus, Quaternion q_minus, double tol)
    : qp_(q_plus), qm_(q_minus) {
  require(std::abs(qp_.norm() - 1.0) <= tol && std::abs(qm_.norm() - 1.0) <= tol,
          ErrorCode::InvalidArgument, "spin pair components must be unit quaternions");
}

SpinPair SpinPair::operator*(const SpinPair& o) const {
  return SpinPair(qp_ * o.qp_, qm_ * o.qm_);
}

Mat4 spin4_to_so4(const SpinPair& g) {
  return left_mult_matrix(g.q_minus()) * right_mult_matrix(g.q_plus().conj());
}

}  // namespace aholo
