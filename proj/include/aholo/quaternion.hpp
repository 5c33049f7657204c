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
#pragma once

// Quaternion arithmetic and the standard quaternionic structures on H^m.
//
// Every matrix in the library uses the real basis (1, i, j, k) per
// quaternionic coordinate, coordinates stacked in order.

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace aholo {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr double kExactTol = 1e-12;

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }
  /// Basis element e_l with e_0 = 1, e_1 = i, e_2 = j, e_3 = k.
  static constexpr Quaternion basis(int l) {
    return {l == 0 ? 1.0 : 0.0, l == 1 ? 1.0 : 0.0, l == 2 ? 1.0 : 0.0,
            l == 3 ? 1.0 : 0.0};
  }

  static Quaternion from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  Vec4 to_vec() const { return Vec4(w, x, y, z); }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr double real() const { return w; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
};

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}
constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.w, s * q.x, s * q.y, s * q.z};
}
constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

/// Matrix of h -> q h.
Mat4 left_mult_matrix(const Quaternion& q);
/// Matrix of h -> h q.
Mat4 right_mult_matrix(const Quaternion& q);

enum class Side { Left, Right };

/// Three orthogonal complex structures on R^{4m} with I1 I2 = I3.
class HyperComplexTriple {
 public:
  /// Validates the quaternion relations to `tol`; throws on violation.
  HyperComplexTriple(Mat I1, Mat I2, Mat I3, double tol = 1e-9);

  /// Builds without validation. Used by fault-injection hooks and by
  /// `conjugated` where the relations hold by construction.
  static HyperComplexTriple unchecked(Mat I1, Mat I2, Mat I3);

  int dim() const { return static_cast<int>(I_[0].rows()) / 4; }
  const Mat& operator[](int l) const { return I_[l]; }
  const Mat& I1() const { return I_[0]; }
  const Mat& I2() const { return I_[1]; }
  const Mat& I3() const { return I_[2]; }

  /// Largest violated entry over I_l^2 = -1, I1 I2 = I3 = -I2 I1 and
  /// orthogonality; zero for an exact triple.
  double relation_residual() const;

  /// Q I_l Q^T for orthogonal Q.
  HyperComplexTriple conjugated(const Mat& Q) const;

 private:
  HyperComplexTriple() = default;
  std::array<Mat, 3> I_;
};

/// Block-diagonal triple on H^m. Left: I_l = L(e_l). Right: I_l = R(-e_l),
/// i.e. h -> -h e_l, which is the sign choice making I1 I2 = I3 hold.
HyperComplexTriple standard_triple(Side side, int m);

/// Element of Spin(4) = Sp_+(1) x Sp_-(1).
class SpinPair {
 public:
  SpinPair(Quaternion q_plus, Quaternion q_minus, double tol = 1e-9);
  const Quaternion& q_plus() const { return qp_; }
  const Quaternion& q_minus() const { return qm_; }
  SpinPair operator*(const SpinPair& o) const;

 private:
  Quaternion qp_;
  Quaternion qm_;
};

/// Matrix of h -> q_- h conj(q_+).
Mat4 spin4_to_so4(const SpinPair& g);

/// Block-diagonal kron(I_m, B) for a 4x4 block B.
Mat block_diag(const Mat4& B, int m);

}  // namespace aholo
