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
#include "aholo/hom.hpp"

#include "aholo/error.hpp"

#include <algorithm>
#include <functional>

namespace aholo {

namespace {

void check_shape(const Mat& A, const HyperComplexTriple& source,
                 const HyperComplexTriple& target) {
  require(A.rows() == 4 * target.dim() && A.cols() == 4 * source.dim(),
          ErrorCode::DimensionMismatch,
          "map is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
              ", structures expect " + std::to_string(4 * target.dim()) + "x" +
              std::to_string(4 * source.dim()));
}

double rel_scale(const Mat& A) { return std::max(1.0, A.norm()); }

}  // namespace

RealLinearMap::RealLinearMap(Mat matrix, HyperComplexTriple source, HyperComplexTriple target)
    : matrix_(std::move(matrix)), source_(std::move(source)), target_(std::move(target)) {
  check_shape(matrix_, source_, target_);
}

Mat apply_C(const Mat& A, const HyperComplexTriple& source, const HyperComplexTriple& target) {
  check_shape(A, source, target);
  return target[0] * A * source[0] + target[1] * A * source[1] + target[2] * A * source[2];
}

RealLinearMap apply_C(const RealLinearMap& A) {
  return A.with_matrix(apply_C(A.matrix(), A.source(), A.target()));
}

Mat apply_C_flipped(const Mat& A, const HyperComplexTriple& source,
                    const HyperComplexTriple& target) {
  check_shape(A, source, target);
  return target[0] * A * source[0] - target[1] * A * source[1] - target[2] * A * source[2];
}

Mat quaternionic_projection(const Mat& A, const HyperComplexTriple& source,
                            const HyperComplexTriple& target) {
  return 0.25 * (A - apply_C(A, source, target));
}

Mat c_operator_matrix(const HyperComplexTriple& source, const HyperComplexTriple& target) {
  const int rows = 4 * target.dim();
  const int cols = 4 * source.dim();
  const int d = rows * cols;
  Mat M(d, d);
  Mat E = Mat::Zero(rows, cols);
  for (int c = 0; c < d; ++c) {
    E(c % rows, c / rows) = 1.0;
    const Mat CE = apply_C(E, source, target);
    M.col(c) = Eigen::Map<const Vec>(CE.data(), d);
    E(c % rows, c / rows) = 0.0;
  }
  return M;
}

namespace {

// Singular values in decreasing order. C is self-adjoint for orthogonal
// triples, so the symmetric solver applies in the usual case; BDCSVD in
// Eigen 3.4.0 reports spurious O(1e-3) values on these projectors.
Vec singular_values(const Mat& P) {
  if ((P - P.transpose()).norm() <= 1e-12 * std::max(1.0, P.norm())) {
    Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(P, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
    return ev;
  }
  return Eigen::JacobiSVD<Mat>(P).singularValues();
}

}  // namespace

double char_poly_check(const HyperComplexTriple& source, const HyperComplexTriple& target) {
  const Mat C = c_operator_matrix(source, target);
  const Mat P = C * C + 2.0 * C - 3.0 * Mat::Identity(C.rows(), C.cols());
  return singular_values(P)(0);
}

HomDecomposition decompose(const RealLinearMap& A) {
  const Mat CA = apply_C(A.matrix(), A.source(), A.target());
  return {A.with_matrix(0.25 * (A.matrix() - CA)), A.with_matrix(0.25 * (3.0 * A.matrix() + CA))};
}

bool is_aquaternionic(const RealLinearMap& A, double tol) {
  require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const Mat CA = apply_C(A.matrix(), A.source(), A.target());
  return (CA - A.matrix()).norm() <= tol * rel_scale(A.matrix());
}

bool is_quaternion_linear(const RealLinearMap& A, double tol) {
  require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const Mat CA = apply_C(A.matrix(), A.source(), A.target());
  return (CA + 3.0 * A.matrix()).norm() <= tol * rel_scale(A.matrix());
}

std::pair<int, int> projector_ranks(const HyperComplexTriple& source,
                                    const HyperComplexTriple& target) {
  const Mat C = c_operator_matrix(source, target);
  const Mat id = Mat::Identity(C.rows(), C.cols());
  auto rank = [](const Mat& P) {
    const Vec s = singular_values(P);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double thr = 1e-8 * s(0);
    return static_cast<int>((s.array() > thr).count());
  };
  return {rank(0.25 * (id - C)), rank(0.25 * (3.0 * id + C))};
}

RealLinearMap embed_b_plus(const RealLinearMap& A1, const RealLinearMap& A2,
                           const RealLinearMap& A3) {
  const RealLinearMap* parts[3] = {&A1, &A2, &A3};
  for (const auto* p : parts) {
    require(p->matrix().rows() == A1.matrix().rows() && p->matrix().cols() == A1.matrix().cols(),
            ErrorCode::DimensionMismatch, "embed_b_plus: maps differ in shape");
    require(is_quaternion_linear(*p, 1e-9), ErrorCode::Precondition,
            "embed_b_plus: input is not quaternion-linear");
  }
  const auto& I = A1.target();
  return A1.with_matrix(I[0] * A1.matrix() + I[1] * A2.matrix() + I[2] * A3.matrix());
}

bool antiholomorphic_reduction(const RealLinearMap& A, double tol) {
  require(tol > 0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const Mat& M = A.matrix();
  const double scale = rel_scale(M);
  require((apply_C(M, A.source(), A.target()) - M).norm() <= tol * scale,
          ErrorCode::Precondition, "antiholomorphic_reduction: map is not aquaternionic");
  require((apply_C_flipped(M, A.source(), A.target()) - M).norm() <= tol * scale,
          ErrorCode::Precondition,
          "antiholomorphic_reduction: rotated-structure equation does not hold");
  const Mat& I1 = A.target()[0];
  const Mat& J1 = A.source()[0];
  return (I1 * M * J1 - M).norm() <= tol * scale;
}

}  // namespace aholo
