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

// Real-linear maps between quaternionic vector spaces and the operator
//
//   C(A) = I1 A J1 + I2 A J2 + I3 A J3,
//
// where (J_l) acts on the source and (I_l) on the target. C satisfies
// C^2 + 2C - 3 = 0, so Hom_R(U, V) splits into the (-3)-eigenspace
// (quaternion-linear maps, A J_l = I_l A) and the 1-eigenspace
// (aquaternionic maps).

#include "aholo/quaternion.hpp"

#include <utility>

namespace aholo {

class RealLinearMap {
 public:
  /// `matrix` is 4n x 4m for a source of quaternionic dimension m and a
  /// target of dimension n.
  RealLinearMap(Mat matrix, HyperComplexTriple source, HyperComplexTriple target);

  const Mat& matrix() const { return matrix_; }
  const HyperComplexTriple& source() const { return source_; }
  const HyperComplexTriple& target() const { return target_; }

  RealLinearMap with_matrix(Mat m) const { return {std::move(m), source_, target_}; }

 private:
  Mat matrix_;
  HyperComplexTriple source_;
  HyperComplexTriple target_;
};

struct HomDecomposition {
  RealLinearMap quaternionic_part;
  RealLinearMap aquaternionic_part;
};

/// Raw matrix form of C, shared by pointwise field code.
Mat apply_C(const Mat& A, const HyperComplexTriple& source, const HyperComplexTriple& target);
RealLinearMap apply_C(const RealLinearMap& A);

/// I1 A J1 - I2 A J2 - I3 A J3: the CRF operator after the structures
/// I2, I3 have been rotated to -I2, -I3 by a target circle action.
Mat apply_C_flipped(const Mat& A, const HyperComplexTriple& source,
                    const HyperComplexTriple& target);

/// Projection onto the (-3)-eigenspace, (A - C(A)) / 4.
Mat quaternionic_projection(const Mat& A, const HyperComplexTriple& source,
                            const HyperComplexTriple& target);

/// Explicit 16mn x 16mn matrix of C acting on column-major vec(A).
Mat c_operator_matrix(const HyperComplexTriple& source, const HyperComplexTriple& target);

/// Operator norm of C^2 + 2C - 3 on Hom_R(U, V).
double char_poly_check(const HyperComplexTriple& source, const HyperComplexTriple& target);

HomDecomposition decompose(const RealLinearMap& A);

/// True iff ||C(A) - A|| <= tol * max(1, ||A||) in the Frobenius norm.
bool is_aquaternionic(const RealLinearMap& A, double tol = 1e-10);
bool is_quaternion_linear(const RealLinearMap& A, double tol = 1e-10);

/// Numerical ranks of the projectors onto the (-3)- and 1-eigenspaces,
/// using the threshold 1e-8 * (largest singular value).
std::pair<int, int> projector_ranks(const HyperComplexTriple& source,
                                    const HyperComplexTriple& target);

/// I1 A1 + I2 A2 + I3 A3 for quaternion-linear A_l; the result lies in the
/// 1-eigenspace. Throws Precondition when some A_l is not quaternion-linear
/// within 1e-9.
RealLinearMap embed_b_plus(const RealLinearMap& A1, const RealLinearMap& A2,
                           const RealLinearMap& A3);

/// Given C(A) = A and I1 A J1 - I2 A J2 - I3 A J3 = A (both within tol),
/// returns whether I1 A J1 = A within tol. Adding the two hypotheses forces
/// it, so a false result signals a numerical problem. Throws Precondition
/// when a hypothesis fails.
bool antiholomorphic_reduction(const RealLinearMap& A, double tol = 1e-9);

}  // namespace aholo
