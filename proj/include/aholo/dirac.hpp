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

// Generalized Dirac operator for the trivial Spin(4) bundle over the flat
// torus with target H^n, where Sp(1) acts by left multiplication.
//
// Conventions. The orthonormal frame is v_0 = d/dx0, v_l = -d/dx_l, so in
// lattice coordinates v_a = F e_a with F = diag(1, -1, -1, -1). Frame
// coordinates carry the horizontal structure J_l = R(-e_l).
//
// W+ and W- are both H with the complex structure R_i. An element of
// W+- (x) E, E = C^{2n}, is stored as a pair (a, b) of vectors in R^{4n}:
// the tensor c (x) x with c = c0 + c1 i + c2 j + c3 k reduces to
//   (c0 x + c1 I1 x,  c2 x - c3 I1 x).
// The real part is the subspace b = -I2 a; a CliffordTarget value is its
// a-component.

#include "aholo/crf.hpp"

#include <complex>
#include <iosfwd>
#include <utility>

namespace aholo {

/// Frame matrix F: column a holds v_a in lattice coordinates.
Mat4 frame_matrix();

/// J_l = R(-e_l) on R^4, acting on frame coordinates.
HyperComplexTriple horizontal_structure();

/// reduce(c, x) = (c0 x + c1 I1 x, c2 x - c3 I1 x).
std::pair<Vec, Vec> clifford_reduce(const Quaternion& c, const Vec& x);

/// a-component of h.1 (x) w - h.j (x) I2 w.
Vec clifford_mul(const Quaternion& h, const Vec& w);

struct SpinorField {
  GridMap base;
  SpinPair gauge = SpinPair(Quaternion::one(), Quaternion::one());
};

/// Dirac operator at one point for a differential A (lattice coordinates)
/// and frame matrix `frame` (columns are frame vectors).
Vec dirac_at(const Mat& A, const Mat4& frame);

/// Field of CliffordTarget values, 4n per point, point-major. Box boundary
/// points are zero.
std::vector<double> dirac_apply(const SpinorField& u);

/// Two-component form (a, b) of the harmonicity equation evaluated directly
/// from the frame derivatives w_a = du(v_a):
///   a = w0 + I1 w1 + I2 w2 + I3 w3,  b = -I2 w0 + I3 w1 + w2 - I1 w3.
std::pair<Vec, Vec> two_component(const Mat& A);

struct HarmonicityResult {
  double dirac_norm = 0;          // L2 of the full W- (x) E element, sqrt(2) |a|
  double two_component_norm = 0;  // L2 of (a, b)
  double crf_norm = 0;            // L2 of C(du) - du with the horizontal structure
  double real_part_residual = 0;  // max |b + I2 a|
  double locus_mismatch = 0;      // max over points of | |a| - |C(du) - du| / 2 |
};

/// Requires trivial gauge.
HarmonicityResult harmonicity_equivalence(const SpinorField& u);

struct Lemma8Split {
  int n = 0;
  /// Complex 4n x 4n matrix from C (x) R^{4n} (basis e_c (x) 1) to W (x) E.
  /// W = (H, R_i) with complex basis {1, j}; E = C^{2n} with trivial action.
  /// Target coordinates: W-pair index 2e + {0, 1} for E index e.
  Eigen::MatrixXcd T;
  double residual[3] = {0, 0, 0};  // generators i, j, k
  double sigma_min = 0;
};

/// Explicit intertwiner C (x) H^n -> W (x) E. The first n copies of W are
/// the projection v -> x + R_i y of v = x (x) 1 + y (x) i; the last n are
/// v -> x j + R_i (y j). Throws Internal when a residual exceeds 1e-12.
Lemma8Split lemma8_split(int n);

/// Action of a unit quaternion on W in the {1, j} complex coordinates.
Eigen::Matrix2cd w_action(const Quaternion& q);

/// Transforms the frame by spin4_to_so4(g), the spinor by L(conj q+), and
/// returns max over points of |D_g(u') - L(conj q-) D(u)|.
double gauge_equivariance_check(const SpinorField& u, const SpinPair& g);

/// Spectrum of the Dirac operator on T^4 -> H^n stacked with (h/2) times
/// the lattice Laplacian, classified as in crf_kernel_spectrum.
KernelSpectrum dirac_kernel_spectrum(const GridDomain& domain, int n,
                                     KernelOperator op = KernelOperator::Regularized,
                                     double threshold = kKernelThreshold);

/// Text table documenting the basis identifications used above.
void write_basis_table(std::ostream& os, int n);
void write_basis_table(const std::string& path, int n);

}  // namespace aholo
