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

// The Cauchy-Riemann-Fueter operator u -> C(du) - du on lattice maps, the
// energy functional and its identity, the discrete kernel on the torus, and
// the circle-action model on a flat target.

#include "aholo/grid.hpp"
#include "aholo/hom.hpp"

#include <complex>
#include <vector>

namespace aholo {

class CrfResidualField {
 public:
  CrfResidualField(GridDomain domain, int rows, std::vector<double> data, double l2);

  const GridDomain& domain() const { return domain_; }
  Eigen::Map<const Mat> at(std::size_t idx) const {
    return {data_.data() + idx * rows_ * 4, rows_, 4};
  }
  /// sqrt(h^4 * sum ||C(du) - du||_F^2) over points carrying a differential.
  double l2_norm() const { return l2_; }
  double max_norm() const;

 private:
  GridDomain domain_;
  int rows_;
  std::vector<double> data_;
  double l2_;
};

CrfResidualField crf_residual(const GridMap& u);

/// du/dx0 - i du/dx1 - j du/dx2 - k du/dx3 by central differences, for
/// maps H -> H. Entries without a differential (box boundary) are zero.
GridMap fueter_residual(const GridMap& u);

/// Max over points of | |fueter| - |(C(du) - du) e_0| |. With the lattice
/// source triple the two agree identically, so the convention constant
/// relating them is 1.
double crf_fueter_consistency(const GridMap& u);

/// 1/2 * integral of ||du||_F^2.
double energy(const GridMap& u);

struct WeitzenboeckResult {
  double lhs = 0;             // 1/2 ||du||^2
  double rhs = 0;             // 1/8 ||du - C(du)||^2 - sum_l pairing_l
  double gap = 0;
  double residual_term = 0;   // 1/8 ||du - C(du)||^2
  double pairing[3] = {0, 0, 0};
  double topological() const { return pairing[0] + pairing[1] + pairing[2]; }
};

/// Both sides of the energy identity on a torus source with a flat target.
WeitzenboeckResult weitzenboeck_check(const GridMap& u);

struct KernelSpectrum {
  int dimension = 0;              // singular values classified as zero
  double sigma_max = 0;
  double largest_zero = 0;        // relative to sigma_max
  double smallest_nonzero = 0;    // relative to sigma_max
  bool conclusive = false;
};

enum class KernelOperator {
  /// Central-difference CRF operator alone. On even N it has the 16 corner
  /// (doubler) modes k_a in {0, pi/h} per component in its kernel.
  Raw,
  /// CRF rows stacked with (h/2) times the nearest-neighbour Laplacian. The
  /// Laplacian rows remove the doublers and vanish on smooth kernel
  /// elements, since continuum solutions are harmonic.
  Regularized,
};

inline constexpr double kKernelThreshold = 1e-6;

/// Null space of the discrete CRF operator on T^4 -> R^{4n}, computed by
/// block-diagonalizing over lattice Fourier modes. A singular value is zero
/// when <= 1e-6 * sigma_max; the result is inconclusive when any singular
/// value falls within a factor 100 of that threshold.
KernelSpectrum crf_kernel_spectrum(const GridDomain& domain, int n,
                                   KernelOperator op = KernelOperator::Regularized,
                                   double threshold = kKernelThreshold);

/// Zero count and conclusiveness of a singular-value list.
KernelSpectrum classify_spectrum(const std::vector<double>& sigmas, double threshold);

/// Dimension of the regularized kernel; throws Inconclusive when the
/// spectral gap does not clear the threshold.
int crf_kernel_dimension(const GridDomain& domain, int n, double threshold = kKernelThreshold);

/// dE/du at every lattice value (h^4 weighted), via the adjoint stencil.
std::vector<double> energy_gradient(const GridMap& u);

struct MinimizeOptions {
  int steps = 200;
  double step_size = 0;          // 0 selects h^2 / 8
  double increase_tol = 1e-12;   // relative energy increase tolerated
  int max_halvings = 30;
};

struct MinimizeResult {
  GridMap map;
  std::vector<double> energies;  // energy after each accepted step, [0] initial
};

/// Gradient descent u <- u - tau * grad E / h^4 with backtracking halving.
/// Throws Divergence when no halving restores descent.
MinimizeResult minimize_energy(const GridMap& u0, const MinimizeOptions& opts = {});

/// Circle action h -> z h on H^n, fixing I1 = L(i) and rotating
/// I_w = a I2 + b I3 (w = a + b i) to I_{z^2 w}.
struct S1ActionModel {
  int n = 1;
  /// Killing field K(h) = killing_coefficient * I1 h. The value -1/2 makes
  /// d(iota_K omega_2) = omega_3 for omega(v, w) = <I v, w>; 0 gives the
  /// negative control.
  double killing_coefficient = -0.5;

  HyperComplexTriple triple() const { return standard_triple(Side::Left, n); }
  Mat rotation(std::complex<double> z) const;
  Vec killing_field(const Vec& h) const;
};

struct S1RotationResult {
  double commute_residual = 0;     // ||(L_z) I1 - I1 (L_z)||
  double structure_residual = 0;   // distance of L_z I_w L_zbar from span(I2, I3)
  std::complex<double> w_prime;    // the rotated structure is I_{w'}
  double residual = 0;             // max of the above and |w' - z^2 w|
};

S1RotationResult s1_rotation_check(const S1ActionModel& model, std::complex<double> z,
                                   std::complex<double> w);

/// max over interior points of ||omega_3 - d(iota_K omega_2)|| on a box in
/// the target H, with d by central differences.
double exactness_check(const S1ActionModel& model, const GridDomain& box);

/// For u with vanishing CRF residual: checks that the circle-rotated map
/// (z = i, which sends I2, I3 to -I2, -I3) is aholomorphic and then applies
/// antiholomorphic_reduction pointwise. Returns whether I1 du J1 = du holds
/// everywhere. Throws Precondition when either hypothesis fails.
bool antiholomorphy_witness(const GridMap& u, const S1ActionModel& model, double tol = 1e-9);

}  // namespace aholo
