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

// Lattice discretization of maps from a flat 4-torus (or a 4-box) into
// R^{4n} or a flat torus R^{4n} / Lambda.
//
// Lattice points are p = (p0, p1, p2, p3) with 0 <= p_a < N and coordinates
// x_a = p_a * h. Point index is ((p0 * N + p1) * N + p2) * N + p3.
//
// Source structure: in lattice coordinates the flat torus carries the left
// triple J_l = L(e_l). Its Kaehler forms dx01 + dx23, dx02 + dx31,
// dx03 + dx12 are self-dual for the orientation dx0123. The orthonormal
// frame (d0, -d1, -d2, -d3) identifies this with the right triple used for
// the horizontal structure of the spinor bundle (see dirac.hpp).

#include "aholo/quaternion.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aholo {

using LatticePoint = std::array<int, 4>;
using Point4 = std::array<double, 4>;

class GridDomain {
 public:
  /// N points per axis (even, >= 4), side length L > 0. The stored length
  /// is recomputed as h * N so that h * N == L holds exactly.
  GridDomain(int N, double L, bool periodic = true);

  int N() const { return N_; }
  double L() const { return L_; }
  double h() const { return h_; }
  bool periodic() const { return periodic_; }
  std::size_t size() const { return static_cast<std::size_t>(N_) * N_ * N_ * N_; }

  std::size_t index(const LatticePoint& p) const {
    return ((static_cast<std::size_t>(p[0]) * N_ + p[1]) * N_ + p[2]) * N_ + p[3];
  }
  LatticePoint point(std::size_t idx) const;
  Point4 coords(const LatticePoint& p) const {
    return {p[0] * h_, p[1] * h_, p[2] * h_, p[3] * h_};
  }
  /// Point where the central-difference differential is defined: every
  /// point on a torus, interior points on a box.
  bool has_differential(const LatticePoint& p) const;
  double cell_volume() const { return h_ * h_ * h_ * h_; }

 private:
  int N_;
  double L_;
  double h_;
  bool periodic_;
};

/// Target R^{4n} with a constant triple, optionally divided by a lattice
/// whose periods are the columns of `periods` (4n x 4n, invertible).
struct TargetSpec {
  int n = 1;
  HyperComplexTriple triple = standard_triple(Side::Left, 1);
  std::optional<Mat> periods;

  static TargetSpec flat(int n);
  static TargetSpec torus(int n, Mat periods);
  bool is_torus() const { return periods.has_value(); }
};

/// Lattice source triple in lattice coordinates, J_l = L(e_l).
const HyperComplexTriple& torus_source_triple();

class GridMap {
 public:
  /// `values` holds size() * 4n doubles, component index fastest.
  /// `winding` (4 x 4n, row a = integer period vector crossed along axis a)
  /// must be given exactly when the target is a torus.
  GridMap(GridDomain domain, TargetSpec target, std::vector<double> values,
          std::optional<Eigen::MatrixXi> winding = std::nullopt);

  const GridDomain& domain() const { return domain_; }
  const TargetSpec& target() const { return target_; }
  int target_dim() const { return target_.n; }
  int components() const { return 4 * target_.n; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  const std::optional<Eigen::MatrixXi>& winding() const { return winding_; }

  Eigen::Map<const Vec> value(std::size_t idx) const {
    return {values_.data() + idx * components(), components()};
  }
  Eigen::Map<Vec> value(std::size_t idx) {
    return {values_.data() + idx * components(), components()};
  }

  /// Lift of u(p + step * e_axis), step = +-1, unwrapped across the seam
  /// through the winding data. Periodic domains only.
  Vec neighbor(const LatticePoint& p, int axis, int step) const;

  /// Same map with values multiplied by the block-diagonal matrix `M`
  /// (e.g. a target isometry); winding is carried along unchanged.
  GridMap transformed(const Mat& M) const;

 private:
  GridDomain domain_;
  TargetSpec target_;
  std::vector<double> values_;
  std::optional<Eigen::MatrixXi> winding_;
  std::vector<Vec> wrap_offset_;  // Lambda * winding row, per axis
};

using ClosedFormMap = std::function<Vec(const Point4&)>;

/// Evaluates `f` on the lattice. For periodic domains the periodicity of a
/// flat target, or the winding for a torus target, is read off from
/// f(x + L e_a) - f(x) and checked at several points.
GridMap sample(const GridDomain& domain, const TargetSpec& target, const ClosedFormMap& f);

/// Central-difference differential, column a = (u(p+e_a) - u(p-e_a)) / 2h.
Mat differential_at(const GridMap& u, const LatticePoint& p);

class DifferentialField {
 public:
  DifferentialField(GridDomain domain, int rows, std::vector<double> data)
      : domain_(std::move(domain)), rows_(rows), data_(std::move(data)) {}

  const GridDomain& domain() const { return domain_; }
  int rows() const { return rows_; }
  /// 4n x 4 matrix at a point (zero where has_differential is false).
  Eigen::Map<const Mat> at(std::size_t idx) const {
    return {data_.data() + idx * rows_ * 4, rows_, 4};
  }

 private:
  GridDomain domain_;
  int rows_;
  std::vector<double> data_;
};

DifferentialField differential(const GridMap& u);

/// Compensated (Neumaier) sum, fixed order.
class Accumulator {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// h^4 * sum over lattice points. Periodic domains only.
double integrate(const GridDomain& domain, const std::vector<double>& f);

/// Pointwise density of omega_l^X ^ u^* omega_l^M relative to dvol, for a
/// differential A: -1/2 tr(A^T I_l A J_l), with omega(v, w) = <J v, w>.
double kaehler_density(const Mat& A, int l, const HyperComplexTriple& source,
                       const HyperComplexTriple& target);

/// Integral over the torus of omega_l^X ^ u^* omega_l^M, l in {1, 2, 3}.
double kaehler_pairing(const GridMap& u, int l);

// Serialization. The binary layout is documented in docs/grid_format.md.
void write_binary(const GridMap& u, const std::string& path);
void write_binary(const GridMap& u, std::ostream& os);
GridMap read_binary(const std::string& path);
GridMap read_binary(std::istream& is);
void write_csv(const GridMap& u, std::ostream& os);
void write_csv(const GridMap& u, const std::string& path);

}  // namespace aholo
