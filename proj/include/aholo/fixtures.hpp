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

// Closed-form test maps with analytic Jacobians: affine part plus a finite
// sum of trigonometric modes periodic on [0, L]^4.

#include "aholo/grid.hpp"
#include "aholo/rng.hpp"

#include <vector>

namespace aholo {

struct TrigMode {
  Eigen::Vector4d wave;  // integer wave vector k; phase 2 pi k.x / L
  Vec cos_coeff;
  Vec sin_coeff;
};

struct FixtureMap {
  double L = 1.0;
  Vec offset;
  Mat linear;  // 4n x 4
  std::vector<TrigMode> modes;

  int components() const { return static_cast<int>(offset.size()); }
  Vec value(const Point4& x) const;
  Mat jacobian(const Point4& x) const;
  ClosedFormMap as_function() const {
    return [m = *this](const Point4& x) { return m.value(x); };
  }

  static FixtureMap constant(const Vec& c, double L);
  static FixtureMap affine(const Mat& A, const Vec& c, double L);
  /// Affine map with linear part Lambda * W^T / L, i.e. winding W into the
  /// torus R^{4n} / Lambda.
  static FixtureMap winding(const Mat& periods, const Eigen::MatrixXi& W, double L);
  /// `count` modes with wave-vector entries in {-1, 0, 1} and coefficients
  /// uniform in [-amplitude, amplitude].
  static FixtureMap random_trig(Rng& rng, int n, double L, int count, double amplitude);

  FixtureMap plus(const FixtureMap& other) const;
};

/// u(x) = q x on H (left multiplication by q in lattice coordinates).
FixtureMap left_linear(const Quaternion& q, double L);

}  // namespace aholo
