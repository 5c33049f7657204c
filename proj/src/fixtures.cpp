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
#include "aholo/fixtures.hpp"

#include "aholo/error.hpp"

#include <cmath>
#include <numbers>

namespace aholo {

namespace {

double phase(const TrigMode& m, const Point4& x, double L) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) s += m.wave[a] * x[a];
  return 2.0 * std::numbers::pi * s / L;
}

}  // namespace

Vec FixtureMap::value(const Point4& x) const {
  Vec v = offset;
  for (int a = 0; a < 4; ++a) v += linear.col(a) * x[a];
  for (const auto& m : modes) {
    const double ph = phase(m, x, L);
    v += m.cos_coeff * std::cos(ph) + m.sin_coeff * std::sin(ph);
  }
  return v;
}

Mat FixtureMap::jacobian(const Point4& x) const {
  Mat J = linear;
  const double w = 2.0 * std::numbers::pi / L;
  for (const auto& m : modes) {
    const double ph = phase(m, x, L);
    const Vec d = w * (m.sin_coeff * std::cos(ph) - m.cos_coeff * std::sin(ph));
    J += d * m.wave.transpose();
  }
  return J;
}

FixtureMap FixtureMap::constant(const Vec& c, double L) {
  return {L, c, Mat::Zero(c.size(), 4), {}};
}

FixtureMap FixtureMap::affine(const Mat& A, const Vec& c, double L) {
  require(A.cols() == 4 && A.rows() == c.size(), ErrorCode::DimensionMismatch,
          "affine fixture needs a 4n x 4 matrix");
  return {L, c, A, {}};
}

FixtureMap FixtureMap::winding(const Mat& periods, const Eigen::MatrixXi& W, double L) {
  const Mat A = periods * W.transpose().cast<double>() / L;
  return affine(A, Vec::Zero(periods.rows()), L);
}

FixtureMap FixtureMap::random_trig(Rng& rng, int n, double L, int count, double amplitude) {
  FixtureMap f = constant(Vec::Zero(4 * n), L);
  for (int c = 0; c < count; ++c) {
    TrigMode m;
    do {
      for (int a = 0; a < 4; ++a) m.wave[a] = static_cast<double>(rng.below(3) - 1);
    } while (m.wave.isZero());
    m.cos_coeff = amplitude * rng.matrix(4 * n, 1);
    m.sin_coeff = amplitude * rng.matrix(4 * n, 1);
    f.modes.push_back(std::move(m));
  }
  return f;
}

FixtureMap FixtureMap::plus(const FixtureMap& other) const {
  require(other.components() == components(), ErrorCode::DimensionMismatch,
          "fixture sum needs equal target dimensions");
  FixtureMap f = *this;
  f.offset += other.offset;
  f.linear += other.linear;
  f.modes.insert(f.modes.end(), other.modes.begin(), other.modes.end());
  return f;
}

FixtureMap left_linear(const Quaternion& q, double L) {
  return FixtureMap::affine(left_mult_matrix(q), Vec::Zero(4), L);
}

}  // namespace aholo
