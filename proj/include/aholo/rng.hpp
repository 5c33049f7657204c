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

// Reproducible random instances.
//
// The generator is std::mt19937_64 (whose output sequence is fixed by the
// C++ standard). Doubles are formed as (x >> 11) * 2^-53 rather than through
// <random> distributions, whose algorithms are implementation-defined.

#include "aholo/quaternion.hpp"

#include <cstdint>
#include <random>

namespace aholo {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(uniform() * n); }

  Mat matrix(int rows, int cols) {
    Mat M(rows, cols);
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) M(r, c) = uniform(-1.0, 1.0);
    return M;
  }

  Quaternion quaternion() {
    return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
  }

  Quaternion unit_quaternion() {
    for (;;) {
      Quaternion q = quaternion();
      const double n = q.norm();
      if (n > 1e-3 && n <= 1.0) return (1.0 / n) * q;
    }
  }

  /// Orthogonal matrix from the QR factorization of a random matrix.
  Mat orthogonal(int n) {
    Eigen::HouseholderQR<Mat> qr(matrix(n, n));
    return qr.householderQ() * Mat::Identity(n, n);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace aholo
