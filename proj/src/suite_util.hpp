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

#include "aholo/config.hpp"
#include "aholo/error.hpp"
#include "aholo/fixtures.hpp"
#include "aholo/report.hpp"

#include <functional>
#include <string>

namespace aholo::detail {

enum Salt : std::uint64_t {
  kSaltHom = 0x101,
  kSaltFueter = 0x202,
  kSaltWeitz = 0x303,
  kSaltKernel = 0x404,
  kSaltDirac = 0x505,
};

inline Report start_report(const std::string& command, const RunConfig& cfg) {
  Report r(command);
  r.config() = cfg.to_json();
  r.config()["command"] = command;
  return r;
}

/// Runs `body`; an Inconclusive error becomes an inconclusive check, any
/// other library error a failed check naming the error.
inline void guarded(Report& r, const std::string& name, const std::string& op,
                    const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Inconclusive) {
      r.inconclusive(name, op, e.what());
    } else {
      r.verdict(name, op, 0, 0, 0, 0, false).note = e.what();
    }
  }
}

inline double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Analytic Fueter operator of a closed-form map H -> H at x.
inline Vec analytic_fueter(const FixtureMap& f, const Point4& x) {
  const Mat J = f.jacobian(x);
  Quaternion r = Quaternion::from_vec(J.col(0));
  for (int l = 1; l < 4; ++l) r -= Quaternion::basis(l) * Quaternion::from_vec(J.col(l));
  return r.to_vec();
}

}  // namespace aholo::detail
