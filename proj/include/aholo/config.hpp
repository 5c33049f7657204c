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

#include "aholo/report.hpp"

#include <cstdint>
#include <string>

namespace aholo {

/// Golden-table directory compiled into the library, or empty.
std::string default_golden_dir();

struct RunConfig {
  std::string command = "verify-all";
  int grid_n = 8;
  double length = 1.0;
  int target_dim = 1;
  std::string lattice;        // empty: all presets
  int k = 1;                  // rank1 preset parameter
  std::string lattice_file;   // custom lattice, overrides `lattice`
  int bound = 5;
  double tol = 1e-10;         // tolerance for exact identities
  double kernel_threshold = 1e-6;
  std::uint64_t seed = 20240917;
  std::string out;            // empty: stdout
  std::string format = "json";
  std::string basis_out;      // basis identification table (dirac)
  std::string table_out;      // k3 table, .json or CSV by extension
  std::string golden_dir = default_golden_dir();  // empty disables comparison
  bool timing = false;
  std::string inject_fault;   // test hook: corrupt_triple

  void validate() const;
  /// Sets one key; keys match the long flag names with '-' or '_'.
  void set(const std::string& key, const std::string& value);
  /// Flat key=value text; '#' starts a comment.
  void load_file(const std::string& path);
  Json to_json() const;
};

}  // namespace aholo
