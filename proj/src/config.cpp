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
#include "aholo/config.hpp"

#include "aholo/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace aholo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  require(ec == std::errc() && ptr == v.data() + v.size(), ErrorCode::InvalidArgument,
          "invalid value '" + v + "' for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  fail(ErrorCode::InvalidArgument, "invalid boolean '" + v + "' for " + key);
}

}  // namespace

std::string default_golden_dir() {
#ifdef AHOLO_GOLDEN_DIR
  return AHOLO_GOLDEN_DIR;
#else
  return {};
#endif
}

void RunConfig::validate() const {
  require(grid_n >= 4 && grid_n % 2 == 0, ErrorCode::InvalidArgument,
          "grid-n must be even and >= 4");
  require(length > 0, ErrorCode::InvalidArgument, "length must be > 0");
  require(target_dim >= 1 && target_dim <= 8, ErrorCode::InvalidArgument,
          "target-dim must be between 1 and 8");
  require(k >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
  require(bound >= 1, ErrorCode::InvalidArgument, "bound must be >= 1");
  require(tol > 0, ErrorCode::InvalidArgument, "tol must be > 0");
  require(kernel_threshold > 0 && kernel_threshold < 1, ErrorCode::InvalidArgument,
          "kernel-threshold must lie in (0, 1)");
  require(format == "json" || format == "csv", ErrorCode::InvalidArgument,
          "format must be json or csv");
  require(inject_fault.empty() || inject_fault == "corrupt_triple", ErrorCode::InvalidArgument,
          "unknown fault '" + inject_fault + "'");
}

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "command") command = value;
  else if (key == "grid-n") grid_n = parse_number<int>(key, value);
  else if (key == "length") length = parse_number<double>(key, value);
  else if (key == "target-dim") target_dim = parse_number<int>(key, value);
  else if (key == "lattice") lattice = value;
  else if (key == "k") k = parse_number<int>(key, value);
  else if (key == "lattice-file") lattice_file = value;
  else if (key == "bound") bound = parse_number<int>(key, value);
  else if (key == "tol") tol = parse_number<double>(key, value);
  else if (key == "kernel-threshold") kernel_threshold = parse_number<double>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "out") out = value;
  else if (key == "format") format = value;
  else if (key == "basis-out") basis_out = value;
  else if (key == "table-out") table_out = value;
  else if (key == "golden-dir") golden_dir = value;
  else if (key == "timing") timing = parse_bool(key, value);
  else if (key == "inject-fault") inject_fault = value;
  else fail(ErrorCode::InvalidArgument, "unknown configuration key '" + raw_key + "'");
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorCode::Io, "cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::InvalidArgument,
            path + ":" + std::to_string(lineno) + ": expected key=value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Json RunConfig::to_json() const {
  // Output paths and timing are left out so reports do not depend on where
  // they are written.
  Json j;
  j["command"] = command;
  j["grid_n"] = grid_n;
  j["length"] = length;
  j["target_dim"] = target_dim;
  j["lattice"] = lattice_file.empty() ? lattice : "custom";
  j["k"] = k;
  j["bound"] = bound;
  j["tol"] = tol;
  j["kernel_threshold"] = kernel_threshold;
  j["seed"] = seed;
  j["rng"] = "mt19937_64";
  if (!inject_fault.empty()) j["inject_fault"] = inject_fault;
  return j;
}

}  // namespace aholo
