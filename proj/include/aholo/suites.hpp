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

// Verification suites behind the CLI subcommands. Each returns an ordered
// report; the random instances are drawn from mt19937_64 seeded with
// config.seed combined with a fixed per-suite salt.

#include "aholo/config.hpp"
#include "aholo/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aholo {

Report cmd_hom(const RunConfig& cfg);
Report cmd_fueter(const RunConfig& cfg);
Report cmd_weitzenboeck(const RunConfig& cfg);
Report cmd_kernel(const RunConfig& cfg);
Report cmd_dirac(const RunConfig& cfg);
Report cmd_k3(const RunConfig& cfg);
Report cmd_verify_all(const RunConfig& cfg);

/// Dispatches on cfg.command.
Report run_command(const RunConfig& cfg);

const std::vector<std::string>& command_names();

/// Per-suite seed: splitmix64 of seed ^ salt.
std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt);

/// Convergence order log2(e[i] / e[i+1]) for successive halvings of h.
std::vector<double> convergence_orders(const std::vector<double>& errors);

/// Writes the report to cfg.out (stdout when empty) in cfg.format; throws
/// Io when the destination cannot be written.
void write_report(const Report& r, const RunConfig& cfg);

/// 0 pass, 1 fail, 2 inconclusive.
int exit_code(const Report& r);

}  // namespace aholo
