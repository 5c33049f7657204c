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
#include "aholo/aholo.h"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr int kUsageOrIo = 3;

const std::vector<std::string> kValueFlags = {
    "grid-n", "length",   "target-dim", "lattice",   "k",         "lattice-file",
    "bound",  "tol",      "kernel-threshold", "seed", "out",      "format",
    "basis-out", "table-out", "golden-dir", "inject-fault"};

struct SuiteArgs {
  std::map<std::string, std::string> values;
  std::string config_file;
  bool timing = false;
  CLI::App* app = nullptr;
};

int report_error(const char* where) {
  std::fprintf(stderr, "aholo: %s: %s\n", where, aholo_last_error());
  return kUsageOrIo;
}

int run_suite(const std::string& command, const SuiteArgs& a) {
  aholo_config* cfg = nullptr;
  if (aholo_config_new(&cfg) != AHOLO_OK) return report_error("config");
  auto fail = [&](const char* where) {
    const int rc = report_error(where);
    aholo_config_free(cfg);
    return rc;
  };
  if (aholo_config_set(cfg, "command", command.c_str()) != AHOLO_OK) return fail("config");
  if (!a.config_file.empty() && aholo_config_load(cfg, a.config_file.c_str()) != AHOLO_OK)
    return fail("config");
  for (const auto& name : kValueFlags) {
    if (a.app->count("--" + name) == 0) continue;
    if (aholo_config_set(cfg, name.c_str(), a.values.at(name).c_str()) != AHOLO_OK)
      return fail(name.c_str());
  }
  if (a.timing && aholo_config_set(cfg, "timing", "true") != AHOLO_OK) return fail("config");
  if (aholo_config_validate(cfg) != AHOLO_OK) return fail("config");

  const auto t0 = std::chrono::steady_clock::now();
  aholo_report* rep = nullptr;
  if (aholo_run(cfg, &rep) != AHOLO_OK) return fail(command.c_str());
  if (aholo_config_timing(cfg)) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    aholo_report_set_duration(rep, dt.count());
  }
  const aholo_status ws = aholo_report_write(rep, cfg);
  const int verdict = static_cast<int>(aholo_report_verdict(rep));
  aholo_report_free(rep);
  if (ws != AHOLO_OK) return fail("output");
  aholo_config_free(cfg);
  return verdict;
}

struct GridArgs {
  std::string fixture = "identity";
  int n = 8;
  double length = 1.0;
  bool box = false;
  std::uint64_t seed = 20240917;
  std::string in, out, csv;
};

int run_grid(const GridArgs& a) {
  aholo_grid* g = nullptr;
  const aholo_status s = a.in.empty()
                             ? aholo_grid_fixture(a.fixture.c_str(), a.n, a.length, a.box ? 0 : 1, a.seed, &g)
                             : aholo_grid_read(a.in.c_str(), &g);
  if (s != AHOLO_OK) return report_error("grid");
  int rc = 0;
  if (!a.out.empty() && aholo_grid_write(g, a.out.c_str()) != AHOLO_OK) rc = report_error("grid");
  if (rc == 0 && !a.csv.empty() && aholo_grid_write_csv(g, a.csv.c_str()) != AHOLO_OK)
    rc = report_error("grid");
  if (rc == 0) {
    int32_t N = 0, n = 0;
    int periodic = 0;
    double L = 0, crf = 0, e = 0;
    aholo_grid_info(g, &N, &n, &periodic, &L);
    aholo_grid_crf_residual(g, &crf);
    std::printf("N=%d n=%d periodic=%d L=%.17g crf_l2=%.17g", N, n, periodic, L, crf);
    if (periodic && aholo_grid_energy(g, &e) == AHOLO_OK) std::printf(" energy=%.17g", e);
    std::printf("\n");
  }
  aholo_grid_free(g);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aholo: verification suites for aholomorphic maps and the flat Dirac model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", aholo_version());

  const std::vector<std::pair<std::string, std::string>> suites = {
      {"hom", "quaternionic decomposition of Hom(V, W)"},
      {"fueter", "lattice Fueter residuals and convergence"},
      {"weitzenboeck", "energy identity on the lattice torus"},
      {"kernel", "kernel of the linear CRF operator"},
      {"dirac", "flat Dirac operator and harmonicity"},
      {"k3", "divisor classes and morphism tables"},
      {"verify-all", "every suite with default parameters"}};

  std::map<std::string, SuiteArgs> args;
  for (const auto& [name, help] : suites) {
    SuiteArgs& a = args[name];
    a.app = app.add_subcommand(name, help);
    for (const auto& flag : kValueFlags) a.app->add_option("--" + flag, a.values[flag]);
    a.app->add_option("--config", a.config_file, "key=value file; flags override it")
        ->check(CLI::ExistingFile);
    a.app->add_flag("--timing", a.timing, "add duration_s to the report");
  }

  GridArgs g;
  CLI::App* grid = app.add_subcommand("grid", "write or inspect grid snapshots");
  grid->add_option("--fixture", g.fixture, "constant, identity, i_x or trig");
  grid->add_option("--grid-n", g.n);
  grid->add_option("--length", g.length);
  grid->add_flag("--box", g.box, "non-periodic domain");
  grid->add_option("--seed", g.seed);
  grid->add_option("--in", g.in, "read a binary snapshot instead of a fixture");
  grid->add_option("--out", g.out, "binary snapshot output");
  grid->add_option("--csv", g.csv, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageOrIo;
  }
  if (grid->parsed()) return run_grid(g);
  for (auto& [name, a] : args)
    if (a.app->parsed()) return run_suite(name, a);
  return kUsageOrIo;
}
