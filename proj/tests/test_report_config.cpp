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
#include "doctest.h"

#include "aholo/config.hpp"
#include "aholo/error.hpp"
#include "aholo/report.hpp"
#include "aholo/suites.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace aholo;

TEST_CASE("report status is the conjunction of checks") {
  Report r("unit");
  r.compare("a", "op", 1.0, 1.0 + 1e-12, 1e-10);
  CHECK(r.status() == Status::Pass);
  r.inconclusive("b", "op", "gap too small");
  CHECK(r.status() == Status::Inconclusive);
  r.bound("c", "op", 0.5, 0.1);
  CHECK(r.status() == Status::Fail);
  CHECK(exit_code(r) == 1);
  Report nan("unit");
  nan.compare("n", "op", std::numeric_limits<double>::quiet_NaN(), 0, 1);
  CHECK(nan.status() == Status::Fail);
  CHECK(nan.to_json()["checks"][0]["lhs"].is_null());
}

TEST_CASE("report json fields") {
  Report r("unit");
  r.config()["seed"] = 1;
  r.compare("a", "op", 2.0, 2.0, 1e-10, {{"grid_n", 8}});
  r.add_artifact("table", "x.csv");
  const Json j = r.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "unit");
  CHECK(j["pass"] == true);
  CHECK(j["status"] == "pass");
  CHECK(j["checks"][0]["parameters"]["grid_n"] == 8);
  CHECK(j["checks"][0]["pass"] == true);
  CHECK_FALSE(j.contains("duration_s"));
  r.set_duration(0.25);
  CHECK(r.to_json()["duration_s"] == 0.25);
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("name,operation,parameters,lhs,rhs,gap,tolerance,pass,status\n", 0) == 0);
}

TEST_CASE("config parsing") {
  RunConfig c;
  c.set("grid_n", "16");
  c.set("kernel-threshold", "1e-5");
  c.set("timing", "yes");
  CHECK(c.grid_n == 16);
  CHECK(c.kernel_threshold == 1e-5);
  CHECK(c.timing);
  CHECK_THROWS_AS(c.set("grid-n", "x"), Error);
  CHECK_THROWS_AS(c.set("colour", "red"), Error);
  c.grid_n = 6;
  c.validate();
  c.grid_n = 7;
  CHECK_THROWS_AS(c.validate(), Error);

  const auto path = std::filesystem::temp_directory_path() / "aholo_unit_cfg.txt";
  {
    std::ofstream os(path);
    os << "# comment\nseed = 5\n\nbound=3  # trailing\n";
  }
  RunConfig f;
  f.load_file(path.string());
  CHECK(f.seed == 5u);
  CHECK(f.bound == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(f.load_file("/nonexistent/aholo.cfg"), Error);
}

TEST_CASE("suite seeds and orders") {
  CHECK(suite_seed(1, 0x101) != suite_seed(1, 0x202));
  CHECK(suite_seed(1, 0x101) == suite_seed(1, 0x101));
  const auto o = convergence_orders({1.0, 0.25, 0.0625});
  REQUIRE(o.size() == 2);
  CHECK(o[0] == doctest::Approx(2.0));
  CHECK(o[1] == doctest::Approx(2.0));
}

TEST_CASE("hom suite with an injected fault fails") {
  RunConfig c;
  c.command = "hom";
  CHECK(exit_code(run_command(c)) == 0);
  c.inject_fault = "corrupt_triple";
  CHECK(exit_code(run_command(c)) == 1);
}

TEST_CASE("kernel suite turns inconclusive under a tight threshold") {
  RunConfig c;
  c.command = "kernel";
  c.kernel_threshold = 0.1;
  CHECK(exit_code(run_command(c)) == 2);
}
