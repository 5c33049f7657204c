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

// Verification reports: ordered check records serialized as JSON (schema 1)
// or CSV. See docs/report_schema.md.

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aholo {

using Json = nlohmann::ordered_json;

enum class Status { Pass = 0, Fail = 1, Inconclusive = 2 };

const char* to_string(Status s);

struct Check {
  std::string name;
  std::string operation;
  Json parameters = Json::object();
  double lhs = 0;
  double rhs = 0;
  double gap = 0;
  double tolerance = 0;
  Status status = Status::Fail;
  std::string note;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }
  Json& config() { return config_; }
  const std::vector<Check>& checks() const { return checks_; }

  /// Records a check whose pass condition is gap <= tolerance.
  Check& compare(std::string name, std::string operation, double lhs, double rhs,
                 double tolerance, Json parameters = Json::object());
  /// Records a check with |lhs| <= tolerance against rhs = 0.
  Check& bound(std::string name, std::string operation, double value, double tolerance,
               Json parameters = Json::object());
  /// Records a check with an externally decided verdict.
  Check& verdict(std::string name, std::string operation, double lhs, double rhs, double gap,
                 double tolerance, bool pass, Json parameters = Json::object());
  Check& inconclusive(std::string name, std::string operation, std::string note,
                      Json parameters = Json::object());
  void add_artifact(std::string key, Json value) { artifacts_[std::move(key)] = std::move(value); }
  void merge(const Report& other);
  void set_duration(double seconds) { duration_ = seconds; }

  /// Fail if any check fails, else Inconclusive if any is inconclusive.
  Status status() const;
  bool pass() const { return status() == Status::Pass; }

  Json to_json() const;
  std::string to_json_string() const;
  std::string to_csv() const;

 private:
  std::string command_;
  Json config_ = Json::object();
  std::vector<Check> checks_;
  Json artifacts_ = Json::object();
  std::optional<double> duration_;
};

}  // namespace aholo
