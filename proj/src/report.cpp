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
#include "aholo/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace aholo {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "fail";
}

Check& Report::compare(std::string name, std::string operation, double lhs, double rhs,
                       double tolerance, Json parameters) {
  const double gap = std::abs(lhs - rhs);
  return verdict(std::move(name), std::move(operation), lhs, rhs, gap, tolerance,
                 std::isfinite(gap) && gap <= tolerance, std::move(parameters));
}

Check& Report::bound(std::string name, std::string operation, double value, double tolerance,
                     Json parameters) {
  return compare(std::move(name), std::move(operation), value, 0.0, tolerance,
                 std::move(parameters));
}

Check& Report::verdict(std::string name, std::string operation, double lhs, double rhs,
                       double gap, double tolerance, bool pass, Json parameters) {
  Check c;
  c.name = std::move(name);
  c.operation = std::move(operation);
  c.parameters = std::move(parameters);
  c.lhs = lhs;
  c.rhs = rhs;
  c.gap = gap;
  c.tolerance = tolerance;
  c.status = pass ? Status::Pass : Status::Fail;
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::inconclusive(std::string name, std::string operation, std::string note,
                            Json parameters) {
  Check c;
  c.name = std::move(name);
  c.operation = std::move(operation);
  c.parameters = std::move(parameters);
  c.lhs = c.rhs = c.gap = c.tolerance = std::nan("");
  c.status = Status::Inconclusive;
  c.note = std::move(note);
  checks_.push_back(std::move(c));
  return checks_.back();
}

void Report::merge(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  for (const auto& [k, v] : other.artifacts_.items()) artifacts_[k] = v;
}

Status Report::status() const {
  Status s = Status::Pass;
  for (const auto& c : checks_) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Inconclusive) s = Status::Inconclusive;
  }
  return s;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = 1;
  j["command"] = command_;
  j["config"] = config_;
  Json arr = Json::array();
  for (const auto& c : checks_) {
    Json r;
    r["name"] = c.name;
    r["operation"] = c.operation;
    r["parameters"] = c.parameters;
    r["lhs"] = number(c.lhs);
    r["rhs"] = number(c.rhs);
    r["gap"] = number(c.gap);
    r["tolerance"] = number(c.tolerance);
    r["pass"] = c.status == Status::Pass;
    r["status"] = to_string(c.status);
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  if (!artifacts_.empty()) j["artifacts"] = artifacts_;
  j["pass"] = pass();
  j["status"] = to_string(status());
  if (duration_) j["duration_s"] = *duration_;
  return j;
}

std::string Report::to_json_string() const { return to_json().dump(2) + "\n"; }

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "name,operation,parameters,lhs,rhs,gap,tolerance,pass,status\n";
  for (const auto& c : checks_) {
    os << csv_field(c.name) << ',' << csv_field(c.operation) << ','
       << csv_field(c.parameters.dump()) << ',' << csv_number(c.lhs) << ','
       << csv_number(c.rhs) << ',' << csv_number(c.gap) << ',' << csv_number(c.tolerance) << ','
       << (c.status == Status::Pass ? "true" : "false") << ',' << to_string(c.status) << '\n';
  }
  return os.str();
}

}  // namespace aholo
