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

#include "aholo/config.hpp"
#include "aholo/crf.hpp"
#include "aholo/error.hpp"
#include "aholo/fixtures.hpp"
#include "aholo/grid.hpp"
#include "aholo/suites.hpp"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

struct aholo_config {
  aholo::RunConfig cfg;
};

struct aholo_report {
  aholo::Report report;
  std::string text;
};

struct aholo_grid {
  aholo::GridMap map;
};

namespace {

thread_local std::string g_last_error;

aholo_status to_status(aholo::ErrorCode c) { return static_cast<aholo_status>(static_cast<int>(c)); }

template <class F>
aholo_status guarded(F&& f) {
  try {
    f();
    return AHOLO_OK;
  } catch (const aholo::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return AHOLO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AHOLO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return AHOLO_ERR_INTERNAL;
  }
}

void not_null(const void* p, const char* what) {
  aholo::require(p != nullptr, aholo::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

aholo_verdict to_verdict(aholo::Status s) {
  switch (s) {
    case aholo::Status::Pass: return AHOLO_PASS;
    case aholo::Status::Fail: return AHOLO_FAIL;
    default: return AHOLO_INCONCLUSIVE;
  }
}

aholo::GridMap make_fixture(const std::string& name, int N, double L, bool periodic,
                            std::uint64_t seed) {
  using namespace aholo;
  const GridDomain dom(N, L, periodic);
  const Mat P = dom.L() * Mat::Identity(4, 4);
  auto linear = [&](const Quaternion& q) {
    if (!periodic) return sample(dom, TargetSpec::flat(1), left_linear(q, dom.L()).as_function());
    // x -> q x has integer matrix, so it descends to R^4 / L Z^4.
    const Eigen::MatrixXi W = left_mult_matrix(q).transpose().array().round().cast<int>();
    return sample(dom, TargetSpec::torus(1, P), FixtureMap::winding(P, W, dom.L()).as_function());
  };
  if (name == "identity") return linear(Quaternion::one());
  if (name == "i_x") return linear(Quaternion::i());
  Rng rng(seed);
  if (name == "constant") {
    const Vec c = rng.matrix(4, 1);
    return sample(dom, TargetSpec::flat(1), FixtureMap::constant(c, dom.L()).as_function());
  }
  if (name == "trig")
    return sample(dom, TargetSpec::flat(1),
                  FixtureMap::random_trig(rng, 1, dom.L(), 3, 0.1 * dom.L()).as_function());
  fail(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
}

}  // namespace

extern "C" {

const char* aholo_version(void) { return "1.0.0"; }

const char* aholo_last_error(void) { return g_last_error.c_str(); }

aholo_status aholo_config_new(aholo_config** out) {
  return guarded([&] {
    not_null(out, "out");
    *out = new aholo_config{};
  });
}

void aholo_config_free(aholo_config* cfg) { delete cfg; }

aholo_status aholo_config_set(aholo_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    not_null(cfg, "config");
    not_null(key, "key");
    not_null(value, "value");
    cfg->cfg.set(key, value);
  });
}

aholo_status aholo_config_load(aholo_config* cfg, const char* path) {
  return guarded([&] {
    not_null(cfg, "config");
    not_null(path, "path");
    cfg->cfg.load_file(path);
  });
}

aholo_status aholo_config_validate(const aholo_config* cfg) {
  return guarded([&] {
    not_null(cfg, "config");
    cfg->cfg.validate();
  });
}

int aholo_config_timing(const aholo_config* cfg) { return cfg && cfg->cfg.timing ? 1 : 0; }

aholo_status aholo_run(const aholo_config* cfg, aholo_report** out) {
  return guarded([&] {
    not_null(cfg, "config");
    not_null(out, "out");
    *out = nullptr;
    cfg->cfg.validate();
    *out = new aholo_report{aholo::run_command(cfg->cfg), {}};
  });
}

void aholo_report_free(aholo_report* r) { delete r; }

aholo_verdict aholo_report_verdict(const aholo_report* r) {
  return r ? to_verdict(r->report.status()) : AHOLO_FAIL;
}

size_t aholo_report_check_count(const aholo_report* r) { return r ? r->report.checks().size() : 0; }

aholo_status aholo_report_check(const aholo_report* r, size_t i, const char** name,
                                aholo_verdict* verdict, double* gap, double* tolerance) {
  return guarded([&] {
    not_null(r, "report");
    const auto& checks = r->report.checks();
    aholo::require(i < checks.size(), aholo::ErrorCode::InvalidArgument, "check index out of range");
    const aholo::Check& c = checks[i];
    if (name) *name = c.name.c_str();
    if (verdict) *verdict = to_verdict(c.status);
    if (gap) *gap = c.gap;
    if (tolerance) *tolerance = c.tolerance;
  });
}

const char* aholo_report_text(aholo_report* r, const char* format) {
  if (!r) return nullptr;
  const std::string f = format ? format : "json";
  const aholo_status s = guarded([&] {
    if (f == "csv") r->text = r->report.to_csv();
    else if (f == "json") r->text = r->report.to_json_string();
    else aholo::fail(aholo::ErrorCode::InvalidArgument, "format must be json or csv");
  });
  return s == AHOLO_OK ? r->text.c_str() : nullptr;
}

void aholo_report_set_duration(aholo_report* r, double seconds) {
  if (r) r->report.set_duration(seconds);
}

aholo_status aholo_report_write(const aholo_report* r, const aholo_config* cfg) {
  return guarded([&] {
    not_null(r, "report");
    not_null(cfg, "config");
    aholo::write_report(r->report, cfg->cfg);
  });
}

aholo_status aholo_grid_fixture(const char* fixture, int32_t N, double L, int periodic,
                                uint64_t seed, aholo_grid** out) {
  return guarded([&] {
    not_null(fixture, "fixture");
    not_null(out, "out");
    *out = new aholo_grid{make_fixture(fixture, N, L, periodic != 0, seed)};
  });
}

aholo_status aholo_grid_read(const char* path, aholo_grid** out) {
  return guarded([&] {
    not_null(path, "path");
    not_null(out, "out");
    *out = new aholo_grid{aholo::read_binary(std::string(path))};
  });
}

aholo_status aholo_grid_write(const aholo_grid* g, const char* path) {
  return guarded([&] {
    not_null(g, "grid");
    not_null(path, "path");
    aholo::write_binary(g->map, std::string(path));
  });
}

aholo_status aholo_grid_write_csv(const aholo_grid* g, const char* path) {
  return guarded([&] {
    not_null(g, "grid");
    not_null(path, "path");
    aholo::write_csv(g->map, std::string(path));
  });
}

void aholo_grid_free(aholo_grid* g) { delete g; }

aholo_status aholo_grid_info(const aholo_grid* g, int32_t* N, int32_t* n, int* periodic,
                             double* L) {
  return guarded([&] {
    not_null(g, "grid");
    const auto& d = g->map.domain();
    if (N) *N = d.N();
    if (n) *n = g->map.target_dim();
    if (periodic) *periodic = d.periodic() ? 1 : 0;
    if (L) *L = d.L();
  });
}

aholo_status aholo_grid_crf_residual(const aholo_grid* g, double* l2) {
  return guarded([&] {
    not_null(g, "grid");
    not_null(l2, "l2");
    *l2 = aholo::crf_residual(g->map).l2_norm();
  });
}

aholo_status aholo_grid_energy(const aholo_grid* g, double* e) {
  return guarded([&] {
    not_null(g, "grid");
    not_null(e, "energy");
    aholo::require(g->map.domain().periodic(), aholo::ErrorCode::Precondition,
                   "energy requires a periodic grid");
    *e = aholo::energy(g->map);
  });
}

}  // extern "C"
