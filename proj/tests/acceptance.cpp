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
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "aholo/config.hpp"
#include "aholo/crf.hpp"
#include "aholo/dirac.hpp"
#include "aholo/fixtures.hpp"
#include "aholo/grid.hpp"
#include "aholo/hom.hpp"
#include "aholo/k3.hpp"
#include "aholo/rng.hpp"
#include "aholo/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

using namespace aholo;

namespace {

int g_failed = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  if (!o.pass) ++g_failed;
  std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), dt.count());
  std::fflush(stdout);
}

HyperComplexTriple random_triple(Rng& rng, int m) {
  const Side s = rng.below(2) == 0 ? Side::Left : Side::Right;
  return standard_triple(s, m).conjugated(rng.orthogonal(4 * m));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome characteristic_equation() {
  Rng rng(1001);
  double worst = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int s = 0; s < 20; ++s)
        worst = std::max(worst, char_poly_check(random_triple(rng, m), random_triple(rng, n)));
  const double t = seconds_since(t0);
  return {worst < 1e-10 && t < 5.0, fmt("max op-norm %.3g over 180 pairs, %.2f s", worst, t)};
}

Outcome decomposition_ranks() {
  Rng rng(1002);
  int bad = 0;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const auto [r3, r1] = projector_ranks(random_triple(rng, m), random_triple(rng, n));
      if (r3 != 4 * m * n || r1 != 12 * m * n) ++bad;
    }
  return {bad == 0, fmt("%d of 9 (m, n) pairs with ranks != (4mn, 12mn)", bad)};
}

Outcome theorem_equivalence() {
  Rng rng(1003);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const int m = 1 + rng.below(3), n = 1 + rng.below(3);
    const auto src = random_triple(rng, m);
    const auto tgt = random_triple(rng, n);
    const Mat A = rng.matrix(4 * n, 4 * m);
    const double lhs = (apply_C(A, src, tgt) - A).norm();
    const double rhs = 4 * quaternionic_projection(A, src, tgt).norm();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst < 1e-10, fmt("max | ||C(A)-A|| - 4||P_-A|| | = %.3g over 1000 maps", worst)};
}

Outcome fueter_fixtures() {
  const GridDomain box(8, 1.0, false);
  const auto H = TargetSpec::flat(1);
  const GridMap ix = fueter_residual(sample(box, H, left_linear(Quaternion::i(), 1.0).as_function()));
  const GridMap x = fueter_residual(sample(box, H, left_linear(Quaternion::one(), 1.0).as_function()));
  double r_ix = 0, r_x = 0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!box.has_differential(box.point(i))) continue;
    r_ix = std::max(r_ix, ix.value(i).norm());
    r_x = std::max(r_x, (x.value(i) - 4 * Quaternion::one().to_vec()).norm());
  }
  Rng rng(1004);
  const FixtureMap f = FixtureMap::random_trig(rng, 1, 1.0, 3, 0.3);
  std::vector<double> errs;
  for (int N : {8, 16, 32}) {
    const GridDomain dom(N, 1.0, true);
    const GridMap res = fueter_residual(sample(dom, H, f.as_function()));
    double e = 0;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      const Mat J = f.jacobian(dom.coords(dom.point(i)));
      const Quaternion exact = Quaternion::from_vec(J.col(0)) - Quaternion::i() * Quaternion::from_vec(J.col(1)) -
                               Quaternion::j() * Quaternion::from_vec(J.col(2)) -
                               Quaternion::k() * Quaternion::from_vec(J.col(3));
      e = std::max(e, (res.value(i) - exact.to_vec()).norm());
    }
    errs.push_back(e);
  }
  const auto ord = convergence_orders(errs);
  bool ok = r_ix < 1e-10 && r_x < 1e-10;
  for (double o : ord) ok = ok && std::abs(o - 2.0) <= 0.2;
  return {ok, fmt("|res(i.x)| %.3g, |res(x) - 4| %.3g, orders %.3f %.3f", r_ix, r_x, ord[0], ord[1])};
}

Outcome weitzenboeck() {
  Rng rng(1005);
  const double L = 1.0;
  const GridDomain dom(8, L);
  double worst_gap = 0;
  for (int n : {1, 2})
    for (int c = 0; c < 4; ++c) {
      Eigen::MatrixXi W(4, 4 * n);
      for (int i = 0; i < W.rows(); ++i)
        for (int j = 0; j < W.cols(); ++j) W(i, j) = rng.below(5) - 2;
      if (c == 0) W.leftCols(4) = Eigen::MatrixXi::Identity(4, 4);
      const Mat P = L * rng.orthogonal(4 * n);
      const GridMap u = sample(dom, TargetSpec::torus(n, P), FixtureMap::winding(P, W, L).as_function());
      worst_gap = std::max(worst_gap, std::abs(weitzenboeck_check(u).gap));
    }
  const FixtureMap f = FixtureMap::random_trig(rng, 1, L, 3, 0.3 * L);
  double exact = 0;
  {
    Accumulator acc;
    for (std::size_t i = 0; i < dom.size(); ++i) acc.add(f.jacobian(dom.coords(dom.point(i))).squaredNorm());
    exact = 0.5 * dom.cell_volume() * acc.value();
  }
  std::vector<double> errs;
  double trig_gap = 0, t32 = 0;
  for (int N : {8, 16, 32}) {
    const auto t0 = std::chrono::steady_clock::now();
    const WeitzenboeckResult w = weitzenboeck_check(sample(GridDomain(N, L), TargetSpec::flat(1), f.as_function()));
    if (N == 32) t32 = seconds_since(t0);
    trig_gap = std::max(trig_gap, std::abs(w.gap));
    errs.push_back(std::abs(w.lhs - exact));
  }
  const auto ord = convergence_orders(errs);
  bool ok = worst_gap < 1e-9 * std::pow(L, 4) && trig_gap < 1e-9 && t32 < 60;
  for (double o : ord) ok = ok && std::abs(o - 2.0) <= 0.3;
  return {ok, fmt("winding gap %.3g, trig gap %.3g, energy orders %.3f %.3f, N=32 in %.2f s", worst_gap,
                  trig_gap, ord[0], ord[1], t32)};
}

Outcome vanishing() {
  std::string d;
  bool ok = true;
  for (int n : {1, 2}) {
    const KernelSpectrum s = crf_kernel_spectrum(GridDomain(8, 1.0), n);
    ok = ok && s.conclusive && s.dimension == 4 * n;
    d += fmt("n=%d dim %d (zero <= %.2g, nonzero >= %.2g%s) ", n, s.dimension, s.largest_zero,
             s.smallest_nonzero, s.conclusive ? "" : ", inconclusive");
  }
  d.pop_back();
  return {ok, d};
}

Outcome dirac_reduction() {
  Rng rng(1007);
  double agree = 0, locus = 0, fueter = 0;
  for (int n : {1, 2}) {
    const GridDomain dom(8, 1.0);
    const GridMap u = sample(dom, TargetSpec::flat(n), FixtureMap::random_trig(rng, n, 1.0, 3, 0.3).as_function());
    const std::vector<double> D = dirac_apply(SpinorField{u});
    const DifferentialField du = differential(u);
    const int c = 4 * n;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      const Vec a = two_component(du.at(i)).first;
      agree = std::max(agree, (Eigen::Map<const Vec>(D.data() + i * c, c) - a).norm());
    }
    locus = std::max(locus, harmonicity_equivalence(SpinorField{u}).locus_mismatch);
    if (n == 1) {
      const GridMap fr = fueter_residual(u);
      for (std::size_t i = 0; i < dom.size(); ++i)
        fueter = std::max(fueter, (Eigen::Map<const Vec>(D.data() + i * 4, 4) - fr.value(i)).norm());
    }
  }
  return {agree < 1e-12 && locus < 1e-9 && fueter < 1e-12,
          fmt("two-component %.3g, locus %.3g, Fueter (n=1) %.3g", agree, locus, fueter)};
}

Outcome gauge() {
  Rng rng(1008);
  double worst = 0;
  const GridDomain box(8, 1.0, false);
  for (int n : {1, 2}) {
    const Mat A = rng.matrix(4 * n, 4);
    const GridMap u = sample(box, TargetSpec::flat(n), FixtureMap::affine(A, rng.matrix(4 * n, 1), 1.0).as_function());
    for (int t = 0; t < 50; ++t)
      worst = std::max(worst, gauge_equivariance_check(SpinorField{u}, SpinPair(rng.unit_quaternion(), rng.unit_quaternion())));
  }
  return {worst < 1e-10, fmt("max residual %.3g over 2 x 50 pairs", worst)};
}

std::string csv_of(const MorphismTable& t) {
  std::ostringstream os;
  write_table_csv(t, os);
  return os.str();
}

Outcome k3_tables() {
  const auto t0 = std::chrono::steady_clock::now();
  int rank1_bad = 0, hyp_rows = 0, hyp_2pq = 0, hyp_rr = 0, mixed_bad = 0, mixed_rows = 0;
  for (int k = 1; k <= 3; ++k) {
    const MorphismTable t = enumerate_morphisms(GramLattice::rank1(k), 5);
    if (t.rows.size() != 1 || !t.rows[0].N || *t.rows[0].N != 1 + k * k) ++rank1_bad;
  }
  for (const auto& row : enumerate_morphisms(GramLattice::hyperbolic(), 5).rows) {
    const long long p = row.coords[0], q = row.coords[1];
    if (p < 1 || q < 1) continue;
    ++hyp_rows;
    if (row.N && *row.N == 2 * p * q) ++hyp_2pq;
    if (row.N && *row.N == 1 + p * q) ++hyp_rr;
  }
  for (const auto& row : enumerate_morphisms(GramLattice::mixed(), 5).rows) {
    const long long p = row.coords[0], q = row.coords[1];
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) continue;
    ++mixed_rows;
    const bool nef = row.nef == Tri::True;
    if (nef != (p >= q)) ++mixed_bad;
    if (nef && (!row.N || *row.N != 1 + p * p + 2 * p * q - q * q)) ++mixed_bad;
  }
  int golden_bad = 0, golden_missing = 0;
  const std::string dir = default_golden_dir();
  const std::pair<std::string, GramLattice> golden[] = {
      {"rank1_k1", GramLattice::rank1(1)}, {"rank1_k2", GramLattice::rank1(2)},
      {"rank1_k3", GramLattice::rank1(3)}, {"hyperbolic_b5", GramLattice::hyperbolic()},
      {"mixed_b5", GramLattice::mixed()}};
  for (const auto& [name, lat] : golden) {
    std::ifstream is(dir + "/" + name + ".csv", std::ios::binary);
    if (!is) {
      ++golden_missing;
      continue;
    }
    const std::string want((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (want != csv_of(enumerate_morphisms(lat, 5))) ++golden_bad;
  }
  const double t = seconds_since(t0);
  const bool ok = rank1_bad == 0 && hyp_2pq == hyp_rows && mixed_bad == 0 && golden_bad == 0 &&
                  golden_missing == 0 && t < 1.0;
  return {ok, fmt("rank1 mismatches %d; hyperbolic N = 2pq on %d of %d rows (N = 1 + pq on %d); "
                  "mixed mismatches %d of %d; golden differing %d, missing %d; %.3f s",
                  rank1_bad, hyp_2pq, hyp_rows, hyp_rr, mixed_bad, mixed_rows, golden_bad,
                  golden_missing, t)};
}

Outcome determinism() {
  RunConfig cfg;
  const std::string a = cmd_verify_all(cfg).to_json_string();
  const std::string b = cmd_verify_all(cfg).to_json_string();
  return {a == b && !a.empty(), fmt("%zu-byte reports %s", a.size(), a == b ? "identical" : "differ")};
}

}  // namespace

int main() {
  criterion(1, "characteristic equation", characteristic_equation);
  criterion(2, "decomposition ranks", decomposition_ranks);
  criterion(3, "theorem equivalence", theorem_equivalence);
  criterion(4, "Fueter fixtures", fueter_fixtures);
  criterion(5, "Weitzenboeck identity", weitzenboeck);
  criterion(6, "vanishing theorem", vanishing);
  criterion(7, "Dirac reduction", dirac_reduction);
  criterion(8, "gauge equivariance", gauge);
  criterion(9, "K3 tables", k3_tables);
  criterion(10, "determinism", determinism);
  std::printf("%d of 10 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
