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
#include "aholo/dirac.hpp"
#include "aholo/k3.hpp"
#include "aholo/rng.hpp"
#include "aholo/suites.hpp"
#include "suite_util.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace aholo {

using detail::guarded;
using detail::start_report;

namespace {

Mat block_left(const Quaternion& q, int n) { return block_diag(left_mult_matrix(q), n); }

// Projection onto C(A) = A for the lattice source triple.
Mat aholomorphic_part(const Mat& A) {
  const HyperComplexTriple I = standard_triple(Side::Left, static_cast<int>(A.rows() / 4));
  return 0.25 * (3.0 * A + apply_C(A, torus_source_triple(), I));
}

double max_field_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorCode::Io, "cannot open golden file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

Report cmd_dirac(const RunConfig& cfg) {
  Report r = start_report("dirac", cfg);
  Rng rng(suite_seed(cfg.seed, detail::kSaltDirac));
  const int n = cfg.target_dim;
  const double L = cfg.length;

  {
    const HyperComplexTriple J = horizontal_structure();
    const Vec v0 = Vec::Unit(4, 0), v1 = Vec::Unit(4, 1);
    r.bound("horizontal J1 v0 = -v1", "horizontal_structure", (J.I1() * v0 + v1).norm(), 1e-15);
    r.bound("horizontal relations", "horizontal_structure", J.relation_residual(), 1e-15);
    const Mat4 back = frame_matrix() * standard_triple(Side::Right, 1).I1() * frame_matrix();
    r.bound("horizontal matches lattice triple", "horizontal_structure",
            (back - torus_source_triple().I1()).norm(), 1e-15);
  }
  {
    const Vec w = rng.matrix(4 * n, 1);
    const Vec w2 = rng.matrix(4 * n, 1);
    const Quaternion h = rng.quaternion();
    const auto [a, b] = clifford_reduce(Quaternion::one(), w);
    const auto [a2, b2] = clifford_reduce(Quaternion::j(), block_left(Quaternion::j(), n) * w);
    const Vec expect_a = a - a2, expect_b = b - b2;
    r.bound("clifford_mul h=1", "clifford_mul",
            (clifford_mul(Quaternion::one(), w) - expect_a).norm() +
                (expect_b + block_left(Quaternion::j(), n) * expect_a).norm(),
            1e-14, {{"n", n}});
    r.bound("clifford_mul h=0", "clifford_mul", clifford_mul(Quaternion{}, w).norm(), 0.0);
    r.bound("clifford_mul bilinear", "clifford_mul",
            (clifford_mul(h, w + w2) - clifford_mul(h, w) - clifford_mul(h, w2)).norm(), 1e-13);
  }

  const GridDomain box(cfg.grid_n, L, false);
  const GridDomain torus(cfg.grid_n, L);
  const TargetSpec Hn = TargetSpec::flat(n);

  {
    const SpinorField c{sample(box, Hn, FixtureMap::constant(rng.matrix(4 * n, 1), L).as_function())};
    const HarmonicityResult h = harmonicity_equivalence(c);
    r.bound("harmonicity constant", "harmonicity_equivalence",
            h.dirac_norm + h.two_component_norm + h.crf_norm, cfg.tol);
  }
  {
    const SpinorField ix{sample(box, TargetSpec::flat(1), left_linear(Quaternion::i(), L).as_function())};
    const HarmonicityResult h = harmonicity_equivalence(ix);
    r.bound("harmonicity u=i*x", "harmonicity_equivalence",
            std::max({h.dirac_norm, h.two_component_norm, h.crf_norm}), cfg.tol);
    const SpinorField id{sample(box, TargetSpec::flat(1), left_linear(Quaternion::one(), L).as_function())};
    const std::vector<double> D = dirac_apply(id);
    double worst = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (!box.has_differential(box.point(i))) continue;
      worst = std::max(worst, std::abs(D[4 * i] - 4.0) + std::abs(D[4 * i + 1]) +
                                  std::abs(D[4 * i + 2]) + std::abs(D[4 * i + 3]));
    }
    r.bound("dirac u=x is constant 4", "dirac_apply", worst, cfg.tol);
  }
  {
    const FixtureMap f = FixtureMap::random_trig(rng, n, L, 3, 0.3 * L);
    const SpinorField u{sample(torus, Hn, f.as_function())};
    const HarmonicityResult h = harmonicity_equivalence(u);
    const Json p = {{"dirac_norm", h.dirac_norm}, {"two_component_norm", h.two_component_norm},
                    {"crf_norm", h.crf_norm}, {"n", n}};
    r.compare("dirac equals two-component", "harmonicity_equivalence", h.dirac_norm,
              h.two_component_norm, 1e-12 * std::max(1.0, h.dirac_norm), p);
    r.bound("two-component real part", "harmonicity_equivalence", h.real_part_residual, 1e-12);
    r.bound("harmonic locus matches crf locus", "harmonicity_equivalence", h.locus_mismatch, 1e-9);
  }
  {
    // Classical Fueter operator, n = 1.
    const FixtureMap f = FixtureMap::random_trig(rng, 1, L, 3, 0.3 * L);
    const GridMap u = sample(torus, TargetSpec::flat(1), f.as_function());
    const std::vector<double> D = dirac_apply(SpinorField{u});
    const GridMap F = fueter_residual(u);
    r.bound("dirac matches fueter n=1 trig", "dirac_apply", max_field_diff(D, F.values()), 1e-12);
    const GridMap a = sample(box, TargetSpec::flat(1),
                             FixtureMap::affine(rng.matrix(4, 4), rng.matrix(4, 1), L).as_function());
    r.bound("dirac matches fueter n=1 affine", "dirac_apply",
            max_field_diff(dirac_apply(SpinorField{a}), fueter_residual(a).values()), 1e-12);
  }
  {
    double real_part = 0.0, holo = 0.0, jl = 0.0;
    const HyperComplexTriple Jh = horizontal_structure();
    const HyperComplexTriple I = standard_triple(Side::Left, n);
    for (int c = 0; c < 1000; ++c) {
      const Mat A = rng.matrix(4 * n, 4);
      const auto [a, b] = two_component(A);
      real_part = std::max(real_part, (b + block_left(Quaternion::j(), n) * a).norm());
      holo = std::max(holo, two_component(aholomorphic_part(A)).first.norm());
      const Mat W = A * frame_matrix();
      const Mat R = apply_C(W, Jh, I) - W;
      const double r0 = R.col(0).norm();
      for (int l = 0; l < 3; ++l) jl = std::max(jl, std::abs((R * Jh[l].col(0)).norm() - r0));
    }
    r.bound("two-component reduces to one equation", "two_component", real_part, 1e-12,
            {{"instances", 1000}});
    r.bound("aholomorphic differentials are harmonic", "two_component", holo, 1e-12,
            {{"instances", 1000}});
    r.bound("C~ v0 = 0 iff C~ J_l v0 = 0", "two_component", jl, 1e-12, {{"instances", 1000}});
  }

  std::vector<int> split_dims = {1};
  if (n != 1) split_dims.push_back(n);
  for (int nn : split_dims) {
    guarded(r, "intertwiner n=" + std::to_string(nn), "lemma8_split", [&] {
      const Lemma8Split s = lemma8_split(nn);
      const char* gens[3] = {"i", "j", "k"};
      for (int g = 0; g < 3; ++g)
        r.bound("intertwiner n=" + std::to_string(nn) + " generator " + gens[g], "lemma8_split",
                s.residual[g], 1e-12, {{"n", nn}, {"sigma_min", s.sigma_min}});
    });
  }

  {
    double worst = 0.0;
    for (int c = 0; c < 50; ++c) {
      const SpinPair g(rng.unit_quaternion(), rng.unit_quaternion());
      const SpinorField u{sample(box, Hn, FixtureMap::affine(rng.matrix(4 * n, 4), rng.matrix(4 * n, 1), L).as_function())};
      worst = std::max(worst, gauge_equivariance_check(u, g));
    }
    r.bound("gauge equivariance random", "gauge_equivariance_check", worst, 1e-10,
            {{"instances", 50}, {"n", n}});
    const SpinorField u{sample(box, Hn, FixtureMap::affine(rng.matrix(4 * n, 4), Vec::Zero(4 * n), L).as_function())};
    r.bound("gauge equivariance identity", "gauge_equivariance_check",
            gauge_equivariance_check(u, SpinPair(Quaternion::one(), Quaternion::one())), 1e-14);
    const SpinorField harm{sample(box, Hn, FixtureMap::affine(aholomorphic_part(rng.matrix(4 * n, 4)), Vec::Zero(4 * n), L).as_function())};
    const SpinPair gi(Quaternion::i(), Quaternion::one());
    const SpinorField moved{harm.base.transformed(block_left(gi.q_plus().conj(), n)), gi};
    double harmonic = 0.0;
    for (double v : dirac_apply(moved)) harmonic = std::max(harmonic, std::abs(v));
    r.bound("gauge (i,1) keeps harmonic", "gauge_equivariance_check", harmonic, 1e-10);
  }

  {
    const KernelSpectrum s = dirac_kernel_spectrum(torus, n, KernelOperator::Regularized,
                                                   cfg.kernel_threshold);
    const std::string name = "dirac kernel dimension n=" + std::to_string(n);
    const Json p = {{"grid_n", cfg.grid_n}, {"largest_zero", s.largest_zero},
                    {"smallest_nonzero", s.smallest_nonzero}};
    if (!s.conclusive)
      r.inconclusive(name, "dirac_kernel_spectrum", "spectral gap does not clear the threshold", p);
    else
      r.compare(name, "dirac_kernel_spectrum", s.dimension, 4.0 * n, 0.0, p);
  }

  if (!cfg.basis_out.empty()) write_basis_table(cfg.basis_out, n);
  return r;
}

Report cmd_k3(const RunConfig& cfg) {
  Report r = start_report("k3", cfg);

  auto N_of = [](const MorphismRow& row) { return row.N ? static_cast<double>(*row.N) : -1.0; };

  if (!cfg.lattice.empty() || !cfg.lattice_file.empty()) {
    const GramLattice L = cfg.lattice_file.empty() ? GramLattice::by_name(cfg.lattice, cfg.k)
                                                   : GramLattice::from_file(cfg.lattice_file);
    const MorphismTable t = enumerate_morphisms(L, cfg.bound, cfg.target_dim);
    bool even = true;
    for (const auto& row : t.rows) even = even && row.d2 % 2 == 0;
    r.verdict("table even", "enumerate_morphisms", t.rows.size(), t.rows.size(), 0, 0, even,
              {{"lattice", L.name()}, {"bound", cfg.bound}, {"rows", t.rows.size()}});
    for (const auto& row : t.rows) {
      if (row.nef == Tri::Inconclusive || (row.bpf && *row.bpf == Tri::Inconclusive)) {
        std::string c;
        for (std::size_t i = 0; i < row.coords.size(); ++i)
          c += (i ? ";" : "") + std::to_string(row.coords[i]);
        r.inconclusive("row " + c, "enumerate_morphisms",
                       "nef or base locus not certified within the bound");
      }
    }
    if (!cfg.table_out.empty()) {
      std::ofstream os(cfg.table_out, std::ios::binary);
      require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + cfg.table_out + " for writing");
      const bool json = cfg.table_out.size() >= 5 &&
                        cfg.table_out.compare(cfg.table_out.size() - 5, 5, ".json") == 0;
      if (json) os << table_json(t);
      else write_table_csv(t, os);
      require(static_cast<bool>(os), ErrorCode::Io, "write failed on " + cfg.table_out);
    }
    return r;
  }

  // Rank one: N = 1 + k^2.
  for (int k = 1; k <= 3; ++k) {
    const MorphismTable t = enumerate_morphisms(GramLattice::rank1(k), cfg.bound, cfg.target_dim);
    const bool single = t.rows.size() == 1;
    r.compare("rank1 k=" + std::to_string(k) + " N", "enumerate_morphisms",
              single ? N_of(t.rows[0]) : -1.0, 1.0 + k * k, 0.0,
              {{"k", k}, {"rows", t.rows.size()}});
  }

  const GramLattice H = GramLattice::hyperbolic();
  const GramLattice M = GramLattice::mixed();
  {
    const MorphismTable t = enumerate_morphisms(H, cfg.bound, cfg.target_dim);
    double gap = 0.0;
    std::size_t positive = 0;
    for (const auto& row : t.rows) {
      const long long p = row.coords[0], q = row.coords[1];
      const double expect = 1.0 + static_cast<double>(p * q);
      gap = std::max(gap, std::abs(N_of(row) - expect));
      if (p > 0 && q > 0) ++positive;
    }
    r.verdict("hyperbolic N = 1 + D^2/2 = 1 + pq", "enumerate_morphisms", gap, 0, gap, 0,
              gap == 0, {{"bound", cfg.bound}, {"rows", t.rows.size()}, {"positive_rows", positive}});
    int minus_two = 0;
    const int b = cfg.bound;
    for (int p = -b; p <= b; ++p)
      for (int q = -b; q <= b; ++q)
        if (H.pairing({p, q}, {p, q}) == -2 && H.in_cone({p, q})) ++minus_two;
    r.compare("hyperbolic has no effective (-2)-class", "base_locus_empty", minus_two, 0, 0);
  }
  {
    const MorphismTable t = enumerate_morphisms(M, cfg.bound, cfg.target_dim);
    bool nef_rule = true;
    double gap = 0.0;
    for (const auto& row : t.rows) {
      const long long p = row.coords[0], q = row.coords[1];
      nef_rule = nef_rule && ((row.nef == Tri::True) == (p >= q));
      if (row.nef == Tri::True)
        gap = std::max(gap, std::abs(N_of(row) - static_cast<double>(1 + p * p + 2 * p * q - q * q)));
    }
    r.verdict("mixed nef iff p >= q", "is_nef", nef_rule, 1, !nef_rule, 0, nef_rule,
              {{"bound", cfg.bound}, {"rows", t.rows.size()}});
    r.verdict("mixed N = 1 + p^2 + 2pq - q^2", "enumerate_morphisms", gap, 0, gap, 0, gap == 0);
    int isotropic = 0;
    const int b = cfg.bound;
    for (int p = -b; p <= b; ++p)
      for (int q = -b; q <= b; ++q)
        if ((p || q) && M.pairing({p, q}, {p, q}) == 0) ++isotropic;
    r.compare("mixed has no square-zero class", "base_locus_empty", isotropic, 0, 0);
  }

  // Worked examples.
  r.compare("self_intersection rank1 (1)", "self_intersection",
            self_intersection({GramLattice::rank1(1), {1}}), 2, 0);
  r.compare("self_intersection H (1,1)", "self_intersection", self_intersection({H, {1, 1}}), 2, 0);
  r.compare("self_intersection mixed (0,1)", "self_intersection", self_intersection({M, {0, 1}}), -2, 0);
  r.compare("genus D^2=2", "genus", genus({H, {1, 1}}), 2, 0);
  r.compare("genus D^2=0", "genus", genus({H, {1, 0}}), 1, 0);
  r.compare("genus D^2=-2", "genus", genus({M, {0, 1}}), 0, 0);
  {
    const MorphismTable t = enumerate_morphisms(GramLattice::rank1(2), 1);
    const bool ok = t.rows.size() == 1 && t.rows[0].d2 == 8 && N_of(t.rows[0]) == 5;
    r.verdict("rank1 k=2 bound 1 single row P^5", "enumerate_morphisms", ok, 1, !ok, 0, ok);
  }
  {
    const MorphismTable t = enumerate_morphisms(M, 2);
    auto find = [&](long long p, long long q) -> const MorphismRow* {
      for (const auto& row : t.rows)
        if (row.coords == Coords{p, q}) return &row;
      return nullptr;
    };
    const MorphismRow* a = find(1, 1);
    const MorphismRow* b = find(2, 1);
    const MorphismRow* c = find(1, 2);
    const bool ok = a && b && c && a->nef == Tri::True && N_of(*a) == 3 && b->nef == Tri::True &&
                    N_of(*b) == 8 && c->nef == Tri::False;
    r.verdict("mixed bound 2 rows", "enumerate_morphisms", ok, 1, !ok, 0, ok);
  }
  {
    const GramLattice C({{0, 1}, {1, -2}}, LatticePreset::Custom, "custom");
    const Tri bpf = base_locus_empty({C, {2, 1}});
    r.verdict("custom D = 2E + R has base points", "base_locus_empty", bpf == Tri::False, 1,
              bpf != Tri::False, 0, bpf == Tri::False, {{"result", to_string(bpf)}});
  }

  // Strata.
  {
    const StratumDescriptor a = stratum_dimension({H, {1, 1}}, 1, 1);
    r.compare("stratum N=2 k=1 n=1", "stratum_dimension", a.total(), 2, 0,
              {{"psi", a.psi_dim}, {"grassmannian", a.gr_dim}});
    const StratumDescriptor b = stratum_dimension({H, {3, 1}}, 2, 3);
    r.compare("stratum N=4 k=2 n=3", "stratum_dimension", b.total(), 12, 0,
              {{"psi", b.psi_dim}, {"grassmannian", b.gr_dim}});
    const StratumDescriptor c = stratum_dimension({H, {1, 1}}, 2, 2);
    r.compare("stratum k=N psi is a point", "stratum_dimension", c.psi_dim, 0, 0);
    bool monotone = true;
    for (const GramLattice& L : {H, M}) {
      for (const auto& row : enumerate_morphisms(L, cfg.bound).rows) {
        if (!row.N || *row.N < 1) continue;
        const int N = static_cast<int>(*row.N);
        long long prev = 0;
        for (int k = 1; k <= N; ++k) {
          const long long t = stratum_dimension({L, row.coords}, k, N).total();
          if (k > 1 && t > prev) monotone = false;
          prev = t;
        }
      }
    }
    r.verdict("stratum dimension decreasing in k", "stratum_dimension", monotone, 1, !monotone, 0,
              monotone);
  }
  {
    const bool same = component_key({H, {2, 1}}, {H, {2, 1}});
    const bool merged = component_key({H, {2, 1}}, {H, {1, 2}});
    bool mismatch = false;
    try {
      component_key({H, {1, 1}}, {M, {1, 1}});
    } catch (const Error& e) {
      mismatch = e.code() == ErrorCode::InvalidArgument;
    }
    const bool ok = same && !merged && mismatch;
    r.verdict("component_key", "component_key", ok, 1, !ok, 0, ok);
  }

  if (!cfg.golden_dir.empty()) {
    struct Golden {
      std::string file;
      GramLattice lattice;
    };
    const std::vector<Golden> golden = {{"rank1_k1.csv", GramLattice::rank1(1)},
                                        {"rank1_k2.csv", GramLattice::rank1(2)},
                                        {"rank1_k3.csv", GramLattice::rank1(3)},
                                        {"hyperbolic_b5.csv", H},
                                        {"mixed_b5.csv", M}};
    for (const auto& g : golden) {
      guarded(r, "golden " + g.file, "enumerate_morphisms", [&] {
        std::ostringstream os;
        write_table_csv(enumerate_morphisms(g.lattice, 5), os);
        const std::string expect = read_file(cfg.golden_dir + "/" + g.file);
        const bool same = os.str() == expect;
        r.verdict("golden " + g.file, "enumerate_morphisms", static_cast<double>(os.str().size()),
                  static_cast<double>(expect.size()), same ? 0 : 1, 0, same, {{"bound", 5}});
      });
    }
  }
  return r;
}

Report cmd_verify_all(const RunConfig& cfg) {
  Report all = start_report("verify-all", cfg);
  all.merge(cmd_hom(cfg));
  all.merge(cmd_fueter(cfg));
  all.merge(cmd_weitzenboeck(cfg));
  for (int n : {1, 2}) {
    RunConfig c = cfg;
    c.target_dim = n;
    all.merge(cmd_kernel(c));
  }
  all.merge(cmd_dirac(cfg));
  all.merge(cmd_k3(cfg));
  return all;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"hom",    "fueter", "weitzenboeck", "kernel",
                                                 "dirac",  "k3",     "verify-all"};
  return names;
}

Report run_command(const RunConfig& cfg) {
  cfg.validate();
  const std::string& c = cfg.command;
  if (c == "hom") return cmd_hom(cfg);
  if (c == "fueter") return cmd_fueter(cfg);
  if (c == "weitzenboeck") return cmd_weitzenboeck(cfg);
  if (c == "kernel") return cmd_kernel(cfg);
  if (c == "dirac") return cmd_dirac(cfg);
  if (c == "k3") return cmd_k3(cfg);
  if (c == "verify-all" || c == "verify_all") return cmd_verify_all(cfg);
  fail(ErrorCode::InvalidArgument, "unknown command '" + c + "'");
}

std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ salt;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> convergence_orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    out.push_back(std::log2(errors[k] / errors[k + 1]));
  return out;
}

void write_report(const Report& r, const RunConfig& cfg) {
  const std::string text = cfg.format == "csv" ? r.to_csv() : r.to_json_string();
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    require(static_cast<bool>(std::cout), ErrorCode::Io, "write to stdout failed");
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + cfg.out + " for writing");
  os << text;
  os.close();
  require(static_cast<bool>(os), ErrorCode::Io, "write failed on " + cfg.out);
}

int exit_code(const Report& r) { return static_cast<int>(r.status()); }

}  // namespace aholo
