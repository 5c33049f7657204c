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
#include "aholo/crf.hpp"
#include "aholo/fixtures.hpp"
#include "aholo/hom.hpp"
#include "aholo/rng.hpp"
#include "aholo/suites.hpp"
#include "suite_util.hpp"

#include <cmath>
#include <numbers>

namespace aholo {

using detail::guarded;
using detail::start_report;

namespace {

HyperComplexTriple random_triple(Rng& rng, int m) {
  const Side side = rng.below(2) == 0 ? Side::Left : Side::Right;
  return standard_triple(side, m).conjugated(rng.orthogonal(4 * m));
}

// I3 sign flipped: fails I1 I2 = I3.
HyperComplexTriple corrupted_triple(int m) {
  const HyperComplexTriple t = standard_triple(Side::Left, m);
  return HyperComplexTriple::unchecked(t.I1(), t.I2(), -t.I3());
}

// A with I1 A J1 = A, hence C(A) = A and the rotated equation.
Mat antiholomorphic_matrix(Rng& rng, const HyperComplexTriple& J, const HyperComplexTriple& I) {
  const Mat M = rng.matrix(4 * I.dim(), 4 * J.dim());
  return 0.5 * (M + I.I1() * M * J.I1());
}

std::vector<int> grid_ladder(int base) { return {base, 2 * base, 4 * base}; }

Json ladder_json(const std::vector<int>& Ns) { return Json(Ns); }

}  // namespace

Report cmd_hom(const RunConfig& cfg) {
  Report r = start_report("hom", cfg);
  Rng rng(suite_seed(cfg.seed, detail::kSaltHom));
  const bool corrupt = cfg.inject_fault == "corrupt_triple";

  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const Json p = {{"m", m}, {"n", n}};
      double worst = 0.0;
      for (Side s : {Side::Left, Side::Right})
        for (Side t : {Side::Left, Side::Right})
          worst = std::max(worst, char_poly_check(standard_triple(s, m), standard_triple(t, n)));
      for (int c = 0; c < 20; ++c)
        worst = std::max(worst, char_poly_check(random_triple(rng, m), random_triple(rng, n)));
      if (corrupt && m == 1 && n == 1)
        worst = std::max(worst, char_poly_check(corrupted_triple(m), standard_triple(Side::Left, n)));
      Json pp = p;
      pp["instances"] = 24 + (corrupt && m == 1 && n == 1 ? 1 : 0);
      r.bound("char_poly m=" + std::to_string(m) + " n=" + std::to_string(n), "char_poly_check",
              worst, cfg.tol, pp);
    }
  }

  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const auto [q, a] = projector_ranks(random_triple(rng, m), random_triple(rng, n));
      const double expect_q = 4.0 * m * n, expect_a = 12.0 * m * n;
      const double gap = std::abs(q - expect_q) + std::abs(a - expect_a);
      r.verdict("projector_ranks m=" + std::to_string(m) + " n=" + std::to_string(n),
                "projector_ranks", q, expect_q, gap, 0.0, gap == 0.0,
                {{"m", m}, {"n", n}, {"quaternionic_rank", q}, {"aquaternionic_rank", a},
                 {"expected", {4 * m * n, 12 * m * n}}});
    }
  }

  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      double worst = 0.0;
      bool classified = true;
      for (int c = 0; c < 10; ++c) {
        const RealLinearMap A(rng.matrix(4 * n, 4 * m), random_triple(rng, m), random_triple(rng, n));
        const HomDecomposition d = decompose(A);
        const Mat sum = d.quaternionic_part.matrix() + d.aquaternionic_part.matrix();
        worst = std::max(worst, (sum - A.matrix()).norm());
        const double inner =
            (d.quaternionic_part.matrix().array() * d.aquaternionic_part.matrix().array()).sum();
        worst = std::max(worst, std::abs(inner));
        classified = classified && is_quaternion_linear(d.quaternionic_part, cfg.tol) &&
                     is_aquaternionic(d.aquaternionic_part, cfg.tol);
      }
      r.verdict("decompose m=" + std::to_string(m) + " n=" + std::to_string(n), "decompose",
                worst, 0.0, worst, cfg.tol, worst <= cfg.tol && classified,
                {{"m", m}, {"n", n}, {"instances", 10}, {"parts_classified", classified}});
    }
  }

  {
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
      const int m = 1 + rng.below(3), n = 1 + rng.below(3);
      const HyperComplexTriple J = random_triple(rng, m), I = random_triple(rng, n);
      const Mat A = rng.matrix(4 * n, 4 * m);
      const double lhs = (apply_C(A, J, I) - A).norm();
      const double rhs = 4.0 * quaternionic_projection(A, J, I).norm();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    r.bound("crf_equals_4_quaternionic_part", "apply_C", worst, cfg.tol, {{"instances", 1000}});
  }

  {
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      const int m = 1 + rng.below(3), n = 1 + rng.below(3);
      const HyperComplexTriple J = random_triple(rng, m), I = random_triple(rng, n);
      std::vector<RealLinearMap> parts;
      for (int l = 0; l < 3; ++l) {
        const Mat M = rng.matrix(4 * n, 4 * m);
        parts.emplace_back(quaternionic_projection(M, J, I), J, I);
      }
      const RealLinearMap B = embed_b_plus(parts[0], parts[1], parts[2]);
      worst = std::max(worst, (apply_C(B).matrix() - B.matrix()).norm() /
                                  std::max(1.0, B.matrix().norm()));
    }
    r.bound("embed_b_plus_aquaternionic", "embed_b_plus", worst, cfg.tol, {{"instances", 20}});
  }

  {
    bool all = true;
    for (int c = 0; c < 100; ++c) {
      const int m = 1 + rng.below(3), n = 1 + rng.below(3);
      const HyperComplexTriple J = random_triple(rng, m), I = random_triple(rng, n);
      all = all && antiholomorphic_reduction(RealLinearMap(antiholomorphic_matrix(rng, J, I), J, I));
    }
    r.verdict("antiholomorphic_reduction", "antiholomorphic_reduction", all ? 1 : 0, 1,
              all ? 0 : 1, 0, all, {{"instances", 100}});

    bool rejected = false;
    const HyperComplexTriple J = standard_triple(Side::Left, 1), I = standard_triple(Side::Left, 1);
    const Mat M = rng.matrix(4, 4);
    const Mat plus = 0.25 * (3.0 * M + apply_C(M, J, I));
    try {
      antiholomorphic_reduction(RealLinearMap(plus, J, I));
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::Precondition;
    }
    r.verdict("antiholomorphic_reduction_rejects_generic", "antiholomorphic_reduction",
              rejected ? 1 : 0, 1, rejected ? 0 : 1, 0, rejected);
  }
  return r;
}

Report cmd_fueter(const RunConfig& cfg) {
  Report r = start_report("fueter", cfg);
  Rng rng(suite_seed(cfg.seed, detail::kSaltFueter));
  const double L = cfg.length;
  const GridDomain box(cfg.grid_n, L, false);
  const TargetSpec H = TargetSpec::flat(1);

  auto max_residual = [](const GridMap& u, const Vec& expect) {
    const GridMap F = fueter_residual(u);
    const auto& dom = u.domain();
    double worst = 0.0;
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (dom.has_differential(dom.point(i)))
        worst = std::max(worst, (F.value(i) - expect).norm());
    return worst;
  };
  const Json bp = {{"grid_n", cfg.grid_n}, {"length", L}, {"domain", "box"}};
  const Vec zero = Vec::Zero(4);

  const GridMap c = sample(box, H, FixtureMap::constant(rng.quaternion().to_vec(), L).as_function());
  r.bound("fueter constant", "fueter_residual", max_residual(c, zero), cfg.tol, bp);

  const GridMap id = sample(box, H, left_linear(Quaternion::one(), L).as_function());
  const Vec four = Quaternion{4, 0, 0, 0}.to_vec();
  r.bound("fueter u=x equals 4", "fueter_residual", max_residual(id, four), cfg.tol, bp);

  const GridMap ix = sample(box, H, left_linear(Quaternion::i(), L).as_function());
  r.bound("fueter u=i*x", "fueter_residual", max_residual(ix, zero), cfg.tol, bp);

  r.bound("crf_fueter_consistency u=x", "crf_fueter_consistency", crf_fueter_consistency(id),
          cfg.tol, bp);

  // Regular nonlinear fixture on the box: u = exp(x0 - i x1).
  {
    const ClosedFormMap f = [](const Point4& x) {
      const double e = std::exp(x[0]);
      return Quaternion{e * std::cos(x[1]), -e * std::sin(x[1]), 0, 0}.to_vec();
    };
    std::vector<double> errs;
    const auto Ns = grid_ladder(cfg.grid_n);
    for (int N : Ns) errs.push_back(max_residual(sample(GridDomain(N, L, false), H, f), zero));
    const auto orders = convergence_orders(errs);
    for (std::size_t k = 0; k < orders.size(); ++k)
      r.compare("fueter exp(x0 - i x1) order " + std::to_string(Ns[k]) + "->" +
                    std::to_string(Ns[k + 1]),
                "fueter_residual", orders[k], 2.0, 0.2,
                {{"grids", ladder_json(Ns)}, {"errors", errs}});
  }

  // Trigonometric fixtures on the torus against the analytic operator.
  {
    const FixtureMap f = FixtureMap::random_trig(rng, 1, L, 3, 0.3);
    const auto Ns = grid_ladder(cfg.grid_n);
    std::vector<double> errs;
    double consistency = 0.0;
    for (int N : Ns) {
      const GridDomain dom(N, L);
      const GridMap u = sample(dom, H, f.as_function());
      const GridMap F = fueter_residual(u);
      double worst = 0.0;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        const Vec exact = detail::analytic_fueter(f, dom.coords(dom.point(i)));
        worst = std::max(worst, (F.value(i) - exact).norm());
      }
      errs.push_back(worst);
      if (N == Ns.front()) consistency = crf_fueter_consistency(u);
    }
    r.bound("crf_fueter_consistency trig", "crf_fueter_consistency", consistency, cfg.tol,
            {{"grid_n", Ns.front()}});
    const auto orders = convergence_orders(errs);
    for (std::size_t k = 0; k < orders.size(); ++k)
      r.compare("fueter trig order " + std::to_string(Ns[k]) + "->" + std::to_string(Ns[k + 1]),
                "fueter_residual", orders[k], 2.0, 0.2,
                {{"grids", ladder_json(Ns)}, {"errors", errs},
                 {"ratio", errs[k] / errs[k + 1]}});
  }
  return r;
}

Report cmd_weitzenboeck(const RunConfig& cfg) {
  Report r = start_report("weitzenboeck", cfg);
  Rng rng(suite_seed(cfg.seed, detail::kSaltWeitz));
  const double L = cfg.length;
  const double L4 = L * L * L * L;
  const int n = cfg.target_dim;
  const GridDomain dom(cfg.grid_n, L);

  auto record = [&](const std::string& name, const GridMap& u, Json p) {
    const WeitzenboeckResult w = weitzenboeck_check(u);
    p["residual_term"] = w.residual_term;
    p["pairing"] = {w.pairing[0], w.pairing[1], w.pairing[2]};
    p["grid_n"] = u.domain().N();
    r.compare(name, "weitzenboeck_check", w.lhs, w.rhs, 1e-9 * L4, std::move(p));
    return w;
  };

  record("weitzenboeck constant",
         sample(dom, TargetSpec::flat(n), FixtureMap::constant(rng.matrix(4 * n, 1), L).as_function()),
         {{"n", n}});

  // Identity T^4 -> T^4 with the worked values.
  {
    const Mat P = L * Mat::Identity(4, 4);
    const Eigen::MatrixXi W = Eigen::MatrixXi::Identity(4, 4);
    const GridMap u = sample(dom, TargetSpec::torus(1, P), FixtureMap::winding(P, W, L).as_function());
    const WeitzenboeckResult w = record("weitzenboeck identity winding", u, {{"n", 1}});
    r.compare("identity energy 2 L^4", "energy", w.lhs, 2 * L4, 1e-12 * L4);
    r.compare("identity pairing 6 L^4", "kaehler_pairing", w.topological(), 6 * L4, 1e-12 * L4);
  }

  for (int c = 0; c < 3; ++c) {
    Eigen::MatrixXi W(4, 4 * n);
    for (int i = 0; i < W.rows(); ++i)
      for (int j = 0; j < W.cols(); ++j) W(i, j) = rng.below(5) - 2;
    const Mat P = c == 0 ? Mat(L * Mat::Identity(4 * n, 4 * n)) : Mat(L * rng.orthogonal(4 * n));
    const GridMap u = sample(dom, TargetSpec::torus(n, P), FixtureMap::winding(P, W, L).as_function());
    record("weitzenboeck random winding " + std::to_string(c), u, {{"n", n}, {"winding", W.reshaped().eval()}});
  }

  {
    const Mat P = L * Mat::Identity(4 * n, 4 * n);
    Eigen::MatrixXi W = Eigen::MatrixXi::Zero(4, 4 * n);
    W.leftCols(4) = Eigen::MatrixXi::Identity(4, 4);
    const FixtureMap f = FixtureMap::winding(P, W, L).plus(FixtureMap::random_trig(rng, n, L, 3, 0.1 * L));
    record("weitzenboeck winding plus trig", sample(dom, TargetSpec::torus(n, P), f.as_function()),
           {{"n", n}});
  }

  // Random trigonometric maps: identity at every N, and second-order
  // convergence of the discrete energy to the analytic one.
  {
    const FixtureMap f = FixtureMap::random_trig(rng, n, L, 3, 0.3 * L);
    const auto Ns = grid_ladder(cfg.grid_n);
    double exact = 0.0;
    {
      // Trapezoid sum of the analytic Jacobian; exact for these modes.
      Accumulator acc;
      for (std::size_t i = 0; i < dom.size(); ++i)
        acc.add(f.jacobian(dom.coords(dom.point(i))).squaredNorm());
      exact = 0.5 * dom.cell_volume() * acc.value();
    }
    std::vector<double> errs;
    for (int N : Ns) {
      const GridMap u = sample(GridDomain(N, L), TargetSpec::flat(n), f.as_function());
      const WeitzenboeckResult w = record("weitzenboeck trig N=" + std::to_string(N), u, {{"n", n}});
      errs.push_back(std::abs(w.lhs - exact));
    }
    const auto orders = convergence_orders(errs);
    for (std::size_t k = 0; k < orders.size(); ++k)
      r.compare("energy order " + std::to_string(Ns[k]) + "->" + std::to_string(Ns[k + 1]),
                "energy", orders[k], 2.0, 0.3,
                {{"grids", Ns}, {"errors", errs}, {"analytic_energy", exact}});
  }

  // Gradient flow.
  {
    const FixtureMap f = FixtureMap::random_trig(rng, n, L, 3, 0.3 * L);
    const MinimizeResult m = minimize_energy(sample(dom, TargetSpec::flat(n), f.as_function()));
    double rise = 0.0;
    for (std::size_t k = 1; k < m.energies.size(); ++k)
      rise = std::max(rise, m.energies[k] - m.energies[k - 1]);
    r.verdict("minimize monotone", "minimize_energy", rise, 0.0, std::max(rise, 0.0), 0.0,
              rise <= 0.0, {{"steps", m.energies.size() - 1}});
    const double ratio = m.energies.back() / m.energies.front();
    r.verdict("minimize reaches constant", "minimize_energy", ratio, 1e-6, ratio, 1e-6,
              ratio < 1e-6, {{"initial", m.energies.front()}, {"final", m.energies.back()}});

    const GridMap c = sample(dom, TargetSpec::flat(n), FixtureMap::constant(rng.matrix(4 * n, 1), L).as_function());
    const MinimizeResult mc = minimize_energy(c, {.steps = 5});
    double moved = 0.0;
    for (std::size_t k = 0; k < c.values().size(); ++k)
      moved = std::max(moved, std::abs(mc.map.values()[k] - c.values()[k]));
    r.bound("minimize constant fixed point", "minimize_energy", moved, cfg.tol);
  }
  {
    const Mat P = L * Mat::Identity(4, 4);
    const FixtureMap f = FixtureMap::winding(P, Eigen::MatrixXi::Identity(4, 4), L)
                             .plus(FixtureMap::random_trig(rng, 1, L, 3, 0.05 * L));
    const GridMap u0 = sample(dom, TargetSpec::torus(1, P), f.as_function());
    const double bound = weitzenboeck_check(u0).topological() / 3.0;
    const MinimizeResult m = minimize_energy(u0);
    const double final_e = m.energies.back();
    r.verdict("minimize identity bounded below", "minimize_energy", final_e, bound,
              final_e - bound, 1e-9 * L4, final_e >= bound - 1e-9 * L4 && final_e < m.energies.front(),
              {{"initial", m.energies.front()}, {"topological_bound", bound}});
  }
  {
    bool diverged = false;
    try {
      const FixtureMap f = FixtureMap::random_trig(rng, n, L, 3, 0.3 * L);
      minimize_energy(sample(dom, TargetSpec::flat(n), f.as_function()),
                      {.steps = 20, .step_size = 4.0 * dom.h() * dom.h(), .max_halvings = 0});
    } catch (const Error& e) {
      diverged = e.code() == ErrorCode::Divergence;
    }
    r.verdict("minimize oversized step aborts", "minimize_energy", diverged ? 1 : 0, 1,
              diverged ? 0 : 1, 0, diverged);
  }
  return r;
}

Report cmd_kernel(const RunConfig& cfg) {
  Report r = start_report("kernel", cfg);
  Rng rng(suite_seed(cfg.seed, detail::kSaltKernel));
  const int n = cfg.target_dim;
  const GridDomain dom(cfg.grid_n, cfg.length);

  const KernelSpectrum s = crf_kernel_spectrum(dom, n, KernelOperator::Regularized, cfg.kernel_threshold);
  const Json p = {{"grid_n", cfg.grid_n}, {"n", n}, {"threshold", cfg.kernel_threshold},
                  {"largest_zero", s.largest_zero}, {"smallest_nonzero", s.smallest_nonzero}};
  const std::string name = "crf_kernel_dimension n=" + std::to_string(n);
  if (!s.conclusive) {
    r.inconclusive(name, "crf_kernel_dimension", "spectral gap does not clear the threshold", p);
  } else {
    r.compare(name, "crf_kernel_dimension", s.dimension, 4.0 * n, 0.0, p);
  }
  const KernelSpectrum raw = crf_kernel_spectrum(dom, n, KernelOperator::Raw, cfg.kernel_threshold);
  r.compare("crf_kernel raw doubler count n=" + std::to_string(n), "crf_kernel_dimension",
            raw.dimension, 64.0 * n, 0.0, {{"grid_n", cfg.grid_n}, {"n", n}});

  const S1ActionModel model;
  auto rot = [&](const std::string& label, std::complex<double> z, std::complex<double> w,
                 std::complex<double> expect) {
    const S1RotationResult s1 = s1_rotation_check(model, z, w);
    const double gap = std::max(s1.residual, std::abs(s1.w_prime - expect));
    r.verdict("s1_rotation " + label, "s1_rotation_check", gap, 0, gap, 1e-12, gap < 1e-12,
              {{"w_prime", {s1.w_prime.real(), s1.w_prime.imag()}}});
  };
  rot("z=1", 1.0, {0.6, 0.8}, {0.6, 0.8});
  rot("z=-1", -1.0, {0.6, 0.8}, {0.6, 0.8});
  rot("z=exp(i pi/4)", std::polar(1.0, std::numbers::pi / 4), 1.0, {0.0, 1.0});
  {
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
      const auto z = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
      const auto w = std::polar(1.0, rng.uniform(0, 2 * std::numbers::pi));
      worst = std::max(worst, s1_rotation_check(model, z, w).residual);
    }
    r.bound("s1_rotation random", "s1_rotation_check", worst, 1e-12, {{"instances", 20}});
  }

  for (int N : {8, 16}) {
    const GridDomain box(N, cfg.length, false);
    const double e = exactness_check(model, box);
    r.verdict("exactness N=" + std::to_string(N), "exactness_check", e, 0, e, 1e-3, e < 1e-3,
              {{"grid_n", N}});
  }
  {
    const GridDomain box(16, cfg.length, false);
    S1ActionModel zero;
    zero.killing_coefficient = 0.0;
    r.compare("exactness negative control", "exactness_check", exactness_check(zero, box), 2.0,
              1e-12, {{"grid_n", 16}, {"expected", "norm of omega_3"}});
  }

  {
    const GridDomain box(cfg.grid_n, cfg.length, false);
    const HyperComplexTriple I = model.triple();
    const GridMap c = sample(box, TargetSpec::flat(1), FixtureMap::constant(rng.quaternion().to_vec(), cfg.length).as_function());
    auto witness = [&](const std::string& name, const GridMap& u) {
      guarded(r, name, "antiholomorphy_witness", [&] {
        const bool ok = antiholomorphy_witness(u, model);
        r.verdict(name, "antiholomorphy_witness", ok, 1, !ok, 0, ok);
      });
    };
    witness("antiholomorphy_witness constant", c);

    const Mat M = rng.matrix(4, 4);
    const Mat A = 0.5 * (M + I.I1() * M * torus_source_triple().I1());
    const GridMap u = sample(box, TargetSpec::flat(1), FixtureMap::affine(A, Vec::Zero(4), cfg.length).as_function());
    witness("antiholomorphy_witness affine", u);
  }
  return r;
}

}  // namespace aholo
