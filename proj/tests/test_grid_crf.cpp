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

#include "aholo/crf.hpp"
#include "aholo/error.hpp"
#include "aholo/fixtures.hpp"
#include "aholo/grid.hpp"
#include "aholo/hom.hpp"
#include "aholo/rng.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

using namespace aholo;

namespace {

const double kPi = std::numbers::pi;

GridMap torus_linear(const GridDomain& dom, const Quaternion& q) {
  const Mat P = dom.L() * Mat::Identity(4, 4);
  const Eigen::MatrixXi W = left_mult_matrix(q).transpose().array().round().cast<int>();
  return sample(dom, TargetSpec::torus(1, P), FixtureMap::winding(P, W, dom.L()).as_function());
}

// u(x) = sin(2 pi x0 / L) e_1 + cos(2 pi x2 / L) e_3 with its exact Jacobian.
Vec trig_value(const Point4& x, double L) {
  Vec v = Vec::Zero(4);
  v[1] = std::sin(2 * kPi * x[0] / L);
  v[3] = std::cos(2 * kPi * x[2] / L);
  return v;
}

Mat trig_jacobian(const Point4& x, double L) {
  Mat J = Mat::Zero(4, 4);
  J(1, 0) = 2 * kPi / L * std::cos(2 * kPi * x[0] / L);
  J(3, 2) = -2 * kPi / L * std::sin(2 * kPi * x[2] / L);
  return J;
}

// 16 x 16 matrix of vec(A) -> vec(C(A) - A) for left/left triples on H,
// built from the quaternion products h -> e A(e h).
Mat crf_block() {
  Mat K(16, 16);
  for (int c = 0; c < 16; ++c) {
    Mat E = Mat::Zero(4, 4);
    E(c % 4, c / 4) = 1;
    Mat CE = Mat::Zero(4, 4);
    for (int col = 0; col < 4; ++col) {
      Quaternion acc;
      for (int l = 1; l <= 3; ++l) {
        const Quaternion e = Quaternion::basis(l);
        const Quaternion h = e * Quaternion::basis(col);
        acc += e * Quaternion::from_vec(E * h.to_vec());
      }
      CE.col(col) = acc.to_vec();
    }
    CE -= E;
    K.col(c) = Eigen::Map<const Vec>(CE.data(), 16);
  }
  return K;
}

// Dense operator on the N^4 periodic lattice, n = 1; optional Laplacian rows.
Mat dense_crf(int N, double L, bool laplacian) {
  const GridDomain dom(N, L, true);
  const double h = dom.h();
  const Mat K = crf_block();
  const int pts = static_cast<int>(dom.size());
  const int rows_per = laplacian ? 20 : 16;
  Mat A = Mat::Zero(rows_per * pts, 4 * pts);
  for (int i = 0; i < pts; ++i) {
    const LatticePoint p = dom.point(i);
    for (int a = 0; a < 4; ++a) {
      for (int s : {1, -1}) {
        LatticePoint q = p;
        q[a] = (q[a] + s + N) % N;
        const int j = static_cast<int>(dom.index(q));
        for (int r = 0; r < 4; ++r) {
          // d u_r / d x_a enters vec(du) at r + 4a.
          A.block(rows_per * i, 4 * j + r, 16, 1) += s / (2 * h) * K.col(r + 4 * a);
          if (laplacian) A(rows_per * i + 16 + r, 4 * j + r) += 0.5 / h;
        }
      }
    }
    if (laplacian)
      for (int r = 0; r < 4; ++r) A(rows_per * i + 16 + r, 4 * i + r) -= 4.0 / h;
  }
  return A;
}

int null_count(const Mat& A) {
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(A.transpose() * A, Eigen::EigenvaluesOnly).eigenvalues();
  const double top = ev.maxCoeff();
  return static_cast<int>((ev.array() < 1e-10 * top).count());
}

}  // namespace

TEST_CASE("grid domain geometry") {
  const GridDomain d(8, 2.0, true);
  CHECK(d.h() * d.N() == d.L());
  CHECK(d.size() == 4096);
  for (std::size_t i : {std::size_t{0}, std::size_t{77}, std::size_t{4095}})
    CHECK(d.index(d.point(i)) == i);
  CHECK_THROWS_AS(GridDomain(5, 1.0), Error);
  CHECK_THROWS_AS(GridDomain(8, -1.0), Error);
  const GridDomain box(8, 1.0, false);
  CHECK_FALSE(box.has_differential({0, 3, 3, 3}));
  CHECK(box.has_differential({1, 3, 3, 6}));
}

TEST_CASE("integration of constants and trig") {
  const GridDomain d(8, 1.5, true);
  CHECK(integrate(d, std::vector<double>(d.size(), 1.0)) == doctest::Approx(std::pow(1.5, 4)).epsilon(1e-14));
  std::vector<double> f(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto x = d.coords(d.point(i));
    f[i] = std::pow(std::sin(2 * kPi * x[1] / 1.5), 2);
  }
  // Trapezoid rule is exact for low trigonometric modes.
  CHECK(integrate(d, f) == doctest::Approx(0.5 * std::pow(1.5, 4)).epsilon(1e-13));
}

TEST_CASE("central differences: exact on linear maps, second order on trig") {
  const GridDomain box(8, 1.0, false);
  Rng rng(21);
  const Mat M = rng.matrix(4, 4);
  const GridMap u = sample(box, TargetSpec::flat(1), FixtureMap::affine(M, Vec::Ones(4), 1.0).as_function());
  CHECK((differential_at(u, {3, 4, 2, 5}) - M).norm() < 1e-12);

  const GridDomain t(8, 1.0, true);
  CHECK((differential_at(torus_linear(t, Quaternion::one()), {0, 7, 0, 7}) - Mat::Identity(4, 4)).norm() < 1e-12);

  std::vector<double> err;
  for (int N : {8, 16, 32}) {
    const GridDomain dom(N, 1.0, true);
    const GridMap v = sample(dom, TargetSpec::flat(1), [](const Point4& x) { return trig_value(x, 1.0); });
    const LatticePoint p{N / 8, 0, 3 * N / 8, 0};
    err.push_back((differential_at(v, p) - trig_jacobian(dom.coords(p), 1.0)).norm());
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("binary snapshot layout and round trip") {
  const GridDomain t(4, 1.0, true);
  const GridMap u = torus_linear(t, Quaternion::i());
  std::ostringstream os;
  write_binary(u, os);
  const std::string bytes = os.str();
  // header 32 bytes, 16 period doubles, 16 winding int32, 256 * 4 doubles
  CHECK(bytes.size() == 32 + 16 * 8 + 16 * 4 + 256 * 4 * 8);
  CHECK(bytes.substr(0, 8) == "AHGRID01");
  std::uint32_t hdr[4];
  std::memcpy(hdr, bytes.data() + 8, 16);
  CHECK(hdr[0] == 4);
  CHECK(hdr[1] == 1);
  CHECK(hdr[2] == 3);
  CHECK(hdr[3] == 0);
  double L;
  std::memcpy(&L, bytes.data() + 24, 8);
  CHECK(L == 1.0);

  std::istringstream is(bytes);
  const GridMap back = read_binary(is);
  CHECK(back.values() == u.values());
  CHECK(*back.winding() == *u.winding());
  CHECK(back.target().is_torus());

  std::istringstream bad("AHGRID02" + bytes.substr(8));
  CHECK_THROWS_AS(read_binary(bad), Error);
  std::istringstream cut(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_binary(cut), Error);
}

TEST_CASE("csv snapshot") {
  const GridDomain b(4, 1.0, false);
  const GridMap u = sample(b, TargetSpec::flat(2), [](const Point4& x) {
    Vec v = Vec::Zero(8);
    v[7] = x[3];
    return v;
  });
  std::ostringstream os;
  write_csv(u, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "p0,p1,p2,p3,x0,x1,x2,x3,u0,u1,u2,u3,u4,u5,u6,u7");
  int count = 0;
  while (std::getline(is, line)) ++count;
  CHECK(count == 256);
}

TEST_CASE("fueter residual on fixtures") {
  const GridDomain box(8, 1.0, false);
  const auto H = TargetSpec::flat(1);
  const GridMap ix = sample(box, H, left_linear(Quaternion::i(), 1.0).as_function());
  const GridMap x = sample(box, H, left_linear(Quaternion::one(), 1.0).as_function());
  const LatticePoint p{3, 4, 4, 2};
  const std::size_t idx = box.index(p);
  CHECK(fueter_residual(ix).value(idx).norm() < 1e-10);
  // d0 - i d1 - j d2 - k d3 applied to x is 1 + 3 = 4.
  CHECK((fueter_residual(x).value(idx) - 4 * Quaternion::one().to_vec()).norm() < 1e-10);
  CHECK(crf_fueter_consistency(x) < 1e-12);
  CHECK(crf_fueter_consistency(ix) < 1e-12);
  CHECK(crf_residual(ix).max_norm() < 1e-10);
}

TEST_CASE("energy identity worked values on the identity map") {
  const double L = 1.5;
  const GridDomain t(8, L, true);
  const GridMap id = torus_linear(t, Quaternion::one());
  const double L4 = std::pow(L, 4);
  CHECK(energy(id) == doctest::Approx(2 * L4).epsilon(1e-13));
  const WeitzenboeckResult w = weitzenboeck_check(id);
  CHECK(w.lhs == doctest::Approx(2 * L4).epsilon(1e-13));
  CHECK(w.residual_term == doctest::Approx(8 * L4).epsilon(1e-13));
  for (double pl : w.pairing) CHECK(pl == doctest::Approx(2 * L4).epsilon(1e-13));
  CHECK(std::abs(w.gap) < 1e-12 * L4);
  // The aholomorphic i.x has vanishing residual term, so E = -T.
  const WeitzenboeckResult wi = weitzenboeck_check(torus_linear(t, Quaternion::i()));
  CHECK(wi.residual_term < 1e-12);
  CHECK(wi.lhs == doctest::Approx(-wi.topological()).epsilon(1e-12));
}

TEST_CASE("kaehler density oracle") {
  Rng rng(22);
  const auto Ls = standard_triple(Side::Left, 1);
  const Mat A = rng.matrix(4, 4);
  for (int l = 0; l < 3; ++l) {
    // omega^X ^ A* omega^M over dvol, from the 2-forms directly:
    // <alpha, beta> with alpha = J_l (source), beta_ab = <I_l A e_a, A e_b>.
    const Mat beta = A.transpose() * Ls[l] * A;
    const double ref = 0.5 * (Ls[l].array() * beta.array()).sum();
    CHECK(kaehler_density(A, l + 1, Ls, Ls) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("dense kernel assembly at N = 4") {
  const Mat raw = dense_crf(4, 1.0, false);
  const Mat reg = dense_crf(4, 1.0, true);
  CHECK(null_count(raw) == 64);
  CHECK(null_count(reg) == 4);
  const GridDomain t(4, 1.0, true);
  CHECK(crf_kernel_spectrum(t, 1, KernelOperator::Raw).dimension == 64);
  CHECK(crf_kernel_spectrum(t, 1).dimension == 4);
  CHECK(crf_kernel_dimension(GridDomain(8, 1.0, true), 2) == 8);
  const KernelSpectrum tight = crf_kernel_spectrum(GridDomain(8, 1.0, true), 1, KernelOperator::Regularized, 0.1);
  CHECK_FALSE(tight.conclusive);
  CHECK_THROWS_AS(crf_kernel_dimension(GridDomain(8, 1.0, true), 1, 0.1), Error);
}

TEST_CASE("spectrum classification") {
  const KernelSpectrum s = classify_spectrum({1.0, 0.5, 1e-13, 0.0}, 1e-6);
  CHECK(s.dimension == 2);
  CHECK(s.conclusive);
  CHECK_FALSE(classify_spectrum({1.0, 5e-5, 0.0}, 1e-6).conclusive);
  CHECK_FALSE(classify_spectrum({1.0, 5e-8, 0.5}, 1e-6).conclusive);
}

TEST_CASE("energy gradient matches finite differences") {
  const GridDomain t(4, 1.0, true);
  Rng rng(23);
  const FixtureMap f = FixtureMap::random_trig(rng, 1, 1.0, 3, 0.2);
  GridMap u = sample(t, TargetSpec::flat(1), f.as_function());
  const std::vector<double> g = energy_gradient(u);
  for (std::size_t k : {std::size_t{0}, std::size_t{5}, std::size_t{517}}) {
    GridMap up = u, dn = u;
    const double eps = 1e-6;
    up.mutable_values()[k] += eps;
    dn.mutable_values()[k] -= eps;
    const double fd = (energy(up) - energy(dn)) / (2 * eps);
    CHECK(g[k] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("minimizer decreases energy and respects the class bound") {
  const GridDomain t(4, 1.0, true);
  Rng rng(24);
  const Mat P = Mat::Identity(4, 4);
  const FixtureMap f = FixtureMap::winding(P, Eigen::MatrixXi::Identity(4, 4), 1.0)
                           .plus(FixtureMap::random_trig(rng, 1, 1.0, 2, 0.05));
  const GridMap u0 = sample(t, TargetSpec::torus(1, P), f.as_function());
  MinimizeOptions o;
  o.steps = 40;
  const MinimizeResult m = minimize_energy(u0, o);
  for (std::size_t s = 1; s < m.energies.size(); ++s)
    CHECK(m.energies[s] <= m.energies[s - 1] * (1 + 1e-12));
  CHECK(m.energies.back() < m.energies.front());
  CHECK(m.energies.back() >= weitzenboeck_check(u0).topological() / 3.0 - 1e-12);
}

TEST_CASE("circle action model") {
  const S1ActionModel model;
  const auto z = std::polar(1.0, 0.7);
  const auto w = std::polar(1.0, -1.1);
  const S1RotationResult r = s1_rotation_check(model, z, w);
  CHECK(r.residual < 1e-12);
  CHECK(std::abs(r.w_prime - z * z * w) < 1e-12);
  const GridDomain box(8, 1.0, false);
  CHECK(exactness_check(model, box) < 1e-10);
  S1ActionModel zero;
  zero.killing_coefficient = 0;
  CHECK(exactness_check(zero, box) > 1.0);
}

TEST_CASE("antiholomorphy witness") {
  const S1ActionModel model;
  const GridDomain box(8, 1.0, false);
  Rng rng(25);
  const auto I = model.triple();
  const Mat M = rng.matrix(4, 4);
  const Mat A = 0.5 * (M + I.I1() * M * torus_source_triple().I1());
  const GridMap u = sample(box, TargetSpec::flat(1), FixtureMap::affine(A, Vec::Zero(4), 1.0).as_function());
  CHECK(antiholomorphy_witness(u, model));
  // i.x is aholomorphic but its rotation is not.
  const GridMap ix = sample(box, TargetSpec::flat(1), left_linear(Quaternion::i(), 1.0).as_function());
  CHECK_THROWS_AS(antiholomorphy_witness(ix, model), Error);
}
