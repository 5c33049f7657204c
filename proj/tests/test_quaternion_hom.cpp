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

#include "aholo/error.hpp"
#include "aholo/hom.hpp"
#include "aholo/rng.hpp"

using namespace aholo;

namespace {

// Reference Hamilton product from the multiplication table, indices
// 0..3 = 1, i, j, k; table[a][b] = (sign, index) of e_a e_b.
Quaternion table_product(const Quaternion& p, const Quaternion& q) {
  static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const double a[4] = {p.w, p.x, p.y, p.z};
  const double b[4] = {q.w, q.x, q.y, q.z};
  double c[4] = {0, 0, 0, 0};
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) c[idx[r][s]] += sgn[r][s] * a[r] * b[s];
  return {c[0], c[1], c[2], c[3]};
}

Quaternion apply(const Mat& A, const Quaternion& h) { return Quaternion::from_vec(A * h.to_vec()); }

// C(A) for m = n = 1 with left triples on both sides, evaluated pointwise:
// h -> sum_l e_l A(e_l h).
Mat c_by_products(const Mat& A) {
  Mat out = Mat::Zero(4, 4);
  for (int c = 0; c < 4; ++c) {
    Quaternion acc;
    for (int l = 1; l <= 3; ++l) {
      const Quaternion e = Quaternion::basis(l);
      acc += table_product(e, apply(A, table_product(e, Quaternion::basis(c))));
    }
    out.col(c) = acc.to_vec();
  }
  return out;
}

}  // namespace

TEST_CASE("hamilton product matches multiplication table") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Quaternion p = rng.quaternion();
    const Quaternion q = rng.quaternion();
    CHECK((p * q - table_product(p, q)).norm() < 1e-15);
    CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-14);
  }
  CHECK((Quaternion::i() * Quaternion::j() - Quaternion::k()).norm() == 0.0);
  CHECK((Quaternion::j() * Quaternion::i() + Quaternion::k()).norm() == 0.0);
}

TEST_CASE("multiplication matrices") {
  Rng rng(8);
  const Quaternion q = rng.quaternion();
  const Quaternion h = rng.quaternion();
  CHECK((left_mult_matrix(q) * h.to_vec() - (q * h).to_vec()).norm() < 1e-15);
  CHECK((right_mult_matrix(q) * h.to_vec() - (h * q).to_vec()).norm() < 1e-15);
}

TEST_CASE("standard triples satisfy the quaternion relations") {
  for (int m = 1; m <= 3; ++m) {
    for (Side s : {Side::Left, Side::Right}) {
      const HyperComplexTriple t = standard_triple(s, m);
      CHECK(t.relation_residual() < 1e-15);
      CHECK((t.I1() * t.I2() - t.I3()).norm() < 1e-15);
    }
  }
  CHECK_THROWS_AS(HyperComplexTriple(Mat::Identity(4, 4), Mat::Identity(4, 4), Mat::Identity(4, 4)),
                  Error);
}

TEST_CASE("spin4 pair acts by q_- h conj(q_+)") {
  Rng rng(9);
  const Quaternion a = rng.quaternion();
  const Quaternion b = rng.quaternion();
  const SpinPair g((1.0 / a.norm()) * a, (1.0 / b.norm()) * b);
  const Quaternion h = rng.quaternion();
  const Quaternion ref = table_product(table_product(g.q_minus(), h), g.q_plus().conj());
  CHECK((spin4_to_so4(g) * h.to_vec() - ref.to_vec()).norm() < 1e-14);
  const Mat4 R = spin4_to_so4(g);
  CHECK((R.transpose() * R - Mat4::Identity()).norm() < 1e-14);
  CHECK(R.determinant() == doctest::Approx(1.0));
}

TEST_CASE("apply_C agrees with pointwise quaternion products") {
  Rng rng(10);
  const auto L = standard_triple(Side::Left, 1);
  for (int t = 0; t < 20; ++t) {
    const Mat A = rng.matrix(4, 4);
    CHECK((apply_C(A, L, L) - c_by_products(A)).norm() < 1e-13);
  }
}

TEST_CASE("worked values of C") {
  const auto L = standard_triple(Side::Left, 1);
  const auto R = standard_triple(Side::Right, 1);
  const Mat I = Mat::Identity(4, 4);
  // Identity between left structures is quaternion-linear: C = -3.
  CHECK((apply_C(I, L, L) + 3 * I).norm() < 1e-15);
  // Between left and right structures h -> -e h e is diag(1,1,-1,-1) and
  // its permutations for e = i, j, k, so C(Id) = diag(3,-1,-1,-1).
  Mat expect = -I;
  expect(0, 0) = 3;
  CHECK((apply_C(I, R, L) - expect).norm() < 1e-15);
}

TEST_CASE("characteristic equation and projector ranks") {
  Rng rng(11);
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      const Mat Q1 = rng.orthogonal(4 * m);
      const Mat Q2 = rng.orthogonal(4 * n);
      const auto src = standard_triple(Side::Right, m).conjugated(Q1);
      const auto tgt = standard_triple(Side::Left, n).conjugated(Q2);
      CHECK(char_poly_check(src, tgt) < 1e-10);
      // Dense eigen-decomposition of the explicit operator: eigenvalues
      // -3 with multiplicity 4mn and 1 with multiplicity 12mn.
      const Mat C = c_operator_matrix(src, tgt);
      Eigen::EigenSolver<Mat> es(C);
      int neg = 0, pos = 0;
      for (int k = 0; k < C.rows(); ++k) {
        const auto ev = es.eigenvalues()[k];
        CHECK(std::abs(ev.imag()) < 1e-8);
        if (std::abs(ev.real() + 3) < 1e-8) ++neg;
        else if (std::abs(ev.real() - 1) < 1e-8) ++pos;
      }
      CHECK(neg == 4 * m * n);
      CHECK(pos == 12 * m * n);
      const auto [r3, r1] = projector_ranks(src, tgt);
      CHECK(r3 == 4 * m * n);
      CHECK(r1 == 12 * m * n);
    }
  }
}

TEST_CASE("decomposition round trip and classification") {
  Rng rng(12);
  const auto src = standard_triple(Side::Left, 2);
  const auto tgt = standard_triple(Side::Left, 1).conjugated(rng.orthogonal(4));
  const RealLinearMap A(rng.matrix(4, 8), src, tgt);
  const HomDecomposition d = decompose(A);
  CHECK((d.quaternionic_part.matrix() + d.aquaternionic_part.matrix() - A.matrix()).norm() < 1e-12);
  CHECK(is_quaternion_linear(d.quaternionic_part));
  CHECK(is_aquaternionic(d.aquaternionic_part));
  CHECK_FALSE(is_aquaternionic(A));
  // Orthogonality of the two parts in the Frobenius inner product.
  const double ip = (d.quaternionic_part.matrix().array() * d.aquaternionic_part.matrix().array()).sum();
  CHECK(std::abs(ip) < 1e-12);
  const Mat P = quaternionic_projection(A.matrix(), src, tgt);
  CHECK((quaternionic_projection(P, src, tgt) - P).norm() < 1e-12);
}

TEST_CASE("embedding of three quaternion-linear maps") {
  Rng rng(13);
  const auto L = standard_triple(Side::Left, 1);
  auto qlin = [&] {
    // x -> x q commutes with left multiplication.
    return RealLinearMap(right_mult_matrix(rng.quaternion()), L, L);
  };
  const RealLinearMap B = embed_b_plus(qlin(), qlin(), qlin());
  CHECK(is_aquaternionic(B));
  const RealLinearMap bad(left_mult_matrix(Quaternion::i()) + Mat::Identity(4, 4), L, L);
  CHECK_THROWS_AS(embed_b_plus(bad, qlin(), qlin()), Error);
}

TEST_CASE("antiholomorphic reduction") {
  const auto L = standard_triple(Side::Left, 1);
  // A = R(j): commutes with L(e_l), and C = -3, so the hypotheses fail.
  CHECK_THROWS_AS(antiholomorphic_reduction(RealLinearMap(right_mult_matrix(Quaternion::j()), L, L)),
                  Error);
  // I1 M J1 = M together with I2 M J2 = -M satisfies both hypotheses; the
  // two averaging projectors commute.
  Rng rng(14);
  const Mat M = rng.matrix(4, 4);
  const Mat Mb = 0.5 * (M - L.I2() * M * L.I2());
  const Mat A = 0.5 * (Mb + L.I1() * Mb * L.I1());
  CHECK(A.norm() > 0.1);
  CHECK(antiholomorphic_reduction(RealLinearMap(A, L, L)));
}
