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
#include "aholo/grid.hpp"

#include "aholo/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace aholo {

GridDomain::GridDomain(int N, double L, bool periodic) : N_(N), periodic_(periodic) {
  require(N >= 4, ErrorCode::InvalidArgument, "grid needs N >= 4 points per axis");
  require(N % 2 == 0, ErrorCode::InvalidArgument, "grid size N must be even");
  require(L > 0 && std::isfinite(L), ErrorCode::InvalidArgument, "side length must be positive");
  h_ = L / N;
  L_ = h_ * N;
}

LatticePoint GridDomain::point(std::size_t idx) const {
  LatticePoint p;
  for (int a = 3; a >= 0; --a) {
    p[a] = static_cast<int>(idx % N_);
    idx /= N_;
  }
  return p;
}

bool GridDomain::has_differential(const LatticePoint& p) const {
  if (periodic_) return true;
  for (int a = 0; a < 4; ++a)
    if (p[a] == 0 || p[a] == N_ - 1) return false;
  return true;
}

TargetSpec TargetSpec::flat(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "target dimension must be >= 1");
  return {n, standard_triple(Side::Left, n), std::nullopt};
}

TargetSpec TargetSpec::torus(int n, Mat periods) {
  require(n >= 1, ErrorCode::InvalidArgument, "target dimension must be >= 1");
  require(periods.rows() == 4 * n && periods.cols() == 4 * n, ErrorCode::DimensionMismatch,
          "period matrix must be 4n x 4n");
  require(std::abs(periods.determinant()) > 1e-12, ErrorCode::InvalidArgument,
          "period matrix must be invertible");
  return {n, standard_triple(Side::Left, n), std::move(periods)};
}

const HyperComplexTriple& torus_source_triple() {
  static const HyperComplexTriple t = standard_triple(Side::Left, 1);
  return t;
}

GridMap::GridMap(GridDomain domain, TargetSpec target, std::vector<double> values,
                 std::optional<Eigen::MatrixXi> winding)
    : domain_(std::move(domain)),
      target_(std::move(target)),
      values_(std::move(values)),
      winding_(std::move(winding)) {
  require(target_.triple.dim() == target_.n, ErrorCode::DimensionMismatch,
          "target triple dimension differs from target dimension");
  require(values_.size() == domain_.size() * components(), ErrorCode::DimensionMismatch,
          "value array must cover exactly N^4 points");
  require(winding_.has_value() == target_.is_torus(), ErrorCode::InvalidArgument,
          "winding data must be present iff the target is a torus");
  wrap_offset_.assign(4, Vec::Zero(components()));
  if (winding_) {
    require(winding_->rows() == 4 && winding_->cols() == components(),
            ErrorCode::DimensionMismatch, "winding matrix must be 4 x 4n");
    for (int a = 0; a < 4; ++a)
      wrap_offset_[a] = *target_.periods * winding_->row(a).transpose().cast<double>();
  }
}

Vec GridMap::neighbor(const LatticePoint& p, int axis, int step) const {
  const int N = domain_.N();
  LatticePoint q = p;
  q[axis] += step;
  Vec offset = Vec::Zero(components());
  if (q[axis] >= N) {
    require(domain_.periodic(), ErrorCode::Precondition, "neighbor outside box domain");
    q[axis] -= N;
    offset = wrap_offset_[axis];
  } else if (q[axis] < 0) {
    require(domain_.periodic(), ErrorCode::Precondition, "neighbor outside box domain");
    q[axis] += N;
    offset = -wrap_offset_[axis];
  }
  return value(domain_.index(q)) + offset;
}

GridMap GridMap::transformed(const Mat& M) const {
  require(M.rows() == components() && M.cols() == components(), ErrorCode::DimensionMismatch,
          "transform must be 4n x 4n");
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < domain_.size(); ++i)
    Eigen::Map<Vec>(out.data() + i * components(), components()) = M * value(i);
  return GridMap(domain_, target_, std::move(out), winding_);
}

GridMap sample(const GridDomain& domain, const TargetSpec& target, const ClosedFormMap& f) {
  const int c = 4 * target.n;
  std::vector<double> values(domain.size() * c);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const Vec v = f(domain.coords(domain.point(i)));
    require(v.size() == c, ErrorCode::DimensionMismatch, "closed-form map has wrong target size");
    std::copy(v.data(), v.data() + c, values.begin() + static_cast<std::ptrdiff_t>(i * c));
  }

  std::optional<Eigen::MatrixXi> winding;
  if (domain.periodic()) {
    const double L = domain.L();
    const Point4 probes[3] = {{0, 0, 0, 0}, {0.3 * L, 0.7 * L, 0.1 * L, 0.5 * L},
                              {0.9 * L, 0.2 * L, 0.6 * L, 0.35 * L}};
    Eigen::MatrixXi w(4, c);
    for (int a = 0; a < 4; ++a) {
      for (int k = 0; k < 3; ++k) {
        Point4 x = probes[k];
        const Vec base = f(x);
        x[a] += L;
        const Vec jump = f(x) - base;
        const double tol = 1e-9 * std::max(1.0, base.norm() + jump.norm());
        if (!target.is_torus()) {
          require(jump.norm() <= tol, ErrorCode::InvalidArgument,
                  "inconsistent periodicity: map is not periodic along axis " + std::to_string(a));
          continue;
        }
        const Vec coeff = target.periods->lu().solve(jump);
        const Eigen::VectorXi rounded = coeff.array().round().cast<int>();
        require((*target.periods * rounded.cast<double>() - jump).norm() <= tol,
                ErrorCode::InvalidArgument,
                "inconsistent periodicity: jump along axis " + std::to_string(a) +
                    " is not a lattice period");
        if (k == 0) {
          w.row(a) = rounded.transpose();
        } else {
          require(w.row(a) == rounded.transpose(), ErrorCode::InvalidArgument,
                  "inconsistent periodicity: winding differs between probe points");
        }
      }
    }
    if (target.is_torus()) winding = w;
  }
  return GridMap(domain, target, std::move(values), std::move(winding));
}

Mat differential_at(const GridMap& u, const LatticePoint& p) {
  const auto& dom = u.domain();
  require(dom.has_differential(p), ErrorCode::Precondition,
          "differential undefined on the boundary of a box domain");
  const double inv = 0.5 / dom.h();
  Mat A(u.components(), 4);
  if (dom.periodic()) {
    for (int a = 0; a < 4; ++a) A.col(a) = inv * (u.neighbor(p, a, 1) - u.neighbor(p, a, -1));
  } else {
    for (int a = 0; a < 4; ++a) {
      LatticePoint fw = p, bw = p;
      ++fw[a];
      --bw[a];
      A.col(a) = inv * (u.value(dom.index(fw)) - u.value(dom.index(bw)));
    }
  }
  return A;
}

DifferentialField differential(const GridMap& u) {
  const auto& dom = u.domain();
  const int rows = u.components();
  std::vector<double> data(dom.size() * rows * 4, 0.0);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    if (!dom.has_differential(p)) continue;
    const Mat A = differential_at(u, p);
    std::copy(A.data(), A.data() + rows * 4, data.begin() + static_cast<std::ptrdiff_t>(i * rows * 4));
  }
  return DifferentialField(dom, rows, std::move(data));
}

void Accumulator::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

double integrate(const GridDomain& domain, const std::vector<double>& f) {
  require(domain.periodic(), ErrorCode::Precondition, "integration requires a periodic domain");
  require(f.size() == domain.size(), ErrorCode::DimensionMismatch, "field size differs from grid");
  Accumulator acc;
  for (double v : f) acc.add(v);
  return domain.cell_volume() * acc.value();
}

double kaehler_density(const Mat& A, int l, const HyperComplexTriple& source,
                       const HyperComplexTriple& target) {
  require(l >= 1 && l <= 3, ErrorCode::InvalidArgument, "Kaehler form index must be 1, 2 or 3");
  return -0.5 * (A.transpose() * target[l - 1] * A * source[l - 1]).trace();
}

double kaehler_pairing(const GridMap& u, int l) {
  const auto& dom = u.domain();
  require(dom.periodic(), ErrorCode::Precondition, "Kaehler pairing requires a torus source");
  require(l >= 1 && l <= 3, ErrorCode::InvalidArgument, "Kaehler form index must be 1, 2 or 3");
  Accumulator acc;
  for (std::size_t i = 0; i < dom.size(); ++i)
    acc.add(kaehler_density(differential_at(u, dom.point(i)), l, torus_source_triple(),
                            u.target().triple));
  return dom.cell_volume() * acc.value();
}

// ---------------------------------------------------------------------------
// Binary layout (little-endian):
//   char[8]  magic "AHGRID01"
//   uint32   N, n, flags (bit0 periodic, bit1 torus target), reserved = 0
//   float64  L
//   torus only: float64 periods[4n*4n] row-major, int32 winding[4*4n] row-major
//   float64  values[N^4 * 4n], point-major, component fastest

namespace {

constexpr char kMagic[8] = {'A', 'H', 'G', 'R', 'I', 'D', '0', '1'};

template <class T>
void put_le(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  is.read(reinterpret_cast<char*>(b), sizeof(T));
  require(static_cast<bool>(is), ErrorCode::Io, "grid file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_binary(const GridMap& u, std::ostream& os) {
  const auto& dom = u.domain();
  const int c = u.components();
  os.write(kMagic, 8);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(dom.N()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.target_dim()));
  put_le<std::uint32_t>(os, (dom.periodic() ? 1u : 0u) | (u.target().is_torus() ? 2u : 0u));
  put_le<std::uint32_t>(os, 0u);
  put_le<double>(os, dom.L());
  if (u.target().is_torus()) {
    const Mat& P = *u.target().periods;
    for (int r = 0; r < c; ++r)
      for (int k = 0; k < c; ++k) put_le<double>(os, P(r, k));
    const auto& W = *u.winding();
    for (int a = 0; a < 4; ++a)
      for (int k = 0; k < c; ++k) put_le<std::int32_t>(os, W(a, k));
  }
  for (double v : u.values()) put_le<double>(os, v);
  require(static_cast<bool>(os), ErrorCode::Io, "failed writing grid data");
}

void write_binary(const GridMap& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path + " for writing");
  write_binary(u, os);
}

GridMap read_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  require(is && std::memcmp(magic, kMagic, 8) == 0, ErrorCode::Io, "not an AHGRID01 file");
  const auto N = static_cast<int>(get_le<std::uint32_t>(is));
  const auto n = static_cast<int>(get_le<std::uint32_t>(is));
  const auto flags = get_le<std::uint32_t>(is);
  (void)get_le<std::uint32_t>(is);
  const double L = get_le<double>(is);
  require(n >= 1 && n <= 64, ErrorCode::Io, "implausible target dimension in grid file");
  GridDomain dom(N, L, (flags & 1u) != 0);
  const int c = 4 * n;
  TargetSpec target = TargetSpec::flat(n);
  std::optional<Eigen::MatrixXi> winding;
  if (flags & 2u) {
    Mat P(c, c);
    for (int r = 0; r < c; ++r)
      for (int k = 0; k < c; ++k) P(r, k) = get_le<double>(is);
    Eigen::MatrixXi W(4, c);
    for (int a = 0; a < 4; ++a)
      for (int k = 0; k < c; ++k) W(a, k) = get_le<std::int32_t>(is);
    target = TargetSpec::torus(n, P);
    winding = W;
  }
  std::vector<double> values(dom.size() * c);
  for (double& v : values) v = get_le<double>(is);
  return GridMap(dom, target, std::move(values), std::move(winding));
}

GridMap read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), ErrorCode::Io, "cannot open " + path);
  return read_binary(is);
}

void write_csv(const GridMap& u, std::ostream& os) {
  const auto& dom = u.domain();
  const int c = u.components();
  os << "p0,p1,p2,p3,x0,x1,x2,x3";
  for (int k = 0; k < c; ++k) os << ",u" << k;
  os << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const LatticePoint p = dom.point(i);
    const Point4 x = dom.coords(p);
    os << p[0] << ',' << p[1] << ',' << p[2] << ',' << p[3];
    for (double xa : x) os << ',' << xa;
    const auto v = u.value(i);
    for (int k = 0; k < c; ++k) os << ',' << v[k];
    os << '\n';
  }
}

void write_csv(const GridMap& u, const std::string& path) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::Io, "cannot open " + path + " for writing");
  write_csv(u, os);
}

}  // namespace aholo
