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
#include "aholo/k3.hpp"

#include "aholo/error.hpp"

#include <Eigen/Dense>
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>

namespace aholo {

namespace {

void require_same_rank(const GramLattice& L, const Coords& d) {
  require(static_cast<int>(d.size()) == L.rank(), ErrorCode::DimensionMismatch,
          "divisor has " + std::to_string(d.size()) + " coordinates, lattice rank is " +
              std::to_string(L.rank()));
}

// Calls f on every integer vector with lo <= v_i <= hi[i], lexicographic.
void for_each_box(const Coords& lo, const Coords& hi, const std::function<bool(const Coords&)>& f) {
  const std::size_t r = lo.size();
  for (std::size_t i = 0; i < r; ++i)
    if (lo[i] > hi[i]) return;
  Coords v = lo;
  while (true) {
    if (!f(v)) return;
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (v[i] < hi[i]) {
        ++v[i];
        for (std::size_t j = i + 1; j < r; ++j) v[j] = lo[j];
        break;
      }
      if (i == 0) return;
    }
    if (r == 0) return;
  }
}

std::string join_coords(const Coords& c, char sep) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(c[i]);
  }
  return s;
}

Coords scaled_sub(const Coords& a, long long k, const Coords& b) {
  Coords r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - k * b[i];
  return r;
}

}  // namespace

const char* to_string(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

GramLattice::GramLattice(std::vector<Coords> gram, LatticePreset preset, std::string name)
    : gram_(std::move(gram)), preset_(preset), name_(std::move(name)) {
  const std::size_t r = gram_.size();
  require(r >= 1, ErrorCode::InvalidArgument, "lattice rank must be >= 1");
  for (std::size_t i = 0; i < r; ++i) {
    require(gram_[i].size() == r, ErrorCode::InvalidArgument, "Gram matrix must be square");
    require(gram_[i][i] % 2 == 0, ErrorCode::InvalidArgument,
            "Gram matrix must be even (diagonal entry " + std::to_string(gram_[i][i]) + ")");
    for (std::size_t j = 0; j < i; ++j)
      require(gram_[i][j] == gram_[j][i], ErrorCode::InvalidArgument,
              "Gram matrix must be symmetric");
  }
}

GramLattice GramLattice::rank1(int k) {
  require(k >= 1, ErrorCode::InvalidArgument, "rank1 lattice needs k >= 1");
  const long long kk = k;
  return GramLattice({{2 * kk * kk}}, LatticePreset::Rank1, "rank1(k=" + std::to_string(k) + ")");
}

GramLattice GramLattice::hyperbolic() {
  return GramLattice({{0, 1}, {1, 0}}, LatticePreset::Hyperbolic, "hyperbolic_H");
}

GramLattice GramLattice::mixed() {
  return GramLattice({{2, 2}, {2, -2}}, LatticePreset::Mixed, "mixed");
}

GramLattice GramLattice::parse(std::istream& is) {
  long long r = 0;
  require(static_cast<bool>(is >> r) && r >= 1 && r <= 16, ErrorCode::InvalidArgument,
          "lattice file: expected rank between 1 and 16");
  std::vector<Coords> g(r, Coords(r));
  for (long long i = 0; i < r; ++i)
    for (long long j = 0; j < r; ++j)
      require(static_cast<bool>(is >> g[i][j]), ErrorCode::InvalidArgument,
              "lattice file: expected " + std::to_string(r * r) + " integer entries");
  std::string extra;
  require(!(is >> extra), ErrorCode::InvalidArgument, "lattice file: trailing content");
  return GramLattice(std::move(g), LatticePreset::Custom, "custom");
}

GramLattice GramLattice::from_file(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), ErrorCode::Io, "cannot open lattice file " + path);
  return parse(is);
}

GramLattice GramLattice::by_name(const std::string& name, int k) {
  if (name == "rank1") return rank1(k);
  if (name == "hyperbolic" || name == "H" || name == "hyperbolic_H") return hyperbolic();
  if (name == "mixed" || name == "mixed_2_1_1_m2") return mixed();
  fail(ErrorCode::InvalidArgument, "unknown lattice preset '" + name + "'");
}

long long GramLattice::pairing(const Coords& a, const Coords& b) const {
  require_same_rank(*this, a);
  require_same_rank(*this, b);
  long long s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) s += a[i] * gram_[i][j] * b[j];
  return s;
}

bool GramLattice::in_cone(const Coords& d) const {
  require_same_rank(*this, d);
  bool nonzero = false;
  for (long long x : d) {
    if (x < 0) return false;
    nonzero = nonzero || x != 0;
  }
  return nonzero;
}

long long self_intersection(const DivisorClass& D) {
  return D.lattice.pairing(D.coords, D.coords);
}

long long genus(const DivisorClass& D) {
  const long long d2 = self_intersection(D);
  require(d2 % 2 == 0, ErrorCode::Internal, "odd self-intersection on an even lattice");
  require(d2 >= -2, ErrorCode::Precondition, "genus needs D^2 >= -2");
  return 1 + d2 / 2;
}

bool is_primitive(const DivisorClass& D) {
  require_same_rank(D.lattice, D.coords);
  long long g = 0;
  for (long long x : D.coords) g = std::gcd(g, x);
  require(g != 0, ErrorCode::InvalidArgument, "zero divisor class");
  return g == 1;
}

bool is_big(const DivisorClass& D) { return self_intersection(D) > 0; }

Tri is_nef(const DivisorClass& D, int bound) {
  require_same_rank(D.lattice, D.coords);
  const auto& d = D.coords;
  switch (D.lattice.preset()) {
    case LatticePreset::Rank1: return d[0] >= 0 ? Tri::True : Tri::False;
    case LatticePreset::Hyperbolic: return d[0] >= 0 && d[1] >= 0 ? Tri::True : Tri::False;
    case LatticePreset::Mixed: return d[0] >= d[1] && d[1] >= 0 ? Tri::True : Tri::False;
    case LatticePreset::Custom: break;
  }
  require(bound >= 1, ErrorCode::InvalidArgument, "search bound must be >= 1");
  const int r = D.lattice.rank();
  Tri out = Tri::Inconclusive;
  for_each_box(Coords(r, 0), Coords(r, bound), [&](const Coords& R) {
    if (!D.lattice.in_cone(R) || D.lattice.pairing(R, R) != -2) return true;
    if (D.lattice.pairing(D.coords, R) < 0) {
      out = Tri::False;
      return false;
    }
    return true;
  });
  return out;
}

Tri base_locus_empty(const DivisorClass& D, int search_bound) {
  const Tri nef = is_nef(D);
  require(nef != Tri::False, ErrorCode::Precondition, "base locus test needs a nef divisor");
  const long long d2 = self_intersection(D);
  if (d2 == 0) return Tri::True;
  require(d2 > 0, ErrorCode::Precondition, "nef divisor with negative square");

  const GramLattice& L = D.lattice;
  const int r = L.rank();
  Eigen::MatrixXd G(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) G(i, j) = static_cast<double>(L.gram()[i][j]);
  Eigen::VectorXd d(r);
  for (int i = 0; i < r; ++i) d[i] = static_cast<double>(D.coords[i]);
  const Eigen::VectorXd Gd = G * d;
  const Eigen::MatrixXd P = -G + 2.0 * Gd * Gd.transpose() / static_cast<double>(d2);
  Eigen::LLT<Eigen::MatrixXd> llt(P);
  if (llt.info() != Eigen::Success) return Tri::Inconclusive;
  const Eigen::MatrixXd Pinv = llt.solve(Eigen::MatrixXd::Identity(r, r));
  if ((P * Pinv - Eigen::MatrixXd::Identity(r, r)).norm() > 1e-9) return Tri::Inconclusive;

  Coords lo(r), hi(r);
  bool capped = false;
  for (int i = 0; i < r; ++i) {
    const double b = std::sqrt(2.0 / static_cast<double>(d2) * Pinv(i, i));
    long long bi = static_cast<long long>(std::floor(b + 1e-9));
    if (bi > search_bound) {
      bi = search_bound;
      capped = true;
    }
    lo[i] = -bi;
    hi[i] = bi;
  }

  const long long k = 1 + d2 / 2;
  const bool preset = L.preset() != LatticePreset::Custom;
  bool decomposes = false;
  for_each_box(lo, hi, [&](const Coords& E) {
    if (L.pairing(E, E) != 0 || L.pairing(D.coords, E) != 1) return true;
    if (preset) {
      const Coords R = scaled_sub(D.coords, k, E);
      if (!L.in_cone(E) || !L.in_cone(R)) return true;
    }
    decomposes = true;
    return false;
  });
  if (decomposes) return Tri::False;
  return capped ? Tri::Inconclusive : Tri::True;
}

long long target_dimension(const DivisorClass& D) {
  const Tri nef = is_nef(D);
  require(nef != Tri::False, ErrorCode::Precondition, "target dimension needs a nef divisor");
  require(nef == Tri::True, ErrorCode::Inconclusive, "nefness not certified within the bound");
  const long long d2 = self_intersection(D);
  require(d2 >= 0, ErrorCode::Precondition, "target dimension needs D^2 >= 0");
  const Tri bpf = base_locus_empty(D);
  require(bpf != Tri::False, ErrorCode::Precondition, "divisor has a fixed component");
  require(bpf == Tri::True, ErrorCode::Inconclusive, "base locus not decided");
  return 1 + d2 / 2;
}

MorphismTable enumerate_morphisms(const GramLattice& lattice, int bound, int n) {
  require(bound >= 1, ErrorCode::InvalidArgument, "bound must be >= 1");
  require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
  MorphismTable t{lattice, bound, n, {}};
  const int r = lattice.rank();
  for_each_box(Coords(r, 0), Coords(r, bound), [&](const Coords& c) {
    if (!lattice.in_cone(c)) return true;
    const DivisorClass D{lattice, c};
    if (!is_primitive(D)) return true;
    MorphismRow row;
    row.coords = c;
    row.d2 = self_intersection(D);
    if (row.d2 < 0) return true;
    row.primitive = true;
    row.nef = is_nef(D, bound);
    row.big = row.d2 > 0;
    row.genus = genus(D);
    if (row.nef != Tri::False) row.bpf = base_locus_empty(D);
    if (row.nef == Tri::True && row.bpf == Tri::True) row.N = 1 + row.d2 / 2;
    t.rows.push_back(std::move(row));
    return true;
  });
  return t;
}

void write_table_csv(const MorphismTable& t, std::ostream& os) {
  os << "coords,D2,primitive,nef,big,bpf,N,genus\n";
  for (const auto& r : t.rows) {
    os << join_coords(r.coords, ';') << ',' << r.d2 << ',' << (r.primitive ? "true" : "false")
       << ',' << to_string(r.nef) << ',' << (r.big ? "true" : "false") << ','
       << (r.bpf ? to_string(*r.bpf) : "") << ',' << (r.N ? std::to_string(*r.N) : "") << ','
       << r.genus << '\n';
  }
}

std::string table_json(const MorphismTable& t) {
  using nlohmann::ordered_json;
  auto tri = [](Tri v) -> ordered_json {
    if (v == Tri::Inconclusive) return "inconclusive";
    return v == Tri::True;
  };
  ordered_json j;
  j["lattice"] = t.lattice.name();
  j["gram"] = t.lattice.gram();
  j["bound"] = t.bound;
  j["n"] = t.n;
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json row;
    row["coords"] = r.coords;
    row["D2"] = r.d2;
    row["primitive"] = r.primitive;
    row["nef"] = tri(r.nef);
    row["big"] = r.big;
    row["bpf"] = r.bpf ? tri(*r.bpf) : ordered_json(nullptr);
    row["N"] = r.N ? ordered_json(*r.N) : ordered_json(nullptr);
    row["genus"] = r.genus;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

StratumDescriptor stratum_dimension(const DivisorClass& D, int k, int n) {
  const long long N = target_dimension(D);
  require(k >= 1 && k <= n && k <= N, ErrorCode::InvalidArgument,
          "stratum needs 1 <= k <= min(n, N)");
  StratumDescriptor s;
  s.coords = D.coords;
  s.k = k;
  s.n = n;
  s.N = N;
  s.psi_dim = k == N ? 0 : (N + 1) * (N - k) - 1;
  s.gr_dim = static_cast<long long>(k + 1) * (n - k);
  return s;
}

bool component_key(const DivisorClass& D, const DivisorClass& E) {
  require(D.lattice == E.lattice, ErrorCode::InvalidArgument,
          "classes belong to different lattices");
  require_same_rank(D.lattice, D.coords);
  require_same_rank(E.lattice, E.coords);
  return D.coords == E.coords;
}

}  // namespace aholo
