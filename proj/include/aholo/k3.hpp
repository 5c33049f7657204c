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

// Neron-Severi lattice arithmetic for K3 surfaces: intersection numbers,
// nef / big / base-point-free tests, morphism tables and stratum counts.
// All arithmetic is exact 64-bit integer.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aholo {

using Coords = std::vector<long long>;

enum class LatticePreset { Rank1, Hyperbolic, Mixed, Custom };

/// Three-valued answer for certificate-based tests.
enum class Tri { False, True, Inconclusive };

const char* to_string(Tri t);

class GramLattice {
 public:
  /// Validates a square, symmetric, even Gram matrix.
  GramLattice(std::vector<Coords> gram, LatticePreset preset, std::string name);

  /// <2k^2>.
  static GramLattice rank1(int k);
  /// [[0,1],[1,0]], generated by two elliptic classes.
  static GramLattice hyperbolic();
  /// [[2,2],[2,-2]], generated by C (C^2 = 2) and a rational curve R.
  static GramLattice mixed();
  /// Text: rank, then rank^2 whitespace-separated integers, row-major.
  static GramLattice parse(std::istream& is);
  static GramLattice from_file(const std::string& path);
  /// rank1, hyperbolic (H, hyperbolic_H), mixed (mixed_2_1_1_m2). `k` is
  /// used by rank1 only.
  static GramLattice by_name(const std::string& name, int k = 1);

  int rank() const { return static_cast<int>(gram_.size()); }
  const std::vector<Coords>& gram() const { return gram_; }
  LatticePreset preset() const { return preset_; }
  const std::string& name() const { return name_; }
  long long pairing(const Coords& a, const Coords& b) const;
  /// Preset effective cones are the nonnegative orthant (positive for rank
  /// 1); custom lattices take the nonnegative orthant as their search cone.
  bool in_cone(const Coords& d) const;

  bool operator==(const GramLattice& o) const {
    return gram_ == o.gram_ && preset_ == o.preset_;
  }

 private:
  std::vector<Coords> gram_;
  LatticePreset preset_;
  std::string name_;
};

struct DivisorClass {
  GramLattice lattice;
  Coords coords;
};

long long self_intersection(const DivisorClass& D);
/// 1 + D^2/2; requires D^2 >= -2.
long long genus(const DivisorClass& D);
bool is_primitive(const DivisorClass& D);
bool is_big(const DivisorClass& D);
/// Closed form on presets. Custom lattices: False on a (-2)-class R in the
/// cone within `bound` with D.R < 0, otherwise Inconclusive.
Tri is_nef(const DivisorClass& D, int bound = 8);

/// Nef D with D^2 > 0 fails to be base-point-free exactly when D = kE + R
/// with E^2 = 0, R^2 = -2, E.R = 1, k >= 2. Such E has D.E = 1, and then
/// k = 1 + D^2/2 and R = D - kE. Hodge index bounds |E_i| by
/// sqrt(2 / D^2 * (P^-1)_ii) with P = -G + 2 (G d)(G d)^T / D^2 positive
/// definite, so the search is exhaustive. Presets require E and R in the
/// cone; custom lattices accept any E with D.E = 1. Inconclusive when P is
/// not positive definite or the derived box exceeds `search_bound`.
/// Throws Precondition for non-nef D. D^2 = 0 returns True.
Tri base_locus_empty(const DivisorClass& D, int search_bound = 64);

/// N = 1 + D^2/2 for nef D that is base-point-free (or has D^2 = 0).
long long target_dimension(const DivisorClass& D);

struct MorphismRow {
  Coords coords;
  long long d2 = 0;
  bool primitive = true;
  Tri nef = Tri::Inconclusive;
  bool big = false;
  std::optional<Tri> bpf;       // absent unless nef
  std::optional<long long> N;   // present when a morphism is defined
  long long genus = 0;
};

struct MorphismTable {
  GramLattice lattice;
  int bound = 0;
  int n = 0;
  std::vector<MorphismRow> rows;
};

/// Primitive classes in the cone with coordinates <= bound and D^2 >= 0,
/// lexicographic order.
MorphismTable enumerate_morphisms(const GramLattice& lattice, int bound, int n = 1);

/// CSV with header coords,D2,primitive,nef,big,bpf,N,genus; coords joined
/// by ';'. Inapplicable cells are empty.
void write_table_csv(const MorphismTable& t, std::ostream& os);
std::string table_json(const MorphismTable& t);

struct StratumDescriptor {
  Coords coords;
  int k = 0;
  int n = 0;
  long long N = 0;
  long long psi_dim = 0;  // (N+1)(N-k) - 1, and 0 for k = N
  long long gr_dim = 0;   // (k+1)(n-k)
  long long total() const { return psi_dim + gr_dim; }
};

StratumDescriptor stratum_dimension(const DivisorClass& D, int k, int n);

/// True iff both classes are equal; throws InvalidArgument on a lattice
/// mismatch.
bool component_key(const DivisorClass& D, const DivisorClass& E);

}  // namespace aholo
