// Copyright 2026 The tamesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamesym/integer_matrix.hpp"

namespace tamesym {

/// Z^rank modulo the lattice spanned by the columns of `relations`.
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}
  FgAbGroup(int rank, IntMatrix relations);
  /// Z/d_1 + ... + Z/d_k; a zero entry is an infinite cyclic factor.
  static FgAbGroup from_invariants(const std::vector<Integer>& orders);

  int rank() const { return rank_; }
  const IntMatrix& relations() const { return relations_; }
  const SmithForm<Integer>& smith() const { return *smith_; }

  /// Invariant factors d_1 | d_2 | ... with the trivial factors dropped;
  /// 0 stands for Z.
  const std::vector<Integer>& invariant_factors() const { return invariants_; }
  bool is_finite() const;
  Integer order() const;
  Integer exponent() const;
  std::vector<std::int64_t> invariants64() const;

  /// Coordinates along the cyclic decomposition, reduced into [0, d_i).
  IntVector canonical(const IntVector& x) const;
  /// Generator coordinates of an element given by cyclic coordinates.
  IntVector lift(const IntVector& canonical) const;
  bool is_zero(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const { return is_zero(x - y); }
  Integer element_order(const IntVector& x) const;
  IntVector unit(int i) const;

  std::string describe() const;

 private:
  int rank_ = 0;
  IntMatrix relations_;
  std::shared_ptr<const SmithForm<Integer>> smith_;
  std::vector<Integer> invariants_;
  int offset_ = 0;  // number of leading unit factors in the Smith form
};

/// Number of elements of each order, keyed by order. Two finite abelian
/// groups are isomorphic iff their profiles agree.
using OrderProfile = std::vector<std::pair<std::int64_t, std::int64_t>>;
OrderProfile order_profile(const std::vector<std::int64_t>& invariants);

/// Subgroup of an ambient group, generated by the columns of `generators`
/// (ambient generator coordinates).
class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, IntMatrix generators);
  static Subgroup whole(const FgAbGroup& A);
  static Subgroup trivial(const FgAbGroup& A);

  const FgAbGroup& ambient() const { return ambient_; }
  const IntMatrix& generators() const { return generators_; }
  /// Basis of the preimage lattice in Z^rank (contains the relations).
  const IntMatrix& lattice() const { return *lattice_; }

  bool contains(const IntVector& x) const;
  bool contains(const Subgroup& other) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.contains(b) && b.contains(a);
  }
  Integer order() const;
  Integer index() const;
  bool is_trivial() const;
  /// A / this.
  FgAbGroup quotient() const;

 private:
  FgAbGroup ambient_;
  IntMatrix generators_;
  std::shared_ptr<const IntMatrix> lattice_;
  std::shared_ptr<const SmithForm<Integer>> lattice_smith_;
};

Subgroup sum(const Subgroup& E, const Subgroup& F);
Subgroup intersection(const Subgroup& E, const Subgroup& F);

/// top / bottom for lattices bottom ⊆ top in Z^r, with maps to and from the
/// ambient coordinates.
class Subquotient {
 public:
  Subquotient(const IntMatrix& top, const IntMatrix& bottom);
  Subquotient(const Subgroup& top, const Subgroup& bottom);

  const FgAbGroup& group() const { return group_; }
  std::vector<std::int64_t> invariants() const { return group_.invariants64(); }
  Integer order() const { return group_.order(); }
  bool contains(const IntVector& x) const;
  /// Cyclic coordinates of x ∈ top; kGeneratorNotInGroup otherwise.
  IntVector coords(const IntVector& x) const;
  /// Element of top representing the given cyclic coordinates.
  IntVector lift(const IntVector& canonical) const;
  /// Lift of the i-th cyclic generator.
  IntVector generator(int i) const;
  int num_generators() const { return static_cast<int>(group_.invariant_factors().size()); }

 private:
  IntMatrix basis_;
  std::shared_ptr<const SmithForm<Integer>> basis_smith_;
  FgAbGroup group_;
};

/// Hom(G, Z/m) = Z/gcd(d_1, m) + ... ; generator i sends the i-th cyclic
/// generator of G to m / gcd(d_i, m) and the others to 0.
struct HomGroup {
  FgAbGroup group;
  std::int64_t m = 1;
  /// Row i: values of the i-th basis homomorphism on the generators of G.
  IntMatrix values;
  /// Value of the homomorphism with cyclic coordinates h at x ∈ G.
  std::int64_t evaluate(const IntVector& h, const IntVector& x) const;
};
HomGroup hom_group(const FgAbGroup& G, std::int64_t m);

/// Result of testing a pairing-induced map G -> Hom(H, Z/m).
struct DualityMap {
  bool injective = false;
  bool surjective = false;
  Integer source_order;
  Integer kernel_order;
  Integer image_order;
  Integer target_order;
  bool iso() const { return injective && surjective; }
};

/// values(i, j) = <g_i, h_j> for cyclic generators g_i of G (orders
/// source_orders) and h_j of H (orders target_orders). The induced map is
/// g ↦ <g, ·>. Kernel and image are computed as lattices over Z/m.
DualityMap duality_map(const IntMatrix& values, const std::vector<std::int64_t>& source_orders,
                       const std::vector<std::int64_t>& target_orders, std::int64_t m);

struct UnimodularityReport {
  DualityMap left;   // G -> Hom(H, N)
  DualityMap right;  // H -> Hom(G, N)
  bool unimodular() const { return left.iso() && right.iso(); }
};
UnimodularityReport check_unimodular(const IntMatrix& values, const std::vector<std::int64_t>& g_orders,
                                     const std::vector<std::int64_t>& h_orders, std::int64_t m);

// ---------------------------------------------------------------------------
// Extensions of a finite Q = Z/n_1 + ... + Z/n_k by Z/m with trivial action.

/// Table c(x, y) at index x * |Q| + y, elements numbered in mixed radix.
using Cocycle = std::vector<std::int64_t>;

class ExtGroup {
 public:
  static constexpr std::int64_t kMaxQuotientOrder = 256;

  ExtGroup(std::vector<std::int64_t> orders, std::int64_t m);
  static ExtGroup of(const FgAbGroup& Q, std::int64_t m);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::int64_t m() const { return m_; }
  std::size_t size() const { return size_; }
  /// Ext^1(Q, Z/m) = Z/gcd(n_1, m) + ... .
  FgAbGroup group() const;

  std::size_t index(const std::vector<std::int64_t>& digits) const;
  std::vector<std::int64_t> digits(std::size_t x) const;
  std::size_t add(std::size_t x, std::size_t y) const;

  /// c(x, y) = m_i-multiples of the carry in the i-th digit of x + y.
  Cocycle carry_cocycle(int i) const;
  Cocycle from_invariants(const std::vector<std::int64_t>& invariants) const;
  Cocycle zero() const { return Cocycle(size_ * size_, 0); }

  bool is_normalized(const Cocycle& c) const;
  bool is_cocycle(const Cocycle& c) const;
  bool is_symmetric(const Cocycle& c) const;
  /// Class coordinates: sum_{k < n_i} c(g_i, k g_i) modulo gcd(n_i, m).
  std::vector<std::int64_t> invariants(const Cocycle& c) const;
  /// The representative from_invariants(invariants(c)).
  Cocycle canonical(const Cocycle& c) const;
  /// h with c(x, y) = h(x) + h(y) - h(x + y), if c is a coboundary.
  std::optional<std::vector<std::int64_t>> coboundary_solution(const Cocycle& c) const;
  bool cohomologous(const Cocycle& a, const Cocycle& b) const;
  Cocycle baer_sum(const Cocycle& a, const Cocycle& b) const;
  Cocycle negate(const Cocycle& a) const;

 private:
  std::vector<std::int64_t> orders_;
  std::int64_t m_;
  std::size_t size_;
};

struct ExtensionClass {
  std::vector<std::int64_t> quotient_orders;
  std::int64_t m = 1;
  /// Normalized cocycle reduced modulo coboundaries.
  Cocycle cocycle;
  std::vector<std::int64_t> invariants;
  bool is_trivial() const;
};

ExtGroup ext_group(const FgAbGroup& Q, std::int64_t m);
ExtensionClass make_extension_class(const ExtGroup& ext, const Cocycle& c);

// ---------------------------------------------------------------------------
// Pairings A x A -> Z/m.

enum class Symmetry { kSymmetric, kAntisymmetric };

class PairingModel {
 public:
  PairingModel(FgAbGroup A, std::int64_t m, IntMatrix gram, Symmetry symmetry);

  const FgAbGroup& group() const { return A_; }
  std::int64_t modulus() const { return m_; }
  const IntMatrix& gram() const { return gram_; }
  Symmetry symmetry() const { return symmetry_; }

  std::int64_t pair(const IntVector& x, const IntVector& y) const;
  Subgroup orthogonal(const Subgroup& E) const;
  bool is_isotropic(const Subgroup& E) const;

 private:
  FgAbGroup A_;
  std::int64_t m_;
  IntMatrix gram_;
  Symmetry symmetry_;
};

std::string symmetry_name(Symmetry s);

struct AlphaReport {
  DualityMap map;  // C -> Hom(A/C, N)
};
AlphaReport alpha_map(const PairingModel& P, const Subgroup& C);

/// β: B∩C -> Hom(A/A', N), with its cokernel as a group.
struct BetaReport {
  DualityMap map;
  std::vector<std::int64_t> cokernel_invariants;
};
BetaReport beta_map(const PairingModel& P, const Subgroup& B, const Subgroup& C);

/// Surjectivity of Hom(A/(B+C), N) -> Hom(A'/(B+C), N), computed on the
/// explicit restriction map.
struct RestrictionReport {
  bool surjective = false;
  Integer image_order;
  Integer target_order;
};
RestrictionReport restriction_map(const PairingModel& P, const Subgroup& B, const Subgroup& C);

/// Element-level model of a finite pairing, used as an independent check of
/// the lattice computations. Subgroups are membership tables.
class EnumeratedModel {
 public:
  static constexpr std::int64_t kMaxOrder = 1 << 16;

  explicit EnumeratedModel(const PairingModel& P);

  std::size_t size() const { return size_; }
  std::size_t index_of(const IntVector& ambient) const;
  IntVector element(std::size_t x) const;
  std::size_t add(std::size_t x, std::size_t y) const;
  std::size_t scale(std::size_t x, std::int64_t k) const;
  std::int64_t pair(std::size_t x, std::size_t y) const;

  struct Set {
    std::vector<char> member;
    std::vector<std::size_t> generators;
    std::size_t order = 0;
    bool contains(std::size_t x) const { return member[x] != 0; }
  };

  Set span(const std::vector<std::size_t>& gens) const;
  Set span(const Subgroup& E) const;
  Set orthogonal(const Set& E) const;
  Set intersect(const Set& a, const Set& b) const;
  Set plus(const Set& a, const Set& b) const;
  /// Profile of X / Y for Y ⊆ X.
  OrderProfile quotient_profile(const Set& X, const Set& Y) const;
  /// Profile of Hom(X / Y, Z/m), realized as (X / Y) / m (X / Y).
  OrderProfile hom_profile(const Set& X, const Set& Y) const;
  /// All homomorphisms A -> Z/m vanishing on E, as value vectors on the
  /// cyclic generators of A.
  std::vector<std::vector<std::int64_t>> homs_vanishing_on(const Set& E) const;
  std::int64_t hom_value(const std::vector<std::int64_t>& h, std::size_t x) const;
  std::vector<std::int64_t> pairing_hom(std::size_t c) const;  // a ↦ (a, c)
  std::int64_t modulus() const { return m_; }
  std::size_t cyclic_rank() const { return orders_.size(); }

 private:
  std::vector<std::int64_t> digits(std::size_t x) const;
  FgAbGroup A_;
  std::int64_t m_;
  std::vector<std::int64_t> orders_;
  std::size_t size_ = 1;
  std::vector<std::vector<std::int64_t>> gram_;  // on cyclic generators
};

struct FiltrationReport {
  bool hypothesis_i = false;
  bool hypothesis_ii = false;
  bool enumerated = false;  // brute-force comparison performed
  std::vector<std::int64_t> f0_mod_f1;
  std::vector<std::int64_t> f1_mod_f2;
  std::vector<std::int64_t> f2;
  std::vector<std::int64_t> image_zeta;         // Im(B^⊥ -> A'/(B+C))
  std::vector<std::int64_t> hom_quotient;       // Hom(A'/(B+C), N)
  std::vector<std::int64_t> coker_beta;
  bool beta_injective = false;
  bool iso_f0 = false;  // F0/F1 ≅ Im ζ (checked when both hypotheses hold)
  bool iso_f1 = false;  // F1/F2 ≅ Hom(A'/(B+C), N)
  bool iso_f2 = false;  // F2 ≅ Coker β
  bool enumeration_agrees = true;  // lattice route matches the element scan
  std::string detail;
  bool hypotheses() const { return hypothesis_i && hypothesis_ii; }
  bool conclusion() const { return iso_f0 && iso_f1 && iso_f2; }
};
FiltrationReport filtration(const PairingModel& P, const Subgroup& B, const Subgroup& C);

enum class Verdict { kPass, kFail, kHypothesisFailed };
std::string verdict_name(Verdict v);

struct CorKeyReport {
  Verdict verdict = Verdict::kHypothesisFailed;
  bool condition_i = false;
  bool condition_ii = false;
  bool b_equals_b_perp = false;
};
CorKeyReport check_cor_key(const PairingModel& P, const Subgroup& B, const Subgroup& C);

/// γ of the class of a ∈ A'. Requires |A'/(B+C)| ≤ 256 for the cocycle table.
ExtensionClass gamma_map(const PairingModel& P, const Subgroup& B, const Subgroup& C, const IntVector& a);
/// Class coordinates of γ[a] without materializing the cocycle.
std::vector<std::int64_t> gamma_invariants(const PairingModel& P, const Subgroup& B, const Subgroup& C,
                                           const IntVector& a);

struct SplitReport {
  Verdict verdict = Verdict::kHypothesisFailed;
  bool condition_i = false;
  bool condition_ii = false;        // by invariant factors
  bool complement_found = false;    // by constructing a section of A -> A/A'
  bool kernel_matches_image = false;
  std::int64_t kernel_gamma_order = 0;
  std::int64_t image_zeta_order = 0;
};
SplitReport check_cor_split(const PairingModel& P, const Subgroup& B, const Subgroup& C);

/// A' = (B ∩ C)^⊥.
Subgroup a_prime(const PairingModel& P, const Subgroup& B, const Subgroup& C);

}  // namespace tamesym
