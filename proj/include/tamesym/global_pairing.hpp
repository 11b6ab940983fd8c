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
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tamesym/abelian_group.hpp"
#include "tamesym/curve.hpp"
#include "tamesym/local_field.hpp"
#include "tamesym/picard.hpp"

namespace tamesym {

/// shift * (finitely many local entries); every other component is 1 (or the
/// expansion of the shift).
class Idele {
 public:
  explicit Idele(CurveModel curve) : curve_(std::move(curve)) {}
  static Idele principal(const RationalFunction& f);
  static Idele uniformizer(const CurveModel& curve, const Place& x, int precision = kDefaultPrecision);

  const CurveModel& curve() const { return curve_; }
  const std::map<Place, LocalElement>& entries() const { return entries_; }
  const std::optional<RationalFunction>& shift() const { return shift_; }
  bool is_finitely_supported() const { return !shift_ || shift_->is_constant(); }

  /// Stores the entry unless it is 1 to its precision.
  Idele& set(const Place& x, const LocalElement& e);
  Idele& set_shift(std::optional<RationalFunction> f);

  Idele operator*(const Idele& o) const;
  Idele inverse() const;
  Idele pow(std::int64_t e) const;

  LocalElement component(const Place& x, int precision = 8) const;
  /// Places where a component can fail to be a unit with residue 1.
  std::set<Place> relevant_places() const;

 private:
  CurveModel curve_;
  std::map<Place, LocalElement> entries_;
  std::optional<RationalFunction> shift_;
};

/// Residue field of a place.
Field residue_field(const CurveModel& curve, const Place& x);

struct SymbolFactor {
  Place place;
  FieldElement value;
};

FieldElement global_tame_symbol(const Idele& f, const Idele& g);
std::vector<SymbolFactor> global_tame_symbol_factors(const Idele& f, const Idele& g);

struct ReciprocityResult {
  bool holds = false;
  FieldElement value;
  std::vector<SymbolFactor> factors;
};
ReciprocityResult weil_reciprocity_check(const RationalFunction& phi, const RationalFunction& psi);

std::int64_t deg_idele(const Idele& f);
Divisor div_idele(const Idele& f);

enum class Membership { kMember, kNonMember, kIndeterminate };
std::string membership_name(Membership m);

/// f in U = (A_X^*)^{q-1}. A principal shift is certified only as an exact
/// (q-1)-th power or refuted at a place of degree <= residue_bound; otherwise
/// the answer is kIndeterminate.
Membership in_U(const Idele& f, int residue_bound = 2);

/// g with g^(q-1) = phi, if phi is a (q-1)-th power in K^*.
std::optional<RationalFunction> root_q_minus_1(const RationalFunction& phi);

/// Unit of the residue field of x whose norm is the generator of k^*.
Elem norm_generator_unit(const CurveModel& curve, const Place& x);

/// F/(K^*)^{q-1}: the constant generator c and one phi_l per generator of
/// Pic^0[q-1] with div(phi_l) = (q-1)((P_l) - (O)) and (pi_{x0}, phi_l) = 1.
struct FGroupData {
  CurveModel curve;
  std::int64_t n = 1;
  FieldElement c;
  std::vector<Point> ell;
  std::vector<std::int64_t> ell_orders;
  std::vector<RationalFunction> phi;
  std::vector<std::int64_t> relation_constants;  // o_l phi_l = k_l c
  FgAbGroup presentation;
  bool exact = false;
};

FGroupData build_f_group(const PicardData& pic, const TorsionData& tors);

/// Generators of Pic(X)/(q-1) as ideles: pi_{x0}, then pi_P / pi_O for the
/// cotorsion basis.
std::vector<Idele> pic_representatives(const PicardData& pic, const TorsionData& tors);

struct PairingMatrices {
  std::int64_t n = 1;
  IntMatrix w1, w2, w3;  // exponents of c; rows F generators, columns Pic/(q-1) generators
  std::vector<std::string> row_labels, column_labels;
  bool agree = false;
  bool well_defined = false;
  bool unimodular = false;
  std::vector<std::string> disagreements;
  CheckVerdict verdict = CheckVerdict::kVacuous;
};

PairingMatrices pairing_matrix_three_ways(const PicardData& pic, const TorsionData& tors, const FGroupData& fg,
                                          std::uint64_t seed = 0);

/// Unimodularity of a pairing between presented groups (values in Z/m on
/// the given generators), after checking it respects both relation lattices.
struct PresentedUnimodularity {
  bool well_defined = false;
  UnimodularityReport report;
  bool unimodular() const { return well_defined && report.unimodular(); }
};
PresentedUnimodularity check_unimodular_presented(const FgAbGroup& g, const FgAbGroup& h, const IntMatrix& values,
                                                  std::int64_t m);

struct TheoremReport {
  CheckVerdict verdict = CheckVerdict::kVacuous;
  int d_value = 0;
  bool condition_i = false;
  int window_places = 0;
  bool condition_ii = false;
  FrobeniusLemmaReport lemma;
  PairingMatrices matrices;
  std::int64_t f_group_order = 0;
  std::string detail;
};

TheoremReport verify_theorem_finite(const CurveModel& curve, std::uint64_t seed = 0);

/// Finitely supported element of U with entries at random places of degree
/// <= max_degree.
Idele random_u_element(const CurveModel& curve, const std::vector<Place>& places, std::mt19937_64& rng, int entries = 2);
RationalFunction random_nonzero_function(const CurveModel& curve, std::mt19937_64& rng, int max_degree = 3);

struct OrthogonalityReport {
  int samples = 0;
  int trivial = 0;
  std::vector<std::string> failures;
  CheckVerdict verdict = CheckVerdict::kVacuous;
};

OrthogonalityReport orthogonality_sampler(const CurveModel& curve, int samples, std::uint64_t seed);

struct Witness {
  int stage = 0;  // 0: no obstruction found
  std::optional<RationalFunction> psi;
  FieldElement value;
  std::string detail;
};

/// Staged search for psi in K^* with (f, psi)_X != 1.
Witness separating_witness(const Idele& f, const PicardData& pic, const TorsionData& tors, const FGroupData& fg,
                           int degree_bound = 2);

struct SelfDualityReport {
  CheckVerdict verdict = CheckVerdict::kVacuous;
  IntMatrix gram;
  bool unimodular = false;
};

SelfDualityReport self_duality_check(const CurveModel& curve, const std::vector<Place>& places);

/// Idele fixture: `shift = <function literal>` and `entry = <place> @ <local literal>` lines.
Idele parse_idele_fixture(std::string_view text, const CurveModel& curve);

}  // namespace tamesym
