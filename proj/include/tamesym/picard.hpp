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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tamesym/abelian_group.hpp"
#include "tamesym/curve.hpp"

namespace tamesym {

/// E(F_{q^m}) by enumeration, with a basis g1, g2 of orders n2 | n1.
class PointGroup {
 public:
  PointGroup(const CurveModel& curve, std::uint32_t m);

  const EllipticArithmetic& arithmetic() const { return E_; }
  const std::vector<Point>& points() const { return points_; }
  std::int64_t order() const { return static_cast<std::int64_t>(points_.size()); }
  bool contains(const Point& p) const;
  std::size_t index_of(const Point& p) const;

  const std::array<Point, 2>& basis() const { return basis_; }
  const std::array<std::int64_t, 2>& basis_orders() const { return orders_; }
  /// p = a g1 + b g2.
  std::array<std::int64_t, 2> coordinates(const Point& p) const;
  Point element(std::int64_t a, std::int64_t b) const;
  std::int64_t element_order(const Point& p) const;
  FgAbGroup group() const;
  /// Points killed by n.
  std::vector<Point> torsion(std::int64_t n) const;

 private:
  EllipticArithmetic E_;
  std::vector<Point> points_;
  std::vector<std::pair<Point, std::size_t>> sorted_;
  std::array<Point, 2> basis_{};
  std::array<std::int64_t, 2> orders_{1, 1};
  std::vector<std::array<std::int64_t, 2>> coords_;
};

/// Pic(X) = Z (degree at the base place) + Pic^0(X).
struct PicardData {
  CurveModel curve;
  std::shared_ptr<const PointGroup> points;  // null on P^1
  Place base_place;
  FgAbGroup pic0;

  /// (deg, a, b) with [D - deg(D) x0] = a g1 + b g2; just (deg) on P^1.
  IntVector class_of(const Divisor& d) const;
  bool is_trivial_class(const Divisor& d) const;
  /// Point of E(F_q) corresponding to a degree-zero divisor.
  Point point_of(const Divisor& d) const;
  /// (P) - (O).
  Divisor divisor_of_point(const Point& p) const;
};

PicardData picard_group(const CurveModel& curve);

/// Sum of the Frobenius orbit of the place's point, as a point of E(F_q).
Point trace_point(const CurveModel& curve, const Place& x);

/// f with div f = d, or none when d is not principal. Solved as a linear
/// system in a Riemann-Roch space; the witness is rechecked with divisor_of.
std::optional<RationalFunction> is_principal(const CurveModel& curve, const Divisor& d);

/// Coordinate-wise q-th power on E(F_{q^m}).
Point frobenius_pushforward(const EllipticArithmetic& E, const Point& p);

/// Weil pairing e_n(P, Q) = f_P(D_Q) / f_Q(D_P) on E(F_{q^m})[n], computed
/// with Miller loops at a random shift. Requires n | q - 1; the value lies in
/// the base field.
FieldElement weil_pairing(const EllipticArithmetic& E, const Point& p, const Point& q, std::int64_t n,
                          std::uint64_t seed = 0);
/// Same pairing from Riemann-Roch division functions on the base-changed
/// curve, evaluated directly at shifted divisors.
FieldElement weil_pairing_oracle(const EllipticArithmetic& E, const Point& p, const Point& q, std::int64_t n,
                                 std::uint64_t seed = 0);

inline constexpr int kWeilRetryCap = 32;
inline constexpr std::uint64_t kTorsionFieldCap = std::uint64_t{1} << 18;

struct TorsionData {
  std::int64_t n = 1;
  std::shared_ptr<const PointGroup> base;  // E(F_q); null on P^1
  std::vector<Point> torsion_basis;        // Pic^0[n]
  std::vector<std::int64_t> torsion_orders;
  std::vector<Point> cotorsion_basis;      // representatives of Pic^0 / n
  std::vector<std::int64_t> cotorsion_orders;
  /// Degree of F_{q^m} holding E[n] and n-division points of E(F_q); 0 when
  /// both groups above are trivial and no such field was searched for.
  std::uint32_t m = 0;
  std::shared_ptr<const PointGroup> split;
  std::map<Point, std::vector<Point>> division;  // embedded base point -> up to two division points

  Point embed(const Point& base_point) const;
  const Point& division_point(const Point& base_point, int choice = 0) const;
  std::int64_t torsion_size() const;
  std::int64_t cotorsion_size() const;
  /// a1 t1 + a2 t2 over E(F_q).
  Point torsion_element(const std::vector<std::int64_t>& coeffs) const;
  Point cotorsion_element(const std::vector<std::int64_t>& coeffs) const;
};

TorsionData torsion_and_cotorsion(const PicardData& pic, std::int64_t n, std::uint64_t field_cap = kTorsionFieldCap);

/// kappa(l, [m]) = e_n(l, Fr(m~) - m~); choice selects the division point.
FieldElement kappa(const TorsionData& t, const Point& l, const Point& m, int choice = 0, bool use_oracle = false,
                   std::uint64_t seed = 0);

enum class CheckVerdict { kPass, kFail, kVacuous, kIndeterminate };
std::string check_verdict_name(CheckVerdict v);

struct FrobeniusLemmaReport {
  CheckVerdict verdict = CheckVerdict::kVacuous;
  std::int64_t kernel_order = 0;
  std::int64_t torsion_order = 0;
  bool kernel_is_torsion = false;
  std::int64_t cokernel_order = 0;
  std::vector<std::int64_t> cokernel_invariants;
  std::int64_t cotorsion_order = 0;
  bool well_defined = false;
  bool bijective = false;
  std::string detail;
};

FrobeniusLemmaReport frobenius_lemma_check(const TorsionData& t);

/// Values kappa(t_i, c_j) on the bases as exponents of the base generator.
IntMatrix kappa_matrix(const TorsionData& t, bool use_oracle = false, std::uint64_t seed = 0);

std::string point_literal(const Point& p, const Field& f);

}  // namespace tamesym
