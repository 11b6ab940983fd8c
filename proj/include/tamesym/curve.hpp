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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tamesym/finite_field.hpp"
#include "tamesym/local_field.hpp"
#include "tamesym/polynomial.hpp"

namespace tamesym {

enum class CurveKind { kProjectiveLine, kWeierstrass };

/// P^1 or y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the base field.
class CurveModel {
 public:
  CurveModel() = default;
  static CurveModel projective_line(Field base);
  /// Coefficients in the order a1, a2, a3, a4, a6. Throws kInvalidArgument
  /// for a singular model.
  static CurveModel weierstrass(Field base, std::array<Elem, 5> a);

  CurveKind kind() const { return kind_; }
  bool is_projective_line() const { return kind_ == CurveKind::kProjectiveLine; }
  const Field& base() const { return base_; }
  std::uint32_t q() const { return base_.size(); }
  const std::array<Elem, 5>& coefficients() const { return a_; }
  Elem discriminant() const { return disc_; }

  /// F_{q^d} and the fixed embedding of the base field into it.
  Field extension(std::uint32_t d) const;
  const Embedding& embed(std::uint32_t d) const;
  /// The same equation over F_{q^m}.
  CurveModel base_change(std::uint32_t m) const;

  /// y^2 + S(x) y = R(x).
  Polynomial s_poly() const;
  Polynomial r_poly() const;

  std::string describe() const;

  friend bool operator==(const CurveModel& a, const CurveModel& b) {
    return a.kind_ == b.kind_ && a.base_ == b.base_ && a.a_ == b.a_;
  }

 private:
  CurveKind kind_ = CurveKind::kProjectiveLine;
  Field base_;
  std::array<Elem, 5> a_{};
  Elem disc_ = 0;
};

struct Point {
  bool infinity = true;
  Elem x = 0;
  Elem y = 0;

  static Point affine(Elem x, Elem y) { return Point{false, x, y}; }
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Chord-tangent arithmetic on a Weierstrass curve over an extension F_{q^m}.
class EllipticArithmetic {
 public:
  EllipticArithmetic(const CurveModel& curve, std::uint32_t m);

  const CurveModel& curve() const { return curve_; }
  const Field& field() const { return field_; }
  std::uint32_t extension_degree() const { return m_; }

  bool on_curve(const Point& p) const;
  Point neg(const Point& p) const;
  Point add(const Point& p, const Point& q) const;
  Point sub(const Point& p, const Point& q) const { return add(p, neg(q)); }
  Point mul(const Point& p, std::int64_t n) const;
  /// Coordinate-wise q^e power.
  Point frobenius(const Point& p, std::int64_t e = 1) const;
  /// y with y^2 + S(x) y = R(x).
  std::vector<Elem> lift_x(Elem x) const;
  /// All points of E(F_{q^m}), O first, then ordered by (x, y).
  std::vector<Point> points() const;
  /// Smallest d with the point defined over F_{q^d}.
  std::uint32_t field_of_definition(const Point& p) const;

  // Embedded coefficients a1..a6 as elements of F_{q^m}.
  Elem a1, a2, a3, a4, a6;

 private:
  CurveModel curve_;
  Field field_;
  std::uint32_t m_;
};

/// Closed point. P^1: monic irreducible or infinity. Weierstrass: the
/// lexicographically smallest point of a Frobenius orbit, with coordinates
/// in F_{q^degree}, or O.
struct Place {
  bool infinite = false;
  int degree = 1;
  Polynomial poly;
  Point point;

  static Place at_infinity() { return Place{true, 1, {}, {}}; }
  static Place of_polynomial(Polynomial monic_irreducible);

  std::string describe() const;
  friend bool operator==(const Place& a, const Place& b);
  friend bool operator<(const Place& a, const Place& b);
};

/// Place of the Frobenius orbit of a point over F_{q^m}.
Place place_of_point(const CurveModel& curve, const Point& p, std::uint32_t m);
/// Geometric point above the place for embedding choice j (the j-th
/// Frobenius conjugate of the canonical one), over F_{q^degree}.
Point geometric_point(const CurveModel& curve, const Place& x, int choice = 0);
/// Root of the P^1 place polynomial for embedding choice j.
Elem place_root(const CurveModel& curve, const Place& x, int choice = 0);

class Divisor {
 public:
  Divisor() = default;
  static Divisor of(const Place& x, std::int64_t n = 1);

  const std::map<Place, std::int64_t>& support() const { return terms_; }
  std::int64_t degree() const;
  std::int64_t multiplicity(const Place& x) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_effective() const;

  Divisor& add(const Place& x, std::int64_t n);
  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  Divisor operator-() const;
  friend Divisor operator*(std::int64_t k, const Divisor& d);
  friend bool operator==(const Divisor&, const Divisor&) = default;

  std::string describe() const;

 private:
  std::map<Place, std::int64_t> terms_;
};

/// (a + b y) / d with gcd(a, b, d) = 1 and d monic; b = 0 on P^1 (where the
/// coordinate is called t).
class RationalFunction {
 public:
  RationalFunction(const CurveModel& curve, Polynomial a, Polynomial b, Polynomial d);
  static RationalFunction constant(const CurveModel& curve, Elem c);
  static RationalFunction x(const CurveModel& curve);
  static RationalFunction y(const CurveModel& curve);
  static RationalFunction polynomial(const CurveModel& curve, const Polynomial& p);

  const CurveModel& curve() const { return curve_; }
  const Polynomial& a() const { return a_; }
  const Polynomial& b() const { return b_; }
  const Polynomial& d() const { return d_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_constant() const;
  /// a^2 - a b S - b^2 R: the norm of the numerator down to k(x).
  Polynomial numerator_norm() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const { return *this * o.inverse(); }
  RationalFunction inverse() const;
  RationalFunction pow(std::int64_t e) const;
  RationalFunction scaled(Elem c) const;

  friend bool operator==(const RationalFunction& f, const RationalFunction& g) {
    return f.curve_ == g.curve_ && f.a_ == g.a_ && f.b_ == g.b_ && f.d_ == g.d_;
  }

  /// `(a) + (b)*y / (d)` with polynomial literals; see parse_rational_function.
  std::string literal() const;

 private:
  void normalize();
  CurveModel curve_;
  Polynomial a_, b_, d_;
};

/// Polynomial literal over the base field: coefficient list low to high,
/// `[c0; c1; ...]` with each ci a field literal or an integer.
Polynomial parse_polynomial(std::string_view text, const Field& f);
std::string polynomial_literal(const Polynomial& p);
/// `num` or `num / den` (P^1), `a | b | d` for (a + b y)/d (Weierstrass).
RationalFunction parse_rational_function(std::string_view text, const CurveModel& curve);

/// Series of x and y in the canonical uniformizer at a finite place, over
/// F_{q^degree}; y is empty on P^1.
struct LocalCoordinates {
  Field field;
  std::vector<Elem> x, y;
};
LocalCoordinates local_coordinates(const CurveModel& curve, const Place& x, std::size_t length, int choice = 0);

LocalElement local_expansion(const RationalFunction& f, const Place& x, int precision = kDefaultPrecision,
                             int choice = 0);
std::int64_t valuation_at(const RationalFunction& f, const Place& x);
/// Value at a place where f is a unit, in F_{q^degree}.
Elem value_at(const RationalFunction& f, const Place& x, int choice = 0);

Divisor divisor_of(const RationalFunction& f);

/// Places whose x-coordinate is a root of the monic irreducible g.
std::vector<Place> places_above(const CurveModel& curve, const Polynomial& g);

std::vector<Place> places_up_to_degree(const CurveModel& curve, int max_degree);
std::vector<Place> places_of_degree(const CurveModel& curve, int degree);
/// gcd of the degrees of places with min_degree <= deg <= bound; min_degree > 1
/// is the restricted diagnostic mode.
int gcd_of_place_degrees(const CurveModel& curve, int bound, int min_degree = 1);

/// Monic polynomial over the base whose roots are the x-coordinates of the
/// place (Weierstrass) or the place polynomial (P^1); 1 at infinity.
Polynomial place_x_polynomial(const CurveModel& curve, const Place& x);

/// Curve fixture: `kind = p1|weierstrass`, `p = ..`, `n = ..`, `a1 = <lit>`...
CurveModel parse_curve_fixture(std::string_view text);
/// Place spec: polynomial literal or `inf` (P^1); `(x, y)` field literals
/// over F_{q^d} or `O` (Weierstrass).
Place parse_place(std::string_view text, const CurveModel& curve);
std::string place_literal(const Place& x, const CurveModel& curve);

}  // namespace tamesym
