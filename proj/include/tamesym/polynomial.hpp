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
#include <string>
#include <utility>
#include <vector>

#include "tamesym/finite_field.hpp"

namespace tamesym {

class Embedding;

/// Dense univariate polynomial over a finite field, coefficients low to high,
/// never with a trailing zero coefficient. The zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Field field) : field_(std::move(field)) {}
  Polynomial(Field field, std::vector<Elem> coeffs);

  static Polynomial constant(const Field& f, Elem c) { return Polynomial(f, {c}); }
  static Polynomial x(const Field& f) { return Polynomial(f, {0, 1}); }
  static Polynomial monomial(const Field& f, Elem c, int degree);

  const Field& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Elem c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

  Polynomial monic() const;
  Polynomial derivative() const;
  Polynomial pow(std::uint64_t e) const;
  Elem eval(Elem x) const;
  /// Evaluate at a point of a larger field through `emb`.
  Elem eval(const Embedding& emb, Elem x) const;
  /// Image of this polynomial under a field embedding.
  Polynomial mapped(const Embedding& emb) const;
  /// p(x + a): Taylor shift, exact.
  Polynomial shifted(Elem a) const;
  /// x^deg * p(1/x).
  Polynomial reversed() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }
  friend bool operator<(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void trim();
  Field field_;
  std::vector<Elem> c_;
};

Polynomial gcd(Polynomial a, Polynomial b);
/// Extended gcd: returns (g, s, t) with s a + t b = g, g monic.
struct ExtendedGcd {
  Polynomial g, s, t;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// base^e mod m.
Polynomial powmod(const Polynomial& base, std::uint64_t e, const Polynomial& m);

bool is_irreducible(const Polynomial& p);

struct Factor {
  Polynomial poly;  // monic irreducible
  int multiplicity;
};

/// Complete factorization into monic irreducibles, sorted by (degree, coefficients),
/// plus the leading coefficient.
struct Factorization {
  Elem unit = 0;
  std::vector<Factor> factors;
};
Factorization factor(const Polynomial& p);

/// Distinct roots in the coefficient field, ascending by encoding.
std::vector<Elem> roots(const Polynomial& p);

/// All monic irreducible polynomials of exact degree d, in increasing order.
std::vector<Polynomial> monic_irreducibles(const Field& f, int d);

}  // namespace tamesym
