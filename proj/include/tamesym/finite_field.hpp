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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tamesym/error.hpp"

namespace tamesym {

/// Raw field element: the coefficient vector c0 + c1 X + ... encoded as the
/// integer c0 + c1 p + c2 p^2 + ... . Prime-field elements encode as 0..p-1,
/// so 0 and 1 are the additive and multiplicative identities in every field.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kFieldSizeCap = std::uint64_t{1} << 20;

namespace detail {
struct FieldData;
}

/// Handle to an immutable finite field F_{p^n}. Copies share the same tables;
/// two handles compare equal iff they describe the same (p, n).
class Field {
 public:
  Field() = default;

  bool valid() const noexcept { return data_ != nullptr; }
  std::uint32_t characteristic() const;
  std::uint32_t degree() const;
  std::uint32_t size() const;
  /// Monic modulus over F_p, coefficients low to high (length degree()+1).
  const std::vector<std::uint32_t>& modulus() const;
  bool is_prime_field() const { return degree() == 1; }
  std::string name() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;
  Elem minus_one() const;

  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;

  /// Primitive element used for the exp/log tables (smallest encoding).
  Elem generator() const;
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t k) const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Elem a) const;

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.data_ == b.data_; }

 private:
  friend Field make_field(std::uint32_t p, std::uint32_t n);
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// F_{p^n} with the lexicographically smallest monic irreducible modulus.
/// Instances are cached, so repeated calls return the same field.
Field make_field(std::uint32_t p, std::uint32_t n);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// True when k sits inside l (same characteristic, degree divides).
bool is_subfield(const Field& k, const Field& l);

/// Fixed embedding small -> big. With `over` set, the embedding restricts to
/// the standard embeddings of `over` on both sides, so all extensions of a
/// common base field are embedded compatibly.
class Embedding {
 public:
  Embedding(Field small, Field big, Field over);

  const Field& source() const { return small_; }
  const Field& target() const { return big_; }
  Elem apply(Elem a) const { return forward_[a]; }
  std::optional<Elem> preimage(Elem b) const;
  Elem root() const { return root_; }

 private:
  Field small_;
  Field big_;
  Elem root_ = 0;
  std::vector<Elem> forward_;
  std::vector<std::pair<Elem, Elem>> backward_;  // sorted by image
};

const Embedding& embedding(const Field& small, const Field& big, const Field& over = Field{});

/// Value-semantic element for the public API.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {}
  static FieldElement from_int(const Field& f, std::int64_t v) { return {f, f.from_int(v)}; }

  const Field& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_.add(value_, o.value_)}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_.sub(value_, o.value_)}; }
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_.mul(value_, o.value_)}; }
  FieldElement operator/(const FieldElement& o) const { return {field_, field_.div(value_, o.value_)}; }
  FieldElement pow(std::int64_t e) const { return {field_, field_.pow(value_, e)}; }
  FieldElement inverse() const { return {field_, field_.inv(value_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// `p^n:c0,c1,...`
  std::string literal() const;

 private:
  Field field_;
  Elem value_ = 0;
};

FieldElement parse_field_literal(std::string_view text);

/// Nm_{l/k}(a) for a in l = F_{q^d}, k = F_q; returns an element of k.
FieldElement norm(const FieldElement& a, const Field& k);

/// a^q where q = |base|.
FieldElement frobenius(const FieldElement& a, const Field& base);

/// Exponent e in [0, |F|-2] with g^e = a.
std::uint64_t discrete_log(const FieldElement& a, const FieldElement& g);

}  // namespace tamesym
