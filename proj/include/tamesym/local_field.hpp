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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tamesym/finite_field.hpp"

namespace tamesym {

inline constexpr int kDefaultPrecision = 16;
inline constexpr int kMaxPrecision = 256;

/// Nonzero element t^v (c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N)) of
/// k(x)((t)) with c_0 != 0. N is the relative precision.
class LocalElement {
 public:
  LocalElement(Field residue, std::int64_t valuation, std::vector<Elem> unit);

  /// Normalizes leading zeros away; kInsufficientPrecision when every known
  /// coefficient vanishes.
  static LocalElement from_series(Field residue, std::int64_t valuation, std::vector<Elem> coeffs);
  static LocalElement uniformizer(const Field& residue, int precision = kDefaultPrecision);
  static LocalElement constant(const Field& residue, Elem c, int precision = kDefaultPrecision);

  const Field& residue_field() const { return field_; }
  std::int64_t valuation() const { return v_; }
  int precision() const { return static_cast<int>(c_.size()); }
  const std::vector<Elem>& unit_part() const { return c_; }
  Elem leading() const { return c_.front(); }

  LocalElement operator*(const LocalElement& o) const;
  LocalElement operator/(const LocalElement& o) const { return *this * o.inverse(); }
  LocalElement inverse() const;
  LocalElement pow(std::int64_t e) const;
  /// Sum with precision accounting; may raise kInsufficientPrecision.
  LocalElement operator+(const LocalElement& o) const;
  LocalElement operator-() const;
  LocalElement operator-(const LocalElement& o) const { return *this + (-o); }
  LocalElement one_minus() const;
  LocalElement truncated(int precision) const;

  /// Equality of the known coefficients up to the common precision.
  bool agrees_with(const LocalElement& o) const;

  /// `v; c0, c1, ...` with field literals.
  std::string literal() const;

 private:
  Field field_;
  std::int64_t v_;
  std::vector<Elem> c_;
};

LocalElement parse_local_element(std::string_view text, const Field& residue);

std::int64_t valuation(const LocalElement& f);

/// ((-1)^{v(f) v(g)} f^{-v(g)} g^{v(f)})(0) in the residue field.
FieldElement tame_symbol(const LocalElement& f, const LocalElement& g);

/// Nm_{k(x)/k} of the tame symbol.
FieldElement normed_symbol(const LocalElement& f, const LocalElement& g, const Field& base);

/// Membership in (K_x^*)^{q-1}: (q-1) | v(f) and Nm(c_0) = 1.
bool in_local_kernel(const LocalElement& f, const Field& base);

/// Random element: valuation uniform in [-6, 6], c_0 uniform nonzero.
LocalElement random_local_element(const Field& residue, int precision, std::mt19937_64& rng);

struct LocalKernelReport {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  int samples = 0;
  int members = 0;
  int disagreements = 0;
  bool vacuous = false;
  std::vector<std::string> examples;  // literals of disagreeing elements
};

/// Compares in_local_kernel against "Nm(f, g) = 1 for every probe g"; probes
/// are t, a generator of k(x)^*, 1 + t u for random units u and random g.
LocalKernelReport local_kernel_oracle(const Field& base, std::uint32_t d, int precision, int samples,
                                      std::uint64_t seed);

/// Runs body(precision) with precision 16, 32, ... 256 until it stops
/// raising kInsufficientPrecision.
template <typename Body>
auto with_precision_retry(Body&& body, int start = kDefaultPrecision) {
  for (int n = start;; n *= 2) {
    try {
      return body(n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientPrecision || n * 2 > kMaxPrecision) throw;
    }
  }
}

}  // namespace tamesym
