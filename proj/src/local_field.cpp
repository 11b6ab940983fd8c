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

#include "tamesym/local_field.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "tamesym/mutation.hpp"

namespace tamesym {

LocalElement::LocalElement(Field residue, std::int64_t valuation, std::vector<Elem> unit)
    : field_(std::move(residue)), v_(valuation), c_(std::move(unit)) {
  if (c_.empty()) throw Error(ErrorCode::kInvalidArgument, "local element needs precision >= 1");
  if (c_.front() == 0) throw Error(ErrorCode::kZeroInput, "leading coefficient of a local element is 0");
}

LocalElement LocalElement::from_series(Field residue, std::int64_t valuation, std::vector<Elem> coeffs) {
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
  if (lead == coeffs.size()) throw Error(ErrorCode::kInsufficientPrecision, "all known coefficients cancel");
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  return LocalElement(std::move(residue), valuation + static_cast<std::int64_t>(lead), std::move(coeffs));
}

LocalElement LocalElement::uniformizer(const Field& residue, int precision) {
  std::vector<Elem> c(static_cast<std::size_t>(precision), 0);
  c[0] = 1;
  return LocalElement(residue, 1, std::move(c));
}

LocalElement LocalElement::constant(const Field& residue, Elem c0, int precision) {
  std::vector<Elem> c(static_cast<std::size_t>(precision), 0);
  c[0] = c0;
  return LocalElement(residue, 0, std::move(c));
}

LocalElement LocalElement::operator*(const LocalElement& o) const {
  if (!(field_ == o.field_)) throw Error(ErrorCode::kInvalidArgument, "local elements over different fields");
  const std::size_t n = std::min(c_.size(), o.c_.size());
  std::vector<Elem> r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (o.c_[j] != 0) r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
  }
  return LocalElement(field_, v_ + o.v_, std::move(r));
}

LocalElement LocalElement::inverse() const {
  const std::size_t n = c_.size();
  std::vector<Elem> r(n, 0);
  const Elem inv0 = field_.inv(c_[0]);
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Elem s = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (c_[j] != 0 && r[k - j] != 0) s = field_.add(s, field_.mul(c_[j], r[k - j]));
    r[k] = field_.neg(field_.mul(s, inv0));
  }
  return LocalElement(field_, -v_, std::move(r));
}

LocalElement LocalElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  LocalElement result = constant(field_, 1, precision());
  LocalElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LocalElement LocalElement::operator+(const LocalElement& o) const {
  if (!(field_ == o.field_)) throw Error(ErrorCode::kInvalidArgument, "local elements over different fields");
  const std::int64_t lo = std::min(v_, o.v_);
  const std::int64_t hi = std::min(v_ + precision(), o.v_ + o.precision());  // absolute precision
  if (hi <= lo) throw Error(ErrorCode::kInsufficientPrecision, "sum has no known coefficients");
  std::vector<Elem> r(static_cast<std::size_t>(hi - lo), 0);
  for (std::int64_t k = lo; k < hi; ++k) {
    Elem s = 0;
    if (k >= v_ && k - v_ < precision()) s = c_[static_cast<std::size_t>(k - v_)];
    if (k >= o.v_ && k - o.v_ < o.precision()) s = field_.add(s, o.c_[static_cast<std::size_t>(k - o.v_)]);
    r[static_cast<std::size_t>(k - lo)] = s;
  }
  return from_series(field_, lo, std::move(r));
}

LocalElement LocalElement::operator-() const {
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = field_.neg(c_[i]);
  return LocalElement(field_, v_, std::move(r));
}

LocalElement LocalElement::one_minus() const {
  const int n = std::max<int>(precision(), static_cast<int>(precision() + v_));
  return constant(field_, 1, std::max(n, 1)) - *this;
}

LocalElement LocalElement::truncated(int precision) const {
  std::vector<Elem> r(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(precision, static_cast<std::ptrdiff_t>(c_.size())));
  return LocalElement(field_, v_, std::move(r));
}

bool LocalElement::agrees_with(const LocalElement& o) const {
  if (!(field_ == o.field_) || v_ != o.v_) return false;
  const std::size_t n = std::min(c_.size(), o.c_.size());
  return std::equal(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n), o.c_.begin());
}

std::string LocalElement::literal() const {
  std::ostringstream os;
  os << v_ << ";";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : " ") << FieldElement(field_, c_[i]).literal();
  return os.str();
}

LocalElement parse_local_element(std::string_view text, const Field& residue) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorCode::kParse, "local element needs 'v; c0, ...'");
  std::int64_t v = 0;
  try {
    v = std::stoll(std::string(text.substr(0, semi)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad valuation in local element");
  }
  std::vector<Elem> coeffs;
  const std::string rest(text.substr(semi + 1));
  // Literals contain commas themselves; a comma starts a new literal when the
  // digits after it are followed by '^'.
  static const std::regex kLiteral(R"(\d+\^\d+:\d+(?:,\d+(?!\d*\^))*)");
  for (auto it = std::sregex_iterator(rest.begin(), rest.end(), kLiteral); it != std::sregex_iterator(); ++it) {
    const FieldElement e = parse_field_literal(it->str());
    if (!(e.field() == residue)) throw Error(ErrorCode::kParse, "coefficient lies in the wrong field: " + it->str());
    coeffs.push_back(e.value());
  }
  if (coeffs.empty()) throw Error(ErrorCode::kParse, "local element without coefficients");
  return LocalElement::from_series(residue, v, std::move(coeffs));
}

std::int64_t valuation(const LocalElement& f) { return f.valuation(); }

FieldElement tame_symbol(const LocalElement& f, const LocalElement& g) {
  if (!(f.residue_field() == g.residue_field()))
    throw Error(ErrorCode::kInvalidArgument, "tame symbol of elements over different fields");
  const Field& k = f.residue_field();
  const std::int64_t vf = f.valuation(), vg = g.valuation();
  Elem r = k.mul(k.pow(f.leading(), -vg), k.pow(g.leading(), vf));
  if (((vf & 1) && (vg & 1)) && active_mutation() != Mutation::kDropSign) r = k.mul(r, k.minus_one());
  return FieldElement(k, r);
}

FieldElement normed_symbol(const LocalElement& f, const LocalElement& g, const Field& base) {
  return norm(tame_symbol(f, g), base);
}

bool in_local_kernel(const LocalElement& f, const Field& base) {
  if (!is_subfield(base, f.residue_field()))
    throw Error(ErrorCode::kNotASubfield, base.name() + " is not a subfield of " + f.residue_field().name());
  const std::int64_t q1 = static_cast<std::int64_t>(base.size()) - 1;
  if (f.valuation() % q1 != 0) return false;
  return norm(FieldElement(f.residue_field(), f.leading()), base).is_one();
}

LocalElement random_local_element(const Field& residue, int precision, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> val(-6, 6);
  std::uniform_int_distribution<Elem> any(0, residue.size() - 1), nonzero(1, residue.size() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(precision));
  c[0] = nonzero(rng);
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = any(rng);
  return LocalElement(residue, val(rng), std::move(c));
}

LocalKernelReport local_kernel_oracle(const Field& base, std::uint32_t d, int precision, int samples,
                                      std::uint64_t seed) {
  LocalKernelReport rep;
  rep.q = base.size();
  rep.d = d;
  rep.samples = samples;
  const Field l = make_field(base.characteristic(), base.degree() * d);
  if (base.size() == 2) {
    rep.vacuous = true;
    rep.members = samples;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elem> nonzero(1, l.size() - 1);
  std::vector<LocalElement> probes{LocalElement::uniformizer(l, precision),
                                   LocalElement::constant(l, l.generator(), precision)};
  for (int i = 0; i < 4; ++i) {
    std::vector<Elem> c(static_cast<std::size_t>(precision), 0);
    c[0] = 1;
    if (precision > 1) c[1] = nonzero(rng);
    probes.emplace_back(l, 0, c);
  }
  for (int s = 0; s < samples; ++s) {
    const LocalElement f = random_local_element(l, precision, rng);
    bool orthogonal = true;
    for (const auto& g : probes) orthogonal = orthogonal && normed_symbol(f, g, base).is_one();
    for (int j = 0; j < 4 && orthogonal; ++j)
      orthogonal = normed_symbol(f, random_local_element(l, precision, rng), base).is_one();
    const bool member = in_local_kernel(f, base);
    rep.members += member;
    if (member != orthogonal) {
      ++rep.disagreements;
      if (rep.examples.size() < 10) rep.examples.push_back(f.literal());
    }
  }
  return rep;
}

}  // namespace tamesym
