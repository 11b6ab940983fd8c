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

#include "tamesym/finite_field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <regex>
#include <sstream>

#include "tamesym/mutation.hpp"
#include "tamesym/polynomial.hpp"

namespace tamesym {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kNotASubfield: return "NotASubfield";
    case ErrorCode::kNotAGenerator: return "NotAGenerator";
    case ErrorCode::kZeroInput: return "ZeroInput";
    case ErrorCode::kGeneratorNotInGroup: return "GeneratorNotInGroup";
    case ErrorCode::kInfiniteGroup: return "InfiniteGroup";
    case ErrorCode::kNotIsotropic: return "NotIsotropic";
    case ErrorCode::kNotInAPrime: return "NotInAPrime";
    case ErrorCode::kInsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::kZeroFunction: return "ZeroFunction";
    case ErrorCode::kDegreeNonzero: return "DegreeNonzero";
    case ErrorCode::kDegenerateEvaluation: return "DegenerateEvaluation";
    case ErrorCode::kResidueBoundExceeded: return "ResidueBoundExceeded";
    case ErrorCode::kWitnessSearchExhausted: return "WitnessSearchExhausted";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace detail {

inline constexpr std::uint32_t kNoLog = 0xffffffffu;

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // monic, low to high
  Elem generator = 0;
  std::vector<Elem> exp;               // size 2(q-1)
  std::vector<std::uint32_t> log;      // size q, log[0] unused
  std::vector<std::uint32_t> zech;     // zech[k] = log(1 + g^k), kNoLog when zero
  std::uint32_t minus_one_log = 0;
};

}  // namespace detail

namespace {

using detail::FieldData;
using detail::kNoLog;

// Arithmetic on coefficient vectors over F_p, used only while constructing tables.
using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint64_t v, std::uint32_t p, std::uint32_t n) {
  Digits d(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    d[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return d;
}

std::uint64_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint64_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

// a * b mod modulus, all digit vectors of length n.
Digits mulmod(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t k = 2 * n; k-- > n;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * modulus[i]) % p;
    prod[k] = 0;
  }
  Digits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

Digits powmod_digits(Digits base, std::uint64_t e, const Digits& modulus, std::uint32_t p) {
  Digits r(base.size(), 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = mulmod(r, base, modulus, p);
    base = mulmod(base, base, modulus, p);
    e >>= 1;
  }
  return r;
}

// Remainder of a by monic b over F_p (vectors low to high).
Digits poly_rem(Digits a, const Digits& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const std::uint32_t c = a.back();
    if (c != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * b[i]) % p);
    }
    a.pop_back();
  }
  return a;
}

bool has_nonzero(const Digits& a) {
  return std::any_of(a.begin(), a.end(), [](std::uint32_t c) { return c != 0; });
}

// Trial factorization: no monic divisor of degree 1..n/2.
bool is_irreducible_over_prime(const Digits& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return true;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Digits g = to_digits(v, p, static_cast<std::uint32_t>(k));
      g.push_back(1);
      if (!has_nonzero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

std::shared_ptr<const FieldData> build_field(std::uint32_t p, std::uint32_t n) {
  auto data = std::make_shared<FieldData>();
  data->p = p;
  data->n = n;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) q *= p;
  data->q = static_cast<std::uint32_t>(q);

  // Lexicographically smallest monic irreducible: scan c0 + c1 p + ... upward.
  Digits modulus;
  if (n == 1) {
    modulus = {0, 1};
  } else {
    for (std::uint64_t v = 0; v < q; ++v) {
      Digits cand = to_digits(v, p, n);
      cand.push_back(1);
      if (cand[0] == 0) continue;
      if (is_irreducible_over_prime(cand, p)) {
        modulus = std::move(cand);
        break;
      }
    }
  }
  data->modulus = modulus;
  const Digits low(modulus.begin(), modulus.end() - 1);

  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  Elem gen = 0;
  for (std::uint64_t v = 1; v < q; ++v) {
    const Digits g = to_digits(v, p, n);
    bool primitive = true;
    for (auto r : factors) {
      const Digits t = powmod_digits(g, order / r, low, p);
      Digits one(n, 0);
      one[0] = 1;
      if (t == one) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = static_cast<Elem>(v);
      break;
    }
  }
  data->generator = gen;

  data->exp.assign(2 * order, 0);
  data->log.assign(q, kNoLog);
  Digits cur(n, 0);
  cur[0] = 1;
  const Digits g = to_digits(gen, p, n);
  for (std::uint64_t k = 0; k < order; ++k) {
    const auto e = static_cast<Elem>(from_digits(cur, p));
    data->exp[k] = e;
    data->exp[k + order] = e;
    data->log[e] = static_cast<std::uint32_t>(k);
    cur = mulmod(cur, g, low, p);
  }
  data->zech.assign(order, kNoLog);
  for (std::uint64_t k = 0; k < order; ++k) {
    Digits d = to_digits(data->exp[k], p, n);
    d[0] = (d[0] + 1) % p;
    const auto s = static_cast<Elem>(from_digits(d, p));
    data->zech[k] = s == 0 ? kNoLog : data->log[s];
  }
  data->minus_one_log = p == 2 ? 0 : static_cast<std::uint32_t>(order / 2);
  return data;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Field make_field(std::uint32_t p, std::uint32_t n) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kFieldSizeCap)
      throw Error(ErrorCode::kCapExceeded,
                  std::to_string(p) + "^" + std::to_string(n) + " exceeds the field size cap 2^20");
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const detail::FieldData>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, n}];
  if (!slot) slot = build_field(p, n);
  return Field(slot);
}

std::uint32_t Field::characteristic() const { return data_->p; }
std::uint32_t Field::degree() const { return data_->n; }
std::uint32_t Field::size() const { return data_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return data_->modulus; }

std::string Field::name() const {
  if (!data_) return "F_?";
  return "F_" + std::to_string(data_->p) + (data_->n == 1 ? "" : "^" + std::to_string(data_->n));
}

Elem Field::add(Elem a, Elem b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const auto& d = *data_;
  const std::uint32_t order = d.q - 1;
  const std::uint32_t la = d.log[a];
  std::uint32_t k = d.log[b] + order - la;
  if (k >= order) k -= order;
  const std::uint32_t z = d.zech[k];
  if (z == kNoLog) return 0;
  return d.exp[la + z];
}

Elem Field::neg(Elem a) const {
  if (a == 0 || data_->p == 2) return a;
  return data_->exp[data_->log[a] + data_->minus_one_log];
}

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return data_->exp[data_->log[a] + data_->log[b]];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::kZeroInput, "inverse of zero in " + name());
  const std::uint32_t order = data_->q - 1;
  const std::uint32_t la = data_->log[a];
  return data_->exp[la == 0 ? 0 : order - la];
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw Error(ErrorCode::kZeroInput, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t order = data_->q - 1;
  std::int64_t k = (static_cast<std::int64_t>(data_->log[a]) * (e % order)) % order;
  if (k < 0) k += order;
  return data_->exp[static_cast<std::size_t>(k)];
}

Elem Field::minus_one() const { return data_->p == 2 ? 1 : data_->exp[data_->minus_one_log]; }

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t p = data_->p;
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > data_->n) throw Error(ErrorCode::kInvalidArgument, "too many coefficients for " + name());
  std::uint64_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= data_->p) throw Error(ErrorCode::kInvalidArgument, "coefficient not reduced mod p");
    v = v * data_->p + coeffs[i];
  }
  return static_cast<Elem>(v);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const { return to_digits(a, data_->p, data_->n); }

Elem Field::generator() const { return data_->generator; }

std::uint32_t Field::log(Elem a) const {
  if (a == 0) throw Error(ErrorCode::kZeroInput, "log of zero");
  return data_->log[a];
}

Elem Field::exp(std::uint64_t k) const { return data_->exp[k % (data_->q - 1)]; }

std::uint64_t Field::order(Elem a) const {
  const std::uint64_t n = data_->q - 1;
  return n / std::gcd<std::uint64_t>(n, log(a));
}

bool is_subfield(const Field& k, const Field& l) {
  return k.valid() && l.valid() && k.characteristic() == l.characteristic() && l.degree() % k.degree() == 0;
}

Embedding::Embedding(Field small, Field big, Field over)
    : small_(std::move(small)), big_(std::move(big)) {
  if (!is_subfield(small_, big_))
    throw Error(ErrorCode::kNotASubfield, small_.name() + " is not a subfield of " + big_.name());
  const std::uint32_t qs = small_.size();
  forward_.resize(qs);
  if (small_.is_prime_field() || small_ == big_) {
    for (Elem a = 0; a < qs; ++a) forward_[a] = a;
  } else {
    const auto& mod = small_.modulus();
    std::vector<Elem> mod_big(mod.begin(), mod.end());  // prime-field coefficients encode identically
    auto candidates = roots(Polynomial(big_, mod_big));
    bool constrained = over.valid() && !over.is_prime_field() && !(over == small_);
    Elem target_image = 0;
    Elem over_in_small = 0;
    if (constrained) {
      if (!is_subfield(over, small_))
        throw Error(ErrorCode::kNotASubfield, over.name() + " is not a subfield of " + small_.name());
      over_in_small = embedding(over, small_).apply(over.characteristic());  // image of X
      target_image = embedding(over, big_).apply(over.characteristic());
    }
    bool found = false;
    for (Elem r : candidates) {
      if (constrained) {
        const auto coeffs = small_.coeffs(over_in_small);
        Elem acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = big_.add(big_.mul(acc, r), coeffs[i]);
        if (acc != target_image) continue;
      }
      root_ = r;
      found = true;
      break;
    }
    if (!found) throw Error(ErrorCode::kNotASubfield, "no compatible embedding root found");
    for (Elem a = 0; a < qs; ++a) {
      const auto coeffs = small_.coeffs(a);
      Elem acc = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;) acc = big_.add(big_.mul(acc, root_), coeffs[i]);
      forward_[a] = acc;
    }
  }
  backward_.reserve(qs);
  for (Elem a = 0; a < qs; ++a) backward_.emplace_back(forward_[a], a);
  std::sort(backward_.begin(), backward_.end());
}

std::optional<Elem> Embedding::preimage(Elem b) const {
  auto it = std::lower_bound(backward_.begin(), backward_.end(), std::pair<Elem, Elem>{b, 0});
  if (it == backward_.end() || it->first != b) return std::nullopt;
  return it->second;
}

const Embedding& embedding(const Field& small, const Field& big, const Field& over) {
  struct Key {
    std::uint32_t p, ns, nb, no;
    auto operator<=>(const Key&) const = default;
  };
  static std::recursive_mutex mu;
  static std::map<Key, std::unique_ptr<Embedding>> cache;
  if (!is_subfield(small, big))
    throw Error(ErrorCode::kNotASubfield, small.name() + " is not a subfield of " + big.name());
  const std::uint32_t no = (over.valid() && !(over == small)) ? over.degree() : 1;
  const Key key{small.characteristic(), small.degree(), big.degree(), no};
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto emb = std::make_unique<Embedding>(small, big, no == 1 ? Field{} : over);
  auto& ref = *emb;
  cache.emplace(key, std::move(emb));
  return ref;
}

std::string FieldElement::literal() const {
  std::ostringstream os;
  os << field_.characteristic() << '^' << field_.degree() << ':';
  const auto c = field_.coeffs(value_);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

FieldElement parse_field_literal(std::string_view text) {
  static const std::regex re(R"(^\s*(\d+)\^(\d+):(\d+(?:,\d+)*)\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re))
    throw Error(ErrorCode::kParse, "bad field literal '" + std::string(text) + "'");
  const auto p = static_cast<std::uint32_t>(std::stoul(m[1].str()));
  const auto n = static_cast<std::uint32_t>(std::stoul(m[2].str()));
  Field f = make_field(p, n);
  std::vector<std::uint32_t> coeffs;
  std::stringstream ss(m[3].str());
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto c = std::stoul(tok);
    if (c >= p) throw Error(ErrorCode::kParse, "coefficient " + tok + " not reduced mod " + std::to_string(p));
    coeffs.push_back(static_cast<std::uint32_t>(c));
  }
  if (coeffs.size() > n) throw Error(ErrorCode::kParse, "too many coefficients in '" + std::string(text) + "'");
  return {f, f.from_coeffs(coeffs)};
}

FieldElement norm(const FieldElement& a, const Field& k) {
  const Field& l = a.field();
  if (!is_subfield(k, l)) throw Error(ErrorCode::kNotASubfield, k.name() + " is not a subfield of " + l.name());
  if (a.is_zero()) return {k, 0};
  std::int64_t exponent = (static_cast<std::int64_t>(l.size()) - 1) / (static_cast<std::int64_t>(k.size()) - 1);
  if (active_mutation() == Mutation::kNormExponent) exponent *= 2;
  const Elem v = l.pow(a.value(), exponent);
  const auto back = embedding(k, l).preimage(v);
  if (!back) throw Error(ErrorCode::kNotASubfield, "norm value not in the base field");
  return {k, *back};
}

FieldElement frobenius(const FieldElement& a, const Field& base) {
  if (!is_subfield(base, a.field()))
    throw Error(ErrorCode::kNotASubfield, base.name() + " is not a subfield of " + a.field().name());
  return a.pow(base.size());
}

std::uint64_t discrete_log(const FieldElement& a, const FieldElement& g) {
  if (!(a.field() == g.field())) throw Error(ErrorCode::kInvalidArgument, "discrete_log across fields");
  if (a.is_zero()) throw Error(ErrorCode::kZeroInput, "discrete log of zero");
  const Field& f = a.field();
  const std::uint64_t order = f.size() - 1;
  if (g.is_zero()) throw Error(ErrorCode::kNotAGenerator, "zero is not a generator");
  const std::uint64_t lg = f.log(g.value());
  if (std::gcd(lg, order) != 1) throw Error(ErrorCode::kNotAGenerator, g.literal() + " does not generate");
  // Inverse of lg mod order by extended Euclid.
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(order), newr = static_cast<std::int64_t>(lg % order);
  if (order == 1) return 0;
  while (newr != 0) {
    const std::int64_t qt = r / newr;
    t = std::exchange(newt, t - qt * newt);
    r = std::exchange(newr, r - qt * newr);
  }
  if (t < 0) t += static_cast<std::int64_t>(order);
  const unsigned __int128 prod = static_cast<unsigned __int128>(f.log(a.value())) * static_cast<std::uint64_t>(t);
  return static_cast<std::uint64_t>(prod % order);
}

}  // namespace tamesym
