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

#include "tamesym/polynomial.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tamesym {

Polynomial::Polynomial(Field field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::monomial(const Field& f, Elem c, int degree) {
  if (c == 0) return Polynomial(f);
  std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Polynomial(f, std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator-() const {
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.neg(c_[i]);
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = field_.add(r[i + j], field_.mul(c_[i], o.c_[j]));
  }
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::scaled(Elem c) const {
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_.mul(c_[i], c);
  return Polynomial(field_, std::move(r));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw Error(ErrorCode::kZeroInput, "polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial(field_), *this};
  std::vector<Elem> rem = c_;
  std::vector<Elem> quo(c_.size() - d.c_.size() + 1, 0);
  const Elem lead_inv = field_.inv(d.leading());
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t k = rem.size(); k-- > dd;) {
    const Elem c = field_.mul(rem[k], lead_inv);
    if (c == 0) continue;
    quo[k - dd] = c;
    for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] = field_.sub(rem[k - dd + i], field_.mul(c, d.c_[i]));
  }
  rem.resize(dd);
  return {Polynomial(field_, std::move(quo)), Polynomial(field_, std::move(rem))};
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial(field_);
  std::vector<Elem> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<std::int64_t>(i)));
  return Polynomial(field_, std::move(r));
}

Polynomial Polynomial::pow(std::uint64_t e) const {
  Polynomial result = constant(field_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Elem Polynomial::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
  return acc;
}

Elem Polynomial::eval(const Embedding& emb, Elem x) const {
  const Field& big = emb.target();
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = big.add(big.mul(acc, x), emb.apply(c_[i]));
  return acc;
}

Polynomial Polynomial::mapped(const Embedding& emb) const {
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = emb.apply(c_[i]);
  return Polynomial(emb.target(), std::move(r));
}

Polynomial Polynomial::shifted(Elem a) const {
  const Polynomial lin(field_, {a, 1});
  Polynomial acc(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + constant(field_, c_[i]);
  return acc;
}

Polynomial Polynomial::reversed() const {
  std::vector<Elem> r(c_.rbegin(), c_.rend());
  return Polynomial(field_, std::move(r));
}

bool operator<(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Elem c = coeff(i);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    const std::string cs = FieldElement(field_, c).literal();
    if (i == 0) os << '(' << cs << ')';
    else if (c == 1) os << (i == 1 ? "x" : "x^" + std::to_string(i));
    else os << '(' << cs << ")*" << (i == 1 ? "x" : "x^" + std::to_string(i));
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  const Field& f = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(f, 1), s1(f);
  Polynomial t0(f), t1 = Polynomial::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem inv = f.inv(r0.leading());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Polynomial powmod(const Polynomial& base, std::uint64_t e, const Polynomial& m) {
  Polynomial result = Polynomial::constant(base.field(), 1) % m;
  Polynomial b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return result;
}

namespace {

// Frobenius power X^{Q^k} mod m by k repeated Q-th powers.
Polynomial frobenius_power_x(const Polynomial& m, int k) {
  const std::uint64_t q = m.field().size();
  Polynomial h = Polynomial::x(m.field()) % m;
  for (int i = 0; i < k; ++i) h = powmod(h, q, m);
  return h;
}

Polynomial pth_root(const Polynomial& f) {
  const Field& F = f.field();
  const std::uint32_t p = F.characteristic();
  const std::int64_t root_exp = F.size() / p;  // c^{Q/p} is the p-th root
  std::vector<Elem> r(static_cast<std::size_t>(f.degree()) / p + 1, 0);
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r[static_cast<std::size_t>(i) / p] = F.pow(f.coeff(i), root_exp);
  return Polynomial(F, std::move(r));
}

void squarefree_parts(const Polynomial& f, int mult, std::vector<std::pair<Polynomial, int>>& out) {
  const Field& F = f.field();
  if (f.degree() <= 0) return;
  Polynomial c = gcd(f, f.derivative());
  Polynomial w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Polynomial y = gcd(w, c);
    Polynomial fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), mult * static_cast<int>(F.characteristic()), out);
}

void equal_degree_split(const Polynomial& t, int d, std::mt19937_64& rng, std::vector<Polynomial>& out) {
  if (t.degree() == d) {
    out.push_back(t);
    return;
  }
  const Field& F = t.field();
  const std::uint64_t q = F.size();
  std::uniform_int_distribution<Elem> coeff(0, F.size() - 1);
  for (;;) {
    std::vector<Elem> c(static_cast<std::size_t>(t.degree()));
    for (auto& x : c) x = coeff(rng);
    Polynomial a(F, c);
    if (a.degree() <= 0) continue;
    Polynomial b;
    if (F.characteristic() == 2) {
      // Trace to F_2: sum of a^{2^i}, i < k d, with Q = 2^k.
      const int steps = static_cast<int>(F.degree()) * d;
      Polynomial s = a % t;
      b = s;
      for (int i = 1; i < steps; ++i) {
        s = (s * s) % t;
        b += s;
      }
    } else {
      Polynomial s = a % t;
      Polynomial acc = s;
      for (int i = 1; i < d; ++i) {
        s = powmod(s, q, t);
        acc = (acc * s) % t;
      }
      b = powmod(acc, (q - 1) / 2, t) - Polynomial::constant(F, 1);
    }
    Polynomial g = gcd(t, b);
    if (g.degree() > 0 && g.degree() < t.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(t / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Polynomial m = p.monic();
  const Polynomial x = Polynomial::x(p.field());
  if (!(frobenius_power_x(m, n) == x % m)) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    const Polynomial h = frobenius_power_x(m, n / static_cast<int>(r)) - x;
    if (gcd(m, h).degree() != 0) return false;
  }
  return true;
}

Factorization factor(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroInput, "factorization of zero polynomial");
  Factorization result;
  result.unit = p.leading();
  std::vector<std::pair<Polynomial, int>> sqf;
  squarefree_parts(p.monic(), 1, sqf);
  std::mt19937_64 rng(0x7a3e5b1du);
  const std::uint64_t q = p.field().size();
  for (auto& [g0, mult] : sqf) {
    Polynomial g = g0;
    Polynomial h = Polynomial::x(g.field()) % g;
    int d = 1;
    while (g.degree() >= 2 * d) {
      h = powmod(h, q, g);
      Polynomial t = gcd(g, h - Polynomial::x(g.field()));
      if (t.degree() > 0) {
        std::vector<Polynomial> parts;
        equal_degree_split(t, d, rng, parts);
        for (auto& part : parts) result.factors.push_back({part, mult});
        g = g / t;
        h = h % g;
      }
      ++d;
    }
    if (g.degree() > 0) result.factors.push_back({g, mult});
  }
  // Merge identical factors (a factor may appear in several squarefree layers only once, but be safe).
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  std::vector<Factor> merged;
  for (auto& f : result.factors) {
    if (!merged.empty() && merged.back().poly == f.poly) merged.back().multiplicity += f.multiplicity;
    else merged.push_back(f);
  }
  result.factors = std::move(merged);
  return result;
}

std::vector<Elem> roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroInput, "roots of zero polynomial");
  std::vector<Elem> out;
  if (p.degree() <= 0) return out;
  const Field& F = p.field();
  // Restrict to the product of linear factors before splitting.
  const Polynomial m = p.monic();
  const Polynomial lin = gcd(m, powmod(Polynomial::x(F), F.size(), m) - Polynomial::x(F));
  if (lin.degree() <= 0) return out;
  std::vector<Polynomial> parts;
  std::mt19937_64 rng(0x51f00du);
  equal_degree_split(lin, 1, rng, parts);
  for (auto& part : parts) out.push_back(F.neg(part.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Polynomial> monic_irreducibles(const Field& f, int d) {
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) {
    count *= f.size();
    if (count > kFieldSizeCap)
      throw Error(ErrorCode::kCapExceeded, "enumerating degree-" + std::to_string(d) + " polynomials over " + f.name());
  }
  std::vector<Polynomial> out;
  for (std::uint64_t v = 0; v < count; ++v) {
    std::vector<Elem> c(static_cast<std::size_t>(d) + 1);
    std::uint64_t w = v;
    for (int i = 0; i < d; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<Elem>(w % f.size());
      w /= f.size();
    }
    c.back() = 1;
    Polynomial poly(f, std::move(c));
    if (d > 1 && poly.coeff(0) == 0) continue;
    if (is_irreducible(poly)) out.push_back(std::move(poly));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tamesym
