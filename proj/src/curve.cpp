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

#include "tamesym/curve.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace tamesym {

namespace {

// Truncated power series over a field, fixed length.
using Series = std::vector<Elem>;

Series series_mul(const Field& K, const Series& a, const Series& b) {
  const std::size_t n = a.size();
  Series c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (b[j] != 0) c[i + j] = K.add(c[i + j], K.mul(a[i], b[j]));
  }
  return c;
}

Series series_add(const Field& K, Series a, const Series& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = K.add(a[i], b[i]);
  return a;
}

Series series_sub(const Field& K, Series a, const Series& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = K.sub(a[i], b[i]);
  return a;
}

Series series_scale(const Field& K, Series a, Elem c) {
  for (auto& v : a) v = K.mul(v, c);
  return a;
}

Series series_inv(const Field& K, const Series& a) {
  const std::size_t n = a.size();
  Series b(n, 0);
  const Elem a0inv = K.inv(a[0]);
  b[0] = a0inv;
  for (std::size_t k = 1; k < n; ++k) {
    Elem acc = 0;
    for (std::size_t i = 1; i <= k; ++i)
      if (a[i] != 0 && b[k - i] != 0) acc = K.add(acc, K.mul(a[i], b[k - i]));
    b[k] = K.neg(K.mul(acc, a0inv));
  }
  return b;
}

// Multiply by t^s (s >= 0) keeping the length.
Series series_shift(const Series& a, std::size_t s) {
  Series c(a.size(), 0);
  for (std::size_t i = 0; i + s < a.size(); ++i) c[i + s] = a[i];
  return c;
}

Series series_drop(const Series& a, std::size_t s) {
  Series c(a.size() > s ? a.size() - s : 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i + s];
  return c;
}

Series series_const(std::size_t n, Elem c) {
  Series s(n, 0);
  if (n) s[0] = c;
  return s;
}

Series series_linear(std::size_t n, Elem c0) {
  Series s(n, 0);
  if (n) s[0] = c0;
  if (n > 1) s[1] = 1;
  return s;
}

// Horner evaluation of a base-field polynomial at a series.
Series series_eval(const Field& K, const Embedding& emb, const Polynomial& p, const Series& x) {
  Series acc(x.size(), 0);
  for (int i = p.degree(); i >= 0; --i) {
    acc = series_mul(K, acc, x);
    if (!acc.empty()) acc[0] = K.add(acc[0], emb.apply(p.coeff(i)));
  }
  return acc;
}

std::size_t series_valuation(const Series& s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == 0) ++i;
  return i;
}

// x = t^ex X(t), y = t^ey Y(t) around a geometric point over K.
struct Chart {
  Field K;
  const Embedding* emb = nullptr;
  int ex = 0;
  int ey = 0;
  Series X, Y;
};

Elem elem_pow_q(const Field& K, Elem a, std::uint64_t q, std::int64_t e) {
  // a^(q^e) with e reduced modulo the degree of K over F_q.
  for (std::int64_t i = 0; i < e; ++i) a = K.pow(a, static_cast<std::int64_t>(q));
  return a;
}

struct QuadraticTables {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Elem>> artin_schreier;
};

const std::vector<Elem>& artin_schreier_table(const Field& K) {
  static QuadraticTables tables;
  std::lock_guard lock(tables.mu);
  auto key = std::make_pair(K.characteristic(), K.degree());
  auto it = tables.artin_schreier.find(key);
  if (it != tables.artin_schreier.end()) return it->second;
  std::vector<Elem> t(K.size(), K.size());
  for (Elem z = 0; z < K.size(); ++z) {
    const Elem v = K.add(K.mul(z, z), z);
    if (t[v] == K.size()) t[v] = z;
  }
  return tables.artin_schreier.emplace(key, std::move(t)).first->second;
}

// Roots of y^2 + s y - r over K, sorted and distinct.
std::vector<Elem> quadratic_roots(const Field& K, Elem s, Elem r) {
  std::vector<Elem> out;
  if (K.characteristic() == 2) {
    if (s == 0) {
      out.push_back(K.pow(r, K.size() / 2));
      return out;
    }
    const Elem c = K.div(r, K.mul(s, s));
    const auto& t = artin_schreier_table(K);
    if (t[c] == K.size()) return out;
    out.push_back(K.mul(s, t[c]));
    out.push_back(K.mul(s, K.add(t[c], 1)));
  } else {
    const Elem two_inv = K.inv(K.from_int(2));
    const Elem disc = K.add(K.mul(s, s), K.mul(K.from_int(4), r));
    const Elem ms = K.neg(s);
    if (disc == 0) {
      out.push_back(K.mul(ms, two_inv));
      return out;
    }
    const std::uint32_t l = K.log(disc);
    if (l % 2 != 0) return out;
    const Elem sq = K.exp(l / 2);
    out.push_back(K.mul(K.add(ms, sq), two_inv));
    out.push_back(K.mul(K.sub(ms, sq), two_inv));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t checked_extension(const CurveModel& c, std::uint32_t d) {
  return c.base().degree() * d;
}

}  // namespace

// ---------------------------------------------------------------------------
// CurveModel

CurveModel CurveModel::projective_line(Field base) {
  CurveModel c;
  c.kind_ = CurveKind::kProjectiveLine;
  c.base_ = std::move(base);
  return c;
}

CurveModel CurveModel::weierstrass(Field base, std::array<Elem, 5> a) {
  CurveModel c;
  c.kind_ = CurveKind::kWeierstrass;
  c.base_ = std::move(base);
  c.a_ = a;
  const Field& F = c.base_;
  for (Elem v : a)
    if (v >= F.size()) throw Error(ErrorCode::kInvalidArgument, "coefficient outside " + F.name());
  const Elem a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  auto k = [&](std::int64_t v) { return F.from_int(v); };
  const Elem b2 = F.add(F.mul(a1, a1), F.mul(k(4), a2));
  const Elem b4 = F.add(F.mul(k(2), a4), F.mul(a1, a3));
  const Elem b6 = F.add(F.mul(a3, a3), F.mul(k(4), a6));
  Elem b8 = F.mul(F.mul(a1, a1), a6);
  b8 = F.add(b8, F.mul(k(4), F.mul(a2, a6)));
  b8 = F.sub(b8, F.mul(a1, F.mul(a3, a4)));
  b8 = F.add(b8, F.mul(a2, F.mul(a3, a3)));
  b8 = F.sub(b8, F.mul(a4, a4));
  Elem disc = F.neg(F.mul(F.mul(b2, b2), b8));
  disc = F.sub(disc, F.mul(k(8), F.pow(b4, 3)));
  disc = F.sub(disc, F.mul(k(27), F.mul(b6, b6)));
  disc = F.add(disc, F.mul(k(9), F.mul(b2, F.mul(b4, b6))));
  if (disc == 0) throw Error(ErrorCode::kInvalidArgument, "singular Weierstrass model (discriminant 0)");
  c.disc_ = disc;
  return c;
}

Field CurveModel::extension(std::uint32_t d) const {
  return make_field(base_.characteristic(), checked_extension(*this, d));
}

const Embedding& CurveModel::embed(std::uint32_t d) const { return embedding(base_, extension(d)); }

CurveModel CurveModel::base_change(std::uint32_t m) const {
  const Embedding& e = embed(m);
  if (is_projective_line()) return projective_line(e.target());
  std::array<Elem, 5> b{};
  for (int i = 0; i < 5; ++i) b[static_cast<std::size_t>(i)] = e.apply(a_[static_cast<std::size_t>(i)]);
  return weierstrass(e.target(), b);
}

Polynomial CurveModel::s_poly() const {
  if (is_projective_line()) return Polynomial(base_);
  return Polynomial(base_, {a_[2], a_[0]});
}

Polynomial CurveModel::r_poly() const {
  if (is_projective_line()) return Polynomial(base_);
  return Polynomial(base_, {a_[4], a_[3], a_[1], 1});
}

std::string CurveModel::describe() const {
  if (is_projective_line()) return "P1/" + base_.name();
  std::ostringstream os;
  os << "y^2";
  const auto lit = [&](Elem v) { return FieldElement(base_, v).literal(); };
  if (a_[0]) os << " + (" << lit(a_[0]) << ")xy";
  if (a_[2]) os << " + (" << lit(a_[2]) << ")y";
  os << " = x^3";
  if (a_[1]) os << " + (" << lit(a_[1]) << ")x^2";
  if (a_[3]) os << " + (" << lit(a_[3]) << ")x";
  if (a_[4]) os << " + (" << lit(a_[4]) << ")";
  os << " over " << base_.name();
  return os.str();
}

// ---------------------------------------------------------------------------
// EllipticArithmetic

EllipticArithmetic::EllipticArithmetic(const CurveModel& curve, std::uint32_t m)
    : curve_(curve), m_(m) {
  if (curve.is_projective_line())
    throw Error(ErrorCode::kInvalidArgument, "point arithmetic needs a Weierstrass model");
  const Embedding& e = curve.embed(m);
  field_ = e.target();
  const auto& a = curve.coefficients();
  a1 = e.apply(a[0]);
  a2 = e.apply(a[1]);
  a3 = e.apply(a[2]);
  a4 = e.apply(a[3]);
  a6 = e.apply(a[4]);
}

bool EllipticArithmetic::on_curve(const Point& p) const {
  if (p.infinity) return true;
  const Field& K = field_;
  const Elem lhs = K.add(K.mul(p.y, p.y), K.mul(p.y, K.add(K.mul(a1, p.x), a3)));
  Elem rhs = K.add(K.mul(K.mul(p.x, p.x), K.add(p.x, a2)), K.add(K.mul(a4, p.x), a6));
  return lhs == rhs;
}

Point EllipticArithmetic::neg(const Point& p) const {
  if (p.infinity) return p;
  const Field& K = field_;
  return Point::affine(p.x, K.sub(K.neg(p.y), K.add(K.mul(a1, p.x), a3)));
}

Point EllipticArithmetic::add(const Point& p, const Point& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const Field& K = field_;
  Elem lambda;
  if (p.x == q.x) {
    if (neg(p) == q) return Point{};
    // Tangent.
    const Elem num = K.sub(K.add(K.add(K.mul(K.from_int(3), K.mul(p.x, p.x)), K.mul(K.from_int(2), K.mul(a2, p.x))), a4),
                           K.mul(a1, p.y));
    const Elem den = K.add(K.add(K.mul(K.from_int(2), p.y), K.mul(a1, p.x)), a3);
    lambda = K.div(num, den);
  } else {
    lambda = K.div(K.sub(q.y, p.y), K.sub(q.x, p.x));
  }
  const Elem nu = K.sub(p.y, K.mul(lambda, p.x));
  const Elem x3 = K.sub(K.sub(K.sub(K.add(K.mul(lambda, lambda), K.mul(a1, lambda)), a2), p.x), q.x);
  const Elem y3 = K.sub(K.sub(K.neg(K.mul(K.add(lambda, a1), x3)), nu), a3);
  return Point::affine(x3, y3);
}

Point EllipticArithmetic::mul(const Point& p, std::int64_t n) const {
  Point base = n < 0 ? neg(p) : p;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  Point acc;
  while (k) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

Point EllipticArithmetic::frobenius(const Point& p, std::int64_t e) const {
  if (p.infinity) return p;
  const std::int64_t m = static_cast<std::int64_t>(m_);
  e = ((e % m) + m) % m;
  const std::uint64_t q = curve_.q();
  return Point::affine(elem_pow_q(field_, p.x, q, e), elem_pow_q(field_, p.y, q, e));
}

std::vector<Elem> EllipticArithmetic::lift_x(Elem x) const {
  const Field& K = field_;
  const Elem s = K.add(K.mul(a1, x), a3);
  const Elem r = K.add(K.mul(K.mul(x, x), K.add(x, a2)), K.add(K.mul(a4, x), a6));
  return quadratic_roots(K, s, r);
}

std::vector<Point> EllipticArithmetic::points() const {
  std::vector<Point> out{Point{}};
  for (Elem x = 0; x < field_.size(); ++x)
    for (Elem y : lift_x(x)) out.push_back(Point::affine(x, y));
  return out;
}

std::uint32_t EllipticArithmetic::field_of_definition(const Point& p) const {
  if (p.infinity) return 1;
  for (std::uint32_t d = 1; d < m_; ++d)
    if (m_ % d == 0 && frobenius(p, d) == p) return d;
  return m_;
}

// ---------------------------------------------------------------------------
// Places

Place Place::of_polynomial(Polynomial monic_irreducible) {
  Place x;
  x.degree = monic_irreducible.degree();
  x.poly = std::move(monic_irreducible);
  return x;
}

bool operator==(const Place& a, const Place& b) {
  if (a.infinite != b.infinite) return false;
  if (a.infinite) return true;
  return a.degree == b.degree && a.poly.coeffs() == b.poly.coeffs() && a.point == b.point;
}

bool operator<(const Place& a, const Place& b) {
  if (a.infinite != b.infinite) return !a.infinite;
  if (a.infinite) return false;
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.poly.coeffs() != b.poly.coeffs()) return a.poly.coeffs() < b.poly.coeffs();
  return a.point < b.point;
}

std::string Place::describe() const {
  if (infinite) return "inf";
  if (poly.field().valid()) return "(" + poly.to_string() + ")";
  std::ostringstream os;
  os << "(" << point.x << ", " << point.y << ")@deg" << degree;
  return os.str();
}

namespace {

// Place of an element alpha of F_{q^m} on P^1: its minimal polynomial.
Place p1_place_of(const CurveModel& curve, Elem alpha, std::uint32_t m) {
  const Field K = curve.extension(m);
  const std::uint64_t q = curve.q();
  std::vector<Elem> orbit{alpha};
  for (Elem b = elem_pow_q(K, alpha, q, 1); b != alpha; b = elem_pow_q(K, b, q, 1)) orbit.push_back(b);
  Polynomial mp = Polynomial::constant(K, 1);
  for (Elem r : orbit) mp *= Polynomial(K, {K.neg(r), 1});
  const Embedding& e = curve.embed(m);
  std::vector<Elem> c;
  for (Elem v : mp.coeffs()) {
    auto back = e.preimage(v);
    if (!back) throw Error(ErrorCode::kInvalidArgument, "minimal polynomial not over the base");
    c.push_back(*back);
  }
  return Place::of_polynomial(Polynomial(curve.base(), c));
}

}  // namespace

Place place_of_point(const CurveModel& curve, const Point& p, std::uint32_t m) {
  if (p.infinity) return Place::at_infinity();
  if (curve.is_projective_line()) return p1_place_of(curve, p.x, m);
  EllipticArithmetic E(curve, m);
  const std::uint32_t d = E.field_of_definition(p);
  const Embedding& down = embedding(curve.extension(d), curve.extension(m), curve.base());
  auto x = down.preimage(p.x), y = down.preimage(p.y);
  if (!x || !y) throw Error(ErrorCode::kInvalidArgument, "point not defined over its orbit field");
  EllipticArithmetic Ed(curve, d);
  Point best = Point::affine(*x, *y);
  Point cur = best;
  for (std::uint32_t j = 1; j < d; ++j) {
    cur = Ed.frobenius(cur, 1);
    best = std::min(best, cur);
  }
  Place out;
  out.degree = static_cast<int>(d);
  out.point = best;
  return out;
}

Point geometric_point(const CurveModel& curve, const Place& x, int choice) {
  if (x.infinite) return Point{};
  if (curve.is_projective_line()) return Point::affine(place_root(curve, x, choice), 0);
  EllipticArithmetic E(curve, static_cast<std::uint32_t>(x.degree));
  return E.frobenius(x.point, choice);
}

Elem place_root(const CurveModel& curve, const Place& x, int choice) {
  if (x.infinite || !curve.is_projective_line())
    throw Error(ErrorCode::kInvalidArgument, "place_root needs a finite place of P1");
  const std::uint32_t d = static_cast<std::uint32_t>(x.degree);
  const Field K = curve.extension(d);
  const auto rs = roots(x.poly.mapped(curve.embed(d)));
  if (rs.empty()) throw Error(ErrorCode::kInvalidArgument, "place polynomial has no root in its residue field");
  const std::int64_t j = ((choice % x.degree) + x.degree) % x.degree;
  return elem_pow_q(K, rs.front(), curve.q(), j);
}

Polynomial place_x_polynomial(const CurveModel& curve, const Place& x) {
  if (x.infinite) return Polynomial::constant(curve.base(), 1);
  if (curve.is_projective_line()) return x.poly;
  return p1_place_of(CurveModel::projective_line(curve.base()), x.point.x, static_cast<std::uint32_t>(x.degree)).poly;
}

// ---------------------------------------------------------------------------
// Divisor

Divisor Divisor::of(const Place& x, std::int64_t n) {
  Divisor d;
  d.add(x, n);
  return d;
}

std::int64_t Divisor::degree() const {
  std::int64_t s = 0;
  for (const auto& [x, n] : terms_) s += x.degree * n;
  return s;
}

std::int64_t Divisor::multiplicity(const Place& x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? 0 : it->second;
}

bool Divisor::is_effective() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

Divisor& Divisor::add(const Place& x, std::int64_t n) {
  if (n == 0) return *this;
  auto [it, inserted] = terms_.emplace(x, n);
  if (!inserted) {
    it->second += n;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [x, n] : o.terms_) r.add(x, n);
  return r;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + (-o); }

Divisor Divisor::operator-() const {
  Divisor r;
  for (const auto& [x, n] : terms_) r.terms_.emplace(x, -n);
  return r;
}

Divisor operator*(std::int64_t k, const Divisor& d) {
  Divisor r;
  if (k == 0) return r;
  for (const auto& [x, n] : d.terms_) r.terms_.emplace(x, k * n);
  return r;
}

std::string Divisor::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, n] : terms_) {
    if (!first) os << (n < 0 ? " - " : " + ");
    else if (n < 0) os << "-";
    first = false;
    const std::int64_t a = n < 0 ? -n : n;
    if (a != 1) os << a << "*";
    os << x.describe();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(const CurveModel& curve, Polynomial a, Polynomial b, Polynomial d)
    : curve_(curve), a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  const Field& F = curve_.base();
  if (!a_.field().valid()) a_ = Polynomial(F);
  if (!b_.field().valid()) b_ = Polynomial(F);
  if (!d_.field().valid()) d_ = Polynomial::constant(F, 1);
  if (!(a_.field() == F) || !(b_.field() == F) || !(d_.field() == F))
    throw Error(ErrorCode::kInvalidArgument, "function coefficients outside the base field");
  if (d_.is_zero()) throw Error(ErrorCode::kZeroFunction, "zero denominator");
  if (curve_.is_projective_line() && !b_.is_zero())
    throw Error(ErrorCode::kInvalidArgument, "P1 functions have no y-part");
  normalize();
}

void RationalFunction::normalize() {
  const Field& F = curve_.base();
  if (a_.is_zero() && b_.is_zero()) {
    d_ = Polynomial::constant(F, 1);
    return;
  }
  Polynomial g = gcd(gcd(a_, b_), d_);
  if (g.degree() > 0) {
    a_ = a_ / g;
    b_ = b_ / g;
    d_ = d_ / g;
  }
  const Elem lc = d_.leading();
  if (lc != 1) {
    const Elem inv = F.inv(lc);
    a_ = a_.scaled(inv);
    b_ = b_.scaled(inv);
    d_ = d_.scaled(inv);
  }
}

RationalFunction RationalFunction::constant(const CurveModel& curve, Elem c) {
  return RationalFunction(curve, Polynomial::constant(curve.base(), c), {}, {});
}

RationalFunction RationalFunction::x(const CurveModel& curve) {
  return RationalFunction(curve, Polynomial::x(curve.base()), {}, {});
}

RationalFunction RationalFunction::y(const CurveModel& curve) {
  if (curve.is_projective_line()) throw Error(ErrorCode::kInvalidArgument, "P1 has no y coordinate");
  return RationalFunction(curve, {}, Polynomial::constant(curve.base(), 1), {});
}

RationalFunction RationalFunction::polynomial(const CurveModel& curve, const Polynomial& p) {
  return RationalFunction(curve, p, {}, {});
}

bool RationalFunction::is_constant() const { return b_.is_zero() && a_.degree() <= 0 && d_.degree() == 0; }

Polynomial RationalFunction::numerator_norm() const {
  if (curve_.is_projective_line()) return a_;
  return a_ * a_ - a_ * b_ * curve_.s_poly() - b_ * b_ * curve_.r_poly();
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(curve_, a_ * o.d_ + o.a_ * d_, b_ * o.d_ + o.b_ * d_, d_ * o.d_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(curve_, a_ * o.d_ - o.a_ * d_, b_ * o.d_ - o.b_ * d_, d_ * o.d_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (curve_.is_projective_line()) return RationalFunction(curve_, a_ * o.a_, {}, d_ * o.d_);
  const Polynomial bb = b_ * o.b_;
  return RationalFunction(curve_, a_ * o.a_ + bb * curve_.r_poly(), a_ * o.b_ + o.a_ * b_ - bb * curve_.s_poly(),
                          d_ * o.d_);
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kZeroFunction, "inverse of the zero function");
  if (curve_.is_projective_line()) return RationalFunction(curve_, d_, {}, a_);
  return RationalFunction(curve_, d_ * (a_ - b_ * curve_.s_poly()), -(d_ * b_), numerator_norm());
}

RationalFunction RationalFunction::pow(std::int64_t e) const {
  RationalFunction base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  RationalFunction acc = constant(curve_, 1);
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

RationalFunction RationalFunction::scaled(Elem c) const {
  return RationalFunction(curve_, a_.scaled(c), b_.scaled(c), d_);
}

std::string RationalFunction::literal() const {
  std::string s = polynomial_literal(a_);
  if (!curve_.is_projective_line()) s += " + " + polynomial_literal(b_) + " y";
  if (!d_.is_one()) s += " / " + polynomial_literal(d_);
  return s;
}

std::string polynomial_literal(const Polynomial& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) s += (i ? ", " : "") + std::to_string(p.coeffs()[i]);
  return s + "]";
}

Polynomial parse_polynomial(std::string_view text, const Field& f) {
  static const std::regex re(R"(^\s*\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re))
    throw Error(ErrorCode::kParse, "bad polynomial literal '" + std::string(text) + "'");
  std::vector<Elem> c;
  std::string body = m[1].str();
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream is(body);
  std::uint64_t v;
  while (is >> v) {
    if (v >= f.size()) throw Error(ErrorCode::kParse, "coefficient " + std::to_string(v) + " outside " + f.name());
    c.push_back(static_cast<Elem>(v));
  }
  return Polynomial(f, c);
}

RationalFunction parse_rational_function(std::string_view text, const CurveModel& curve) {
  static const std::regex re(
      R"(^\s*(\[[^\]]*\])\s*(?:\+\s*(\[[^\]]*\])\s*y)?\s*(?:/\s*(\[[^\]]*\]))?\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, re))
    throw Error(ErrorCode::kParse, "bad function literal '" + std::string(text) + "'");
  const Field& F = curve.base();
  Polynomial a = parse_polynomial(m[1].str(), F);
  Polynomial b = m[2].matched ? parse_polynomial(m[2].str(), F) : Polynomial(F);
  Polynomial d = m[3].matched ? parse_polynomial(m[3].str(), F) : Polynomial::constant(F, 1);
  if (curve.is_projective_line() && !b.is_zero()) throw Error(ErrorCode::kParse, "y-part on P1");
  if (d.is_zero()) throw Error(ErrorCode::kParse, "zero denominator");
  RationalFunction f(curve, a, b, d);
  if (f.is_zero()) throw Error(ErrorCode::kParse, "zero function");
  return f;
}

// ---------------------------------------------------------------------------
// Local expansions

namespace {

Chart make_chart(const CurveModel& curve, const Place& x, int choice, std::size_t M) {
  Chart c;
  const std::uint32_t d = x.infinite ? 1 : static_cast<std::uint32_t>(x.degree);
  c.emb = &curve.embed(d);
  c.K = c.emb->target();
  const Field& K = c.K;
  if (curve.is_projective_line()) {
    if (x.infinite) {
      c.ex = -1;
      c.X = series_const(M, 1);
    } else {
      c.X = series_linear(M, place_root(curve, x, choice));
    }
    return c;
  }
  const Polynomial S = curve.s_poly(), R = curve.r_poly();
  const auto& a = curve.coefficients();
  if (x.infinite) {
    // t = x/y, w = 1/y: w = t^3 u with u a unit.
    const std::size_t L = M + 3;
    const Series z = series_linear(L, 0);
    Series w(L, 0);
    auto cst = [&](Elem v) { return series_const(L, c.emb->apply(v)); };
    const Series A1 = cst(a[0]), A2 = cst(a[1]), A3 = cst(a[2]), A4 = cst(a[3]), A6 = cst(a[4]);
    const Series z2 = series_mul(K, z, z), z3 = series_mul(K, z2, z);
    for (std::size_t prec = 1; prec < 2 * L + 4; prec *= 2) {
      const Series w2 = series_mul(K, w, w), w3 = series_mul(K, w2, w);
      Series H = w;
      H = series_add(K, H, series_mul(K, A1, series_mul(K, z, w)));
      H = series_add(K, H, series_mul(K, A3, w2));
      H = series_sub(K, H, z3);
      H = series_sub(K, H, series_mul(K, A2, series_mul(K, z2, w)));
      H = series_sub(K, H, series_mul(K, A4, series_mul(K, z, w2)));
      H = series_sub(K, H, series_mul(K, A6, w3));
      Series dH = series_const(L, 1);
      dH = series_add(K, dH, series_mul(K, A1, z));
      dH = series_add(K, dH, series_scale(K, series_mul(K, A3, w), K.from_int(2)));
      dH = series_sub(K, dH, series_mul(K, A2, z2));
      dH = series_sub(K, dH, series_scale(K, series_mul(K, A4, series_mul(K, z, w)), K.from_int(2)));
      dH = series_sub(K, dH, series_scale(K, series_mul(K, A6, w2), K.from_int(3)));
      w = series_sub(K, w, series_mul(K, H, series_inv(K, dH)));
    }
    Series u = series_drop(w, 3);
    c.ex = -2;
    c.ey = -3;
    c.X = series_inv(K, u);
    c.Y = c.X;
    return c;
  }
  const Point P = geometric_point(curve, x, choice);
  EllipticArithmetic E(curve, d);
  const Elem Fy = K.add(K.add(K.mul(K.from_int(2), P.y), K.mul(E.a1, P.x)), E.a3);
  if (Fy != 0) {
    c.X = series_linear(M, P.x);
    const Series Sx = series_eval(K, *c.emb, S, c.X), Rx = series_eval(K, *c.emb, R, c.X);
    Series y = series_const(M, P.y);
    for (std::size_t prec = 1; prec < 2 * M + 2; prec *= 2) {
      const Series G = series_sub(K, series_add(K, series_mul(K, y, y), series_mul(K, Sx, y)), Rx);
      const Series dG = series_add(K, series_scale(K, y, K.from_int(2)), Sx);
      y = series_sub(K, y, series_mul(K, G, series_inv(K, dG)));
    }
    c.Y = y;
  } else {
    c.Y = series_linear(M, P.y);
    const Polynomial dS = S.derivative(), dR = R.derivative();
    Series xs = series_const(M, P.x);
    for (std::size_t prec = 1; prec < 2 * M + 2; prec *= 2) {
      const Series Sx = series_eval(K, *c.emb, S, xs), Rx = series_eval(K, *c.emb, R, xs);
      const Series G = series_sub(K, series_add(K, series_mul(K, c.Y, c.Y), series_mul(K, Sx, c.Y)), Rx);
      const Series dG = series_sub(K, series_mul(K, series_eval(K, *c.emb, dS, xs), c.Y),
                                   series_eval(K, *c.emb, dR, xs));
      xs = series_sub(K, xs, series_mul(K, G, series_inv(K, dG)));
    }
    c.X = xs;
  }
  return c;
}

// p(x) = t^offset * series.
std::pair<std::int64_t, Series> chart_eval(const Chart& c, const Polynomial& p) {
  const Field& K = c.K;
  const std::size_t M = c.X.size();
  if (c.ex == 0) return {0, series_eval(K, *c.emb, p, c.X)};
  const int m = p.degree();
  const std::size_t step = static_cast<std::size_t>(-c.ex);
  Series acc(M, 0);
  for (int i = m; i >= 0; --i) {
    acc = series_mul(K, acc, c.X);
    const std::size_t pos = static_cast<std::size_t>(m - i) * step;
    if (pos < M) acc[pos] = K.add(acc[pos], c.emb->apply(p.coeff(i)));
  }
  return {static_cast<std::int64_t>(m) * c.ex, acc};
}

std::int64_t zero_bound(const RationalFunction& f) {
  const bool p1 = f.curve().is_projective_line();
  std::int64_t bn = 0;
  if (!f.a().is_zero()) bn = p1 ? f.a().degree() : 2 * f.a().degree();
  if (!f.b().is_zero()) bn = std::max<std::int64_t>(bn, 2 * f.b().degree() + 3);
  const std::int64_t bd = p1 ? f.d().degree() : 2 * f.d().degree();
  return std::max(bn, bd);
}

struct RawExpansion {
  Field K;
  std::int64_t valuation;
  Series unit;
};

RawExpansion expand(const RationalFunction& f, const Place& x, int precision, int choice) {
  if (f.is_zero()) throw Error(ErrorCode::kZeroFunction, "expansion of the zero function");
  const std::size_t M = static_cast<std::size_t>(precision + zero_bound(f) + 1);
  const Chart c = make_chart(f.curve(), x, choice, M);
  const Field& K = c.K;
  std::int64_t e = 0;
  Series num;
  std::optional<std::pair<std::int64_t, Series>> ta, tb;
  if (!f.a().is_zero()) ta = chart_eval(c, f.a());
  if (!f.b().is_zero()) {
    auto [o, s] = chart_eval(c, f.b());
    tb = std::make_pair(o + c.ey, series_mul(K, s, c.Y));
  }
  if (ta && tb) {
    e = std::min(ta->first, tb->first);
    num = series_add(K, series_shift(ta->second, static_cast<std::size_t>(ta->first - e)),
                     series_shift(tb->second, static_cast<std::size_t>(tb->first - e)));
  } else {
    const auto& t = ta ? *ta : *tb;
    e = t.first;
    num = t.second;
  }
  auto [od, den] = chart_eval(c, f.d());
  const std::size_t vn = series_valuation(num), vd = series_valuation(den);
  if (vn >= M || vd >= M) throw Error(ErrorCode::kInsufficientPrecision, "expansion vanished to working precision");
  Series nn = series_drop(num, vn), dd = series_drop(den, vd);
  const std::size_t L = std::min(nn.size(), dd.size());
  nn.resize(L);
  dd.resize(L);
  Series u = series_mul(K, nn, series_inv(K, dd));
  u.resize(static_cast<std::size_t>(precision));
  return {K, e + static_cast<std::int64_t>(vn) - od - static_cast<std::int64_t>(vd), u};
}

}  // namespace

LocalCoordinates local_coordinates(const CurveModel& curve, const Place& x, std::size_t length, int choice) {
  if (x.infinite) throw Error(ErrorCode::kInvalidArgument, "local_coordinates needs a finite place");
  Chart c = make_chart(curve, x, choice, length);
  return {c.K, std::move(c.X), std::move(c.Y)};
}

LocalElement local_expansion(const RationalFunction& f, const Place& x, int precision, int choice) {
  if (precision < 1) throw Error(ErrorCode::kInvalidArgument, "precision must be positive");
  auto r = expand(f, x, precision, choice);
  return LocalElement(r.K, r.valuation, std::move(r.unit));
}

std::int64_t valuation_at(const RationalFunction& f, const Place& x) { return expand(f, x, 1, 0).valuation; }

Elem value_at(const RationalFunction& f, const Place& x, int choice) {
  auto r = expand(f, x, 1, choice);
  if (r.valuation != 0)
    throw Error(ErrorCode::kDegenerateEvaluation,
                "function has valuation " + std::to_string(r.valuation) + " at " + x.describe());
  return r.unit[0];
}

// ---------------------------------------------------------------------------
// Divisors of functions

namespace {

std::vector<Place> places_over_x_factor(const CurveModel& curve, const Polynomial& g) {
  const std::uint32_t e = static_cast<std::uint32_t>(g.degree());
  const Field K = curve.extension(e);
  const Elem x0 = roots(g.mapped(curve.embed(e))).front();
  EllipticArithmetic E(curve, e);
  std::vector<Place> out;
  auto ys = E.lift_x(x0);
  if (!ys.empty()) {
    for (Elem y : ys) out.push_back(place_of_point(curve, Point::affine(x0, y), e));
  } else {
    EllipticArithmetic E2(curve, 2 * e);
    const Elem x2 = embedding(K, E2.field(), curve.base()).apply(x0);
    for (Elem y : E2.lift_x(x2)) out.push_back(place_of_point(curve, Point::affine(x2, y), 2 * e));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Place> places_above(const CurveModel& curve, const Polynomial& g) {
  if (curve.is_projective_line()) return {Place::of_polynomial(g)};
  return places_over_x_factor(curve, g);
}

Divisor divisor_of(const RationalFunction& f) {
  if (f.is_zero()) throw Error(ErrorCode::kZeroFunction, "divisor of the zero function");
  const CurveModel& curve = f.curve();
  Divisor div;
  if (curve.is_projective_line()) {
    for (const auto& fa : factor(f.a()).factors) div.add(Place::of_polynomial(fa.poly), fa.multiplicity);
    for (const auto& fa : factor(f.d()).factors) div.add(Place::of_polynomial(fa.poly), -fa.multiplicity);
    div.add(Place::at_infinity(), f.d().degree() - f.a().degree());
  } else {
    std::set<Polynomial> candidates;
    for (const auto& fa : factor(f.numerator_norm()).factors) candidates.insert(fa.poly);
    for (const auto& fa : factor(f.d()).factors) candidates.insert(fa.poly);
    for (const auto& g : candidates)
      for (const auto& x : places_over_x_factor(curve, g)) div.add(x, valuation_at(f, x));
    div.add(Place::at_infinity(), valuation_at(f, Place::at_infinity()));
  }
  if (div.degree() != 0)
    throw Error(ErrorCode::kDegreeNonzero, "internal: principal divisor of degree " + std::to_string(div.degree()));
  return div;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Place> places_of_degree(const CurveModel& curve, int degree) {
  if (degree < 1) throw Error(ErrorCode::kInvalidArgument, "place degree must be >= 1");
  std::vector<Place> out;
  if (curve.is_projective_line()) {
    for (auto& p : monic_irreducibles(curve.base(), degree)) out.push_back(Place::of_polynomial(std::move(p)));
    if (degree == 1) out.push_back(Place::at_infinity());
    return out;
  }
  const std::uint32_t d = static_cast<std::uint32_t>(degree);
  EllipticArithmetic E(curve, d);
  const Field& K = E.field();
  for (Elem x = 0; x < K.size(); ++x) {
    for (Elem y : E.lift_x(x)) {
      const Point P = Point::affine(x, y);
      if (E.field_of_definition(P) != d) continue;
      bool minimal = true;
      Point cur = P;
      for (std::uint32_t j = 1; j < d && minimal; ++j) {
        cur = E.frobenius(cur, 1);
        if (cur < P) minimal = false;
      }
      if (!minimal) continue;
      Place pl;
      pl.degree = degree;
      pl.point = P;
      out.push_back(pl);
    }
  }
  if (degree == 1) out.push_back(Place::at_infinity());
  return out;
}

std::vector<Place> places_up_to_degree(const CurveModel& curve, int max_degree) {
  std::uint64_t size = 1;
  for (int i = 0; i < max_degree; ++i) {
    size *= curve.q();
    if (size > kFieldSizeCap)
      throw Error(ErrorCode::kCapExceeded, "q^" + std::to_string(max_degree) + " exceeds the enumeration cap");
  }
  std::vector<Place> out;
  for (int d = 1; d <= max_degree; ++d) {
    auto part = places_of_degree(curve, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int gcd_of_place_degrees(const CurveModel& curve, int bound, int min_degree) {
  if (bound < 1) throw Error(ErrorCode::kInvalidArgument, "bound must be >= 1");
  int g = 0;
  for (int d = std::max(1, min_degree); d <= bound && g != 1; ++d)
    if (!places_of_degree(curve, d).empty()) g = std::gcd(g, d);
  return g;
}

// ---------------------------------------------------------------------------
// Fixtures

CurveModel parse_curve_fixture(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kParse, "curve fixture line " + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(ErrorCode::kParse, "curve fixture: missing '" + k + "'");
    return it->second;
  };
  auto as_uint = [&](const std::string& k) {
    const std::string& v = need(k);
    std::uint32_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw Error(ErrorCode::kParse, "curve fixture: '" + k + "' is not an integer");
    return out;
  };
  const std::string kind = need("kind");
  Field F;
  try {
    F = make_field(as_uint("p"), as_uint("n"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, std::string("curve fixture: ") + e.detail());
  }
  if (kind == "p1") return CurveModel::projective_line(F);
  if (kind != "weierstrass") throw Error(ErrorCode::kParse, "curve fixture: unknown kind '" + kind + "'");
  std::array<Elem, 5> a{};
  const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
  for (int i = 0; i < 5; ++i) {
    auto it = kv.find(names[i]);
    if (it == kv.end()) continue;
    FieldElement v;
    try {
      v = parse_field_literal(it->second);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, std::string("curve fixture: ") + names[i] + ": " + e.detail());
    }
    if (!(v.field() == F)) throw Error(ErrorCode::kParse, std::string("curve fixture: ") + names[i] + " not in " + F.name());
    a[static_cast<std::size_t>(i)] = v.value();
  }
  try {
    return CurveModel::weierstrass(F, a);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string("curve fixture: ") + e.detail());
  }
}

Place parse_place(std::string_view text, const CurveModel& curve) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
  if (s == "inf" || s == "O") return Place::at_infinity();
  if (curve.is_projective_line()) {
    Polynomial p = parse_polynomial(s, curve.base());
    if (!p.is_monic() || !is_irreducible(p)) throw Error(ErrorCode::kParse, "place polynomial must be monic irreducible");
    return Place::of_polynomial(p);
  }
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw Error(ErrorCode::kParse, "bad place '" + std::string(text) + "'");
  // Literals contain commas; the second one starts after the comma that
  // precedes its '^'.
  const std::string body = s.substr(1, s.size() - 2);
  const auto caret1 = body.find('^');
  const auto caret2 = caret1 == std::string::npos ? caret1 : body.find('^', caret1 + 1);
  const auto split = caret2 == std::string::npos ? caret2 : body.rfind(',', caret2);
  if (split == std::string::npos) throw Error(ErrorCode::kParse, "bad place '" + std::string(text) + "'");
  FieldElement x = parse_field_literal(body.substr(0, split));
  FieldElement y = parse_field_literal(body.substr(split + 1));
  if (!(x.field() == y.field())) throw Error(ErrorCode::kParse, "place coordinates in different fields");
  const Field& K = x.field();
  if (K.characteristic() != curve.base().characteristic() || K.degree() % curve.base().degree() != 0)
    throw Error(ErrorCode::kParse, "place coordinates not in an extension of the base");
  const std::uint32_t m = K.degree() / curve.base().degree();
  EllipticArithmetic E(curve, m);
  const Point P = Point::affine(x.value(), y.value());
  if (!E.on_curve(P)) throw Error(ErrorCode::kParse, "point not on the curve");
  return place_of_point(curve, P, m);
}

std::string place_literal(const Place& x, const CurveModel& curve) {
  if (x.infinite) return curve.is_projective_line() ? "inf" : "O";
  if (curve.is_projective_line()) return polynomial_literal(x.poly);
  const Field K = curve.extension(static_cast<std::uint32_t>(x.degree));
  return "(" + FieldElement(K, x.point.x).literal() + ", " + FieldElement(K, x.point.y).literal() + ")";
}

}  // namespace tamesym
