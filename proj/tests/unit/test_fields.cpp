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

#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "tamesym/finite_field.hpp"
#include "tamesym/mutation.hpp"
#include "tamesym/polynomial.hpp"

using namespace tamesym;

namespace {

// Monic quadratic x^2 + b x + c over F_p has no root.
bool quadratic_irreducible(std::uint32_t p, std::uint32_t b, std::uint32_t c) {
  for (std::uint32_t x = 0; x < p; ++x)
    if ((x * x + b * x + c) % p == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("field construction") {
  const Field f2 = make_field(2, 1);
  CHECK(f2.size() == 2);
  const Field f4 = make_field(2, 2);
  CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  // Lexicographic scan with the highest coefficient deciding first.
  std::vector<std::uint32_t> expect;
  for (std::uint32_t b = 0; b < 3 && expect.empty(); ++b)
    for (std::uint32_t c = 0; c < 3 && expect.empty(); ++c)
      if (quadratic_irreducible(3, b, c)) expect = {c, b, 1};
  CHECK(make_field(3, 2).modulus() == expect);
  CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK_THROWS_AS(make_field(4, 1), Error);
  CHECK_THROWS_AS(make_field(2, 21), Error);
  CHECK(make_field(2, 2) == f4);
}

TEST_CASE("norms") {
  const Field f2 = make_field(2, 1), f4 = make_field(2, 2), f3 = make_field(3, 1), f9 = make_field(3, 2);
  CHECK(norm(FieldElement(f4, 2), f2).value() == 1);  // α
  CHECK(norm(FieldElement(f4, 1), f2).value() == 1);
  CHECK(norm(FieldElement(f9, f9.generator()), f3).value() == 2);
  CHECK(norm(FieldElement(f9, 0), f3).is_zero());
  CHECK_THROWS_AS(norm(FieldElement(f9, 1), f4), Error);
}

TEST_CASE("norm is multiplicative and detects (q-1)-th powers") {
  for (auto [p, n, d] : std::vector<std::tuple<int, int, int>>{{2, 1, 4}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}, {3, 2, 2}, {7, 1, 3}}) {
    const Field k = make_field(p, n);
    const Field l = make_field(p, n * d);
    std::set<Elem> powers;
    for (Elem a = 1; a < l.size(); ++a) powers.insert(l.pow(a, k.size() - 1));
    for (Elem a = 0; a < l.size(); ++a) {
      const FieldElement na = norm(FieldElement(l, a), k);
      CHECK(na.field() == k);
      if (a) CHECK(na.is_one() == (powers.count(a) > 0));
      if (l.size() <= 64)
        for (Elem b = 0; b < l.size(); ++b)
          CHECK(norm(FieldElement(l, l.mul(a, b)), k) == na * norm(FieldElement(l, b), k));
    }
  }
}

TEST_CASE("norm exponent mutation changes a norm") {
  const Field f3 = make_field(3, 1), f9 = make_field(3, 2);
  ScopedMutation m(Mutation::kNormExponent);
  CHECK(norm(FieldElement(f9, f9.generator()), f3).value() != 2);
}

TEST_CASE("frobenius") {
  const Field f2 = make_field(2, 1), f4 = make_field(2, 2);
  CHECK(frobenius(FieldElement(f4, 2), f2).value() == 3);
  for (auto [p, n, d] : std::vector<std::tuple<int, int, int>>{{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {5, 1, 3}}) {
    const Field k = make_field(p, n), l = make_field(p, n * d);
    std::set<Elem> fixed;
    for (Elem a = 0; a < l.size(); ++a) {
      FieldElement x(l, a);
      FieldElement y = x;
      for (int i = 0; i < d; ++i) y = frobenius(y, k);
      CHECK(y == x);
      if (frobenius(x, k) == x) fixed.insert(a);
      for (Elem b = 0; b < l.size(); b += 3) {
        FieldElement z(l, b);
        CHECK(frobenius(x * z, k) == frobenius(x, k) * frobenius(z, k));
        CHECK(frobenius(x + z, k) == frobenius(x, k) + frobenius(z, k));
      }
    }
    std::set<Elem> image;
    const auto& e = embedding(k, l);
    for (Elem c = 0; c < k.size(); ++c) image.insert(e.apply(c));
    CHECK(fixed == image);
  }
}

TEST_CASE("discrete logarithms") {
  const Field f5 = make_field(5, 1);
  CHECK(discrete_log(FieldElement(f5, 1), FieldElement(f5, 2)) == 0);
  CHECK(discrete_log(FieldElement(f5, 4), FieldElement(f5, 2)) == 2);
  CHECK(discrete_log(FieldElement(f5, 3), FieldElement(f5, 2)) == 3);
  CHECK_THROWS_AS(discrete_log(FieldElement(f5, 0), FieldElement(f5, 2)), Error);
  CHECK_THROWS_AS(discrete_log(FieldElement(f5, 3), FieldElement(f5, 4)), Error);
  const Field f = make_field(3, 4);
  std::mt19937_64 rng(3);
  const FieldElement g(f, f.generator());
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t k = rng() % (f.size() - 1);
    CHECK(discrete_log(g.pow(static_cast<std::int64_t>(k)), g) == k);
  }
}

TEST_CASE("embeddings over a base field are compatible") {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    const Field k = make_field(p, n), l2 = make_field(p, 2 * n), l4 = make_field(p, 4 * n);
    const auto& a = embedding(k, l2);
    const auto& b = embedding(l2, l4, k);
    const auto& c = embedding(k, l4);
    for (Elem x = 0; x < k.size(); ++x) CHECK(b.apply(a.apply(x)) == c.apply(x));
    for (Elem x = 0; x < l2.size(); ++x) {
      CHECK(b.preimage(b.apply(x)) == std::optional<Elem>(x));
      for (Elem y = 0; y < l2.size(); y += 5) {
        CHECK(b.apply(l2.mul(x, y)) == l4.mul(b.apply(x), b.apply(y)));
        CHECK(b.apply(l2.add(x, y)) == l4.add(b.apply(x), b.apply(y)));
      }
    }
  }
}

TEST_CASE("field literals") {
  const FieldElement a = parse_field_literal("3^2:0,2");
  CHECK(a.field() == make_field(3, 2));
  CHECK(a.value() == 6);
  CHECK(a.literal() == "3^2:0,2");
  CHECK_THROWS_AS(parse_field_literal("9^1:2"), Error);
  CHECK_THROWS_AS(parse_field_literal("nonsense"), Error);
}

TEST_CASE("polynomial arithmetic and factorization") {
  std::mt19937_64 rng(17);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {7, 1}}) {
    const Field f = make_field(p, n);
    std::uniform_int_distribution<Elem> coef(0, f.size() - 1);
    for (int t = 0; t < 30; ++t) {
      std::vector<Elem> ca(1 + rng() % 7), cb(1 + rng() % 5);
      for (auto& c : ca) c = coef(rng);
      for (auto& c : cb) c = coef(rng);
      const Polynomial a(f, ca), b(f, cb);
      if (b.is_zero()) continue;
      const auto [q, r] = a.divmod(b);
      CHECK(q * b + r == a);
      CHECK(r.degree() < b.degree());
      const auto eg = extended_gcd(a, b);
      CHECK(eg.s * a + eg.t * b == eg.g);
      if (a.is_zero()) continue;
      const auto fac = factor(a);
      Polynomial prod = Polynomial::constant(f, fac.unit);
      for (const auto& fc : fac.factors) {
        CHECK(is_irreducible(fc.poly));
        CHECK(fc.poly.is_monic());
        prod *= fc.poly.pow(static_cast<std::uint64_t>(fc.multiplicity));
      }
      CHECK(prod == a);
      for (Elem x : roots(a)) CHECK(a.eval(x) == 0);
      std::size_t count = 0;
      for (Elem x = 0; x < f.size(); ++x) count += a.eval(x) == 0;
      CHECK(count == roots(a).size());
    }
  }
}

TEST_CASE("counting irreducibles") {
  // Number of monic irreducibles of degree d over F_q: (1/d) sum_{e | d} mu(e) q^{d/e}.
  CHECK(monic_irreducibles(make_field(2, 1), 4).size() == 3);
  CHECK(monic_irreducibles(make_field(3, 1), 3).size() == 8);
  CHECK(monic_irreducibles(make_field(2, 2), 2).size() == 6);
  CHECK(monic_irreducibles(make_field(5, 1), 2).size() == 10);
}

TEST_CASE("taylor shift and reversal") {
  const Field f = make_field(5, 1);
  const Polynomial a(f, {1, 2, 3, 4});
  for (Elem s = 0; s < 5; ++s)
    for (Elem x = 0; x < 5; ++x) CHECK(a.shifted(s).eval(x) == a.eval(f.add(x, s)));
  CHECK(a.reversed() == Polynomial(f, {4, 3, 2, 1}));
}
