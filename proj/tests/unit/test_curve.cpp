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

#include <random>
#include <set>

#include "curves.hpp"
#include "doctest.h"
#include "tamesym/mutation.hpp"
#include "tamesym/picard.hpp"

using namespace tamesym;
using namespace testing_curves;

namespace {

// #E(F_q) by testing every affine pair, plus O.
std::int64_t brute_count(const CurveModel& X) {
  const Field& F = X.base();
  const auto& a = X.coefficients();
  std::int64_t n = 1;
  for (Elem x = 0; x < F.size(); ++x)
    for (Elem y = 0; y < F.size(); ++y) {
      const Elem lhs = F.add(F.mul(y, y), F.add(F.mul(a[0], F.mul(x, y)), F.mul(a[2], y)));
      Elem rhs = F.mul(x, F.mul(x, x));
      rhs = F.add(rhs, F.add(F.mul(a[1], F.mul(x, x)), F.add(F.mul(a[3], x), a[4])));
      if (lhs == rhs) ++n;
    }
  return n;
}

// #X(F_{q^d}) from the Frobenius trace recurrence.
std::int64_t hasse_weil_count(const CurveModel& X, int d) {
  const std::int64_t q = X.q();
  std::int64_t qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  if (X.is_projective_line()) return qd + 1;
  const std::int64_t a = q + 1 - brute_count(X);
  std::int64_t s0 = 2, s1 = a;
  for (int i = 1; i < d; ++i) {
    const std::int64_t s2 = a * s1 - q * s0;
    s0 = s1;
    s1 = s2;
  }
  return qd + 1 - s1;
}

Place rational_point(const CurveModel& X, Elem x, Elem y) { return place_of_point(X, Point::affine(x, y), 1); }

}  // namespace

TEST_CASE("places of small degree") {
  const auto P = places_up_to_degree(p1(2), 2);
  CHECK(P.size() == 4);
  CHECK(std::count_if(P.begin(), P.end(), [](const Place& x) { return x.degree == 2; }) == 1);
  const auto E = places_up_to_degree(e_y2_y_x3_f2(), 1);
  CHECK(E.size() == 3);
  CHECK(std::any_of(E.begin(), E.end(), [](const Place& x) { return x.infinite; }));
}

TEST_CASE("place counts match the Frobenius trace") {
  for (const auto& X : all_fixtures()) {
    const int D = X.q() <= 4 ? 4 : 3;
    std::vector<std::int64_t> per_degree(static_cast<std::size_t>(D) + 1, 0);
    for (const auto& x : places_up_to_degree(X, D)) ++per_degree[static_cast<std::size_t>(x.degree)];
    for (int d = 1; d <= D; ++d) {
      std::int64_t total = 0;
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) total += e * per_degree[static_cast<std::size_t>(e)];
      CAPTURE(X.describe());
      CAPTURE(d);
      CHECK(total == hasse_weil_count(X, d));
    }
  }
}

TEST_CASE("gcd of place degrees") {
  for (const auto& X : all_fixtures()) CHECK(gcd_of_place_degrees(X, 1) == 1);
  CHECK(gcd_of_place_degrees(p1(2), 2, 2) == 2);
  CHECK_THROWS_AS(places_up_to_degree(p1(5), 9), Error);
}

TEST_CASE("local expansions on P1") {
  const auto X = p1(5);
  const Field& F = X.base();
  const auto t = RationalFunction::x(X);
  const Place at_t = Place::of_polynomial(Polynomial::x(F));
  const auto e0 = local_expansion(t, at_t);
  CHECK(e0.valuation() == 1);
  CHECK(e0.leading() == 1);
  CHECK(local_expansion(t, Place::at_infinity()).valuation() == -1);
  const RationalFunction f(X, Polynomial(F, {1, 0, 1}), {}, Polynomial(F, {3, 1}));
  const auto e = local_expansion(f, Place::of_polynomial(Polynomial(F, {3, 1})));
  CHECK(e.valuation() == 0);
  CHECK(e.leading() == 4);
  CHECK_THROWS_AS(local_expansion(RationalFunction::constant(X, 0), at_t), Error);
}

TEST_CASE("divisors of functions") {
  const auto X = p1(2);
  const Field& F = X.base();
  const auto dt = divisor_of(RationalFunction::x(X));
  CHECK(dt == Divisor::of(Place::of_polynomial(Polynomial::x(F))) - Divisor::of(Place::at_infinity()));
  const Polynomial g(F, {1, 1, 1});
  CHECK(divisor_of(RationalFunction::polynomial(X, g)) ==
        Divisor::of(Place::of_polynomial(g)) - 2 * Divisor::of(Place::at_infinity()));
  const auto E = e_y2_y_x3_f2();
  const auto dx = divisor_of(RationalFunction::x(E));
  CHECK(dx == Divisor::of(rational_point(E, 0, 0)) + Divisor::of(rational_point(E, 0, 1)) -
                  2 * Divisor::of(Place::at_infinity()));
}

TEST_CASE("expansions satisfy the curve equation") {
  for (const auto& X : all_fixtures()) {
    if (X.is_projective_line()) continue;
    const auto& a = X.coefficients();
    // At O through series arithmetic.
    const auto lx = local_expansion(RationalFunction::x(X), Place::at_infinity(), 24);
    const auto ly = local_expansion(RationalFunction::y(X), Place::at_infinity(), 24);
    CHECK(lx.valuation() == -2);
    CHECK(ly.valuation() == -3);
    const Field& F = lx.residue_field();
    auto c = [&](Elem v) { return LocalElement::constant(F, v, 24); };
    LocalElement lhs = ly * ly;
    if (a[0]) lhs = lhs + c(a[0]) * lx * ly;
    if (a[2]) lhs = lhs + c(a[2]) * ly;
    LocalElement rhs = lx * lx * lx;
    if (a[1]) rhs = rhs + c(a[1]) * lx * lx;
    if (a[3]) rhs = rhs + c(a[3]) * lx;
    if (a[4]) rhs = rhs + c(a[4]);
    CHECK(lhs.agrees_with(rhs));
    CHECK((lx / ly).valuation() == 1);
    // At finite places, coefficient by coefficient.
    for (const auto& x : places_up_to_degree(X, 2)) {
      if (x.infinite) continue;
      const std::size_t L = 12;
      const auto lc = local_coordinates(X, x, L);
      const Field& K = lc.field;
      const Embedding& e = X.embed(static_cast<std::uint32_t>(x.degree));
      auto mul = [&](const std::vector<Elem>& u, const std::vector<Elem>& v) {
        std::vector<Elem> w(L, 0);
        for (std::size_t i = 0; i < L; ++i)
          for (std::size_t j = 0; i + j < L; ++j) w[i + j] = K.add(w[i + j], K.mul(u[i], v[j]));
        return w;
      };
      const auto yy = mul(lc.y, lc.y), xy = mul(lc.x, lc.y), xx = mul(lc.x, lc.x), xxx = mul(xx, lc.x);
      for (std::size_t i = 0; i < L; ++i) {
        Elem g = K.add(yy[i], K.add(K.mul(e.apply(a[0]), xy[i]), K.mul(e.apply(a[2]), lc.y[i])));
        g = K.sub(g, K.add(xxx[i], K.add(K.mul(e.apply(a[1]), xx[i]), K.mul(e.apply(a[3]), lc.x[i]))));
        if (i == 0) g = K.sub(g, e.apply(a[4]));
        CHECK(g == 0);
      }
    }
  }
}

TEST_CASE("expansion is multiplicative and matches divisor_of") {
  std::mt19937_64 rng(11);
  for (const auto& X : all_fixtures()) {
    const auto places = places_up_to_degree(X, 2);
    for (int s = 0; s < 15; ++s) {
      const auto f = random_function(X, rng), g = random_function(X, rng);
      const auto D = divisor_of(f);
      CHECK(D.degree() == 0);
      const auto& x = places[rng() % places.size()];
      CHECK(valuation_at(f, x) == D.multiplicity(x));
      const auto ef = local_expansion(f, x, 10), eg = local_expansion(g, x, 10);
      CHECK(local_expansion(f * g, x, 10).agrees_with(ef * eg));
      CHECK(local_expansion(f / g, x, 10).agrees_with(ef / eg));
    }
  }
}

TEST_CASE("normed symbols do not depend on the embedding") {
  std::mt19937_64 rng(12);
  for (const auto& X : all_fixtures()) {
    if (X.q() > 5) continue;
    const Field& k = X.base();
    for (const auto& x : places_of_degree(X, 3)) {
      if (rng() % 4) continue;
      const auto f = random_function(X, rng), g = random_function(X, rng);
      const auto s0 = normed_symbol(local_expansion(f, x, 8, 0), local_expansion(g, x, 8, 0), k);
      for (int j = 1; j < x.degree; ++j)
        CHECK(normed_symbol(local_expansion(f, x, 8, j), local_expansion(g, x, 8, j), k) == s0);
    }
  }
}

TEST_CASE("function literals round trip") {
  std::mt19937_64 rng(13);
  for (const auto& X : all_fixtures()) {
    const auto f = random_function(X, rng);
    CHECK(parse_rational_function(f.literal(), X) == f);
    for (const auto& x : places_up_to_degree(X, 2)) CHECK(parse_place(place_literal(x, X), X) == x);
  }
  CHECK_THROWS_AS(parse_rational_function("[1, 2", p1(5)), Error);
  CHECK_THROWS_AS(parse_curve_fixture("kind = weierstrass\np = 5\nn = 1\n"), Error);  // singular y^2 = x^3
  const auto X = parse_curve_fixture("kind = weierstrass\np = 5\nn = 1\na4 = 5^1:4\n");
  CHECK(X == e_x3_minus_x_f5());
}

TEST_CASE("picard groups") {
  CHECK(picard_group(p1(5)).pic0.order() == Integer(1));
  const auto pa = picard_group(e_x3_minus_x_f5());
  CHECK(pa.pic0.invariants64() == std::vector<std::int64_t>{2, 4});
  const auto pb = picard_group(e_x3_x_1_f5());
  CHECK(pb.pic0.invariants64() == std::vector<std::int64_t>{9});
  CHECK(picard_group(e_y2_y_x3_f4()).pic0.invariants64() == std::vector<std::int64_t>{3, 3});
}

TEST_CASE("principal divisors") {
  const auto P = p1(5);
  const auto f = is_principal(P, divisor_of(RationalFunction::x(P)));
  REQUIRE(f);
  CHECK(*f == RationalFunction::x(P));

  const auto X = e_x3_minus_x_f5();
  const auto pic = picard_group(X);
  const Place O = Place::at_infinity();
  for (const Point& pt : pic.points->points()) {
    if (pt.infinity) continue;
    const std::int64_t n = pic.points->element_order(pt);
    const Place x = place_of_point(X, pt, 1);
    const Divisor D = n * (Divisor::of(x) - Divisor::of(O));
    const auto g = is_principal(X, D);
    REQUIRE(g);
    CHECK(divisor_of(*g) == D);
    CHECK_FALSE(is_principal(X, Divisor::of(x) - Divisor::of(O)));
  }
  CHECK_THROWS_AS(is_principal(X, Divisor::of(O)), Error);
}

TEST_CASE("is_principal agrees with the class map") {
  std::mt19937_64 rng(14);
  int checked = 0, principal = 0;
  for (const auto& X : all_fixtures()) {
    if (X.q() > 5 && X.is_projective_line()) continue;
    const auto pic = picard_group(X);
    const auto places = places_up_to_degree(X, 2);
    for (int s = 0; s < 120; ++s) {
      const Divisor D = s % 3 == 0 ? divisor_of(random_function(X, rng)) : random_degree_zero_divisor(X, places, rng);
      const auto f = is_principal(X, D);
      CHECK(f.has_value() == pic.is_trivial_class(D));
      if (f) {
        CHECK(divisor_of(*f) == D);
        ++principal;
      }
      ++checked;
    }
    // class_of is additive.
    for (int s = 0; s < 20; ++s) {
      const Divisor A = random_degree_zero_divisor(X, places, rng), B = random_degree_zero_divisor(X, places, rng);
      CHECK(pic.pic0.equal(pic.class_of(A + B).tail(pic.class_of(A).size() - 1),
                           (pic.class_of(A) + pic.class_of(B)).tail(pic.class_of(A).size() - 1)));
    }
  }
  CHECK(checked >= 1000);
  CHECK(principal > 300);
}

TEST_CASE("frobenius pushforward") {
  const auto X = e_x3_minus_x_f5();
  EllipticArithmetic E(X, 2);
  const auto pts = E.points();
  std::mt19937_64 rng(15);
  int moved = 0;
  for (const Point& p : pts) {
    const Point f = frobenius_pushforward(E, p);
    if (E.field_of_definition(p) == 1) CHECK(f == p);
    else {
      CHECK_FALSE(f == p);
      ++moved;
    }
    CHECK(frobenius_pushforward(E, f) == p);
  }
  CHECK(moved > 0);
  for (int s = 0; s < 200; ++s) {
    const Point a = pts[rng() % pts.size()], b = pts[rng() % pts.size()];
    CHECK(frobenius_pushforward(E, E.add(a, b)) == E.add(frobenius_pushforward(E, a), frobenius_pushforward(E, b)));
  }
}

TEST_CASE("torsion and cotorsion") {
  const auto tb = torsion_and_cotorsion(picard_group(e_x3_x_1_f5()), 4);
  CHECK(tb.torsion_size() == 1);
  CHECK(tb.cotorsion_size() == 1);
  const auto ta = torsion_and_cotorsion(picard_group(e_x3_minus_x_f5()), 4);
  CHECK(ta.torsion_size() == 8);
  CHECK(ta.cotorsion_size() == 8);
  CHECK(ta.m == 4);
  const auto tp = torsion_and_cotorsion(picard_group(p1(7)), 6);
  CHECK(tp.torsion_size() == 1);
  CHECK(tp.cotorsion_size() == 1);
}

TEST_CASE("weil pairing") {
  const auto X = e_x3_minus_x_f5();
  EllipticArithmetic E(X, 1);
  const Point a = Point::affine(0, 0), b = Point::affine(1, 0), c = Point::affine(4, 0);
  CHECK(weil_pairing(E, a, b, 2).value() == 4);
  CHECK(weil_pairing(E, b, c, 2).value() == 4);
  CHECK(weil_pairing(E, a, a, 2).value() == 1);
  CHECK(weil_pairing_oracle(E, a, c, 2).value() == 4);

  const auto t = torsion_and_cotorsion(picard_group(X), 4);
  const auto& G = *t.split;
  const auto E4 = G.torsion(4);
  const auto& Em = G.arithmetic();
  std::mt19937_64 rng(16);
  for (int s = 0; s < 40; ++s) {
    const Point p = E4[rng() % E4.size()], q = E4[rng() % E4.size()], r = E4[rng() % E4.size()];
    const auto epq = weil_pairing(Em, p, q, 4, rng());
    CHECK(weil_pairing(Em, p, p, 4, rng()).is_one());
    CHECK((epq * weil_pairing(Em, q, p, 4, rng())).is_one());
    CHECK(weil_pairing(Em, Em.add(p, r), q, 4, rng()) == epq * weil_pairing(Em, r, q, 4, rng()));
    CHECK(weil_pairing(Em, p, q, 4, rng()) == epq);  // shift independence
  }
  // Nondegenerate on the split 4-torsion.
  for (const Point& p : E4) {
    if (p.infinity) continue;
    CHECK(std::any_of(E4.begin(), E4.end(), [&](const Point& q) { return !weil_pairing(Em, p, q, 4).is_one(); }));
  }
  CHECK_THROWS_AS(weil_pairing(E, a, Point::affine(2, 1), 2), Error);
}

TEST_CASE("weil pairing against the division-function oracle") {
  for (const auto& [X, n] : {std::pair{e_x3_minus_x_f5(), std::int64_t{2}}, std::pair{e_y2_y_x3_f4(), std::int64_t{3}}}) {
    const PointGroup G(X, 1);
    const auto Tn = G.torsion(n);
    for (const Point& p : Tn)
      for (const Point& q : Tn) CHECK(weil_pairing(G.arithmetic(), p, q, n) == weil_pairing_oracle(G.arithmetic(), p, q, n));
  }
}

TEST_CASE("kappa") {
  const auto X = e_x3_minus_x_f5();
  const auto t = torsion_and_cotorsion(picard_group(X), 4);
  const auto& B = *t.base;
  for (const Point& m : B.points()) CHECK(kappa(t, Point{}, m).is_one());
  // Well defined: both division points, and representatives differing by 4 Pic0.
  for (const Point& l : B.torsion(4))
    for (const Point& m : B.points()) {
      const auto k0 = kappa(t, l, m, 0);
      CHECK(kappa(t, l, m, 1) == k0);
    }
  const IntMatrix K = kappa_matrix(t);
  CHECK(check_unimodular(K, t.torsion_orders, t.cotorsion_orders, 4).unimodular());
  CHECK(kappa_matrix(t, true) == K);
  // Full 8 x 8 table is bilinear in the basis coordinates.
  const FieldElement g(X.base(), X.base().generator());
  for (std::int64_t i = 0; i < 8; ++i)
    for (std::int64_t j = 0; j < 8; ++j) {
      const std::vector<std::int64_t> li{i % t.torsion_orders[0], i / t.torsion_orders[0]};
      const std::vector<std::int64_t> mj{j % t.cotorsion_orders[0], j / t.cotorsion_orders[0]};
      Integer expect = 0;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) expect += Integer(li[static_cast<std::size_t>(r)] * mj[static_cast<std::size_t>(c)]) * K(r, c);
      const auto v = kappa(t, t.torsion_element(li), t.cotorsion_element(mj));
      CHECK(Integer(static_cast<std::int64_t>(discrete_log(v, g))) == mod(expect, Integer(4)));
    }
  ScopedMutation mut(Mutation::kFrobeniusInverse);
  CHECK_FALSE(kappa_matrix(t) == K);
}

TEST_CASE("frobenius lemma check") {
  const auto r = frobenius_lemma_check(torsion_and_cotorsion(picard_group(e_x3_minus_x_f5()), 4));
  CHECK(r.verdict == CheckVerdict::kPass);
  CHECK(r.kernel_order == 8);
  CHECK(r.cokernel_invariants == std::vector<std::int64_t>{2, 4});
  CHECK(frobenius_lemma_check(torsion_and_cotorsion(picard_group(p1(5)), 4)).verdict == CheckVerdict::kVacuous);
  CHECK(frobenius_lemma_check(torsion_and_cotorsion(picard_group(e_y2_y_x3_f2()), 1)).verdict ==
        CheckVerdict::kVacuous);
  for (const auto& X : all_fixtures()) {
    if (X.is_projective_line() || X.q() == 2) continue;
    CAPTURE(X.describe());
    CHECK(frobenius_lemma_check(torsion_and_cotorsion(picard_group(X), X.q() - 1)).verdict == CheckVerdict::kPass);
  }
}
