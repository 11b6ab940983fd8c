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
#include "tamesym/global_pairing.hpp"
#include "tamesym/mutation.hpp"

using namespace tamesym;
using namespace testing_curves;

namespace {

Place poly_place(const Field& f, std::vector<Elem> c) { return Place::of_polynomial(Polynomial(f, std::move(c))); }

// Resultant of monic polynomials over a prime field, from the Sylvester
// matrix by Gaussian elimination.
Elem sylvester_resultant(const Polynomial& a, const Polynomial& b) {
  const Field& F = a.field();
  const int m = a.degree(), n = b.degree(), N = m + n;
  std::vector<std::vector<Elem>> s(static_cast<std::size_t>(N), std::vector<Elem>(static_cast<std::size_t>(N), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.coeff(n - j);
  Elem det = 1;
  for (int c = 0; c < N; ++c) {
    int p = c;
    while (p < N && s[p][c] == 0) ++p;
    if (p == N) return 0;
    if (p != c) {
      std::swap(s[p], s[c]);
      det = F.neg(det);
    }
    det = F.mul(det, s[c][c]);
    const Elem inv = F.inv(s[c][c]);
    for (int r = c + 1; r < N; ++r) {
      const Elem f = F.mul(s[r][c], inv);
      for (int k = c; k < N; ++k) s[r][k] = F.sub(s[r][k], F.mul(f, s[c][k]));
    }
  }
  return det;
}

Idele random_finite_idele(const CurveModel& X, const std::vector<Place>& places, std::mt19937_64& rng) {
  Idele f(X);
  const int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) {
    const Place& x = places[rng() % places.size()];
    f.set(x, random_local_element(residue_field(X, x), 4, rng));
  }
  return f;
}

Idele random_idele(const CurveModel& X, const std::vector<Place>& places, std::mt19937_64& rng) {
  Idele f = random_finite_idele(X, places, rng);
  if (rng() % 4 == 0) f = f * Idele::principal(random_function(X, rng, 2));
  return f;
}

std::vector<CurveModel> nontrivial_fixtures() {
  std::vector<CurveModel> out;
  for (const auto& X : all_fixtures())
    if (X.q() > 2) out.push_back(X);
  return out;
}

}  // namespace

TEST_CASE("global symbol examples") {
  const CurveModel X = p1(5);
  const Field& F = X.base();
  const Place origin = poly_place(F, {0, 1});
  const Idele pi = Idele::uniformizer(X, origin);
  CHECK(deg_idele(pi) == 1);
  CHECK(global_tame_symbol(pi, Idele::principal(RationalFunction::constant(X, 2))) == FieldElement(F, 2));

  const Idele t = Idele::principal(RationalFunction::x(X));
  CHECK(global_tame_symbol(t, t).is_one());
  const auto factors = global_tame_symbol_factors(t, t);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].value == FieldElement(F, 4));
  CHECK(factors[1].value == FieldElement(F, 4));

  Idele u(X);
  u.set(origin, LocalElement::constant(F, 2));
  CHECK(global_tame_symbol(u, t) == FieldElement(F, 3));
}

TEST_CASE("weil reciprocity examples") {
  for (const auto& X : {p1(3), p1(2, 2), p1(5), p1(7), p1(3, 2)}) {
    const RationalFunction t = RationalFunction::x(X);
    const RationalFunction one_minus_t = RationalFunction::constant(X, 1) - t;
    CHECK(weil_reciprocity_check(t, one_minus_t).holds);
  }
  // Place factors are resultants: Nm(p, r) at p is Res(p, r), at r it is
  // Res(r, p)^-1, at infinity (-1)^(deg p deg r).
  const CurveModel X = p1(3);
  const Field& F = X.base();
  const auto irr = monic_irreducibles(F, 1);
  auto irr2 = monic_irreducibles(F, 2);
  auto irr3 = monic_irreducibles(F, 3);
  std::vector<Polynomial> all(irr.begin(), irr.end());
  all.insert(all.end(), irr2.begin(), irr2.end());
  all.insert(all.end(), irr3.begin(), irr3.begin() + 3);
  int checked = 0;
  for (const auto& p : all)
    for (const auto& r : all) {
      if (p == r) continue;
      const auto res = weil_reciprocity_check(RationalFunction::polynomial(X, p), RationalFunction::polynomial(X, r));
      CHECK(res.holds);
      for (const auto& s : res.factors) {
        if (s.place.infinite) {
          CHECK(s.value == FieldElement(F, (p.degree() * r.degree()) % 2 ? F.minus_one() : 1));
        } else if (s.place.poly == p) {
          CHECK(s.value == FieldElement(F, sylvester_resultant(p, r)));
        } else {
          REQUIRE(s.place.poly == r);
          CHECK(s.value == FieldElement(F, sylvester_resultant(r, p)).inverse());
        }
      }
      ++checked;
    }
  CHECK(checked > 50);

  std::mt19937_64 rng(11);
  const CurveModel E = e_x3_minus_x_f5();
  for (int i = 0; i < 30; ++i) {
    const auto res = weil_reciprocity_check(random_function(E, rng), random_function(E, rng));
    CHECK_MESSAGE(res.holds, res.value.literal());
  }
}

TEST_CASE("degree and divisor of ideles") {
  std::mt19937_64 rng(2);
  const CurveModel E = e_x3_minus_x_f5();
  const RationalFunction phi = random_function(E, rng);
  CHECK(deg_idele(Idele::principal(phi)) == 0);
  CHECK(div_idele(Idele::principal(phi)) == divisor_of(phi));

  const CurveModel X = p1(5);
  const Place origin = poly_place(X.base(), {0, 1});
  CHECK(div_idele(Idele::uniformizer(X, origin)) == Divisor::of(origin));

  const Place quad = Place::of_polynomial(monic_irreducibles(X.base(), 2).front());
  Idele f(X);
  f.set(quad, LocalElement::uniformizer(residue_field(X, quad)).pow(3));
  CHECK(deg_idele(f) == 6);
}

TEST_CASE("membership in U") {
  std::mt19937_64 rng(5);
  for (const auto& X : nontrivial_fixtures()) {
    const RationalFunction psi = random_function(X, rng, 2);
    CHECK(in_U(Idele::principal(psi.pow(X.q() - 1))) == Membership::kMember);
    CHECK(in_U(Idele(X)) == Membership::kMember);
    CHECK(in_U(Idele::principal(RationalFunction::constant(X, X.base().generator()))) == Membership::kNonMember);
  }
  const CurveModel X = p1(5);
  const Place one = poly_place(X.base(), {4, 1});
  Idele f(X);
  f.set(one, LocalElement(X.base(), 4, {2}));
  CHECK(in_U(f) == Membership::kNonMember);
  f.set(one, LocalElement(X.base(), 4, {1, 3}));
  CHECK(in_U(f) == Membership::kMember);
  // t is no fourth power and is refuted at the place (t - 2) where it is 2.
  CHECK(in_U(Idele::principal(RationalFunction::x(X))) == Membership::kNonMember);
  CHECK_FALSE(root_q_minus_1(RationalFunction::x(X)));
  const RationalFunction g = RationalFunction::x(X) + RationalFunction::constant(X, 1);
  auto r = root_q_minus_1(g.pow(4));
  REQUIRE(r);
  CHECK(r->pow(4) == g.pow(4));
}

TEST_CASE("F group") {
  struct Case {
    CurveModel X;
    std::int64_t order;
    std::size_t phis;
  };
  for (const auto& c : {Case{p1(5), 4, 0}, Case{e_x3_minus_x_f5(), 32, 2}, Case{e_x3_x_1_f5(), 4, 0},
                        Case{e_y2_y_x3_f4(), 27, 2}, Case{e_x3_x_f7(), 12, 1}}) {
    const PicardData pic = picard_group(c.X);
    const TorsionData tors = torsion_and_cotorsion(pic, c.X.q() - 1);
    const FGroupData fg = build_f_group(pic, tors);
    CHECK(fg.exact);
    CHECK(fg.presentation.order().to_int64() == c.order);
    CHECK(fg.phi.size() == c.phis);
    const Idele pi0 = Idele::uniformizer(c.X, pic.base_place);
    for (std::size_t i = 0; i < fg.phi.size(); ++i) {
      const Divisor D = divisor_of(fg.phi[i]);
      CHECK(D == fg.n * pic.divisor_of_point(fg.ell[i]));
      CHECK(global_tame_symbol(pi0, Idele::principal(fg.phi[i])).is_one());
    }
  }
}

TEST_CASE("pairing matrices agree and are unimodular") {
  for (const auto& X : nontrivial_fixtures()) {
    const PicardData pic = picard_group(X);
    const TorsionData tors = torsion_and_cotorsion(pic, X.q() - 1);
    const FGroupData fg = build_f_group(pic, tors);
    const PairingMatrices pm = pairing_matrix_three_ways(pic, tors, fg, 3);
    INFO(X.describe());
    for (const auto& d : pm.disagreements) INFO(d);
    CHECK(pm.agree);
    CHECK(pm.well_defined);
    CHECK(pm.unimodular);
    CHECK(pm.verdict == CheckVerdict::kPass);
    CHECK(pm.w1.rows() == static_cast<Eigen::Index>(1 + tors.torsion_basis.size()));
    CHECK(pm.w1.cols() == static_cast<Eigen::Index>(1 + tors.cotorsion_basis.size()));
    CHECK(pm.w1(0, 0) == Integer(1));
  }
  const CurveModel E = e_x3_minus_x_f5();
  const PicardData pic = picard_group(E);
  const TorsionData tors = torsion_and_cotorsion(pic, 4);
  const PairingMatrices pm = pairing_matrix_three_ways(pic, tors, build_f_group(pic, tors));
  CHECK(pm.w1.rows() == 3);
  CHECK(pm.w1.cols() == 3);
}

TEST_CASE("presented unimodularity rejects pairings that ignore relations") {
  const FgAbGroup G(2, (IntMatrix(2, 2) << 4, -1, 0, 2).finished());
  const FgAbGroup H = FgAbGroup::from_invariants({4, 2});
  const IntMatrix ok = (IntMatrix(2, 2) << 2, 0, 1, 2).finished();
  CHECK(check_unimodular_presented(G, H, ok, 4).well_defined);
  IntMatrix bad = ok;
  bad(1, 1) = 1;
  CHECK_FALSE(check_unimodular_presented(G, H, bad, 4).well_defined);
}

TEST_CASE("finite theorem verification") {
  for (const auto& X : all_fixtures()) {
    const TheoremReport r = verify_theorem_finite(X, 1);
    INFO(X.describe() << " " << r.detail);
    CHECK(r.d_value == 1);
    if (X.q() == 2)
      CHECK(r.verdict == CheckVerdict::kVacuous);
    else
      CHECK(r.verdict == CheckVerdict::kPass);
  }
}

TEST_CASE("global symbol laws") {
  std::mt19937_64 rng(17);
  for (const auto& X : nontrivial_fixtures()) {
    const auto places = places_up_to_degree(X, 2);
    for (int i = 0; i < 150; ++i) {
      const Idele f = random_idele(X, places, rng), g = random_idele(X, places, rng), h = random_idele(X, places, rng);
      CHECK(global_tame_symbol(f * g, h) == global_tame_symbol(f, h) * global_tame_symbol(g, h));
      CHECK((global_tame_symbol(f, g) * global_tame_symbol(g, f)).is_one());
    }
    // (f, c)_X = c^deg f, exhaustively in c.
    for (int i = 0; i < 20; ++i) {
      const Idele f = random_idele(X, places, rng);
      for (Elem c = 1; c < X.q(); ++c)
        CHECK(global_tame_symbol(f, Idele::principal(RationalFunction::constant(X, c))) ==
              FieldElement(X.base(), c).pow(deg_idele(f)));
    }
  }
}

TEST_CASE("U is orthogonal to the principal ideles") {
  for (const auto& X : nontrivial_fixtures()) {
    const auto r = orthogonality_sampler(X, 100, 9);
    INFO(X.describe());
    for (const auto& f : r.failures) INFO(f);
    CHECK(r.verdict == CheckVerdict::kPass);
    CHECK(r.trivial == 100);
  }
  std::mt19937_64 rng(4);
  const CurveModel X = e_x3_minus_x_f5();
  const auto places = places_up_to_degree(X, 2);
  for (int i = 0; i < 200; ++i) {
    const Idele u = random_u_element(X, places, rng);
    REQUIRE(in_U(u) == Membership::kMember);
    for (const Place& x : places) CHECK(global_tame_symbol(u, Idele::uniformizer(X, x)).is_one());
  }
}

TEST_CASE("separating witnesses") {
  std::mt19937_64 rng(23);
  for (const auto& X : nontrivial_fixtures()) {
    INFO(X.describe());
    const PicardData pic = picard_group(X);
    const TorsionData tors = torsion_and_cotorsion(pic, X.q() - 1);
    const FGroupData fg = build_f_group(pic, tors);
    const auto places = places_up_to_degree(X, 2);
    const std::int64_t n = fg.n;
    // Degree obstruction.
    for (int i = 0; i < 5; ++i) {
      Idele f = random_finite_idele(X, places, rng);
      if (deg_idele(f) % n == 0) f = f * Idele::uniformizer(X, pic.base_place);
      const Witness w = separating_witness(f, pic, tors, fg);
      CHECK(w.stage == 1);
      REQUIRE(w.psi);
      CHECK_FALSE(global_tame_symbol(f, Idele::principal(*w.psi)).is_one());
    }
    // Residue obstruction: a unit with residue norm != 1 times an element of U.
    for (int i = 0; i < 5; ++i) {
      const Place& x = places[rng() % places.size()];
      const Field K = residue_field(X, x);
      Idele f = random_u_element(X, places, rng);
      f = f * [&] {
        Idele e(X);
        e.set(x, LocalElement::constant(K, K.generator()));
        return e;
      }();
      const Witness w = separating_witness(f, pic, tors, fg);
      CHECK(w.stage == 3);
      REQUIRE(w.psi);
      CHECK_FALSE(global_tame_symbol(f, Idele::principal(*w.psi)).is_one());
    }
    // Members.
    for (int i = 0; i < 5; ++i) {
      const Idele u = random_u_element(X, places, rng);
      const Witness w = separating_witness(u, pic, tors, fg);
      CHECK(w.stage == 0);
      CHECK_FALSE(w.psi);
    }
  }
  // Pic^0 obstruction on y^2 = x^3 - x over F_5 from a point of order 2.
  const CurveModel E = e_x3_minus_x_f5();
  const PicardData pic = picard_group(E);
  const TorsionData tors = torsion_and_cotorsion(pic, 4);
  const FGroupData fg = build_f_group(pic, tors);
  const Place P = place_of_point(E, Point::affine(0, 0), 1);
  const Idele f = Idele::uniformizer(E, P) * Idele::uniformizer(E, Place::at_infinity()).inverse();
  const Witness w = separating_witness(f, pic, tors, fg);
  CHECK(w.stage == 2);
  REQUIRE(w.psi);
  CHECK_FALSE(global_tame_symbol(f, Idele::principal(*w.psi)).is_one());
  CHECK(w.detail.find("matches") != std::string::npos);

  const CurveModel L = p1(5);
  const PicardData lpic = picard_group(L);
  const TorsionData ltors = torsion_and_cotorsion(lpic, 4);
  const Witness lw = separating_witness(Idele::uniformizer(L, poly_place(L.base(), {0, 1})), lpic, ltors,
                                        build_f_group(lpic, ltors));
  REQUIRE(lw.psi);
  CHECK(*lw.psi == RationalFunction::constant(L, 2));
  CHECK(lw.value == FieldElement(L.base(), 2));
}

TEST_CASE("self duality on finite place sets") {
  const CurveModel X = p1(5);
  const Place origin = poly_place(X.base(), {0, 1});
  const auto r = self_duality_check(X, {origin});
  CHECK(r.verdict == CheckVerdict::kPass);
  const IntMatrix expect = (IntMatrix(2, 2) << 2, 1, 3, 0).finished();
  CHECK(r.gram == expect);
  CHECK(self_duality_check(X, {}).verdict == CheckVerdict::kVacuous);

  const CurveModel Y = p1(2, 2);
  const std::vector<Place> mixed{Place::at_infinity(), poly_place(Y.base(), {0, 1}),
                                 Place::of_polynomial(monic_irreducibles(Y.base(), 2).front())};
  CHECK(self_duality_check(Y, mixed).unimodular);
  CHECK(self_duality_check(e_x3_minus_x_f5(), places_up_to_degree(e_x3_minus_x_f5(), 2)).unimodular);
}

TEST_CASE("idele fixtures") {
  const CurveModel X = p1(5);
  const Idele f = parse_idele_fixture(
      "# deg 1\n"
      "curve = p1_f5.curve\n"
      "entry = [0, 1] @ 1; 5^1:1\n"
      "entry = inf @ 0; 5^1:2, 5^1:3\n"
      "shift = [1, 1] + [] y / [2, 1]\n",
      X);
  CHECK(f.entries().size() == 2);
  CHECK(f.shift());
  CHECK(deg_idele(f) == 1);
  CHECK_THROWS_AS(parse_idele_fixture("entry = [0, 1]\n", X), Error);
  CHECK_THROWS_AS(parse_idele_fixture("entry = [0, 1] @ 1; 25^1:1\n", X), Error);
  CHECK_THROWS_AS(parse_idele_fixture("wat = 3\n", X), Error);
  try {
    parse_idele_fixture("entry = [1, 0, 1] @ 1; 5^1:1\n", X);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}
