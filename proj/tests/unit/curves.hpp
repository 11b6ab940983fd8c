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

#include <random>
#include <vector>

#include "tamesym/curve.hpp"

namespace testing_curves {

using namespace tamesym;

inline CurveModel p1(std::uint32_t p, std::uint32_t n = 1) { return CurveModel::projective_line(make_field(p, n)); }

inline CurveModel ell(std::uint32_t p, std::uint32_t n, std::array<Elem, 5> a) {
  return CurveModel::weierstrass(make_field(p, n), a);
}

// y^2 = x^3 - x over F_5: Z/2 + Z/4.
inline CurveModel e_x3_minus_x_f5() { return ell(5, 1, {0, 0, 0, 4, 0}); }
// y^2 = x^3 + x + 1 over F_5: Z/9.
inline CurveModel e_x3_x_1_f5() { return ell(5, 1, {0, 0, 0, 1, 1}); }
// y^2 + y = x^3 over F_2: Z/3.
inline CurveModel e_y2_y_x3_f2() { return ell(2, 1, {0, 0, 1, 0, 0}); }
// y^2 + y = x^3 over F_4: Z/3 + Z/3.
inline CurveModel e_y2_y_x3_f4() { return ell(2, 2, {0, 0, 1, 0, 0}); }
// y^2 = x^3 + x over F_7: Z/8.
inline CurveModel e_x3_x_f7() { return ell(7, 1, {0, 0, 0, 1, 0}); }

inline std::vector<CurveModel> all_fixtures() {
  return {p1(2), p1(3), p1(2, 2), p1(5), p1(7), p1(2, 3), p1(3, 2), e_x3_minus_x_f5(), e_x3_x_1_f5(),
          e_y2_y_x3_f2(), e_y2_y_x3_f4(), e_x3_x_f7()};
}

inline Polynomial random_poly(const Field& f, int max_degree, std::mt19937_64& rng, bool monic = false) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<Elem> c(0, f.size() - 1);
  const int d = deg(rng);
  std::vector<Elem> v(static_cast<std::size_t>(d) + 1);
  for (auto& x : v) x = c(rng);
  if (monic || v.back() == 0) v.back() = monic ? 1 : 1 + c(rng) % (f.size() - 1);
  return Polynomial(f, v);
}

inline RationalFunction random_function(const CurveModel& X, std::mt19937_64& rng, int max_degree = 3) {
  const Field& f = X.base();
  for (;;) {
    Polynomial a = random_poly(f, max_degree, rng);
    Polynomial b = X.is_projective_line() ? Polynomial(f) : random_poly(f, max_degree - 1, rng);
    if (!X.is_projective_line() && rng() % 3 == 0) b = Polynomial(f);
    Polynomial d = random_poly(f, max_degree, rng, true);
    RationalFunction r(X, a, b, d);
    if (!r.is_zero()) return r;
  }
}

inline Divisor random_degree_zero_divisor(const CurveModel& X, const std::vector<Place>& places, std::mt19937_64& rng,
                                          int terms = 3) {
  Divisor d;
  std::uniform_int_distribution<int> mult(-3, 3);
  for (int i = 0; i < terms; ++i) d.add(places[rng() % places.size()], mult(rng));
  Place base = X.is_projective_line() ? Place::of_polynomial(Polynomial::x(X.base())) : Place::at_infinity();
  d.add(base, -d.degree());
  return d;
}

}  // namespace testing_curves
