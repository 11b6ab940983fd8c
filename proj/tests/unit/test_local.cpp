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

#include "doctest.h"
#include "tamesym/local_field.hpp"
#include "tamesym/mutation.hpp"

using namespace tamesym;

namespace {

LocalElement series(const Field& f, std::int64_t v, std::vector<Elem> c) { return LocalElement(f, v, std::move(c)); }

// Unit parts a0 + a1 t + a2 t^2 over F_p that are (p-1)-th powers mod t^3,
// found by raising every unit part to the (p-1)-th power with plain integers.
std::set<std::vector<int>> powers_mod_t3(int p) {
  std::set<std::vector<int>> out;
  for (int a0 = 1; a0 < p; ++a0)
    for (int a1 = 0; a1 < p; ++a1)
      for (int a2 = 0; a2 < p; ++a2) {
        std::vector<int> r{1, 0, 0};
        for (int e = 0; e < p - 1; ++e) {
          std::vector<int> s{r[0] * a0 % p, (r[0] * a1 + r[1] * a0) % p, (r[0] * a2 + r[1] * a1 + r[2] * a0) % p};
          r = s;
        }
        out.insert(r);
      }
  return out;
}

}  // namespace

TEST_CASE("valuations") {
  const Field f5 = make_field(5, 1);
  const auto t = LocalElement::uniformizer(f5);
  CHECK(valuation(t) == 1);
  const auto g = series(f5, -2, {3, 3});
  CHECK(valuation(g) == -2);
  CHECK(valuation(t * g) == -1);
  CHECK_THROWS_AS(series(f5, 0, {0, 1}), Error);
}

TEST_CASE("tame symbol examples") {
  const Field f5 = make_field(5, 1);
  const auto t = LocalElement::uniformizer(f5);
  const auto two = LocalElement::constant(f5, 2);
  CHECK(tame_symbol(t, t).value() == 4);
  CHECK(tame_symbol(t, two).value() == 2);
  CHECK(tame_symbol(two, t).value() == 3);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {3, 2}}) {
    const Field f = make_field(p, n);
    const auto u = LocalElement::uniformizer(f);
    CHECK(tame_symbol(u, u.one_minus()).is_one());
  }
}

TEST_CASE("normed symbols") {
  const Field f2 = make_field(2, 1), f4 = make_field(2, 2), f3 = make_field(3, 1), f9 = make_field(3, 2);
  CHECK(normed_symbol(LocalElement::uniformizer(f4), LocalElement::constant(f4, 2), f2).value() == 1);
  CHECK(normed_symbol(LocalElement::uniformizer(f9), LocalElement::constant(f9, f9.generator()), f3).value() == 2);
  const Field f5 = make_field(5, 1);
  CHECK(normed_symbol(LocalElement::uniformizer(f5), LocalElement::constant(f5, 3), f5).value() == 3);
  CHECK_THROWS_AS(normed_symbol(LocalElement::uniformizer(f9), LocalElement::uniformizer(f9), f4), Error);
}

TEST_CASE("local kernel examples") {
  const Field f5 = make_field(5, 1), f2 = make_field(2, 1);
  CHECK(in_local_kernel(series(f5, 4, {1, 1}), f5));
  CHECK_FALSE(in_local_kernel(series(f5, 4, {2}), f5));
  CHECK_FALSE(in_local_kernel(series(f5, 2, {1}), f5));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) CHECK(in_local_kernel(random_local_element(f2, 8, rng), f2));
}

TEST_CASE("local kernel against power scan") {
  for (int p : {3, 5}) {
    const Field f = make_field(static_cast<std::uint32_t>(p), 1);
    const auto powers = powers_mod_t3(p);
    for (int v = -2 * (p - 1); v <= 2 * (p - 1); ++v)
      for (Elem a0 = 1; a0 < f.size(); ++a0)
        for (Elem a1 = 0; a1 < f.size(); ++a1)
          for (Elem a2 = 0; a2 < f.size(); ++a2) {
            const bool oracle = v % (p - 1) == 0 && powers.count({static_cast<int>(a0), static_cast<int>(a1), static_cast<int>(a2)});
            CHECK(in_local_kernel(series(f, v, {a0, a1, a2}), f) == oracle);
          }
  }
}

TEST_CASE("symbol laws on random elements") {
  std::mt19937_64 rng(99);
  for (auto [p, n, d] : std::vector<std::tuple<int, int, int>>{{3, 1, 1}, {2, 2, 2}, {5, 1, 3}, {7, 1, 1}, {3, 2, 2}}) {
    const Field l = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n * d));
    for (int i = 0; i < 300; ++i) {
      const auto f1 = random_local_element(l, 8, rng), f2 = random_local_element(l, 8, rng);
      const auto g = random_local_element(l, 8, rng);
      CHECK(tame_symbol(f1 * f2, g) == tame_symbol(f1, g) * tame_symbol(f2, g));
      CHECK((tame_symbol(f1, g) * tame_symbol(g, f1)).is_one());
      if (f1.agrees_with(LocalElement::constant(l, 1, 8))) continue;
      CHECK(tame_symbol(f1, f1.one_minus()).is_one());
      const auto u = LocalElement(l, 0, f1.unit_part()), w = LocalElement(l, 0, g.unit_part());
      CHECK(tame_symbol(u, w).is_one());
    }
  }
}

TEST_CASE("dropping the sign breaks the Steinberg relation") {
  const Field f5 = make_field(5, 1);
  const auto f = series(f5, -1, {2, 1, 0, 0});
  CHECK(tame_symbol(f, f.one_minus()).is_one());
  ScopedMutation m(Mutation::kDropSign);
  CHECK_FALSE(tame_symbol(f, f.one_minus()).is_one());
}

TEST_CASE("series arithmetic") {
  const Field f7 = make_field(7, 1);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_local_element(f7, 10, rng);
    CHECK((f * f.inverse()).agrees_with(LocalElement::constant(f7, 1, 10)));
    CHECK(f.pow(3).agrees_with(f * f * f));
    CHECK(f.pow(-2).agrees_with((f * f).inverse()));
  }
  // (1 + t) - 1 = t with one fewer known coefficient.
  const auto one_plus_t = series(f7, 0, {1, 1, 0, 0});
  const auto diff = one_plus_t - LocalElement::constant(f7, 1, 4);
  CHECK(diff.valuation() == 1);
  CHECK(diff.precision() == 3);
  CHECK_THROWS_AS(LocalElement::constant(f7, 1, 4) - LocalElement::constant(f7, 1, 4), Error);
}

TEST_CASE("local element literals") {
  const Field f9 = make_field(3, 2);
  const auto e = parse_local_element("-2; 3^2:1,2, 3^2:0,1, 3^2:2", f9);
  CHECK(e.valuation() == -2);
  CHECK(e.unit_part() == std::vector<Elem>{7, 3, 2});
  CHECK(parse_local_element(e.literal(), f9).agrees_with(e));
  CHECK_THROWS_AS(parse_local_element("3^2:1", f9), Error);
  CHECK_THROWS_AS(parse_local_element("1; 5^1:1", f9), Error);
}

TEST_CASE("sampling oracle for the local kernel") {
  for (auto [p, n, d] : std::vector<std::tuple<int, int, int>>{{3, 1, 1}, {5, 1, 2}, {2, 2, 1}}) {
    const auto rep = local_kernel_oracle(make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n)),
                                         static_cast<std::uint32_t>(d), 16, 500, 42);
    CHECK(rep.disagreements == 0);
    CHECK(rep.members > 0);
  }
  CHECK(local_kernel_oracle(make_field(2, 1), 3, 16, 10, 1).vacuous);
}
