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
#include "tamesym/abelian_group.hpp"

using namespace tamesym;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (auto v : row) m(i, j++) = Integer(v);
    ++i;
  }
  return m;
}

IntVector vec(std::initializer_list<long long> v) {
  IntVector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto e : v) x(i++) = Integer(e);
  return x;
}

FgAbGroup z4z4() { return FgAbGroup::from_invariants({4, 4}); }

// <(a,b),(c,d)> = ad - bc mod 4
PairingModel symplectic44() { return PairingModel(z4z4(), 4, mat({{0, 1}, {-1, 0}}), Symmetry::kAntisymmetric); }

// Brute-force orthogonal over all elements of (Z/n)^k with a gram matrix.
std::set<std::vector<long long>> scan_orthogonal(long long n, const std::vector<std::vector<long long>>& gram,
                                                 const std::vector<std::vector<long long>>& E, long long m) {
  std::set<std::vector<long long>> out;
  const std::size_t k = gram.size();
  std::vector<long long> a(k, 0);
  for (;;) {
    bool ok = true;
    for (const auto& e : E) {
      long long v = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) v += a[i] * gram[i][j] * e[j];
      if (((v % m) + m) % m) ok = false;
    }
    if (ok) out.insert(a);
    std::size_t i = 0;
    while (i < k && ++a[i] == n) a[i++] = 0;
    if (i == k) break;
  }
  return out;
}

}  // namespace

TEST_CASE("smith normal form") {
  auto s = smith_normal_form(mat({{2, 4}, {4, 6}}));
  CHECK(s.D == mat({{2, 0}, {0, 2}}));
  CHECK(s.U * mat({{2, 4}, {4, 6}}) * s.V == s.D);
  CHECK(smith_normal_form(mat({{1, 0}, {0, 1}})).D == mat({{1, 0}, {0, 1}}));
  CHECK(smith_normal_form(mat({{0}})).D == mat({{0}}));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
  for (int t = 0; t < 200; ++t) {
    IntMatrix M(dim(rng), dim(rng));
    for (Eigen::Index i = 0; i < M.size(); ++i) M(i) = entry(rng);
    const auto s = smith_normal_form(M);
    REQUIRE(s.U * M * s.V == s.D);
    CHECK(s.U * s.U_inv == IntMatrix::Identity(M.rows(), M.rows()));
    CHECK(s.V * s.V_inv == IntMatrix::Identity(M.cols(), M.cols()));
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
      for (Eigen::Index j = 0; j < s.D.cols(); ++j)
        if (i != j) CHECK(s.D(i, j).is_zero());
    for (int i = 0; i + 1 < s.rank; ++i) CHECK((s.D(i + 1, i + 1) % s.D(i, i)).is_zero());
  }
}

TEST_CASE("subgroup sums and intersections") {
  const FgAbGroup A = z4z4();
  const Subgroup B(A, mat({{2}, {0}}));
  const Subgroup C(A, mat({{1}, {0}}));
  CHECK(intersection(B, C) == B);
  CHECK(intersection(B, C).order() == Integer(2));
  CHECK(sum(B, C) == C);
  CHECK(sum(B, C).order() == Integer(4));
  const Subgroup W = Subgroup::whole(A);
  CHECK(intersection(W, W) == W);
  const Subgroup D(A, mat({{0}, {1}}));
  CHECK(sum(C, D).order() == C.order() * D.order());
  CHECK_THROWS_AS(Subgroup(A, mat({{1}, {0}, {0}})), Error);
}

TEST_CASE("order formula for intersections and sums") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(0, 11);
  const FgAbGroup A = FgAbGroup::from_invariants({2, 6, 12});
  for (int t = 0; t < 100; ++t) {
    IntMatrix g1(3, 2), g2(3, 2);
    for (Eigen::Index i = 0; i < 6; ++i) {
      g1(i) = entry(rng);
      g2(i) = entry(rng);
    }
    const Subgroup E(A, g1), F(A, g2);
    CHECK(intersection(E, F).order() * sum(E, F).order() == E.order() * F.order());
  }
}

TEST_CASE("hom groups") {
  CHECK(hom_group(FgAbGroup::from_invariants({2}), 4).group.invariants64() == std::vector<std::int64_t>{2});
  CHECK(hom_group(FgAbGroup::from_invariants({9}), 4).group.invariants64().empty());
  const auto H = hom_group(FgAbGroup::from_invariants({2, 4}), 4);
  CHECK(H.group.invariants64() == std::vector<std::int64_t>{2, 4});
  CHECK(H.group.order() == Integer(8));
  CHECK_THROWS_AS(hom_group(FgAbGroup::from_invariants({0}), 4), Error);
  // Every basis homomorphism kills the relations.
  const FgAbGroup G(2, mat({{2, 0}, {2, 4}}));
  const auto HG = hom_group(G, 4);
  for (Eigen::Index i = 0; i < HG.values.rows(); ++i) {
    const IntMatrix v = HG.values.row(i) * G.relations();
    for (Eigen::Index j = 0; j < v.size(); ++j) CHECK(mod(v(j), 4).is_zero());
  }
}

TEST_CASE("ext groups and the Z/8 extension") {
  const ExtGroup e(std::vector<std::int64_t>{2}, 4);
  CHECK(e.group().invariants64() == std::vector<std::int64_t>{2});
  // 0 -> Z/4 -> Z/8 -> Z/2 -> 0 with section 0 -> 0, 1 -> 1: c(1, 1) = 2 in 2Z/8 = Z/4 -> 1.
  Cocycle z8 = {0, 0, 0, 1};
  CHECK(e.is_cocycle(z8));
  CHECK(e.invariants(z8) == std::vector<std::int64_t>{1});
  CHECK_FALSE(e.coboundary_solution(z8).has_value());
  // Z/4 x Z/2 is split: c(1,1) = 2 in Z/4 is a coboundary (h(1) = 1).
  Cocycle split = {0, 0, 0, 2};
  CHECK(e.coboundary_solution(split).has_value());
  CHECK(ExtGroup(std::vector<std::int64_t>{3, 9}, 4).group().invariants64().empty());
  CHECK(ExtGroup(std::vector<std::int64_t>{6}, 4).group().invariants64() == std::vector<std::int64_t>{2});
  CHECK_THROWS_AS(ExtGroup(std::vector<std::int64_t>{16, 17}, 4), Error);
}

TEST_CASE("baer sum laws") {
  for (std::int64_t m = 1; m <= 8; ++m)
    for (const auto& orders : std::vector<std::vector<std::int64_t>>{{2}, {4}, {2, 2}, {2, 4}, {3}, {4, 4}}) {
      const ExtGroup e(orders, m);
      std::vector<Cocycle> classes;
      const auto G = e.group().invariants64();
      std::vector<std::int64_t> inv(orders.size(), 0);
      for (std::size_t i = 0; i < orders.size(); ++i) {
        std::fill(inv.begin(), inv.end(), 0);
        inv[i] = 1;
        classes.push_back(e.from_invariants(inv));
      }
      classes.push_back(e.zero());
      for (const auto& a : classes)
        for (const auto& b : classes) {
          CHECK(e.cohomologous(e.baer_sum(a, b), e.baer_sum(b, a)));
          CHECK(e.cohomologous(e.baer_sum(a, e.zero()), a));
          CHECK(e.cohomologous(e.baer_sum(a, e.negate(a)), e.zero()));
          for (const auto& c : classes)
            CHECK(e.cohomologous(e.baer_sum(e.baer_sum(a, b), c), e.baer_sum(a, e.baer_sum(b, c))));
        }
      (void)G;
    }
}

TEST_CASE("orthogonals of the symplectic (Z/4)^2") {
  const auto P = symplectic44();
  const FgAbGroup& A = P.group();
  CHECK(P.orthogonal(Subgroup::trivial(A)) == Subgroup::whole(A));
  const Subgroup E(A, mat({{1}, {0}}));
  CHECK(P.orthogonal(E) == E);
  const Subgroup E2(A, mat({{2}, {0}}));
  const Subgroup perp = P.orthogonal(E2);
  CHECK(perp.order() == Integer(8));
  CHECK(perp.contains(vec({1, 2})));
  CHECK_FALSE(perp.contains(vec({0, 1})));
}

TEST_CASE("orthogonal agrees with a scan") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(0, 5);
  const long long n = 6;
  for (int t = 0; t < 30; ++t) {
    // Random symmetric gram on (Z/6)^3 with values in Z/6.
    std::vector<std::vector<long long>> g(3, std::vector<long long>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = entry(rng);
    IntMatrix G(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = g[i][j];
    const PairingModel P(FgAbGroup::from_invariants({6, 6, 6}), 6, G, Symmetry::kSymmetric);
    std::vector<long long> e{entry(rng), entry(rng), entry(rng)};
    const Subgroup E(P.group(), mat({{e[0]}, {e[1]}, {e[2]}}));
    const auto scan = scan_orthogonal(n, g, {e}, 6);
    const Subgroup perp = P.orthogonal(E);
    CHECK(perp.order() == Integer(static_cast<long long>(scan.size())));
    for (const auto& a : scan) CHECK(perp.contains(vec({a[0], a[1], a[2]})));
  }
}

TEST_CASE("alpha map") {
  const auto P = symplectic44();
  const FgAbGroup& A = P.group();
  CHECK(alpha_map(P, Subgroup(A, mat({{1}, {0}}))).map.iso());
  CHECK_FALSE(alpha_map(P, Subgroup::trivial(A)).map.iso());
  const PairingModel Z(FgAbGroup::from_invariants({2, 2}), 2, IntMatrix::Zero(2, 2), Symmetry::kSymmetric);
  const auto a = alpha_map(Z, Subgroup::whole(Z.group()));
  CHECK_FALSE(a.map.iso());
  CHECK_THROWS_AS(alpha_map(P, Subgroup::whole(A)), Error);
}

TEST_CASE("filtration on the symplectic (Z/4)^2") {
  const auto P = symplectic44();
  const FgAbGroup& A = P.group();
  const Subgroup B(A, mat({{2}, {0}}));
  const Subgroup C(A, mat({{1}, {0}}));
  const auto r = filtration(P, B, C);
  CHECK(r.hypothesis_i);
  CHECK(r.hypothesis_ii);
  CHECK(r.enumerated);
  CHECK(r.enumeration_agrees);
  CHECK(r.f0_mod_f1 == std::vector<std::int64_t>{2});
  CHECK(r.f1_mod_f2 == std::vector<std::int64_t>{2});
  CHECK(r.f2.empty());
  CHECK(r.conclusion());
  CHECK(r.beta_injective);

  const PairingModel Z(FgAbGroup::from_invariants({2, 2}), 2, IntMatrix::Zero(2, 2), Symmetry::kSymmetric);
  const auto z = filtration(Z, Subgroup::trivial(Z.group()), Subgroup::trivial(Z.group()));
  CHECK_FALSE(z.hypothesis_i);
  CHECK(z.f0_mod_f1 == std::vector<std::int64_t>{2, 2});
}

TEST_CASE("corollary B = B-perp") {
  const auto P = symplectic44();
  const FgAbGroup& A = P.group();
  const auto ok = check_cor_key(P, Subgroup(A, mat({{1}, {0}})), Subgroup(A, mat({{0}, {1}})));
  CHECK(ok.verdict == Verdict::kPass);
  const auto bad = check_cor_key(P, Subgroup(A, mat({{2}, {0}})), Subgroup(A, mat({{1}, {0}})));
  CHECK(bad.condition_i);
  CHECK_FALSE(bad.condition_ii);
  CHECK(bad.verdict == Verdict::kHypothesisFailed);
  const PairingModel Z(FgAbGroup(), 3, IntMatrix(0, 0), Symmetry::kSymmetric);
  CHECK(check_cor_key(Z, Subgroup::trivial(Z.group()), Subgroup::trivial(Z.group())).verdict == Verdict::kPass);
}

TEST_CASE("gamma and the splitting corollary") {
  const auto P = symplectic44();
  const FgAbGroup& A = P.group();
  const Subgroup B(A, mat({{2}, {0}}));
  const Subgroup C(A, mat({{1}, {0}}));
  // A' = {(a, b) : b even}; A'/(B+C) = Z/2 generated by (0, 2); λ_(0,2) sends (2,0) to -4 = 0.
  CHECK(gamma_map(P, B, C, vec({0, 2})).is_trivial());
  CHECK(gamma_map(P, B, C, vec({1, 0})).is_trivial());
  CHECK_THROWS_AS(gamma_map(P, B, C, vec({0, 1})), Error);
  const auto s = check_cor_split(P, B, C);
  CHECK(s.condition_i);
  CHECK_FALSE(s.condition_ii);
  CHECK_FALSE(s.complement_found);
  CHECK(s.verdict == Verdict::kHypothesisFailed);
}

TEST_CASE("gamma realizes the Z/8 extension") {
  // A = Z/8 s + Z/4 c, (s, c) = 1, C = <c>, B = <2s - c>. Then A' = A,
  // A'/C = Z/8 contains B = Z/4 and A'/(B+C) = Z/2.
  const PairingModel P(FgAbGroup::from_invariants({8, 4}), 4, mat({{0, 1}, {1, 0}}), Symmetry::kSymmetric);
  const FgAbGroup& A = P.group();
  const Subgroup B(A, mat({{2}, {-1}}));
  const Subgroup C(A, mat({{0}, {1}}));
  CHECK(alpha_map(P, C).map.iso());
  const auto g = gamma_map(P, B, C, vec({1, 0}));
  CHECK_FALSE(g.is_trivial());
  const ExtGroup e(std::vector<std::int64_t>{2}, 4);
  CHECK(e.cohomologous(g.cocycle, e.carry_cocycle(0)));
  CHECK(e.cohomologous(g.cocycle, Cocycle{0, 0, 0, 1}));
  CHECK(gamma_map(P, B, C, vec({0, 1})).is_trivial());
  CHECK(gamma_map(P, B, C, vec({2, -1})).is_trivial());
  // γ vanishes exactly on the image of B-perp.
  const auto s = check_cor_split(P, B, C);
  CHECK(s.condition_ii);
  CHECK(s.verdict == Verdict::kPass);
  CHECK(s.kernel_gamma_order == 1);
}
