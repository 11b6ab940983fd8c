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

#include "tamesym/abelian_campaign.hpp"

#include <chrono>
#include <numeric>
#include <random>

namespace tamesym {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
}

std::vector<std::int64_t> divisors_above_one(std::int64_t m) {
  std::vector<std::int64_t> d;
  for (std::int64_t k = 2; k <= m; ++k)
    if (m % k == 0) d.push_back(k);
  return d;
}

std::int64_t unit_mod(Rng& rng, std::int64_t n) {
  if (n <= 1) return 1;
  for (;;) {
    const std::int64_t u = uniform(rng, 1, n - 1);
    if (std::gcd(u, n) == 1) return u;
  }
}

struct Draft {
  std::int64_t m = 2;
  Symmetry symmetry = Symmetry::kSymmetric;
  std::vector<std::int64_t> orders;  // generator orders
  Matrix<std::int64_t> gram;
  std::vector<std::vector<std::int64_t>> B, C;  // generator coordinates
};

// Smallest nonzero pairing value allowed between generators of orders a, b.
std::int64_t step(std::int64_t m, std::int64_t a, std::int64_t b) {
  return std::lcm(m / std::gcd(a, m), m / std::gcd(b, m));
}

void set_pair(Draft& d, int i, int j, std::int64_t v) {
  const std::int64_t m = d.m;
  d.gram(i, j) = ((v % m) + m) % m;
  const std::int64_t w = d.symmetry == Symmetry::kSymmetric ? v : -v;
  d.gram(j, i) = ((w % m) + m) % m;
}

std::int64_t pair(const Draft& d, const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) v = (v + x[i] * y[j] % d.m * d.gram(i, j)) % d.m;
  return v;
}

std::vector<std::vector<std::int64_t>> greedy_isotropic(Rng& rng, const Draft& d,
                                                        std::vector<std::vector<std::int64_t>> gens, int tries) {
  for (int t = 0; t < tries; ++t) {
    std::vector<std::int64_t> v(d.orders.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = uniform(rng, 0, d.orders[i] - 1);
    if (pair(d, v, v) != 0) continue;
    bool ok = true;
    for (const auto& g : gens)
      if (pair(d, v, g) != 0 || pair(d, g, v) != 0) {
        ok = false;
        break;
      }
    if (ok) gens.push_back(v);
  }
  return gens;
}

Draft hyperbolic(Rng& rng, std::int64_t m, std::int64_t max_order, bool allow_wide, int* pairs_out) {
  Draft d;
  d.m = m;
  d.symmetry = uniform(rng, 0, 1) ? Symmetry::kSymmetric : Symmetry::kAntisymmetric;
  const auto divs = divisors_above_one(m);
  int k = static_cast<int>(uniform(rng, 1, 3));
  // x: orders on the C side; y: orders on the paired side. y = 2x is allowed
  // when it does not change Hom(Z/y, Z/m), which keeps α an isomorphism.
  std::vector<std::int64_t> x, y;
  std::int64_t size = 1;
  for (int i = 0; i < k; ++i) {
    const std::int64_t o = pick(rng, divs);
    std::int64_t w = o;
    if (allow_wide && std::gcd(2 * o, m) == o && uniform(rng, 0, 2) == 0) w = 2 * o;
    if (size * o * w > max_order) break;
    size *= o * w;
    x.push_back(o);
    y.push_back(w);
  }
  if (x.empty()) {
    x.push_back(divs.front());
    y.push_back(divs.front());
  }
  k = static_cast<int>(x.size());
  *pairs_out = k;
  d.orders = x;
  d.orders.insert(d.orders.end(), y.begin(), y.end());
  d.gram = Matrix<std::int64_t>::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    const std::int64_t s = step(m, x[i], y[i]);
    set_pair(d, i, k + i, s * unit_mod(rng, m / s));
  }
  return d;
}

// Random entries on the Y x Y block, restricted to the index set `rows`.
void perturb(Rng& rng, Draft& d, int k, const std::vector<int>& rows, const std::vector<int>& cols) {
  for (int i : rows)
    for (int j : cols) {
      if (i > j && std::find(cols.begin(), cols.end(), i) != cols.end() &&
          std::find(rows.begin(), rows.end(), j) != rows.end())
        continue;
      if (i == j && d.symmetry == Symmetry::kAntisymmetric) continue;
      const std::int64_t s = step(d.m, d.orders[k + i], d.orders[k + j]);
      set_pair(d, k + i, k + j, s * uniform(rng, 0, d.m / s - 1));
    }
}

std::vector<std::int64_t> unit_vector(std::size_t n, std::size_t i) {
  std::vector<std::int64_t> v(n, 0);
  v[i] = 1;
  return v;
}

Draft draft_model(Rng& rng, const std::string& family, std::int64_t max_order) {
  static const std::vector<std::int64_t> kModuli{2, 3, 4, 5, 6, 8, 9, 10, 12};
  static const std::vector<std::int64_t> kSquarefree{2, 3, 5, 6, 10};
  int k = 0;
  if (family == "random") {
    Draft d;
    d.m = pick(rng, kModuli);
    d.symmetry = uniform(rng, 0, 1) ? Symmetry::kSymmetric : Symmetry::kAntisymmetric;
    const auto divs = divisors_above_one(d.m);
    std::int64_t size = 1;
    const int r = static_cast<int>(uniform(rng, 1, 5));
    for (int i = 0; i < r; ++i) {
      std::int64_t o = pick(rng, divs);
      if (uniform(rng, 0, 5) == 0) o *= 2;
      if (size * o > max_order) break;
      size *= o;
      d.orders.push_back(o);
    }
    if (d.orders.empty()) d.orders.push_back(divs.front());
    const int n = static_cast<int>(d.orders.size());
    d.gram = Matrix<std::int64_t>::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (i == j && d.symmetry == Symmetry::kAntisymmetric) continue;
        const std::int64_t s = step(d.m, d.orders[i], d.orders[j]);
        set_pair(d, i, j, s * uniform(rng, 0, d.m / s - 1));
      }
    d.C = greedy_isotropic(rng, d, {}, 2 * n);
    d.B = greedy_isotropic(rng, d, {}, 2 * n);
    return d;
  }
  const bool squarefree = family == "squarefree";
  const std::int64_t m = pick(rng, squarefree ? kSquarefree : kModuli);
  Draft d = hyperbolic(rng, m, max_order, family == "hyperbolic", &k);
  const auto n = static_cast<std::size_t>(2 * k);
  for (int i = 0; i < k; ++i) d.C.push_back(unit_vector(n, static_cast<std::size_t>(i)));
  std::vector<int> all(static_cast<std::size_t>(k));
  std::iota(all.begin(), all.end(), 0);
  if (family == "lagrangian") {
    const int k1 = static_cast<int>(uniform(rng, 0, k));
    std::vector<int> y1(all.begin(), all.begin() + k1);
    perturb(rng, d, k, y1, all);
    for (int i = 0; i < k1; ++i) d.B.push_back(unit_vector(n, static_cast<std::size_t>(i)));
    for (int i = k1; i < k; ++i) d.B.push_back(unit_vector(n, static_cast<std::size_t>(k + i)));
  } else {
    perturb(rng, d, k, all, all);
    d.B = greedy_isotropic(rng, d, {}, 3 * k);
  }
  return d;
}

IntMatrix columns(const std::vector<std::vector<std::int64_t>>& vs, std::size_t rows) {
  IntMatrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Integer(static_cast<long long>(vs[j][i]));
  return M;
}

}  // namespace

RandomModel random_model(std::uint64_t seed, std::int64_t max_order) {
  static const std::vector<std::string> kFamilies{"hyperbolic", "lagrangian", "squarefree", "random"};
  Rng rng(seed);
  const std::string family = pick(rng, kFamilies);
  const Draft d = draft_model(rng, family, max_order);
  const auto n = static_cast<Eigen::Index>(d.orders.size());

  // Change of basis: new generator i has old coordinates P.col(i).
  IntMatrix P = IntMatrix::Identity(n, n), Pinv = IntMatrix::Identity(n, n);
  if (n > 1)
    for (Eigen::Index t = 0; t < 2 * n; ++t) {
      const auto i = static_cast<Eigen::Index>(uniform(rng, 0, n - 1));
      auto j = static_cast<Eigen::Index>(uniform(rng, 0, n - 2));
      if (j >= i) ++j;
      const Integer c(static_cast<long long>(uniform(rng, -2, 2)));
      P.col(i) += P.col(j) * c;
      Pinv.row(j) -= Pinv.row(i) * c;
    }
  IntMatrix R = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) R(i, i) = Integer(static_cast<long long>(d.orders[static_cast<std::size_t>(i)]));
  const IntMatrix G = P.transpose() * to_int_matrix(d.gram) * P;
  FgAbGroup A(static_cast<int>(n), IntMatrix(Pinv * R));
  PairingModel pairing(A, d.m, G, d.symmetry);
  Subgroup B(A, IntMatrix(Pinv * columns(d.B, d.orders.size())));
  Subgroup C(A, IntMatrix(Pinv * columns(d.C, d.orders.size())));
  return {std::move(pairing), std::move(B), std::move(C), family, seed};
}

ModelOutcome run_model(const RandomModel& model) {
  ModelOutcome out;
  out.seed = model.seed;
  out.family = model.family;
  const PairingModel& P = model.pairing;
  out.order = P.group().order().to_int64();
  const FiltrationReport f = filtration(P, model.B, model.C);
  out.alpha_iso = f.hypothesis_i;
  out.hypotheses = f.hypotheses();
  out.enumeration_agrees = f.enumeration_agrees;
  std::string why;
  if (!f.enumeration_agrees) why += "lattice and enumeration disagree: " + f.detail;
  if (!f.iso_f0) {
    out.filtration_ok = false;
    why += "F0/F1 differs from Im(zeta); ";
  }
  if (out.hypotheses && !f.conclusion()) {
    out.filtration_ok = false;
    why += "adjoint quotient mismatch under (i)+(ii); ";
  }
  if (f.hypothesis_i && !f.beta_injective) {
    out.beta_ok = false;
    why += "beta not injective although alpha is an isomorphism; ";
  }
  out.cor_key = check_cor_key(P, model.B, model.C).verdict;
  if (out.cor_key == Verdict::kFail) why += "B != B-perp under the corollary's conditions; ";
  out.cor_split = check_cor_split(P, model.B, model.C).verdict;
  if (out.cor_split == Verdict::kFail) why += "Ker(gamma) != Im(zeta) on a splitting model; ";
  out.failure = why;
  return out;
}

AbelianCampaign run_abelian_campaign(int models, std::uint64_t seed, std::int64_t max_order) {
  const auto start = std::chrono::steady_clock::now();
  AbelianCampaign c;
  c.requested = models;
  const int budget = 20 * std::max(models, 1);
  for (int i = 0; i < budget && c.with_hypotheses < models; ++i) {
    const RandomModel model = random_model(derive_seed(seed, static_cast<std::uint64_t>(i)), max_order);
    const ModelOutcome o = run_model(model);
    ++c.tried;
    c.with_hypotheses += o.hypotheses;
    c.alpha_iso += o.alpha_iso;
    c.cor_key_applicable += o.cor_key != Verdict::kHypothesisFailed;
    c.split_applicable += o.cor_split != Verdict::kHypothesisFailed;
    if (o.failed()) {
      ++c.failures;
      if (c.failed.size() < 20) c.failed.push_back(o);
    }
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

}  // namespace tamesym
