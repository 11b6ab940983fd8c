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

#include <cstdint>
#include <string>
#include <vector>

#include "tamesym/abelian_group.hpp"

namespace tamesym {

struct RandomModel {
  PairingModel pairing;
  Subgroup B;
  Subgroup C;
  std::string family;
  std::uint64_t seed = 0;
};

/// Seeded random finite model with |A| <= max_order. Families:
///   hyperbolic  C = X in X + Y with X, Y paired perfectly, B random isotropic
///   lagrangian  as hyperbolic, with B = X1 + Y2 so that B = B^⊥ is expected
///   squarefree  hyperbolic over a squarefree m (every A' splits)
///   random      unstructured gram, B and C random isotropic
/// The presentation is scrambled by a random unimodular change of basis.
RandomModel random_model(std::uint64_t seed, std::int64_t max_order = 4096);

struct ModelOutcome {
  std::uint64_t seed = 0;
  std::string family;
  std::int64_t order = 0;
  bool alpha_iso = false;
  bool hypotheses = false;  // (i) and (ii)
  bool filtration_ok = true;
  bool beta_ok = true;
  Verdict cor_key = Verdict::kHypothesisFailed;
  Verdict cor_split = Verdict::kHypothesisFailed;
  bool enumeration_agrees = true;
  std::string failure;
  bool failed() const { return !failure.empty(); }
};

ModelOutcome run_model(const RandomModel& model);

struct AbelianCampaign {
  int requested = 0;
  int tried = 0;
  int with_hypotheses = 0;
  int cor_key_applicable = 0;
  int split_applicable = 0;
  int alpha_iso = 0;
  int failures = 0;
  std::vector<ModelOutcome> failed;
  double seconds = 0;
  bool passed() const { return failures == 0 && with_hypotheses >= requested; }
};

/// Draws models until `models` of them satisfy (i) and (ii), or the attempt
/// budget (20 per requested model) runs out.
AbelianCampaign run_abelian_campaign(int models, std::uint64_t seed, std::int64_t max_order = 4096);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace tamesym
