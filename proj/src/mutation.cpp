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

#include "tamesym/mutation.hpp"

#include <atomic>

namespace tamesym {
namespace {
std::atomic<Mutation> g_mutation{Mutation::kNone};
}  // namespace

Mutation active_mutation() noexcept { return g_mutation.load(std::memory_order_relaxed); }

void set_mutation(Mutation m) noexcept { g_mutation.store(m, std::memory_order_relaxed); }

std::string_view mutation_name(Mutation m) {
  switch (m) {
    case Mutation::kNone: return "none";
    case Mutation::kDropSign: return "drop-sign";
    case Mutation::kNormExponent: return "norm-exponent";
    case Mutation::kFrobeniusInverse: return "frobenius-inverse";
  }
  return "?";
}

std::optional<Mutation> parse_mutation(std::string_view name) {
  for (Mutation m : {Mutation::kNone, Mutation::kDropSign, Mutation::kNormExponent,
                     Mutation::kFrobeniusInverse})
    if (mutation_name(m) == name) return m;
  return std::nullopt;
}

}  // namespace tamesym
