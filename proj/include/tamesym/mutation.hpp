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

#include <optional>
#include <string_view>

namespace tamesym {

// Deliberate faults that the verification campaigns must detect. They exist
// only so the test suites can prove they are not vacuous; production runs
// always use kNone.
enum class Mutation {
  kNone,
  kDropSign,          // tame symbol without the (-1)^{v(f)v(g)} factor
  kNormExponent,      // norm raised to twice the correct exponent
  kFrobeniusInverse,  // Fr_* replaced by the inverse Frobenius
};

Mutation active_mutation() noexcept;
void set_mutation(Mutation m) noexcept;
std::string_view mutation_name(Mutation m);
std::optional<Mutation> parse_mutation(std::string_view name);

class ScopedMutation {
 public:
  explicit ScopedMutation(Mutation m) : previous_(active_mutation()) { set_mutation(m); }
  ~ScopedMutation() { set_mutation(previous_); }
  ScopedMutation(const ScopedMutation&) = delete;
  ScopedMutation& operator=(const ScopedMutation&) = delete;

 private:
  Mutation previous_;
};

}  // namespace tamesym
