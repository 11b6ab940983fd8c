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

#include "json.hpp"

namespace tamesym::cli {

inline constexpr int kReportVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitParse = 2 };

struct CampaignConfig {
  std::string command;  // "verify reciprocity", "witness separate", ...
  std::vector<std::string> curves;
  std::string idele;
  int models = 1000;
  int samples = 200;
  std::uint64_t seed = 0;
  int precision = 4;
  int degree_bound = 3;
  std::int64_t max_order = 4096;
  std::string mutation = "none";
  bool strict = false;
};

nlohmann::json config_to_json(const CampaignConfig& c);
CampaignConfig config_from_json(const nlohmann::json& j);

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
};

/// Runs one campaign. Fixture problems surface as tamesym::Error with
/// ErrorCode::kParse.
CommandResult run_campaign(const CampaignConfig& config);

/// The report without wall-clock timings: the part replay must reproduce.
nlohmann::json report_body(const nlohmann::json& report);

/// Serialized form used for --out and for replay comparison.
std::string render(const nlohmann::json& report);

}  // namespace tamesym::cli
