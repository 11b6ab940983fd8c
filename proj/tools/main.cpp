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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "campaign.hpp"
#include "tamesym/error.hpp"

using tamesym::cli::CampaignConfig;

namespace {

void add_options(CLI::App* cmd, CampaignConfig& c, std::string& out) {
  cmd->add_option("--curve", c.curves, "curve fixture (repeatable)");
  cmd->add_option("--idele", c.idele, "idele fixture");
  cmd->add_option("--models", c.models, "number of random finite models");
  cmd->add_option("--samples", c.samples, "samples per curve or field");
  cmd->add_option("--seed", c.seed, "campaign seed")->required();
  cmd->add_option("--precision", c.precision, "series precision for local sampling");
  cmd->add_option("--degree-bound", c.degree_bound, "place / residue degree bound");
  cmd->add_option("--max-order", c.max_order, "order cap for random finite models");
  cmd->add_option("--out", out, "write the report here instead of stdout");
  cmd->add_flag("--strict", c.strict, "treat INDETERMINATE as failure");
  cmd->add_option("--inject-mutation", c.mutation, "none|drop-sign|norm-exponent|frobenius-inverse");
}

int emit(const nlohmann::json& report, const std::string& out) {
  const std::string text = tamesym::cli::render(report);
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return tamesym::cli::kExitParse;
  }
  f << text;
  return 0;
}

void summarize(const nlohmann::json& report) {
  std::cerr << report.at("campaign").get<std::string>() << ": " << report.at("verdict").get<std::string>();
  for (const auto& ch : report.at("checks"))
    if (ch.at("verdict") == "FAIL" || ch.at("verdict") == "INDETERMINATE")
      std::cerr << "\n  " << ch.at("verdict").get<std::string>() << " " << ch.at("name").get<std::string>() << ": "
                << ch.at("detail").get<std::string>();
  if (const int w = report.at("warnings").get<int>(); w > 0) std::cerr << "\n  warnings: " << w;
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification harness for tame symbols and the finite-level duality on curves over finite fields"};
  app.require_subcommand(0, 1);
  std::string replay, out;
  app.add_option("--replay", replay, "rerun the campaign recorded in a report and compare");
  app.add_option("--out", out, "report path for --replay");

  CampaignConfig config;
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->require_subcommand(1);
  for (const char* name : {"reciprocity", "local-kernel", "kappa", "theorem-finite", "abelian"}) {
    auto* sub = verify->add_subcommand(name);
    add_options(sub, config, out);
    sub->callback([&config, name] { config.command = std::string("verify ") + name; });
  }
  auto* witness = app.add_subcommand("witness", "separating witnesses");
  witness->require_subcommand(1);
  auto* separate = witness->add_subcommand("separate", "search psi with (f, psi)_X != 1");
  add_options(separate, config, out);
  separate->callback([&config] { config.command = "witness separate"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tamesym::cli::kExitParse;
  }

  try {
    if (!replay.empty()) {
      std::ifstream in(replay);
      if (!in) throw tamesym::Error(tamesym::ErrorCode::kParse, "cannot read report '" + replay + "'");
      nlohmann::json old;
      try {
        old = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw tamesym::Error(tamesym::ErrorCode::kParse, std::string("report: ") + e.what());
      }
      if (!old.contains("config"))
        throw tamesym::Error(tamesym::ErrorCode::kParse, "report without a config record");
      const auto result = tamesym::cli::run_campaign(tamesym::cli::config_from_json(old.at("config")));
      if (const int rc = emit(result.report, out)) return rc;
      const bool same = tamesym::cli::render(tamesym::cli::report_body(result.report)) ==
                        tamesym::cli::render(tamesym::cli::report_body(old));
      std::cerr << "replay " << (same ? "identical" : "DIVERGED") << "\n";
      return same ? result.exit_code : tamesym::cli::kExitFail;
    }
    if (config.command.empty()) {
      std::cerr << app.help();
      return tamesym::cli::kExitParse;
    }
    const auto result = tamesym::cli::run_campaign(config);
    if (const int rc = emit(result.report, out)) return rc;
    summarize(result.report);
    return result.exit_code;
  } catch (const tamesym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == tamesym::ErrorCode::kParse ? tamesym::cli::kExitParse : tamesym::cli::kExitFail;
  }
}
