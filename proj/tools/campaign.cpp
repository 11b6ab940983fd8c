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

#include "campaign.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "tamesym/abelian_campaign.hpp"
#include "tamesym/error.hpp"
#include "tamesym/global_pairing.hpp"
#include "tamesym/mutation.hpp"

namespace tamesym::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kPayloadCap = 8;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot read fixture '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CurveModel load_curve(const std::string& path) {
  try {
    return parse_curve_fixture(read_file(path));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.detail());
  }
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_int64());
    rows.push_back(row);
  }
  return rows;
}

json check(std::string name, CheckVerdict v, std::string detail, json payload = json::array()) {
  return {{"name", std::move(name)},
          {"verdict", check_verdict_name(v)},
          {"detail", std::move(detail)},
          {"payload", std::move(payload)}};
}

json curve_check(const CurveModel& X, std::string name, CheckVerdict v, std::string detail,
                 json payload = json::array()) {
  json c = check(std::move(name), v, std::move(detail), std::move(payload));
  c["curve"] = X.describe();
  c["d_value"] = gcd_of_place_degrees(X, 1);
  return c;
}

// A library error inside a per-curve check becomes that check's verdict;
// fixture errors still abort the campaign.
template <typename Body>
void guarded(json& checks, const CurveModel& X, const std::string& name, Body&& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    const CheckVerdict v = e.code() == ErrorCode::kCapExceeded ? CheckVerdict::kIndeterminate : CheckVerdict::kFail;
    checks.push_back(curve_check(X, name, v, e.what()));
  }
}

std::vector<CurveModel> curves_of(const CampaignConfig& c) {
  if (c.curves.empty()) throw Error(ErrorCode::kParse, c.command + " needs --curve");
  std::vector<CurveModel> out;
  for (const auto& p : c.curves) out.push_back(load_curve(p));
  return out;
}

json symbol_factors_json(const std::vector<SymbolFactor>& fs, const CurveModel& X) {
  json out = json::array();
  for (const auto& f : fs) out.push_back({{"place", place_literal(f.place, X)}, {"value", f.value.literal()}});
  return out;
}

// ---------------------------------------------------------------------------

json run_reciprocity(const CampaignConfig& c) {
  json checks = json::array();
  const auto curves = curves_of(c);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const CurveModel& X = curves[i];
    std::mt19937_64 rng(derive_seed(c.seed, i));
    int failures = 0;
    json payload = json::array();
    for (int s = 0; s < c.samples; ++s) {
      const RationalFunction phi = random_nonzero_function(X, rng);
      const RationalFunction psi = random_nonzero_function(X, rng);
      const ReciprocityResult r = weil_reciprocity_check(phi, psi);
      if (r.holds) continue;
      ++failures;
      if (payload.size() < kPayloadCap)
        payload.push_back({{"sample", s},
                           {"phi", phi.literal()},
                           {"psi", psi.literal()},
                           {"value", r.value.literal()},
                           {"factors", symbol_factors_json(r.factors, X)}});
    }
    const CheckVerdict v =
        X.q() == 2 ? CheckVerdict::kVacuous : failures ? CheckVerdict::kFail : CheckVerdict::kPass;
    checks.push_back(curve_check(X, "weil-reciprocity", v,
                                 std::to_string(c.samples - failures) + "/" + std::to_string(c.samples) + " trivial",
                                 payload));
  }
  return checks;
}

json run_local_kernel(const CampaignConfig& c) {
  std::vector<Field> fields;
  if (c.curves.empty()) {
    for (auto [p, n] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) fields.push_back(make_field(p, n));
  } else {
    for (const auto& X : curves_of(c)) fields.push_back(X.base());
  }
  json checks = json::array();
  std::uint64_t index = 0;
  for (const Field& k : fields)
    for (int d = 1; d <= c.degree_bound; ++d) {
      const auto rep = local_kernel_oracle(k, static_cast<std::uint32_t>(d), c.precision, c.samples,
                                           derive_seed(c.seed, index++));
      const CheckVerdict v = rep.vacuous ? CheckVerdict::kVacuous
                             : rep.disagreements ? CheckVerdict::kFail
                                                 : CheckVerdict::kPass;
      json payload = json::array();
      for (const auto& e : rep.examples)
        if (payload.size() < kPayloadCap) payload.push_back(e);
      std::ostringstream os;
      os << "q=" << rep.q << " d=" << rep.d << " samples=" << rep.samples << " members=" << rep.members
         << " disagreements=" << rep.disagreements;
      checks.push_back(check("local-kernel", v, os.str(), payload));
    }
  return checks;
}

json matrices_json(const PairingMatrices& pm) {
  return {{"rows", pm.row_labels},       {"columns", pm.column_labels}, {"modulus", pm.n},
          {"W1", matrix_json(pm.w1)},    {"W2", matrix_json(pm.w2)},     {"W3", matrix_json(pm.w3)},
          {"agree", pm.agree},           {"well_defined", pm.well_defined},
          {"unimodular", pm.unimodular}, {"disagreements", pm.disagreements}};
}

json lemma_json(const FrobeniusLemmaReport& r) {
  return {{"kernel_order", r.kernel_order},     {"torsion_order", r.torsion_order},
          {"cokernel_order", r.cokernel_order}, {"cokernel_invariants", r.cokernel_invariants},
          {"cotorsion_order", r.cotorsion_order}, {"well_defined", r.well_defined},
          {"bijective", r.bijective}};
}

json run_kappa(const CampaignConfig& c) {
  json checks = json::array();
  for (const CurveModel& X : curves_of(c)) guarded(checks, X, "kappa", [&] {
    const std::int64_t n = X.q() - 1;
    if (n == 1) {
      checks.push_back(curve_check(X, "kappa", CheckVerdict::kVacuous, "q = 2"));
      return;
    }
    const PicardData pic = picard_group(X);
    const TorsionData tors = torsion_and_cotorsion(pic, n);
    const FrobeniusLemmaReport lemma = frobenius_lemma_check(tors);
    std::ostringstream ld;
    ld << "kernel " << lemma.kernel_order << ", Pic^0[n] " << lemma.torsion_order << ", cokernel " << lemma.cokernel_order
       << ", Pic^0/n " << lemma.cotorsion_order;
    if (!lemma.detail.empty()) ld << "; " << lemma.detail;
    checks.push_back(curve_check(X, "frobenius-lemma", lemma.verdict, ld.str(), lemma_json(lemma)));

    if (tors.torsion_basis.empty() && tors.cotorsion_basis.empty()) {
      checks.push_back(curve_check(X, "kappa-unimodular", CheckVerdict::kVacuous, "Pic^0[n] and Pic^0/n trivial"));
    } else {
      const IntMatrix K = kappa_matrix(tors, false, c.seed);
      const bool uni = check_unimodular(K, tors.torsion_orders, tors.cotorsion_orders, n).unimodular();
      checks.push_back(curve_check(X, "kappa-unimodular", uni ? CheckVerdict::kPass : CheckVerdict::kFail,
                                   "m=" + std::to_string(tors.m),
                                   {{"kappa", matrix_json(K)},
                                    {"torsion_orders", tors.torsion_orders},
                                    {"cotorsion_orders", tors.cotorsion_orders}}));
    }
    const PairingMatrices pm = pairing_matrix_three_ways(pic, tors, build_f_group(pic, tors), c.seed);
    std::string detail = pm.agree ? "W1 = W2 = W3" : std::to_string(pm.disagreements.size()) + " disagreements";
    detail += pm.unimodular ? ", unimodular" : ", not unimodular";
    checks.push_back(curve_check(X, "pairing-matrices", pm.verdict, detail, matrices_json(pm)));
  });
  return checks;
}

json abelian_check(int models, std::uint64_t seed, std::int64_t max_order, double& seconds) {
  const AbelianCampaign a = run_abelian_campaign(models, seed, max_order);
  seconds += a.seconds;
  json payload = json::array();
  for (const auto& m : a.failed)
    if (payload.size() < kPayloadCap)
      payload.push_back({{"seed", m.seed}, {"family", m.family}, {"order", m.order}, {"failure", m.failure}});
  std::ostringstream os;
  os << a.with_hypotheses << "/" << a.requested << " models with hypotheses (" << a.tried << " tried), cor-key "
     << a.cor_key_applicable << ", split " << a.split_applicable << ", alpha iso " << a.alpha_iso << ", failures "
     << a.failures;
  return check("abelian-campaign", a.passed() ? CheckVerdict::kPass : CheckVerdict::kFail, os.str(), payload);
}

json run_theorem(const CampaignConfig& c, double& seconds) {
  json checks = json::array();
  for (const CurveModel& X : curves_of(c)) guarded(checks, X, "theorem-finite", [&] {
    const TheoremReport r = verify_theorem_finite(X, c.seed);
    json payload = {{"d_value", r.d_value},
                    {"condition_i", r.condition_i},
                    {"window_places", r.window_places},
                    {"condition_ii", r.condition_ii},
                    {"f_group_order", r.f_group_order},
                    {"lemma", lemma_json(r.lemma)}};
    if (r.verdict != CheckVerdict::kVacuous) payload["matrices"] = matrices_json(r.matrices);
    checks.push_back(curve_check(X, "theorem-finite", r.verdict, r.detail, payload));
  });
  // The implication from the two hypotheses to B = B^perp, on finite models.
  json link = abelian_check(std::min(c.models, 100), c.seed, c.max_order, seconds);
  link["name"] = "cor-key-implication";
  checks.push_back(link);
  return checks;
}

json run_witness(const CampaignConfig& c) {
  const auto curves = curves_of(c);
  if (c.idele.empty()) throw Error(ErrorCode::kParse, "witness separate needs --idele");
  const CurveModel& X = curves.front();
  Idele f(X);
  try {
    f = parse_idele_fixture(read_file(c.idele), X);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, c.idele + ": " + e.detail());
  }
  if (!f.is_finitely_supported()) throw Error(ErrorCode::kParse, c.idele + ": witness search needs no shift");
  if (X.q() == 2) return json::array({curve_check(X, "separating-witness", CheckVerdict::kVacuous, "q = 2")});
  const PicardData pic = picard_group(X);
  const TorsionData tors = torsion_and_cotorsion(pic, X.q() - 1);
  const FGroupData fg = build_f_group(pic, tors);
  json payload = {{"degree", deg_idele(f)}, {"in_U", membership_name(in_U(f))}};
  try {
    const Witness w = separating_witness(f, pic, tors, fg, c.degree_bound);
    payload["stage"] = w.stage;
    payload["psi"] = w.psi ? json(w.psi->literal()) : json(nullptr);
    payload["value"] = w.value.literal();
    // Witnesses are rechecked here, outside the search.
    const bool ok = !w.psi || !global_tame_symbol(f, Idele::principal(*w.psi)).is_one();
    const std::string detail = w.psi ? "psi = " + w.psi->literal() + ", (f, psi)_X = " + w.value.literal() + "; " + w.detail
                                     : "none: " + w.detail;
    return json::array({curve_check(X, "separating-witness", ok ? CheckVerdict::kPass : CheckVerdict::kFail, detail,
                                    payload)});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kWitnessSearchExhausted) throw;
    return json::array(
        {curve_check(X, "separating-witness", CheckVerdict::kIndeterminate,
                     e.what(), payload)});
  }
}

}  // namespace

json config_to_json(const CampaignConfig& c) {
  return {{"command", c.command},           {"curves", c.curves},     {"idele", c.idele},
          {"models", c.models},             {"samples", c.samples},   {"seed", c.seed},
          {"precision", c.precision},       {"degree_bound", c.degree_bound},
          {"max_order", c.max_order},       {"mutation", c.mutation}, {"strict", c.strict}};
}

CampaignConfig config_from_json(const json& j) {
  CampaignConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.curves = j.at("curves").get<std::vector<std::string>>();
    c.idele = j.at("idele").get<std::string>();
    c.models = j.at("models").get<int>();
    c.samples = j.at("samples").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.precision = j.at("precision").get<int>();
    c.degree_bound = j.at("degree_bound").get<int>();
    c.max_order = j.at("max_order").get<std::int64_t>();
    c.mutation = j.at("mutation").get<std::string>();
    c.strict = j.at("strict").get<bool>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("report config: ") + e.what());
  }
  return c;
}

CommandResult run_campaign(const CampaignConfig& c) {
  const auto mutation = parse_mutation(c.mutation);
  if (!mutation) throw Error(ErrorCode::kParse, "unknown mutation '" + c.mutation + "'");
  if (c.samples < 0 || c.models < 0 || c.degree_bound < 1 || c.precision < 1 || c.precision > kMaxPrecision)
    throw Error(ErrorCode::kParse, "sample counts, degree bound or precision out of range");
  const ScopedMutation scope(*mutation);
  const auto start = std::chrono::steady_clock::now();
  double inner_seconds = 0;

  json checks;
  if (c.command == "verify reciprocity") {
    checks = run_reciprocity(c);
  } else if (c.command == "verify local-kernel") {
    checks = run_local_kernel(c);
  } else if (c.command == "verify kappa") {
    checks = run_kappa(c);
  } else if (c.command == "verify theorem-finite") {
    checks = run_theorem(c, inner_seconds);
  } else if (c.command == "verify abelian") {
    checks = json::array({abelian_check(c.models, c.seed, c.max_order, inner_seconds)});
  } else if (c.command == "witness separate") {
    checks = run_witness(c);
  } else {
    throw Error(ErrorCode::kParse, "unknown command '" + c.command + "'");
  }

  std::map<std::string, int> counts{{"PASS", 0}, {"FAIL", 0}, {"VACUOUS", 0}, {"INDETERMINATE", 0}};
  for (const auto& ch : checks) ++counts[ch.at("verdict").get<std::string>()];
  std::string verdict = "PASS";
  if (counts["FAIL"])
    verdict = "FAIL";
  else if (counts["INDETERMINATE"])
    verdict = "INDETERMINATE";
  else if (counts["PASS"] == 0)
    verdict = "VACUOUS";

  std::string id = c.command;
  std::replace(id.begin(), id.end(), ' ', '-');
  std::ostringstream sid;
  sid << id << "-" << std::hex << c.seed;

  CommandResult r;
  r.report = {{"version", kReportVersion},
              {"campaign", c.command},
              {"campaign_id", sid.str()},
              {"seed", c.seed},
              {"config", config_to_json(c)},
              {"checks", checks},
              {"summary", counts},
              {"warnings", counts["INDETERMINATE"]},
              {"verdict", verdict},
              {"timings",
               {{"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
                {"inner_seconds", inner_seconds}}}};
  if (verdict == "FAIL" || (verdict == "INDETERMINATE" && c.strict)) r.exit_code = kExitFail;
  return r;
}

json report_body(const json& report) {
  json body = report;
  body.erase("timings");
  return body;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace tamesym::cli
