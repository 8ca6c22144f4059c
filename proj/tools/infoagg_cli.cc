// Copyright 2026 The infoagg Authors
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

// infoagg command-line driver.
//
// Exit codes: 0 success, 1 a reproduction or acceptance check failed,
// 2 usage error, 3 parse or input error, 4 any other library error.

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoagg/core_model.h"
#include "infoagg/discrete_prob.h"
#include "infoagg/elicitation.h"
#include "infoagg/equilibrium.h"
#include "infoagg/error.h"
#include "infoagg/impossibility.h"
#include "infoagg/io.h"
#include "infoagg/majority_vote.h"
#include "infoagg/reproduce.h"
#include "infoagg/truthful_mechanism.h"

namespace infoagg {
namespace {

using nlohmann::json;

enum class Format { kHuman, kJson, kCsv };

struct Options {
  Format format = Format::kHuman;
  std::uint64_t seed = 42;
};

std::uint64_t DefaultSeed() {
  if (const char* env = std::getenv("INFOAGG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      Fail(ErrorKind::kUsage, std::string("INFOAGG_SEED is not an unsigned integer: ") + env);
    }
  }
  return 42;
}

// Dotted-path key,value rows for any JSON value.
void Flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      Flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) Flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void Emit(const json& j, const Options& o, const std::string& human) {
  switch (o.format) {
    case Format::kJson:
      std::cout << j.dump(2) << "\n";
      break;
    case Format::kCsv:
      std::cout << "key,value\n";
      Flatten(j, "", std::cout);
      break;
    case Format::kHuman:
      std::cout << human;
      break;
  }
}

std::string Num(double x, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

std::string Strategy(const VotingStrategy& s) {
  return "(δ_l, δ_h) = (" + Num(s.delta_l) + ", " + Num(s.delta_h) + "), (β_l, β_h) = (" +
         Num(s.beta_l()) + ", " + Num(s.beta_h()) + ")";
}

// Field-level parse errors carry the file name.
template <typename F>
auto FromFile(const std::string& path, F&& read) {
  const json j = io::ParseJson(io::ReadFile(path), path);
  try {
    return read(j);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kParse) throw;
    Fail(ErrorKind::kParse, path + ": " + e.what());
  }
}

Instance LoadInstance(const std::string& path) {
  return FromFile(path, [](const json& j) { return io::InstanceFromJson(j); });
}

SymmetricProfile LoadProfile(const std::string& path, const SignalModel& sm) {
  return FromFile(path, [&](const json& j) { return io::ProfileFromJson(j, sm); });
}

int RunAnalyze(const std::string& path, const Options& o) {
  const Configuration c =
      FromFile(path, [](const json& j) { return io::ConfigurationFromJson(j); });
  RequireValid(c);
  const SignalModel& sm = c.signal_model;
  const auto a = AnalyzeMajorityVote(sm);
  const double theta_star = ThetaStar(sm);
  const bool unbiased = std::abs(sm.p_h_given_H + sm.p_h_given_L - 1.0) <= 1e-12;
  json j = io::ToJson(a);
  j["theta_star"] = theta_star;
  j["theta_maj_ge_theta_star"] = a.theta_maj >= theta_star - 1e-12;
  j["unbiased_signals"] = unbiased;
  j["alpha"] = c.alpha();
  j["majority_type"] = ToString(c.majority_type());
  j["majority_vote_above_threshold"] = c.alpha() > a.theta_maj;
  j["mechanism_above_threshold"] = c.alpha() > theta_star;

  std::ostringstream h;
  h << "signal model: μ = " << Num(sm.mu) << ", P_h^H = " << Num(sm.p_h_given_H)
    << ", P_h^L = " << Num(sm.p_h_given_L) << ", Δ = " << Num(sm.delta()) << "\n";
  h << "optimal strategy: " << Strategy(a.optimal_strategy) << "\n";
  h << "shares at optimum: p_A^H = " << Num(a.shares_at_optimum.a_in_H)
    << ", p_R^L = " << Num(a.shares_at_optimum.r_in_L) << "\n";
  h << "M = " << Num(a.m_value, 10) << "\n";
  h << "θ_maj = 1/(2M) = " << Num(a.theta_maj, 10) << "\n";
  h << "θ* = 1/(Δ+1) = " << Num(theta_star, 10) << "\n";
  h << "θ_maj ≥ θ*: " << (a.theta_maj >= theta_star - 1e-12 ? "yes" : "no")
    << (unbiased ? " (equal: P_h^L + P_h^H = 1)" : "") << "\n";
  h << "α = " << Num(c.alpha()) << " (majority " << ToString(c.majority_type())
    << "): majority vote " << (c.alpha() > a.theta_maj ? "above" : "at or below")
    << " θ_maj, mechanism " << (c.alpha() > theta_star ? "above" : "at or below") << " θ*\n";
  Emit(j, o, h.str());
  return 0;
}

int RunElection(const std::string& instance_path, const std::string& profile_path, bool exact,
                std::int64_t trials, const Options& o) {
  const Instance inst = LoadInstance(instance_path);
  RequireValid(inst);
  const SymmetricProfile p = LoadProfile(profile_path, inst.configuration.signal_model);
  json j;
  std::ostringstream h;
  const double mu = inst.configuration.signal_model.mu;
  if (exact) {
    const auto shape = InstanceShape::Of(inst.configuration, inst.n);
    const auto out = ExactOutcomeDistribution(shape, p, inst.configuration);
    const double imd = ImdWinProbability(out, inst.configuration);
    j = {{"mode", "exact"}, {"outcome", io::ToJson(out)}, {"imd_win_probability", imd}};
    h << "exact outcome (n = " << inst.n << ")\n";
    h << "λ_A^H = " << Num(out.lambda_A_H, 12) << ", λ_A^L = " << Num(out.lambda_A_L, 12) << "\n";
    h << "Pr[IMD] = " << Num(imd, 12) << "\n";
  } else {
    const auto r = SimulateElection(inst, p, trials, o.seed);
    j = {{"mode", "simulate"}, {"seed", o.seed}, {"result", io::ToJson(r)}};
    h << "simulation (n = " << inst.n << ", " << r.trials_per_state
      << " trials per state, seed " << o.seed << ")\n";
    h << "λ_A^H ≈ " << Num(r.lambda_A_H) << ", λ_A^L ≈ " << Num(r.lambda_A_L) << "\n";
    h << "IMD frequency ≈ " << Num(r.imd_frequency) << " (μ = " << Num(mu) << ")\n";
  }
  Emit(j, o, h.str());
  return 0;
}

int RunEquilibrium(const std::string& instance_path, const std::string& profile_path,
                   const std::string& epsilon, double grid,
                   const std::set<std::string>& families, const Options& o) {
  const Instance inst = LoadInstance(instance_path);
  RequireValid(inst);
  const SymmetricProfile p = LoadProfile(profile_path, inst.configuration.signal_model);
  VerifierOptions v;
  v.grid_step = grid;
  v.search_minority = families.count("minority") > 0;
  v.search_majority = families.count("majority") > 0;
  v.search_mixed = families.count("mixed") > 0;
  if (epsilon == "auto") {
    v.epsilon = DefaultEpsilon(ComputeBoundConstants(inst));
  } else {
    try {
      size_t used = 0;
      v.epsilon = std::stod(epsilon, &used);
      if (used != epsilon.size()) throw std::invalid_argument(epsilon);
    } catch (const std::exception&) {
      Fail(ErrorKind::kUsage, "--epsilon must be 'auto' or a number, got '" + epsilon + "'");
    }
  }
  const auto verdict = VerifyEpsilonStrongBne(inst, p, v);
  std::ostringstream h;
  h << "ε = " << Num(verdict.epsilon) << ", grid step " << Num(verdict.grid_step) << ", "
    << verdict.deviations_evaluated << " deviations evaluated\n";
  h << "Pr[IMD] = " << Num(verdict.imd_win_probability, 10) << "\n";
  h << "verdict: " << (verdict.is_epsilon_equilibrium ? "ε-strong BNE within the searched families"
                                                      : "not an ε-strong BNE")
    << "\n";
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    h << "witness: " << ToString(w.family) << " via " << w.construction << ", coalition size "
      << w.coalition_size << ", max gain " << Num(w.max_gain, 10) << "\n";
    h << "  deviation L: " << Strategy(w.deviation.strategy_for_L) << "\n";
    h << "  deviation H: " << Strategy(w.deviation.strategy_for_H) << "\n";
  }
  h << "scope: " << verdict.search_scope << "\n";
  Emit(io::ToJson(verdict), o, h.str());
  return 0;
}

int RunMechanismCommand(const std::string& path, const Options& o) {
  const auto reports = io::ParseReportsCsv(io::ReadFile(path), path);
  if (reports.empty()) Fail(ErrorKind::kInput, path + ": no reports");
  const auto t = RunMechanism(reports, static_cast<std::int64_t>(reports.size()));
  std::ostringstream h;
  h << "identified majority: " << ToString(t.identified_majority)
    << (t.majority_tie ? " (type tie, resolved to H)" : "") << "\n";
  h << "collective threshold: " << Num(t.collective_threshold) << "\n";
  h << "l-frequency: " << Num(t.l_frequency) << " (" << t.l_reports << " of " << reports.size()
    << ")\n";
  h << "assessed state: " << ToString(t.assessed_state) << ", output: " << ToString(t.output)
    << "\n";
  Emit(io::ToJson(t), o, h.str());
  return 0;
}

int RunElicit(const std::string& path, const std::string& emit, const Options& o) {
  const auto responses = io::ParseQuestionnaireCsv(io::ReadFile(path), path);
  const auto agg = AggregateReports(responses);
  if (!emit.empty()) io::WriteFile(emit, io::ReportsToCsv(agg.reports));
  std::ostringstream h;
  h << agg.reports.size() << " accepted, " << agg.excluded.size() << " excluded\n";
  for (size_t i = 0; i < agg.reports.size(); ++i) {
    h << "  #" << agg.sources[i] << ": type " << ToString(agg.reports[i].declared_type)
      << ", signal " << ToString(agg.reports[i].declared_signal) << ", Δ = "
      << Num(agg.recovered[i].delta) << ", threshold = " << Num(agg.recovered[i].threshold)
      << "\n";
  }
  for (const auto& e : agg.excluded) {
    h << "  #" << e.index << " excluded (" << ErrorKindName(e.kind) << "): " << e.reason << "\n";
  }
  h << "Δ spread " << Num(agg.delta_spread) << (agg.coherent ? " (coherent)" : " (incoherent)")
    << "\n";
  if (o.format == Format::kCsv) {
    std::cout << io::ReportsToCsv(agg.reports);
    return 0;
  }
  Emit(io::ToJson(agg), o, h.str());
  return 0;
}

std::vector<std::int64_t> ParseCounts(const std::string& list) {
  std::vector<std::int64_t> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      Fail(ErrorKind::kUsage, "--n expects a comma-separated list of positive integers, got '" +
                                  item + "'");
    }
  }
  if (out.empty()) Fail(ErrorKind::kUsage, "--n must list at least one count");
  return out;
}

int RunTvd(double alpha, double delta, const std::string& list, const std::string& csv,
           const Options& o) {
  const auto ns = ParseCounts(list);
  const auto rows = TvdDecayExperiment(alpha, delta, ns);
  if (!csv.empty()) io::WriteFile(csv, io::TvdRowsToCsv(rows));
  if (o.format == Format::kCsv) {
    std::cout << io::TvdRowsToCsv(rows);
    return 0;
  }
  json j = json::array();
  std::ostringstream h;
  h << "α = " << Num(alpha) << ", Δ = " << Num(delta) << "\n";
  h << std::setw(8) << "n" << std::setw(14) << "q" << std::setw(16) << "TVD" << std::setw(16)
    << "bound" << std::setw(14) << "TVD·√n" << "\n";
  for (const auto& r : rows) {
    j.push_back(io::ToJson(r));
    h << std::setw(8) << r.n << std::setw(14) << Num(r.q) << std::setw(16) << Num(r.tvd)
      << std::setw(16) << Num(r.bound) << std::setw(14) << Num(r.tvd_sqrt_n) << "\n";
  }
  Emit(j, o, h.str());
  return 0;
}

int RunDistribution(const std::string& kind, std::int64_t n, double p, double alpha, double delta,
                    const std::string& state, const std::string& out) {
  CountDistribution d;
  if (kind == "binomial") {
    d = Binomial(n, p);
  } else if (kind == "counting") {
    const auto c = MakeCountingDistributions(MakeExperiment(alpha, delta, n));
    if (state != "H" && state != "L") Fail(ErrorKind::kUsage, "--state must be H or L");
    d = state == "H" ? c.in_H : c.in_L;
  } else {
    Fail(ErrorKind::kUsage, "--kind must be binomial or counting");
  }
  const std::string csv = io::DistributionToCsv(d);
  if (out.empty()) {
    std::cout << csv;
  } else {
    io::WriteFile(out, csv);
  }
  return 0;
}

int RunReproduce(const std::string& id, const Options& o) {
  std::vector<std::string> ids;
  if (id == "all") {
    ids = ReproductionIds();
  } else {
    ids = {id};
  }
  bool ok = true;
  json j = json::array();
  std::ostringstream h;
  std::ostringstream csv;
  csv << "id,check,expected,actual,tolerance,pass\n";
  for (const auto& name : ids) {
    const auto r = Reproduce(name);
    ok = ok && r.all_pass();
    json checks = json::array();
    h << r.id << ": " << r.description << "\n";
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name},
                        {"expected", c.expected},
                        {"actual", c.actual},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
      h << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(44) << c.name
        << std::right << " expected " << Num(c.expected, 12) << "  got " << Num(c.actual, 12)
        << "  tol " << Num(c.tolerance) << "\n";
      csv << r.id << "," << c.name << "," << io::json(c.expected).dump() << ","
          << io::json(c.actual).dump() << "," << c.tolerance << "," << (c.pass ? 1 : 0) << "\n";
    }
    j.push_back({{"id", r.id}, {"description", r.description}, {"checks", checks},
                 {"pass", r.all_pass()}});
  }
  if (o.format == Format::kCsv) {
    std::cout << csv.str();
  } else {
    Emit(j, o, h.str());
  }
  return ok ? 0 : 1;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return 2;
    case ErrorKind::kParse:
    case ErrorKind::kInput:
      return 3;
    default:
      return 4;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Information aggregation under contingent preferences: majority vote analysis, "
               "equilibrium checks, the threshold mechanism, elicitation and "
               "indistinguishability experiments."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::string format;
  app.add_option("--format", format,
                 "Output format: human, json or csv (default human; json for "
                 "equilibrium-check and mechanism run)")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  o.seed = DefaultSeed();
  app.add_option("--seed", o.seed, "Random seed (default 42, or INFOAGG_SEED)")
      ->capture_default_str();

  std::string config_path;
  auto* analyze = app.add_subcommand("analyze", "Optimal strategy, M, θ_maj and θ*");
  analyze->add_option("config", config_path, "Configuration JSON")->required();

  std::string instance_path, profile_path;
  bool exact = false, simulate = false;
  std::int64_t trials = 10000;
  auto* election = app.add_subcommand("election", "Outcome of a majority vote election");
  election->add_option("--instance", instance_path, "Instance JSON")->required();
  election->add_option("--profile", profile_path, "Profile JSON")->required();
  auto* exact_flag = election->add_flag("--exact", exact, "Exact outcome distribution");
  auto* sim_flag = election->add_flag("--simulate", simulate, "Monte Carlo estimate");
  exact_flag->excludes(sim_flag);
  election->add_option("--trials", trials, "Trials per state for --simulate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string epsilon = "auto";
  double grid = 0.05;
  std::vector<std::string> family_list{"minority", "majority", "mixed"};
  auto* eq = app.add_subcommand("equilibrium-check", "ε-strong Bayes Nash equilibrium verifier");
  eq->add_option("--instance", instance_path, "Instance JSON")->required();
  eq->add_option("--profile", profile_path, "Profile JSON")->required();
  eq->add_option("--epsilon", epsilon, "'auto' for the finite-n constant, or a number")
      ->capture_default_str();
  eq->add_option("--grid", grid, "Strategy grid step")
      ->check(CLI::Range(1e-3, 0.5))
      ->capture_default_str();
  eq->add_option("--families", family_list, "Coalition families to search")
      ->delimiter(',')
      ->check(CLI::IsMember({"minority", "majority", "mixed"}))
      ->capture_default_str();

  std::string reports_path;
  auto* mechanism = app.add_subcommand("mechanism", "Threshold mechanism");
  mechanism->require_subcommand(1);
  mechanism->fallthrough();
  auto* run = mechanism->add_subcommand("run", "Run on a report CSV (type,signal,threshold)");
  run->add_option("--reports", reports_path, "Report CSV")->required();

  std::string responses_path, emit_path;
  auto* elicit = app.add_subcommand("elicit", "Recover reports from questionnaire answers");
  elicit->add_option("--responses", responses_path,
                     "Questionnaire CSV (pref_L,signal,peer_l,posterior_L,cf_peer_l,"
                     "cf_posterior_L)")
      ->required();
  elicit->add_option("--emit-reports", emit_path, "Write the mechanism report CSV here");

  double alpha = 0.7, delta = 0.25;
  std::string n_list = "400,1600,6400";
  std::string csv_path;
  auto* tvd = app.add_subcommand("impossibility-tvd", "Exact TVD decay of the count laws");
  tvd->add_option("--alpha", alpha, "Majority fraction")->capture_default_str();
  tvd->add_option("--delta", delta, "Signal gap Δ")->capture_default_str();
  tvd->add_option("--n", n_list, "Comma-separated agent counts")->capture_default_str();
  tvd->add_option("--csv", csv_path, "Write n,tvd,bound,tvd_sqrt_n here");

  std::string kind = "binomial", state = "H", out_path;
  std::int64_t dist_n = 10;
  double p = 0.5;
  auto* dist = app.add_subcommand("distribution", "Dump a count distribution as CSV");
  dist->add_option("--kind", kind, "binomial or counting")
      ->check(CLI::IsMember({"binomial", "counting"}))
      ->capture_default_str();
  dist->add_option("--n", dist_n, "Trials, or agents for counting")->capture_default_str();
  dist->add_option("--p", p, "Success probability for binomial")->capture_default_str();
  dist->add_option("--alpha", alpha, "Majority fraction for counting")->capture_default_str();
  dist->add_option("--delta", delta, "Signal gap for counting")->capture_default_str();
  dist->add_option("--state", state, "H or L for counting")->capture_default_str();
  dist->add_option("--out", out_path, "Output CSV (stdout when omitted)");

  std::string example = "all";
  auto* reproduce = app.add_subcommand("reproduce", "Recompute a registered worked example");
  std::string ids;
  for (const auto& id : ReproductionIds()) ids += (ids.empty() ? "" : ", ") + id;
  reproduce->add_option("id", example, "Example id or 'all': " + ids)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (format.empty()) format = *eq || *run ? "json" : "human";
  o.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kHuman;

  try {
    if (*analyze) return RunAnalyze(config_path, o);
    if (*election) {
      if (!exact && !simulate) Fail(ErrorKind::kUsage, "election needs --exact or --simulate");
      return RunElection(instance_path, profile_path, exact, trials, o);
    }
    if (*eq) {
      return RunEquilibrium(instance_path, profile_path, epsilon, grid,
                            {family_list.begin(), family_list.end()}, o);
    }
    if (*run) return RunMechanismCommand(reports_path, o);
    if (*elicit) return RunElicit(responses_path, emit_path, o);
    if (*tvd) return RunTvd(alpha, delta, n_list, csv_path, o);
    if (*dist) return RunDistribution(kind, dist_n, p, alpha, delta, state, out_path);
    if (*reproduce) return RunReproduce(example, o);
  } catch (const Error& e) {
    std::cerr << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  }
  return 2;
}

}  // namespace
}  // namespace infoagg

int main(int argc, char** argv) { return infoagg::Main(argc, argv); }
