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

#include "infoagg/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "infoagg/error.h"

namespace infoagg::io {
namespace {

[[noreturn]] void ParseFail(const std::string& message) { Fail(ErrorKind::kParse, message); }

std::string Child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& Member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) ParseFail("field '" + (path.empty() ? "<root>" : path) + "' must be an object");
  const auto it = j.find(key);
  if (it == j.end()) ParseFail("missing field '" + Child(path, key) + "'");
  return *it;
}

double Number(const json& j, const std::string& key, const std::string& path) {
  const json& v = Member(j, key, path);
  if (!v.is_number()) ParseFail("field '" + Child(path, key) + "' must be a number");
  return v.get<double>();
}

std::int64_t Integer(const json& j, const std::string& key, const std::string& path) {
  const json& v = Member(j, key, path);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  ParseFail("field '" + Child(path, key) + "' must be an integer");
}

std::string Text(const json& j, const std::string& key, const std::string& path) {
  const json& v = Member(j, key, path);
  if (!v.is_string()) ParseFail("field '" + Child(path, key) + "' must be a string");
  return v.get<std::string>();
}

AgentType ParseType(const std::string& s, const std::string& where) {
  if (s == "L") return AgentType::kTypeL;
  if (s == "H") return AgentType::kTypeH;
  ParseFail(where + ": type must be L or H, got '" + s + "'");
}

Signal ParseSignal(const std::string& s, const std::string& where) {
  if (s == "l") return Signal::kL;
  if (s == "h") return Signal::kH;
  ParseFail(where + ": signal must be l or h, got '" + s + "'");
}

Alternative ParseAlternative(const std::string& s, const std::string& where) {
  if (s == "A") return Alternative::kA;
  if (s == "R") return Alternative::kR;
  ParseFail(where + ": alternative must be A or R, got '" + s + "'");
}

// Shortest representation that round-trips.
std::string Format(double x) { return json(x).dump(); }

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double ParseDouble(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    ParseFail(where + ": expected a number, got '" + s + "'");
  }
  return v;
}

// Data rows of a CSV with a fixed header; blank lines are skipped.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRow> ReadCsv(const std::string& text, const std::string& source,
                            const std::vector<std::string>& header) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  bool seen_header = false;
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    auto fields = Split(Trim(line));
    const std::string where = source + ":" + std::to_string(number);
    if (!seen_header) {
      if (fields != header) {
        std::string expected;
        for (size_t i = 0; i < header.size(); ++i) expected += (i ? "," : "") + header[i];
        ParseFail(where + ": expected header '" + expected + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      ParseFail(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                std::to_string(fields.size()));
    }
    rows.push_back({number, std::move(fields)});
  }
  if (!seen_header) ParseFail(source + ": empty file, missing header");
  return rows;
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kInput, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kInput, "cannot write '" + path + "'");
  out << content;
}

json ParseJson(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i < end; ++i) line += text[i] == '\n';
    ParseFail(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

Configuration ConfigurationFromJson(const json& j) {
  Configuration c;
  c.signal_model.mu = Number(j, "mu", "");
  c.signal_model.p_h_given_H = Number(j, "p_h_given_H", "");
  c.signal_model.p_h_given_L = Number(j, "p_h_given_L", "");
  c.alpha_L = Number(j, "alpha_L", "");
  c.alpha_H = Number(j, "alpha_H", "");
  return c;
}

Instance InstanceFromJson(const json& j) {
  Instance inst;
  inst.configuration = ConfigurationFromJson(j);
  inst.n = Integer(j, "n", "");
  const json& list = Member(j, "utilities", "");
  if (!list.is_array()) ParseFail("field 'utilities' must be an array");
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string path = "utilities[" + std::to_string(i) + "]";
    const json& u = list[i];
    const AgentType t = ParseType(Text(u, "type", path), "field '" + path + ".type'");
    const auto entry = [&](const char* k) { return static_cast<int>(Integer(u, k, path)); };
    const int la = entry("vLA"), lr = entry("vLR"), ha = entry("vHA"), hr = entry("vHR");
    const UtilityFunction f(t, la, lr, ha, hr);
    std::int64_t count = 1;
    if (u.contains("count")) count = Integer(u, "count", path);
    if (count < 0) ParseFail("field '" + path + ".count' must be non-negative");
    for (std::int64_t k = 0; k < count; ++k) inst.utilities.push_back(f);
  }
  return inst;
}

VotingStrategy StrategyFromJson(const json& j, AgentType owner, const SignalModel& sm,
                                const std::string& path) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "optimal") return OptimalStrategyFor(owner, sm);
    if (name == "informative") return VotingStrategy::Informative();
    if (name == "always-A") return VotingStrategy::AlwaysA();
    if (name == "always-R") return VotingStrategy::AlwaysR();
    if (name == "neutral") return VotingStrategy::Neutral();
    ParseFail("field '" + path + "': unknown strategy '" + name +
              "' (optimal, informative, always-A, always-R, neutral)");
  }
  return VotingStrategy{Number(j, "delta_l", path), Number(j, "delta_h", path)};
}

SymmetricProfile ProfileFromJson(const json& j, const SignalModel& sm) {
  SymmetricProfile p;
  p.strategy_for_L = StrategyFromJson(Member(j, "L", ""), AgentType::kTypeL, sm, "L");
  p.strategy_for_H = StrategyFromJson(Member(j, "H", ""), AgentType::kTypeH, sm, "H");
  return p;
}

json ToJson(const Configuration& c) {
  return {{"mu", c.signal_model.mu},
          {"p_h_given_H", c.signal_model.p_h_given_H},
          {"p_h_given_L", c.signal_model.p_h_given_L},
          {"alpha_L", c.alpha_L},
          {"alpha_H", c.alpha_H}};
}

json ToJson(const Instance& instance) {
  json j = ToJson(instance.configuration);
  j["n"] = instance.n;
  json list = json::array();
  for (const auto& u : instance.utilities) {
    json e = {{"type", ToString(u.owner_type())},
              {"vLA", u.value(WorldState::kL, Alternative::kA)},
              {"vLR", u.value(WorldState::kL, Alternative::kR)},
              {"vHA", u.value(WorldState::kH, Alternative::kA)},
              {"vHR", u.value(WorldState::kH, Alternative::kR)}};
    // Run-length encode consecutive identical agents.
    if (!list.empty()) {
      json& last = list.back();
      json probe = last;
      probe.erase("count");
      if (probe == e) {
        last["count"] = last.value("count", 1) + 1;
        continue;
      }
    }
    list.push_back(e);
  }
  j["utilities"] = list;
  return j;
}

json ToJson(const VotingStrategy& s) {
  return {{"delta_l", s.delta_l},
          {"delta_h", s.delta_h},
          {"beta_l", s.beta_l()},
          {"beta_h", s.beta_h()}};
}

json ToJson(const SymmetricProfile& p) {
  return {{"L", ToJson(p.strategy_for_L)}, {"H", ToJson(p.strategy_for_H)}};
}

json ToJson(const ExpectedShares& s) {
  return {{"p_A_in_H", s.a_in_H}, {"p_R_in_L", s.r_in_L}, {"min", s.min()}};
}

json ToJson(const OutcomeDistribution& o) {
  return {{"lambda_A_H", o.lambda_A_H},
          {"lambda_A_L", o.lambda_A_L},
          {"lambda_R_H", o.lambda_R_H()},
          {"lambda_R_L", o.lambda_R_L()}};
}

json ToJson(const MajorityVoteAnalysis& a) {
  return {{"optimal_strategy", ToJson(a.optimal_strategy)},
          {"M", a.m_value},
          {"theta_maj", a.theta_maj},
          {"shares_at_optimum", ToJson(a.shares_at_optimum)}};
}

json ToJson(const SimulationResult& r) {
  return {{"trials_per_state", r.trials_per_state},
          {"lambda_A_H", r.lambda_A_H},
          {"lambda_A_L", r.lambda_A_L},
          {"imd_frequency", r.imd_frequency}};
}

json ToJson(const BoundConstants& c) {
  return {{"alpha", c.alpha},
          {"M", c.m_value},
          {"theta_maj", c.theta_maj},
          {"mu", c.mu},
          {"utility_bound", c.utility_bound},
          {"n", c.n},
          {"majority_count", c.majority_count},
          {"stability", {{"deviation", c.stability_deviation},
                         {"epsilon", c.stability_epsilon},
                         {"imd_win_lower_bound", c.imd_win_lower_bound}}},
          {"counter", {{"deviation", c.counter_deviation}, {"epsilon", c.counter_epsilon}}},
          {"instability", {{"deviation", c.instability_deviation},
                           {"epsilon", c.instability_epsilon},
                           {"meaningful", c.instability_meaningful}}}};
}

json ToJson(const DeviationWitness& w) {
  json types = json::array();
  for (AgentType t : w.coalition_types) types.push_back(ToString(t));
  json gains = json::array();
  for (const auto& g : w.gains) {
    gains.push_back({{"type", ToString(g.type)},
                     {"count", g.count},
                     {"utility_before", g.utility_before},
                     {"utility_after", g.utility_after},
                     {"gain", g.gain}});
  }
  return {{"family", ToString(w.family)},
          {"construction", w.construction},
          {"coalition_types", types},
          {"coalition_size", w.coalition_size},
          {"deviation", ToJson(w.deviation)},
          {"outcome_before", ToJson(w.outcome_before)},
          {"outcome_after", ToJson(w.outcome_after)},
          {"gains", gains},
          {"max_gain", w.max_gain}};
}

json ToJson(const EquilibriumVerdict& v) {
  json families = json::array();
  for (auto f : v.families_searched) families.push_back(ToString(f));
  // Non-finite gains (no admissible deviation) serialize as null.
  auto gain = [](double g) { return std::isfinite(g) ? json(g) : json(nullptr); };
  return {{"is_epsilon_equilibrium", v.is_epsilon_equilibrium},
          {"epsilon", v.epsilon},
          {"grid_step", v.grid_step},
          {"families_searched", families},
          {"deviations_evaluated", v.deviations_evaluated},
          {"best_gain", {{"minority", gain(v.best_gain_minority)},
                         {"majority", gain(v.best_gain_majority)},
                         {"mixed", gain(v.best_gain_mixed)}}},
          {"imd_win_probability", v.imd_win_probability},
          {"outcome", ToJson(v.outcome)},
          {"constants", ToJson(v.constants)},
          {"witness", v.witness ? ToJson(*v.witness) : json(nullptr)},
          {"search_scope", v.search_scope}};
}

json ToJson(const MechanismTrace& t) {
  return {{"identified_majority", ToString(t.identified_majority)},
          {"majority_tie", t.majority_tie},
          {"type_H_reports", t.type_H_reports},
          {"type_L_reports", t.type_L_reports},
          {"collective_threshold", t.collective_threshold},
          {"l_reports", t.l_reports},
          {"l_frequency", t.l_frequency},
          {"assessed_state", ToString(t.assessed_state)},
          {"output", ToString(t.output)}};
}

json ToJson(const RecoveredParameters& r) {
  return {{"delta", r.delta},
          {"p_l_given_H", r.p_l_given_H},
          {"p_l_given_L", r.p_l_given_L},
          {"threshold", r.threshold}};
}

json ToJson(const AggregationResult& r) {
  json accepted = json::array();
  for (size_t i = 0; i < r.reports.size(); ++i) {
    accepted.push_back({{"index", r.sources[i]},
                        {"type", ToString(r.reports[i].declared_type)},
                        {"signal", ToString(r.reports[i].declared_signal)},
                        {"threshold", r.reports[i].threshold_value},
                        {"recovered", ToJson(r.recovered[i])}});
  }
  json excluded = json::array();
  for (const auto& e : r.excluded) {
    excluded.push_back({{"index", e.index}, {"kind", ErrorKindName(e.kind)}, {"reason", e.reason}});
  }
  return {{"accepted", accepted},
          {"excluded", excluded},
          {"delta_spread", r.delta_spread},
          {"coherent", r.coherent}};
}

json ToJson(const TvdRow& r) {
  return {{"n", r.n}, {"q", r.q}, {"tvd", r.tvd}, {"bound", r.bound}, {"tvd_sqrt_n", r.tvd_sqrt_n}};
}

std::vector<Report> ParseReportsCsv(const std::string& text, const std::string& source) {
  std::vector<Report> out;
  for (const auto& row : ReadCsv(text, source, {"type", "signal", "threshold"})) {
    const std::string where = source + ":" + std::to_string(row.line);
    Report r;
    r.declared_type = ParseType(row.fields[0], where + ": field 'type'");
    r.declared_signal = ParseSignal(row.fields[1], where + ": field 'signal'");
    r.threshold_value = ParseDouble(row.fields[2], where + ": field 'threshold'");
    if (!(r.threshold_value > 0.0 && r.threshold_value < 1.0)) {
      ParseFail(where + ": field 'threshold' must lie in (0, 1)");
    }
    out.push_back(r);
  }
  return out;
}

std::string ReportsToCsv(std::span<const Report> reports) {
  std::string s = "type,signal,threshold\n";
  for (const auto& r : reports) {
    s += ToString(r.declared_type) + "," + ToString(r.declared_signal) + "," +
         Format(r.threshold_value) + "\n";
  }
  return s;
}

std::vector<QuestionnaireResponse> ParseQuestionnaireCsv(const std::string& text,
                                                         const std::string& source) {
  static const std::vector<std::string> kHeader{"pref_L",      "signal",    "peer_l",
                                                "posterior_L", "cf_peer_l", "cf_posterior_L"};
  std::vector<QuestionnaireResponse> out;
  for (const auto& row : ReadCsv(text, source, kHeader)) {
    const std::string where = source + ":" + std::to_string(row.line);
    auto number = [&](size_t i) {
      return ParseDouble(row.fields[i], where + ": field '" + kHeader[i] + "'");
    };
    QuestionnaireResponse q;
    q.preference_in_L = ParseAlternative(row.fields[0], where + ": field 'pref_L'");
    q.declared_signal = ParseSignal(row.fields[1], where + ": field 'signal'");
    q.peer_l_prediction = number(2);
    q.posterior_L = number(3);
    q.counterfactual_peer_l_prediction = number(4);
    q.counterfactual_posterior_L = number(5);
    out.push_back(q);
  }
  return out;
}

std::string QuestionnaireToCsv(std::span<const QuestionnaireResponse> responses) {
  std::string s = "pref_L,signal,peer_l,posterior_L,cf_peer_l,cf_posterior_L\n";
  for (const auto& q : responses) {
    s += ToString(q.preference_in_L) + "," + ToString(q.declared_signal) + "," +
         Format(q.peer_l_prediction) + "," + Format(q.posterior_L) + "," +
         Format(q.counterfactual_peer_l_prediction) + "," +
         Format(q.counterfactual_posterior_L) + "\n";
  }
  return s;
}

std::string DistributionToCsv(const CountDistribution& d) {
  std::string s = "index,probability\n";
  for (size_t i = 0; i < d.probabilities.size(); ++i) {
    s += std::to_string(d.offset + static_cast<std::int64_t>(i)) + "," +
         Format(d.probabilities[i]) + "\n";
  }
  return s;
}

std::string TvdRowsToCsv(std::span<const TvdRow> rows) {
  std::string s = "n,tvd,bound,tvd_sqrt_n\n";
  for (const auto& r : rows) {
    s += std::to_string(r.n) + "," + Format(r.tvd) + "," + Format(r.bound) + "," +
         Format(r.tvd_sqrt_n) + "\n";
  }
  return s;
}

}  // namespace infoagg::io
