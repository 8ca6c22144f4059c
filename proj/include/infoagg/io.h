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

// File formats. JSON instances and profiles, the report and questionnaire
// CSVs, and JSON views of every analysis result. Parse failures throw
// Error(kParse) naming the source, the line and, for JSON, the field path.
//
// Instance JSON:
//   {"mu": 0.5, "p_h_given_H": 0.75, "p_h_given_L": 0.5,
//    "alpha_L": 0.1, "alpha_H": 0.9, "n": 10,
//    "utilities": [{"type": "H", "vLA": 0, "vLR": 5, "vHA": 1, "vHR": 0,
//                   "count": 9}, ...]}
// "count" is optional (default 1) and repeats an entry.
//
// Profile JSON: {"L": <strategy>, "H": <strategy>} where a strategy is one of
// "optimal", "informative", "always-A", "always-R", "neutral" or
// {"delta_l": x, "delta_h": y}. "optimal" resolves per type against the
// signal model.

#ifndef INFOAGG_IO_H_
#define INFOAGG_IO_H_

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "infoagg/core_model.h"
#include "infoagg/discrete_prob.h"
#include "infoagg/elicitation.h"
#include "infoagg/equilibrium.h"
#include "infoagg/impossibility.h"
#include "infoagg/majority_vote.h"
#include "infoagg/truthful_mechanism.h"

namespace infoagg::io {

using nlohmann::json;

// Throws Error(kInput) when the file cannot be read.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);

json ParseJson(const std::string& text, const std::string& source);

// Signal model and type fractions only; n and utilities are ignored.
Configuration ConfigurationFromJson(const json& j);
Instance InstanceFromJson(const json& j);
SymmetricProfile ProfileFromJson(const json& j, const SignalModel& sm);
VotingStrategy StrategyFromJson(const json& j, AgentType owner, const SignalModel& sm,
                                const std::string& path);

json ToJson(const Configuration& c);
json ToJson(const Instance& instance);
json ToJson(const VotingStrategy& s);
json ToJson(const SymmetricProfile& p);
json ToJson(const ExpectedShares& s);
json ToJson(const OutcomeDistribution& o);
json ToJson(const MajorityVoteAnalysis& a);
json ToJson(const SimulationResult& r);
json ToJson(const BoundConstants& c);
json ToJson(const DeviationWitness& w);
json ToJson(const EquilibriumVerdict& v);
json ToJson(const MechanismTrace& t);
json ToJson(const RecoveredParameters& r);
json ToJson(const AggregationResult& r);
json ToJson(const TvdRow& r);

// Header `type,signal,threshold`; types L/H, signals l/h.
std::vector<Report> ParseReportsCsv(const std::string& text, const std::string& source);
std::string ReportsToCsv(std::span<const Report> reports);

// Header `pref_L,signal,peer_l,posterior_L,cf_peer_l,cf_posterior_L`;
// pref_L is A or R.
std::vector<QuestionnaireResponse> ParseQuestionnaireCsv(const std::string& text,
                                                         const std::string& source);
std::string QuestionnaireToCsv(std::span<const QuestionnaireResponse> responses);

// Header `index,probability`, one row per support point.
std::string DistributionToCsv(const CountDistribution& d);

// Header `n,tvd,bound,tvd_sqrt_n`.
std::string TvdRowsToCsv(std::span<const TvdRow> rows);

}  // namespace infoagg::io

#endif  // INFOAGG_IO_H_
