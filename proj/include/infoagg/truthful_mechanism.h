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

// Anonymous threshold mechanism: agents report type, signal and a threshold;
// the plurality type is taken as the majority, the lower median threshold is
// compared with the observed l-frequency to assess the state, and the
// majority's preferred alternative in that state is output.

#ifndef INFOAGG_TRUTHFUL_MECHANISM_H_
#define INFOAGG_TRUTHFUL_MECHANISM_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infoagg/core_model.h"

namespace infoagg {

struct Report {
  AgentType declared_type = AgentType::kTypeH;
  Signal declared_signal = Signal::kH;
  double threshold_value = 0.5;

  friend bool operator==(const Report&, const Report&) = default;
};

std::vector<std::string> Validate(const Report& r);

struct MechanismTrace {
  AgentType identified_majority = AgentType::kTypeH;
  // Equal type counts; resolved to TypeH.
  bool majority_tie = false;
  std::int64_t type_H_reports = 0;
  std::int64_t type_L_reports = 0;
  double collective_threshold = 0.0;
  std::int64_t l_reports = 0;
  double l_frequency = 0.0;
  WorldState assessed_state = WorldState::kH;
  Alternative output = Alternative::kA;
};

// The threshold truthful agents report: P(l|L) / (P(l|L) + P(h|H)).
double IdealThreshold(const SignalModel& sm);
// Majority fraction above which the mechanism works: 1 / (delta + 1).
double ThetaStar(const SignalModel& sm);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  // lhs - rhs for a claimed lhs > rhs; positive when the inequality holds.
  double slack = 0.0;
  bool holds = false;
};

struct FrequencyCertificate {
  double threshold = 0.0;
  double alpha = 0.0;
  // Truthful frequencies straddle the threshold in both signal readings.
  std::vector<InequalityCheck> truthful;
  // Evaluated only when alpha > 1/(delta + 1): the minority's extreme
  // misreports cannot push the expected frequency across the threshold.
  bool strategic_applicable = false;
  std::vector<InequalityCheck> strategic;

  bool all_hold() const;
  double min_slack() const;
};

FrequencyCertificate CheckFrequencyInequalities(const SignalModel& sm, double alpha);
// Evaluates the strategic chain regardless of alpha (for boundary studies).
std::vector<InequalityCheck> StrategicInequalities(const SignalModel& sm, double alpha);

// Throws Error(kInput) on an empty list, a size mismatch or a threshold
// outside (0, 1). Invariant under permutation of reports.
MechanismTrace RunMechanism(std::span<const Report> reports, std::int64_t n);

struct TruthfulSuccess {
  double probability = 0.0;
  double success_in_H = 0.0;
  double success_in_L = 0.0;
  // 1 - 2 exp(-2 c^2 n) with c = min(P(l|L) - threshold, threshold - P(l|H)) / 3.
  double bound = 0.0;
  double deviation = 0.0;
  // False when the floor(alpha n) convention leaves the true majority without
  // a strict plurality at this n; probability is then 0.
  bool majority_identified = true;
};

// Exact probability over signal draws that all-truthful reporting yields the
// informed majority decision.
TruthfulSuccess TruthfulSuccessProbability(const Configuration& config, std::int64_t n);

Report TruthfulMap(AgentType agent_type, Signal signal, const SignalModel& sm);

}  // namespace infoagg

#endif  // INFOAGG_TRUTHFUL_MECHANISM_H_
