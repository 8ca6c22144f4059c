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

// Questionnaire processing: from one respondent's posterior and peer
// prediction answers (actual and counterfactual signal), recover the signal
// gap, both l-probabilities and the mechanism threshold; and turn a
// population of responses into mechanism reports.

#ifndef INFOAGG_ELICITATION_H_
#define INFOAGG_ELICITATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "infoagg/core_model.h"
#include "infoagg/error.h"
#include "infoagg/truthful_mechanism.h"

namespace infoagg {

struct QuestionnaireResponse {
  Alternative preference_in_L = Alternative::kR;
  Signal declared_signal = Signal::kL;
  // Pr[peer's signal is l | own signal] and Pr[state is L | own signal].
  double peer_l_prediction = 0.5;
  double posterior_L = 0.5;
  // Same two answers under the opposite signal.
  double counterfactual_peer_l_prediction = 0.5;
  double counterfactual_posterior_L = 0.5;
};

struct RecoveredParameters {
  double delta = 0.0;
  double p_l_given_H = 0.0;
  double p_l_given_L = 0.0;
  double threshold = 0.0;
};

// Throws Error(kDegenerateSignal) when the two posteriors coincide (within
// 1e-12) and Error(kInconsistentResponse) when an answer lies outside [0, 1],
// the recovered gap is not positive, or a recovered probability leaves [0, 1].
RecoveredParameters RecoverParameters(const QuestionnaireResponse& resp);

// The answers a Bayesian respondent with this signal and type would give.
QuestionnaireResponse SynthesizeResponse(const SignalModel& sm, Signal signal,
                                         AgentType agent_type);

// Pr[state is L | signal] under the model's prior.
double PosteriorL(const SignalModel& sm, Signal signal);
// Pr[another agent's signal is l | own signal].
double PeerLPrediction(const SignalModel& sm, Signal signal);

AgentType TypeFromPreference(Alternative preference_in_L);

struct ExcludedResponse {
  std::size_t index = 0;
  ErrorKind kind = ErrorKind::kInconsistentResponse;
  std::string reason;
};

struct AggregationResult {
  std::vector<Report> reports;
  // Respondent index of each report.
  std::vector<std::size_t> sources;
  std::vector<RecoveredParameters> recovered;
  std::vector<ExcludedResponse> excluded;
  // Spread of recovered gaps across accepted respondents; above 1e-6 the
  // population is flagged incoherent. No reconciliation is attempted.
  double delta_spread = 0.0;
  bool coherent = true;
};

// Throws Error(kInput) on an empty list and Error(kAggregation) when every
// response is excluded.
AggregationResult AggregateReports(std::span<const QuestionnaireResponse> responses);

}  // namespace infoagg

#endif  // INFOAGG_ELICITATION_H_
