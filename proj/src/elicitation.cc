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

#include "infoagg/elicitation.h"

#include <algorithm>
#include <cmath>

namespace infoagg {
namespace {

constexpr double kDegenerateTolerance = 1e-12;
constexpr double kCoherenceTolerance = 1e-6;

bool InUnit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

double PosteriorL(const SignalModel& sm, Signal signal) {
  const double from_L = (1.0 - sm.mu) * sm.p_signal(signal, WorldState::kL);
  const double from_H = sm.mu * sm.p_signal(signal, WorldState::kH);
  return from_L / (from_L + from_H);
}

double PeerLPrediction(const SignalModel& sm, Signal signal) {
  return sm.p_l_given_H() + PosteriorL(sm, signal) * sm.delta();
}

AgentType TypeFromPreference(Alternative preference_in_L) {
  return preference_in_L == Alternative::kA ? AgentType::kTypeL : AgentType::kTypeH;
}

QuestionnaireResponse SynthesizeResponse(const SignalModel& sm, Signal signal,
                                         AgentType agent_type) {
  RequireValid(sm);
  QuestionnaireResponse r;
  r.preference_in_L = PreferredAlternative(agent_type, WorldState::kL);
  r.declared_signal = signal;
  r.peer_l_prediction = PeerLPrediction(sm, signal);
  r.posterior_L = PosteriorL(sm, signal);
  r.counterfactual_peer_l_prediction = PeerLPrediction(sm, Flip(signal));
  r.counterfactual_posterior_L = PosteriorL(sm, Flip(signal));
  return r;
}

RecoveredParameters RecoverParameters(const QuestionnaireResponse& resp) {
  for (double p : {resp.peer_l_prediction, resp.posterior_L, resp.counterfactual_peer_l_prediction,
                   resp.counterfactual_posterior_L}) {
    if (!InUnit(p)) {
      Fail(ErrorKind::kInconsistentResponse, "answer " + std::to_string(p) + " outside [0, 1]");
    }
  }
  const bool own_is_l = resp.declared_signal == Signal::kL;
  const double peer_l = own_is_l ? resp.peer_l_prediction : resp.counterfactual_peer_l_prediction;
  const double peer_h = own_is_l ? resp.counterfactual_peer_l_prediction : resp.peer_l_prediction;
  const double post_l = own_is_l ? resp.posterior_L : resp.counterfactual_posterior_L;
  const double post_h = own_is_l ? resp.counterfactual_posterior_L : resp.posterior_L;

  const double denom = post_l - post_h;
  if (std::abs(denom) <= kDegenerateTolerance) {
    Fail(ErrorKind::kDegenerateSignal, "posteriors under both signals coincide");
  }
  RecoveredParameters out;
  out.delta = (peer_l - peer_h) / denom;
  if (!(out.delta > 0.0)) {
    Fail(ErrorKind::kInconsistentResponse,
         "recovered signal gap " + std::to_string(out.delta) + " is not positive");
  }
  out.p_l_given_H = peer_l - post_l * out.delta;
  out.p_l_given_L = peer_l + (1.0 - post_l) * out.delta;
  if (!InUnit(out.p_l_given_H) || !InUnit(out.p_l_given_L)) {
    Fail(ErrorKind::kInconsistentResponse, "recovered signal probabilities outside [0, 1]");
  }
  out.threshold = out.p_l_given_L / (1.0 + out.delta);
  return out;
}

AggregationResult AggregateReports(std::span<const QuestionnaireResponse> responses) {
  if (responses.empty()) Fail(ErrorKind::kInput, "no questionnaire responses");
  AggregationResult out;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const auto& resp = responses[i];
    try {
      const RecoveredParameters p = RecoverParameters(resp);
      out.reports.push_back({TypeFromPreference(resp.preference_in_L), resp.declared_signal, p.threshold});
      out.sources.push_back(i);
      out.recovered.push_back(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInconsistentResponse && e.kind() != ErrorKind::kDegenerateSignal) {
        throw;
      }
      out.excluded.push_back({i, e.kind(), e.what()});
    }
  }
  if (out.reports.empty()) {
    Fail(ErrorKind::kAggregation,
         "all " + std::to_string(responses.size()) + " responses were excluded");
  }
  const auto [lo, hi] = std::minmax_element(
      out.recovered.begin(), out.recovered.end(),
      [](const RecoveredParameters& a, const RecoveredParameters& b) { return a.delta < b.delta; });
  out.delta_spread = hi->delta - lo->delta;
  out.coherent = out.delta_spread <= kCoherenceTolerance;
  return out;
}

}  // namespace infoagg
