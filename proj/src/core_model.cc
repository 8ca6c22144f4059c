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

#include "infoagg/core_model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "infoagg/error.h"

namespace infoagg {
namespace {

// Absorbs representation error in products such as (2.0 / 3.0) * 3 before
// flooring; far below the spacing of any meaningful fraction.
constexpr double kCountSlack = 1e-9;
constexpr double kFractionSumTolerance = 1e-12;

int StateIndex(WorldState s) { return s == WorldState::kL ? 0 : 1; }
int AltIndex(Alternative a) { return a == Alternative::kA ? 0 : 1; }

std::string Join(const std::vector<std::string>& items) {
  std::ostringstream out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << "; ";
    out << items[i];
  }
  return out.str();
}

bool OpenUnit(double p) { return p > 0.0 && p < 1.0; }

}  // namespace

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParameter:
      return "parameter error";
    case ErrorKind::kInput:
      return "input error";
    case ErrorKind::kConstruction:
      return "construction error";
    case ErrorKind::kDegenerateSignal:
      return "degenerate-signal error";
    case ErrorKind::kInconsistentResponse:
      return "inconsistent-response error";
    case ErrorKind::kAggregation:
      return "aggregation error";
    case ErrorKind::kParse:
      return "parse error";
    case ErrorKind::kUsage:
      return "usage error";
  }
  return "error";
}

std::string ToString(WorldState s) { return s == WorldState::kL ? "L" : "H"; }
std::string ToString(Signal s) { return s == Signal::kL ? "l" : "h"; }
std::string ToString(Alternative a) { return a == Alternative::kA ? "A" : "R"; }
std::string ToString(AgentType t) { return t == AgentType::kTypeL ? "L" : "H"; }

double SignalModel::p_signal(Signal s, WorldState w) const {
  const double p_h = w == WorldState::kH ? p_h_given_H : p_h_given_L;
  return s == Signal::kH ? p_h : 1.0 - p_h;
}

std::vector<std::string> Validate(const SignalModel& sm) {
  std::vector<std::string> errors;
  // The prior may sit on the boundary: degenerate priors are meaningful for
  // posterior computations even though the games assume 0 < mu < 1.
  if (!(sm.mu >= 0.0 && sm.mu <= 1.0)) errors.push_back("mu must lie in [0, 1]");
  if (!OpenUnit(sm.p_h_given_H)) errors.push_back("p_h_given_H must lie in (0, 1)");
  if (!OpenUnit(sm.p_h_given_L)) errors.push_back("p_h_given_L must lie in (0, 1)");
  if (!(sm.delta() > 0.0)) {
    errors.push_back("signals must be positively correlated with states (delta > 0)");
  }
  return errors;
}

void RequireValid(const SignalModel& sm) {
  const auto errors = Validate(sm);
  if (!errors.empty()) Fail(ErrorKind::kParameter, "invalid signal model: " + Join(errors));
}

std::int64_t Configuration::majority_count(std::int64_t n) const {
  return static_cast<std::int64_t>(std::floor(alpha() * static_cast<double>(n) + kCountSlack));
}

std::int64_t Configuration::minority_count_ceil(std::int64_t n) const {
  return static_cast<std::int64_t>(
      std::ceil((1.0 - alpha()) * static_cast<double>(n) - kCountSlack));
}

std::vector<std::string> Validate(const Configuration& config) {
  std::vector<std::string> errors = Validate(config.signal_model);
  if (config.alpha_L < 0.0 || config.alpha_L > 1.0 || config.alpha_H < 0.0 ||
      config.alpha_H > 1.0) {
    errors.push_back("type fractions must lie in [0, 1]");
  }
  if (std::abs(config.alpha_L + config.alpha_H - 1.0) > kFractionSumTolerance) {
    errors.push_back("type fractions must sum to 1 (alpha_L + alpha_H = " +
                     std::to_string(config.alpha_L + config.alpha_H) + ")");
  }
  if (!(config.alpha() > 0.5)) errors.push_back("majority fraction alpha must exceed 1/2");
  return errors;
}

void RequireValid(const Configuration& config) {
  const auto errors = Validate(config);
  if (!errors.empty()) {
    Fail(ErrorKind::kParameter, "invalid configuration: " + Join(errors));
  }
}

UtilityFunction::UtilityFunction(AgentType owner, int v_LA, int v_LR, int v_HA, int v_HR)
    : owner_(owner), table_{{{v_LA, v_LR}, {v_HA, v_HR}}} {}

int UtilityFunction::value(WorldState s, Alternative a) const {
  return table_[StateIndex(s)][AltIndex(a)];
}

int UtilityFunction::delta_v(WorldState s) const {
  return std::abs(value(s, Alternative::kA) - value(s, Alternative::kR));
}

int UtilityFunction::max_entry() const {
  return std::max({table_[0][0], table_[0][1], table_[1][0], table_[1][1]});
}

std::vector<std::string> Validate(const UtilityFunction& u) {
  std::vector<std::string> errors;
  for (WorldState s : {WorldState::kL, WorldState::kH}) {
    for (Alternative a : {Alternative::kA, Alternative::kR}) {
      if (u.value(s, a) < 0) errors.push_back("utility entries must be non-negative");
    }
  }
  const int la = u.value(WorldState::kL, Alternative::kA);
  const int lr = u.value(WorldState::kL, Alternative::kR);
  const int ha = u.value(WorldState::kH, Alternative::kA);
  const int hr = u.value(WorldState::kH, Alternative::kR);
  if (u.owner_type() == AgentType::kTypeL) {
    if (!(la > lr)) errors.push_back("TypeL utility needs strict preference v(L,A) > v(L,R)");
    if (!(hr > ha)) errors.push_back("TypeL utility needs strict preference v(H,R) > v(H,A)");
  } else {
    if (!(lr > la)) errors.push_back("TypeH utility needs strict preference v(L,R) > v(L,A)");
    if (!(ha > hr)) errors.push_back("TypeH utility needs strict preference v(H,A) > v(H,R)");
  }
  return errors;
}

int Instance::utility_bound() const {
  int b = 0;
  for (const auto& u : utilities) b = std::max(b, u.max_entry());
  return b;
}

std::vector<std::string> ValidateInstance(const Instance& instance) {
  std::vector<std::string> errors = Validate(instance.configuration);
  if (instance.n <= 0) errors.push_back("agent count n must be positive");
  if (static_cast<std::int64_t>(instance.utilities.size()) != instance.n) {
    errors.push_back("expected " + std::to_string(instance.n) + " utility functions, got " +
                     std::to_string(instance.utilities.size()));
  }
  for (size_t i = 0; i < instance.utilities.size(); ++i) {
    for (const auto& e : Validate(instance.utilities[i])) {
      errors.push_back("agent " + std::to_string(i) + ": " + e);
    }
  }
  if (instance.n > 0) {
    const AgentType majority = instance.configuration.majority_type();
    const auto majority_agents = std::count_if(
        instance.utilities.begin(), instance.utilities.end(),
        [majority](const UtilityFunction& u) { return u.owner_type() == majority; });
    const std::int64_t expected = instance.configuration.majority_count(instance.n);
    if (majority_agents != expected) {
      errors.push_back("majority-type (" + ToString(majority) + ") agent count is " +
                       std::to_string(majority_agents) + " but floor(alpha*n) = " +
                       std::to_string(expected));
    }
  }
  return errors;
}

void RequireValid(const Instance& instance) {
  const auto errors = ValidateInstance(instance);
  if (!errors.empty()) Fail(ErrorKind::kParameter, "invalid instance: " + Join(errors));
}

std::vector<std::string> Validate(const VotingStrategy& s) {
  std::vector<std::string> errors;
  if (!(s.delta_l >= -0.5 && s.delta_l <= 0.5)) errors.push_back("delta_l must lie in [-1/2, 1/2]");
  if (!(s.delta_h >= -0.5 && s.delta_h <= 0.5)) errors.push_back("delta_h must lie in [-1/2, 1/2]");
  return errors;
}

Alternative PreferredAlternative(AgentType type, WorldState state) {
  const bool aligned = (type == AgentType::kTypeH) == (state == WorldState::kH);
  return aligned ? Alternative::kA : Alternative::kR;
}

Alternative InformedMajorityDecision(const Configuration& config, WorldState state) {
  return PreferredAlternative(config.majority_type(), state);
}

}  // namespace infoagg
