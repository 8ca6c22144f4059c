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

// World model shared by every analysis: two world states, two signals, two
// alternatives and two antagonistic agent types. All types are plain values.
// Construction never throws; Validate*() reports violated invariants and the
// analytical entry points throw Error(kParameter) on invalid input.

#ifndef INFOAGG_CORE_MODEL_H_
#define INFOAGG_CORE_MODEL_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace infoagg {

enum class WorldState { kL, kH };
enum class Signal { kL, kH };
enum class Alternative { kA, kR };
enum class AgentType { kTypeL, kTypeH };

inline WorldState Flip(WorldState s) {
  return s == WorldState::kL ? WorldState::kH : WorldState::kL;
}
inline Signal Flip(Signal s) { return s == Signal::kL ? Signal::kH : Signal::kL; }
inline Alternative Flip(Alternative a) {
  return a == Alternative::kA ? Alternative::kR : Alternative::kA;
}
inline AgentType Flip(AgentType t) {
  return t == AgentType::kTypeL ? AgentType::kTypeH : AgentType::kTypeL;
}

std::string ToString(WorldState s);
std::string ToString(Signal s);
std::string ToString(Alternative a);
std::string ToString(AgentType t);

// Prior on state H and the conditional probability of signal h in each state.
struct SignalModel {
  double mu = 0.5;
  double p_h_given_H = 0.75;
  double p_h_given_L = 0.5;

  double p_l_given_H() const { return 1.0 - p_h_given_H; }
  double p_l_given_L() const { return 1.0 - p_h_given_L; }
  double p_signal(Signal s, WorldState w) const;
  double prior(WorldState w) const { return w == WorldState::kH ? mu : 1.0 - mu; }

  // Cross-state signal-frequency gap; positive for a usable model.
  double delta() const { return p_h_given_H - p_h_given_L; }
};

std::vector<std::string> Validate(const SignalModel& sm);
// Throws Error(kParameter) listing every violation.
void RequireValid(const SignalModel& sm);

struct Configuration {
  SignalModel signal_model;
  double alpha_L = 0.0;
  double alpha_H = 1.0;

  double alpha() const { return alpha_L > alpha_H ? alpha_L : alpha_H; }
  AgentType majority_type() const {
    return alpha_L > alpha_H ? AgentType::kTypeL : AgentType::kTypeH;
  }
  AgentType minority_type() const { return Flip(majority_type()); }

  // floor(alpha * n); the complement is the minority count used by the
  // majority-vote and equilibrium analyses.
  std::int64_t majority_count(std::int64_t n) const;
  std::int64_t minority_count(std::int64_t n) const { return n - majority_count(n); }
  // ceil((1 - alpha) * n), the minority count of the indistinguishability
  // construction. Equals minority_count(n) whenever alpha * n is fractional.
  std::int64_t minority_count_ceil(std::int64_t n) const;
};

std::vector<std::string> Validate(const Configuration& config);
void RequireValid(const Configuration& config);

// Bounded integer utility table v(state, alternative) of one agent.
class UtilityFunction {
 public:
  UtilityFunction() = default;
  UtilityFunction(AgentType owner, int v_LA, int v_LR, int v_HA, int v_HR);

  AgentType owner_type() const { return owner_; }
  int value(WorldState s, Alternative a) const;
  // |v(s, A) - v(s, R)|.
  int delta_v(WorldState s) const;
  int max_entry() const;

 private:
  AgentType owner_ = AgentType::kTypeH;
  // Indexed [state][alternative] with L = 0, H = 1 and A = 0, R = 1.
  std::array<std::array<int, 2>, 2> table_{{{0, 1}, {1, 0}}};
};

std::vector<std::string> Validate(const UtilityFunction& u);

struct Instance {
  Configuration configuration;
  std::int64_t n = 0;
  std::vector<UtilityFunction> utilities;

  // Largest utility entry across agents (the bound B).
  int utility_bound() const;
};

// Every violated invariant of the instance; empty when valid.
std::vector<std::string> ValidateInstance(const Instance& instance);
void RequireValid(const Instance& instance);

// Parameterization beta_l = 1/2 - delta_l, beta_h = 1/2 + delta_h, where beta_s
// is the probability of voting A after signal s.
struct VotingStrategy {
  double delta_l = 0.0;
  double delta_h = 0.0;

  double beta_l() const { return 0.5 - delta_l; }
  double beta_h() const { return 0.5 + delta_h; }
  double beta(Signal s) const { return s == Signal::kL ? beta_l() : beta_h(); }

  static VotingStrategy FromBetas(double beta_l, double beta_h) {
    return {0.5 - beta_l, beta_h - 0.5};
  }
  static VotingStrategy Neutral() { return {0.0, 0.0}; }
  // Vote A on h and R on l.
  static VotingStrategy Informative() { return {0.5, 0.5}; }
  static VotingStrategy AlwaysA() { return {-0.5, 0.5}; }
  static VotingStrategy AlwaysR() { return {0.5, -0.5}; }

  // Vote-A probabilities reflected through 1/2 (A and R swapped).
  VotingStrategy Mirrored() const { return {-delta_l, -delta_h}; }

  friend bool operator==(const VotingStrategy&, const VotingStrategy&) = default;
};

std::vector<std::string> Validate(const VotingStrategy& s);

struct SymmetricProfile {
  VotingStrategy strategy_for_L;
  VotingStrategy strategy_for_H;

  const VotingStrategy& strategy(AgentType t) const {
    return t == AgentType::kTypeL ? strategy_for_L : strategy_for_H;
  }
  VotingStrategy& strategy(AgentType t) {
    return t == AgentType::kTypeL ? strategy_for_L : strategy_for_H;
  }

  friend bool operator==(const SymmetricProfile&, const SymmetricProfile&) = default;
};

// Alternative a type prefers in a given state: TypeH wants A in H, TypeL
// wants A in L.
Alternative PreferredAlternative(AgentType type, WorldState state);

// The decision the majority type would take if the state were known.
Alternative InformedMajorityDecision(const Configuration& config, WorldState state);

}  // namespace infoagg

#endif  // INFOAGG_CORE_MODEL_H_
