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

// Ex-ante utilities, the closed-form deviation constructions for the
// majority vote, finite-n bound constants, and an epsilon-strong Bayes Nash
// equilibrium verifier over type-symmetric coalitional deviations.

#ifndef INFOAGG_EQUILIBRIUM_H_
#define INFOAGG_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infoagg/core_model.h"
#include "infoagg/majority_vote.h"

namespace infoagg {

// mu * E[v(H, .)] + (1 - mu) * E[v(L, .)] under the outcome distribution.
double ExAnteUtility(const UtilityFunction& agent, const OutcomeDistribution& outcome, double mu);

// Utility change from `from` to `to`, written through the lambda shifts and
// the per-state stakes |v(s, A) - v(s, R)|.
double UtilityDifference(const UtilityFunction& agent, const OutcomeDistribution& from,
                         const OutcomeDistribution& to, double mu);

// True iff the shift gives neither type a gain above epsilon while the other
// type weakly gains.
bool NoWinWinCheck(const OutcomeDistribution& from, const OutcomeDistribution& to,
                   const UtilityFunction& type_h_agent, const UtilityFunction& type_l_agent,
                   double mu, double epsilon);

struct CounterStrategy {
  // Per-signal mixture actually played by every majority agent.
  VotingStrategy mixed;
  // Probability mass on the mirrored minority strategy, (1 - alpha) / alpha.
  double mirror_weight = 0.0;
  VotingStrategy mirror;
  VotingStrategy optimal;
};

// Majority strategy that cancels the minority's expected vote impact and
// spends the remaining mass on the optimal strategy.
CounterStrategy CounterStrategyProfile(const VotingStrategy& minority_strategy,
                                       const SignalModel& sm, double alpha,
                                       AgentType majority = AgentType::kTypeH);

struct AggressiveMinority {
  VotingStrategy strategy;
  // False when no deterministic minority vote pushes either state's expected
  // IMD share to 1/2 or below; strategy is then the share minimizer.
  bool flips_some_state = false;
  WorldState target_state = WorldState::kL;
  // Expected IMD shares after the deviation.
  double imd_share_in_H = 0.0;
  double imd_share_in_L = 0.0;
};

// Deterministic minority vote that drags a state's expected IMD share to 1/2
// or below; ties between always-A and always-R go to the smaller worse-state
// share, then to always-A.
AggressiveMinority BestAggressiveMinority(const VotingStrategy& majority_strategy,
                                          const SignalModel& sm, double alpha,
                                          AgentType majority = AgentType::kTypeH);

// Finite-n constants quoted alongside verdicts. Values may be vacuous (a
// probability bound below zero or an epsilon above B); they are reported as
// computed.
struct BoundConstants {
  double alpha = 0.0;
  double m_value = 0.0;
  double theta_maj = 0.0;
  double mu = 0.0;
  int utility_bound = 0;
  std::int64_t n = 0;
  std::int64_t majority_count = 0;

  // Above the threshold: the optimal profile is stable up to this epsilon,
  // and the IMD wins with at least imd_win_lower_bound.
  double stability_deviation = 0.0;
  double stability_epsilon = 0.0;
  double imd_win_lower_bound = 0.0;

  // A profile failing the IMD with probability above twice this value is
  // broken by the counter-strategy deviation.
  double counter_deviation = 0.0;
  double counter_epsilon = 0.0;

  // Below the threshold: no equilibrium up to this epsilon. Meaningful only
  // when positive.
  double instability_deviation = 0.0;
  double instability_epsilon = 0.0;
  bool instability_meaningful = false;
};

BoundConstants ComputeBoundConstants(const Configuration& config, std::int64_t n,
                                     int utility_bound);
BoundConstants ComputeBoundConstants(const Instance& instance);

// The epsilon used by `--epsilon auto`: the stability constant above the
// threshold, else the instability constant clamped at 0.
double DefaultEpsilon(const BoundConstants& constants);

enum class DeviationFamily { kMinorityCoalition, kMajorityCoalition, kMixedCoalition };
const char* ToString(DeviationFamily family);

struct GroupGain {
  AgentType type = AgentType::kTypeH;
  UtilityFunction utility;
  std::int64_t count = 0;
  double utility_before = 0.0;
  double utility_after = 0.0;
  double gain = 0.0;
};

struct DeviationWitness {
  DeviationFamily family = DeviationFamily::kMinorityCoalition;
  // "aggressive-minority", "counter-strategy" or "grid".
  std::string construction;
  std::vector<AgentType> coalition_types;
  std::int64_t coalition_size = 0;
  SymmetricProfile deviation;
  OutcomeDistribution outcome_before;
  OutcomeDistribution outcome_after;
  std::vector<GroupGain> gains;
  double max_gain = 0.0;
};

struct EquilibriumVerdict {
  bool is_epsilon_equilibrium = true;
  double epsilon = 0.0;
  double grid_step = 0.0;
  std::vector<DeviationFamily> families_searched;
  std::int64_t deviations_evaluated = 0;
  // Largest gain of any coalition member among deviations where every member
  // weakly gains; -infinity when no such deviation exists in the family.
  double best_gain_minority = 0.0;
  double best_gain_majority = 0.0;
  double best_gain_mixed = 0.0;
  double imd_win_probability = 0.0;
  OutcomeDistribution outcome;
  BoundConstants constants;
  std::optional<DeviationWitness> witness;
  std::string search_scope;
};

struct VerifierOptions {
  double epsilon = 0.0;
  double grid_step = 0.05;
  // Families to search. Family (c) is quadratic in the grid size.
  bool search_minority = true;
  bool search_majority = true;
  bool search_mixed = true;
};

// Searches whole-type coalitions: the minority alone, the majority alone
// (grid strategies and counter-strategies against a grid of presumed
// minority behaviour), and both types together (screened pairwise, then
// checked against every agent). Named constructions are tried before the
// lexicographic grid, so the first witness is deterministic. A clean search
// is reported as an equilibrium with the grid step recorded.
EquilibriumVerdict VerifyEpsilonStrongBne(const Instance& instance,
                                          const SymmetricProfile& profile,
                                          const VerifierOptions& options);

}  // namespace infoagg

#endif  // INFOAGG_EQUILIBRIUM_H_
