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

// The majority vote mechanism: per-state vote margins and expected shares,
// the max-min optimal strategy, the majority-fraction threshold it implies,
// and exact finite-n outcome probabilities with the fair-coin tie rule.

#ifndef INFOAGG_MAJORITY_VOTE_H_
#define INFOAGG_MAJORITY_VOTE_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "infoagg/core_model.h"
#include "infoagg/discrete_prob.h"

namespace infoagg {

// Expected vote-A margin over 1/2 in each state.
struct VoteMargins {
  double in_H = 0.0;
  double in_L = 0.0;
};

// Expected share voting A in H and voting R in L.
struct ExpectedShares {
  double a_in_H = 0.5;
  double r_in_L = 0.5;

  double min() const { return a_in_H < r_in_L ? a_in_H : r_in_L; }
};

// Probability that the mechanism outputs A in each state.
struct OutcomeDistribution {
  double lambda_A_H = 0.0;
  double lambda_A_L = 0.0;

  double lambda_R_H() const { return 1.0 - lambda_A_H; }
  double lambda_R_L() const { return 1.0 - lambda_A_L; }
  double lambda_A(WorldState s) const { return s == WorldState::kH ? lambda_A_H : lambda_A_L; }
};

struct MajorityVoteAnalysis {
  VotingStrategy optimal_strategy;
  double m_value = 0.0;
  double theta_maj = 0.0;
  ExpectedShares shares_at_optimum;
};

VoteMargins Margins(const VotingStrategy& strategy, const SignalModel& sm);
ExpectedShares ExpectedSharesOf(const VotingStrategy& strategy, const SignalModel& sm);

// Max-min strategy for a TypeH majority.
VotingStrategy OptimalStrategy(const SignalModel& sm);
// Optimal strategy for the given majority type; TypeL mirrors A and R.
VotingStrategy OptimalStrategyFor(AgentType majority, const SignalModel& sm);

double MValue(const SignalModel& sm);
double ThetaMaj(const SignalModel& sm);
MajorityVoteAnalysis AnalyzeMajorityVote(const SignalModel& sm);

// Share of the electorate expected to vote for the informed majority decision
// in a state when the majority plays majority_strategy and the minority
// plays minority_strategy.
double ExpectedImdShare(const Configuration& config, const VotingStrategy& majority_strategy,
                        const VotingStrategy& minority_strategy, WorldState state);

template <typename Real>
Real VoteAProbability(const Real& p_l, const Real& p_h, const Real& beta_l, const Real& beta_h) {
  return p_l * beta_l + p_h * beta_h;
}

double VoteAProbability(const VotingStrategy& strategy, const SignalModel& sm, WorldState state);

// Pr[X >= j] for j in [0, size]; the final entry is 0.
template <typename Real>
std::vector<Real> AtLeast(const BasicCountDistribution<Real>& x) {
  std::vector<Real> at_least(x.probabilities.size() + 1, Real(0));
  for (size_t j = x.probabilities.size(); j-- > 0;) {
    at_least[j] = at_least[j + 1] + x.probabilities[j];
  }
  return at_least;
}

// Pr[X + Y > n/2] + Pr[X + Y = n/2] / 2 for independent counts supported on
// [0, .]; at_least must be AtLeast(x). Linear in the support of y.
template <typename Real>
Real AWinFromCounts(std::int64_t n, const BasicCountDistribution<Real>& x,
                    const std::vector<Real>& at_least, const BasicCountDistribution<Real>& y) {
  const auto x_max = static_cast<std::int64_t>(x.probabilities.size()) - 1;
  auto tail_from = [&](std::int64_t j) {
    if (j <= 0) return Real(1);
    if (j > x_max) return Real(0);
    return at_least[static_cast<size_t>(j)];
  };
  const Real half = Real(1) / Real(2);
  Real win(0);
  for (std::int64_t yv = 0; yv < static_cast<std::int64_t>(y.probabilities.size()); ++yv) {
    const Real& py = y.probabilities[static_cast<size_t>(yv)];
    if (py == Real(0)) continue;
    if (n % 2 == 0) {
      const std::int64_t tie_x = n / 2 - yv;
      const Real tie_mass = (tie_x >= 0 && tie_x <= x_max) ? x.pmf(tie_x) : Real(0);
      win += py * (tail_from(tie_x + 1) + half * tie_mass);
    } else {
      win += py * tail_from((n + 1) / 2 - yv);
    }
  }
  return win;
}

// Pr[A wins] when majority_count agents vote A independently with probability
// q_majority and the rest with q_minority; a tie at n/2 is a fair coin.
template <typename Real>
Real AWinProbability(std::int64_t n, std::int64_t majority_count, const Real& q_majority,
                     const Real& q_minority) {
  if (majority_count < 0 || majority_count > n) {
    Fail(ErrorKind::kParameter, "majority count must lie in [0, n]");
  }
  const auto x = Binomial(majority_count, q_majority);
  const auto y = Binomial(n - majority_count, q_minority);
  return AWinFromCounts(n, x, AtLeast(x), y);
}

struct InstanceShape {
  std::int64_t n = 0;
  std::int64_t majority_count = 0;

  static InstanceShape Of(const Configuration& config, std::int64_t n) {
    return {n, config.majority_count(n)};
  }
};

// Exact Pr[A wins | state] under a symmetric per-type profile.
double ExactOutcome(const InstanceShape& shape, const SymmetricProfile& profile,
                    const Configuration& config, WorldState state);
OutcomeDistribution ExactOutcomeDistribution(const InstanceShape& shape,
                                             const SymmetricProfile& profile,
                                             const Configuration& config);

// mu * Pr[IMD wins | H] + (1 - mu) * Pr[IMD wins | L].
double WinningProbabilityImd(const InstanceShape& shape, const SymmetricProfile& profile,
                             const Configuration& config);
double ImdWinProbability(const OutcomeDistribution& outcome, const Configuration& config);

// Plurality over cast votes; a tie is settled by one fair coin from rng.
Alternative MajorityVote(std::span<const Alternative> votes, std::mt19937_64& rng);

struct SimulationResult {
  std::int64_t trials_per_state = 0;
  double lambda_A_H = 0.0;
  double lambda_A_L = 0.0;
  // Frequency of the informed majority decision, mixed by the prior.
  double imd_frequency = 0.0;

  OutcomeDistribution outcome() const { return {lambda_A_H, lambda_A_L}; }
};

// Monte Carlo: trials elections per state, with signals and votes drawn from
// one seeded generator. Agent types come from the instance's utilities.
SimulationResult SimulateElection(const Instance& instance, const SymmetricProfile& profile,
                                  std::int64_t trials, std::uint64_t seed);
// Per-agent strategies, one per agent in instance order.
SimulationResult SimulateElection(const Instance& instance,
                                  const std::vector<VotingStrategy>& strategies,
                                  std::int64_t trials, std::uint64_t seed);

}  // namespace infoagg

#endif  // INFOAGG_MAJORITY_VOTE_H_
