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

#include "infoagg/majority_vote.h"

#include <algorithm>

namespace infoagg {

VoteMargins Margins(const VotingStrategy& s, const SignalModel& sm) {
  return {sm.p_h_given_H * s.delta_h - sm.p_l_given_H() * s.delta_l,
          sm.p_h_given_L * s.delta_h - sm.p_l_given_L() * s.delta_l};
}

ExpectedShares ExpectedSharesOf(const VotingStrategy& s, const SignalModel& sm) {
  const VoteMargins m = Margins(s, sm);
  return {0.5 + m.in_H, 0.5 - m.in_L};
}

VotingStrategy OptimalStrategy(const SignalModel& sm) {
  const double h_sum = sm.p_h_given_L + sm.p_h_given_H;
  const double l_sum = sm.p_l_given_L() + sm.p_l_given_H();
  if (h_sum / 2.0 <= 0.5) return {0.5 * h_sum / l_sum, 0.5};
  return {0.5, 0.5 * l_sum / h_sum};
}

VotingStrategy OptimalStrategyFor(AgentType majority, const SignalModel& sm) {
  const VotingStrategy s = OptimalStrategy(sm);
  return majority == AgentType::kTypeH ? s : s.Mirrored();
}

double MValue(const SignalModel& sm) {
  if (sm.p_h_given_L + sm.p_h_given_H <= 1.0) {
    return sm.p_l_given_L() / (sm.p_l_given_L() + sm.p_l_given_H());
  }
  return sm.p_h_given_H / (sm.p_h_given_L + sm.p_h_given_H);
}

double ThetaMaj(const SignalModel& sm) { return 1.0 / (2.0 * MValue(sm)); }

MajorityVoteAnalysis AnalyzeMajorityVote(const SignalModel& sm) {
  RequireValid(sm);
  MajorityVoteAnalysis a;
  a.optimal_strategy = OptimalStrategy(sm);
  a.m_value = MValue(sm);
  a.theta_maj = ThetaMaj(sm);
  a.shares_at_optimum = ExpectedSharesOf(a.optimal_strategy, sm);
  return a;
}

double VoteAProbability(const VotingStrategy& s, const SignalModel& sm, WorldState state) {
  return VoteAProbability(sm.p_signal(Signal::kL, state), sm.p_signal(Signal::kH, state),
                          s.beta_l(), s.beta_h());
}

double ExpectedImdShare(const Configuration& config, const VotingStrategy& majority_strategy,
                        const VotingStrategy& minority_strategy, WorldState state) {
  const SignalModel& sm = config.signal_model;
  const double alpha = config.alpha();
  const double a_share = alpha * VoteAProbability(majority_strategy, sm, state) +
                         (1.0 - alpha) * VoteAProbability(minority_strategy, sm, state);
  return InformedMajorityDecision(config, state) == Alternative::kA ? a_share : 1.0 - a_share;
}

double ExactOutcome(const InstanceShape& shape, const SymmetricProfile& profile,
                    const Configuration& config, WorldState state) {
  const SignalModel& sm = config.signal_model;
  const double q_maj = VoteAProbability(profile.strategy(config.majority_type()), sm, state);
  const double q_min = VoteAProbability(profile.strategy(config.minority_type()), sm, state);
  return AWinProbability(shape.n, shape.majority_count, q_maj, q_min);
}

OutcomeDistribution ExactOutcomeDistribution(const InstanceShape& shape,
                                             const SymmetricProfile& profile,
                                             const Configuration& config) {
  return {ExactOutcome(shape, profile, config, WorldState::kH),
          ExactOutcome(shape, profile, config, WorldState::kL)};
}

double ImdWinProbability(const OutcomeDistribution& outcome, const Configuration& config) {
  const double mu = config.signal_model.mu;
  double win_H = outcome.lambda_A_H;
  double win_L = outcome.lambda_R_L();
  if (config.majority_type() == AgentType::kTypeL) {
    win_H = outcome.lambda_R_H();
    win_L = outcome.lambda_A_L;
  }
  return mu * win_H + (1.0 - mu) * win_L;
}

double WinningProbabilityImd(const InstanceShape& shape, const SymmetricProfile& profile,
                             const Configuration& config) {
  return ImdWinProbability(ExactOutcomeDistribution(shape, profile, config), config);
}

Alternative MajorityVote(std::span<const Alternative> votes, std::mt19937_64& rng) {
  const auto a = std::count(votes.begin(), votes.end(), Alternative::kA);
  const auto r = static_cast<std::ptrdiff_t>(votes.size()) - a;
  if (a != r) return a > r ? Alternative::kA : Alternative::kR;
  return std::bernoulli_distribution(0.5)(rng) ? Alternative::kA : Alternative::kR;
}

SimulationResult SimulateElection(const Instance& instance, const SymmetricProfile& profile,
                                  std::int64_t trials, std::uint64_t seed) {
  std::vector<VotingStrategy> strategies;
  strategies.reserve(instance.utilities.size());
  for (const auto& u : instance.utilities) strategies.push_back(profile.strategy(u.owner_type()));
  return SimulateElection(instance, strategies, trials, seed);
}

SimulationResult SimulateElection(const Instance& instance,
                                  const std::vector<VotingStrategy>& strategies,
                                  std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) Fail(ErrorKind::kParameter, "simulation needs at least one trial");
  if (strategies.size() != instance.utilities.size()) {
    Fail(ErrorKind::kParameter, "one strategy per agent is required");
  }
  const SignalModel& sm = instance.configuration.signal_model;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Alternative> votes(strategies.size());

  auto a_wins = [&](WorldState state) {
    std::int64_t count = 0;
    const double p_h = sm.p_signal(Signal::kH, state);
    for (std::int64_t t = 0; t < trials; ++t) {
      for (size_t i = 0; i < strategies.size(); ++i) {
        const Signal s = unit(rng) < p_h ? Signal::kH : Signal::kL;
        votes[i] = unit(rng) < strategies[i].beta(s) ? Alternative::kA : Alternative::kR;
      }
      if (MajorityVote(votes, rng) == Alternative::kA) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(trials);
  };

  SimulationResult result;
  result.trials_per_state = trials;
  result.lambda_A_H = a_wins(WorldState::kH);
  result.lambda_A_L = a_wins(WorldState::kL);
  result.imd_frequency = ImdWinProbability(result.outcome(), instance.configuration);
  return result;
}

}  // namespace infoagg
