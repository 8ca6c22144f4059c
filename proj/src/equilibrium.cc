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

#include "infoagg/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "infoagg/discrete_prob.h"
#include "infoagg/error.h"

namespace infoagg {
namespace {

// Coalition members must weakly gain; differences within this band of zero
// count as zero so that deviations with no effect are not rejected on roundoff.
constexpr double kWeakGainTolerance = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Group {
  UtilityFunction utility;
  std::int64_t count = 0;
};

bool SameTable(const UtilityFunction& a, const UtilityFunction& b) {
  if (a.owner_type() != b.owner_type()) return false;
  for (auto s : {WorldState::kL, WorldState::kH}) {
    for (auto x : {Alternative::kA, Alternative::kR}) {
      if (a.value(s, x) != b.value(s, x)) return false;
    }
  }
  return true;
}

std::vector<Group> GroupAgents(const Instance& instance) {
  std::vector<Group> groups;
  for (const auto& u : instance.utilities) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return SameTable(g.utility, u); });
    if (it == groups.end()) {
      groups.push_back({u, 1});
    } else {
      ++it->count;
    }
  }
  return groups;
}

std::vector<double> GridAxis(double step) {
  std::vector<double> axis;
  for (int k = 0;; ++k) {
    const double v = -0.5 + k * step;
    if (v > 0.5 + 1e-12) break;
    axis.push_back(std::min(v, 0.5));
  }
  if (0.5 - axis.back() > 1e-12) axis.push_back(0.5);
  return axis;
}

// Count laws of one strategy in both states, in the role of the majority
// (with tail sums) and of the minority.
struct StrategyTables {
  CountDistribution majority[2];
  std::vector<double> majority_at_least[2];
  CountDistribution minority[2];
};

int Idx(WorldState s) { return s == WorldState::kL ? 0 : 1; }

class OutcomeEngine {
 public:
  OutcomeEngine(const InstanceShape& shape, const SignalModel& sm) : shape_(shape), sm_(sm) {}

  const StrategyTables& Tables(const VotingStrategy& s) {
    const auto key = std::make_pair(s.delta_l, s.delta_h);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    StrategyTables t;
    for (auto w : {WorldState::kL, WorldState::kH}) {
      const double q = VoteAProbability(s, sm_, w);
      t.majority[Idx(w)] = Binomial(shape_.majority_count, q);
      t.majority_at_least[Idx(w)] = AtLeast(t.majority[Idx(w)]);
      t.minority[Idx(w)] = Binomial(shape_.n - shape_.majority_count, q);
    }
    return cache_.emplace(key, std::move(t)).first->second;
  }

  OutcomeDistribution Outcome(const VotingStrategy& majority, const VotingStrategy& minority) {
    const StrategyTables& a = Tables(majority);
    const StrategyTables& b = Tables(minority);
    ++evaluations_;
    OutcomeDistribution out;
    out.lambda_A_H = AWinFromCounts(shape_.n, a.majority[1], a.majority_at_least[1], b.minority[1]);
    out.lambda_A_L = AWinFromCounts(shape_.n, a.majority[0], a.majority_at_least[0], b.minority[0]);
    return out;
  }

  std::int64_t evaluations() const { return evaluations_; }

 private:
  InstanceShape shape_;
  SignalModel sm_;
  std::map<std::pair<double, double>, StrategyTables> cache_;
  std::int64_t evaluations_ = 0;
};

class Search {
 public:
  Search(const Instance& instance, const SymmetricProfile& profile, const VerifierOptions& options)
      : instance_(instance),
        config_(instance.configuration),
        profile_(profile),
        options_(options),
        engine_(InstanceShape::Of(instance.configuration, instance.n),
                instance.configuration.signal_model),
        groups_(GroupAgents(instance)),
        majority_(config_.majority_type()),
        minority_(config_.minority_type()) {
    base_ = engine_.Outcome(profile_.strategy(majority_), profile_.strategy(minority_));
  }

  const OutcomeDistribution& base() const { return base_; }
  std::int64_t evaluations() const { return engine_.evaluations(); }

  // Returns the witness if the deviation of the listed types to `deviation`
  // satisfies all three clauses. Updates *best_gain with the largest member
  // gain whenever every member weakly gains.
  std::optional<DeviationWitness> Try(DeviationFamily family, const std::string& construction,
                                      const std::vector<AgentType>& types,
                                      const SymmetricProfile& deviation, double* best_gain) {
    const OutcomeDistribution after =
        engine_.Outcome(deviation.strategy(majority_), deviation.strategy(minority_));
    return Judge(family, construction, types, deviation, after, best_gain);
  }

  std::optional<DeviationWitness> Judge(DeviationFamily family, const std::string& construction,
                                        const std::vector<AgentType>& types,
                                        const SymmetricProfile& deviation,
                                        const OutcomeDistribution& after, double* best_gain) {
    const double mu = config_.signal_model.mu;
    double min_gain = std::numeric_limits<double>::infinity();
    double max_gain = kNegInf;
    std::int64_t size = 0;
    for (const auto& g : groups_) {
      if (std::find(types.begin(), types.end(), g.utility.owner_type()) == types.end()) continue;
      const double gain = UtilityDifference(g.utility, base_, after, mu);
      min_gain = std::min(min_gain, gain);
      max_gain = std::max(max_gain, gain);
      size += g.count;
    }
    if (size == 0 || min_gain < -kWeakGainTolerance) return std::nullopt;
    *best_gain = std::max(*best_gain, max_gain);
    if (!(max_gain > options_.epsilon)) return std::nullopt;

    DeviationWitness w;
    w.family = family;
    w.construction = construction;
    w.coalition_types = types;
    w.coalition_size = size;
    w.deviation = deviation;
    w.outcome_before = base_;
    w.outcome_after = after;
    w.max_gain = max_gain;
    for (const auto& g : groups_) {
      if (std::find(types.begin(), types.end(), g.utility.owner_type()) == types.end()) continue;
      GroupGain gg;
      gg.type = g.utility.owner_type();
      gg.utility = g.utility;
      gg.count = g.count;
      gg.utility_before = ExAnteUtility(g.utility, base_, mu);
      gg.utility_after = ExAnteUtility(g.utility, after, mu);
      gg.gain = UtilityDifference(g.utility, base_, after, mu);
      w.gains.push_back(gg);
    }
    return w;
  }

  // Prop-style screen: a pair of representatives that both weakly gain with
  // one above epsilon marks the shift as worth a full check.
  bool PassesScreen(const OutcomeDistribution& after) const {
    const double mu = config_.signal_model.mu;
    for (const auto& h : groups_) {
      if (h.utility.owner_type() != AgentType::kTypeH) continue;
      for (const auto& l : groups_) {
        if (l.utility.owner_type() != AgentType::kTypeL) continue;
        if (!NoWinWinCheck(base_, after, h.utility, l.utility, mu, options_.epsilon)) return false;
      }
    }
    return true;
  }

  bool HasType(AgentType t) const {
    return std::any_of(groups_.begin(), groups_.end(),
                       [t](const Group& g) { return g.utility.owner_type() == t; });
  }

  OutcomeEngine& engine() { return engine_; }
  AgentType majority() const { return majority_; }
  AgentType minority() const { return minority_; }

 private:
  const Instance& instance_;
  const Configuration& config_;
  SymmetricProfile profile_;
  VerifierOptions options_;
  OutcomeEngine engine_;
  std::vector<Group> groups_;
  AgentType majority_;
  AgentType minority_;
  OutcomeDistribution base_;
};

}  // namespace

double ExAnteUtility(const UtilityFunction& agent, const OutcomeDistribution& o, double mu) {
  const double in_H = o.lambda_A_H * agent.value(WorldState::kH, Alternative::kA) +
                      o.lambda_R_H() * agent.value(WorldState::kH, Alternative::kR);
  const double in_L = o.lambda_A_L * agent.value(WorldState::kL, Alternative::kA) +
                      o.lambda_R_L() * agent.value(WorldState::kL, Alternative::kR);
  return mu * in_H + (1.0 - mu) * in_L;
}

double UtilityDifference(const UtilityFunction& agent, const OutcomeDistribution& from,
                         const OutcomeDistribution& to, double mu) {
  const double shift_H = to.lambda_A_H - from.lambda_A_H;
  const double shift_L = to.lambda_A_L - from.lambda_A_L;
  const double stake_H = agent.delta_v(WorldState::kH);
  const double stake_L = agent.delta_v(WorldState::kL);
  if (agent.owner_type() == AgentType::kTypeH) {
    return mu * shift_H * stake_H - (1.0 - mu) * shift_L * stake_L;
  }
  return (1.0 - mu) * shift_L * stake_L - mu * shift_H * stake_H;
}

bool NoWinWinCheck(const OutcomeDistribution& from, const OutcomeDistribution& to,
                   const UtilityFunction& type_h_agent, const UtilityFunction& type_l_agent,
                   double mu, double epsilon) {
  const double du_h = UtilityDifference(type_h_agent, from, to, mu);
  const double du_l = UtilityDifference(type_l_agent, from, to, mu);
  const bool h_wins = du_h > epsilon && du_l >= 0.0;
  const bool l_wins = du_l > epsilon && du_h >= 0.0;
  return !h_wins && !l_wins;
}

CounterStrategy CounterStrategyProfile(const VotingStrategy& minority_strategy,
                                       const SignalModel& sm, double alpha, AgentType majority) {
  if (!(alpha > 0.0)) Fail(ErrorKind::kParameter, "counter-strategy: alpha must be positive");
  const double w = (1.0 - alpha) / alpha;
  if (!(w >= 0.0 && w <= 1.0)) {
    Fail(ErrorKind::kParameter, "counter-strategy: mixture weight (1 - alpha) / alpha outside [0, 1]");
  }
  CounterStrategy c;
  c.mirror_weight = w;
  c.mirror = minority_strategy.Mirrored();
  c.optimal = OptimalStrategyFor(majority, sm);
  c.mixed = VotingStrategy::FromBetas(w * c.mirror.beta_l() + (1.0 - w) * c.optimal.beta_l(),
                                      w * c.mirror.beta_h() + (1.0 - w) * c.optimal.beta_h());
  return c;
}

AggressiveMinority BestAggressiveMinority(const VotingStrategy& majority_strategy,
                                          const SignalModel& sm, double alpha,
                                          AgentType majority) {
  Configuration config;
  config.signal_model = sm;
  config.alpha_H = majority == AgentType::kTypeH ? alpha : 1.0 - alpha;
  config.alpha_L = 1.0 - config.alpha_H;

  struct Option {
    VotingStrategy strategy;
    Alternative vote;
    double share_H, share_L;
    bool flips;
    WorldState target;
  };
  auto evaluate = [&](Alternative vote) {
    Option o;
    o.vote = vote;
    o.strategy = vote == Alternative::kA ? VotingStrategy::AlwaysA() : VotingStrategy::AlwaysR();
    o.share_H = ExpectedImdShare(config, majority_strategy, o.strategy, WorldState::kH);
    o.share_L = ExpectedImdShare(config, majority_strategy, o.strategy, WorldState::kL);
    // The minority can only hurt the IMD in the state where it votes against it.
    o.target = InformedMajorityDecision(config, WorldState::kH) != vote ? WorldState::kH
                                                                       : WorldState::kL;
    o.flips = (o.target == WorldState::kH ? o.share_H : o.share_L) <= 0.5;
    return o;
  };
  const Option a = evaluate(Alternative::kA);
  const Option r = evaluate(Alternative::kR);
  const double worst_a = std::min(a.share_H, a.share_L);
  const double worst_r = std::min(r.share_H, r.share_L);

  const Option* pick = nullptr;
  if (a.flips != r.flips) {
    pick = a.flips ? &a : &r;
  } else {
    pick = worst_r < worst_a ? &r : &a;
  }
  AggressiveMinority out;
  out.strategy = pick->strategy;
  out.flips_some_state = pick->flips;
  out.target_state = pick->target;
  out.imd_share_in_H = pick->share_H;
  out.imd_share_in_L = pick->share_L;
  return out;
}

BoundConstants ComputeBoundConstants(const Configuration& config, std::int64_t n,
                                     int utility_bound) {
  RequireValid(config);
  BoundConstants k;
  k.alpha = config.alpha();
  k.m_value = MValue(config.signal_model);
  k.theta_maj = ThetaMaj(config.signal_model);
  k.mu = config.signal_model.mu;
  k.utility_bound = utility_bound;
  k.n = n;
  k.majority_count = config.majority_count(n);
  const double b = utility_bound;
  const double a = k.alpha;
  const double m = k.m_value;

  k.stability_deviation = (a * m - 0.5) / 3.0;
  const double stab_tail = HoeffdingBound(k.majority_count, std::max(0.0, k.stability_deviation));
  k.stability_epsilon = 2.0 * b * b * stab_tail;
  k.imd_win_lower_bound = 1.0 - 2.0 * stab_tail;

  k.counter_deviation = 0.5 * (2.0 * a - 1.0) * (m - 0.5);
  k.counter_epsilon = b * HoeffdingBound(n, k.counter_deviation);

  k.instability_deviation = 0.5 * (2.0 * a - 1.0) * std::min(m - 0.5, 0.5 - a * m);
  k.instability_epsilon = 0.25 * std::min(k.mu, 1.0 - k.mu) -
                          2.0 * b * b * HoeffdingBound(n, std::max(0.0, k.instability_deviation));
  k.instability_meaningful = k.instability_deviation > 0.0 && k.instability_epsilon > 0.0;
  return k;
}

BoundConstants ComputeBoundConstants(const Instance& instance) {
  return ComputeBoundConstants(instance.configuration, instance.n, instance.utility_bound());
}

double DefaultEpsilon(const BoundConstants& k) {
  if (k.alpha > k.theta_maj) return k.stability_epsilon;
  return std::max(0.0, k.instability_epsilon);
}

const char* ToString(DeviationFamily family) {
  switch (family) {
    case DeviationFamily::kMinorityCoalition:
      return "minority-coalition";
    case DeviationFamily::kMajorityCoalition:
      return "majority-coalition";
    case DeviationFamily::kMixedCoalition:
      return "mixed-coalition";
  }
  return "unknown";
}

EquilibriumVerdict VerifyEpsilonStrongBne(const Instance& instance,
                                          const SymmetricProfile& profile,
                                          const VerifierOptions& options) {
  RequireValid(instance);
  if (!(options.epsilon >= 0.0)) {
    Fail(ErrorKind::kParameter, "epsilon must be non-negative");
  }
  if (!(options.grid_step > 0.0 && options.grid_step <= 0.5)) {
    Fail(ErrorKind::kParameter, "grid step must lie in (0, 1/2]");
  }
  for (auto t : {AgentType::kTypeL, AgentType::kTypeH}) {
    if (!Validate(profile.strategy(t)).empty()) {
      Fail(ErrorKind::kParameter, "profile strategy for type " + ToString(t) + " is out of range");
    }
  }

  const Configuration& config = instance.configuration;
  const SignalModel& sm = config.signal_model;
  Search search(instance, profile, options);
  const AgentType maj = search.majority();
  const AgentType min = search.minority();
  const std::vector<double> axis = GridAxis(options.grid_step);

  EquilibriumVerdict v;
  v.epsilon = options.epsilon;
  v.grid_step = options.grid_step;
  v.outcome = search.base();
  v.imd_win_probability = ImdWinProbability(search.base(), config);
  v.constants = ComputeBoundConstants(instance);
  v.best_gain_minority = kNegInf;
  v.best_gain_majority = kNegInf;
  v.best_gain_mixed = kNegInf;
  v.search_scope =
      "whole-type coalitions with type-symmetric deviations; strategies on a grid of step " +
      std::to_string(options.grid_step) + " plus named constructions";

  auto finish = [&](std::optional<DeviationWitness> w) {
    v.deviations_evaluated = search.evaluations();
    if (w) {
      v.is_epsilon_equilibrium = false;
      v.witness = std::move(w);
    }
    return v;
  };
  auto with = [&](AgentType t, const VotingStrategy& s) {
    SymmetricProfile p = profile;
    p.strategy(t) = s;
    return p;
  };

  // (a) the whole minority deviates.
  if (options.search_minority && search.HasType(min)) {
    v.families_searched.push_back(DeviationFamily::kMinorityCoalition);
    const auto fam = DeviationFamily::kMinorityCoalition;
    const AggressiveMinority aggressive =
        BestAggressiveMinority(profile.strategy(maj), sm, config.alpha(), maj);
    for (const auto& s : {aggressive.strategy, aggressive.strategy == VotingStrategy::AlwaysA()
                                                   ? VotingStrategy::AlwaysR()
                                                   : VotingStrategy::AlwaysA()}) {
      if (auto w = search.Try(fam, "aggressive-minority", {min}, with(min, s), &v.best_gain_minority)) {
        return finish(w);
      }
    }
    for (double dl : axis) {
      for (double dh : axis) {
        if (auto w = search.Try(fam, "grid", {min}, with(min, {dl, dh}), &v.best_gain_minority)) {
          return finish(w);
        }
      }
    }
  }

  // (b) the whole majority deviates.
  if (options.search_majority) {
    v.families_searched.push_back(DeviationFamily::kMajorityCoalition);
    const auto fam = DeviationFamily::kMajorityCoalition;
    std::vector<VotingStrategy> presumed{profile.strategy(min)};
    for (double dl : axis) {
      for (double dh : axis) presumed.push_back({dl, dh});
    }
    for (const auto& m : presumed) {
      const CounterStrategy c = CounterStrategyProfile(m, sm, config.alpha(), maj);
      if (auto w = search.Try(fam, "counter-strategy", {maj}, with(maj, c.mixed), &v.best_gain_majority)) {
        return finish(w);
      }
    }
    for (double dl : axis) {
      for (double dh : axis) {
        if (auto w = search.Try(fam, "grid", {maj}, with(maj, {dl, dh}), &v.best_gain_majority)) {
          return finish(w);
        }
      }
    }
  }

  // (c) both types deviate together.
  if (options.search_mixed && search.HasType(min)) {
    v.families_searched.push_back(DeviationFamily::kMixedCoalition);
    const auto fam = DeviationFamily::kMixedCoalition;
    for (double a_l : axis) {
      for (double a_h : axis) {
        for (double b_l : axis) {
          for (double b_h : axis) {
            SymmetricProfile p;
            p.strategy(maj) = {a_l, a_h};
            p.strategy(min) = {b_l, b_h};
            const OutcomeDistribution after = search.engine().Outcome(p.strategy(maj), p.strategy(min));
            if (search.PassesScreen(after)) continue;
            if (auto w = search.Judge(fam, "grid", {maj, min}, p, after, &v.best_gain_mixed)) {
              return finish(w);
            }
          }
        }
      }
    }
  }
  return finish(std::nullopt);
}

}  // namespace infoagg
