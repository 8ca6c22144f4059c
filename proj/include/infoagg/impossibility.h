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

// Indistinguishability lab for anonymous mechanisms below the 1/(delta + 1)
// threshold. A TypeL majority reports truthfully while the TypeH minority
// declares TypeL and reports h with a fixed probability chosen so that the
// reported-h count has the same mean in state H (imitation "A") as in state L
// (imitation "B", the complementary probability). Exact total variation
// between the two count laws, its analytic Gaussian-pipeline bound, output
// gaps of count mechanisms and the minority's deviation gains are computed
// here, together with the direct-revelation wrapper used to lift the
// argument from truthful to arbitrary symmetric equilibria.

#ifndef INFOAGG_IMPOSSIBILITY_H_
#define INFOAGG_IMPOSSIBILITY_H_

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "infoagg/core_model.h"
#include "infoagg/discrete_prob.h"
#include "infoagg/error.h"

namespace infoagg {

// Symmetric signal model P(h|H) = 1/2 + delta/2, P(h|L) = 1/2 - delta/2.
struct DeviationExperiment {
  double alpha = 0.7;
  double delta = 0.25;
  std::int64_t n = 1000;
  // Probability that an imitating minority agent reports h in state H.
  double q = 0.0;

  std::int64_t majority_count() const;
  // ceil((1 - alpha) n).
  std::int64_t minority_count() const;
  SignalModel signal_model(double mu = 0.5) const;
};

// Throws Error(kParameter) for alpha outside (1/2, 1), delta outside (0, 1)
// or n < 1, and Error(kConstruction) when q falls outside [0, 1].
DeviationExperiment MakeExperiment(double alpha, double delta, std::int64_t n);

struct CountingDistributions {
  // Reported-h count with imitation A in state H.
  CountDistribution in_H;
  // Reported-h count with imitation B in state L.
  CountDistribution in_L;
};

CountingDistributions MakeCountingDistributions(const DeviationExperiment& exp);

// Total variation between a binomial and the discretized Gaussian with the
// same mean and variance, next to the 7.6 / sigma guarantee.
struct GaussianApproximation {
  double tvd = 0.0;
  double sigma = 0.0;
  double bound = 0.0;
};

GaussianApproximation BinomialGaussianGap(std::int64_t n, double p);

// Components of the analytic bound on tvd(in_H, in_L). The mean gap between
// the two majority counts is split into an integer part and a remainder in
// [0, 1); only the remainder enters the Gaussian shift terms.
struct AnalyticBound {
  double sigma_majority = 0.0;
  double sigma_minority = 0.0;
  std::int64_t integer_shift = 0;
  double fractional_shift = 0.0;
  // 7.6 / sigma for each of the four binomial-to-Gaussian replacements; a
  // zero-variance count is its own Gaussian surrogate and contributes 0.
  double approximation_terms = 0.0;
  // r / (sigma sqrt(2 pi)) per side; infinite for a degenerate side with r > 0.
  double shift_terms = 0.0;
  double total() const { return approximation_terms + shift_terms; }
};

AnalyticBound ComputeAnalyticBound(const DeviationExperiment& exp);

struct TvdRow {
  std::int64_t n = 0;
  double q = 0.0;
  double tvd = 0.0;
  double bound = 0.0;
  double tvd_sqrt_n = 0.0;
};

// One row per n, computed in parallel; rows keep the order of n_values.
std::vector<TvdRow> TvdDecayExperiment(double alpha, double delta,
                                       std::span<const std::int64_t> n_values);

// Probability of output A given the reported-h count when every agent
// declares TypeL.
using CountMechanism = std::function<double(std::int64_t h_count)>;

// Deterministic: A iff h_count < cutoff (few h reports suggest state L,
// where a TypeL majority wants A).
CountMechanism ThresholdCountMechanism(std::int64_t cutoff);

struct IndistinguishabilityGap {
  double pr_A_in_H = 0.0;
  double pr_A_in_L = 0.0;
  double gap = 0.0;
  double tvd = 0.0;
  bool within_tvd() const;
};

IndistinguishabilityGap MeasureGap(const CountingDistributions& counts,
                                   const CountMechanism& mechanism);

// Declared type and signal tallies of an anonymous report profile.
struct ReportTally {
  std::int64_t type_L = 0;
  std::int64_t type_L_h = 0;
  std::int64_t type_H = 0;
  std::int64_t type_H_h = 0;

  std::int64_t n() const { return type_L + type_H; }
};

// Probability of output A for a given tally.
using AnonymousMechanism = std::function<double(const ReportTally&)>;

// The count map seen under imitation (all declarations TypeL).
CountMechanism AllTypeL(const AnonymousMechanism& mechanism, std::int64_t n);

// The threshold mechanism restricted to truthful threshold reports:
// plurality type as majority, l-frequency compared strictly with threshold.
AnonymousMechanism TallyThresholdMechanism(double threshold);

struct DeviationAudit {
  double epsilon = 0.0;
  double tvd = 0.0;
  // Truthful IMD probability per state; the argument assumes both are 1.
  double truthful_imd_in_H = 0.0;
  double truthful_imd_in_L = 0.0;
  bool precondition_holds = false;
  double pr_A_in_H = 0.0;
  double pr_R_in_L = 0.0;
  // Gains over an IMD-perfect truthful baseline from the state where each
  // imitation is aimed: mu Pr[A] dv(H) and (1 - mu) Pr[R] dv(L).
  double gain_A = 0.0;
  double gain_B = 0.0;
  // Which branch of the case split applies: Pr[A in H] >= 1/2 selects A.
  bool case_A = false;
  bool clears_epsilon = false;
  // Ex-ante TypeH gains over the actual truthful outcome, both states.
  double exact_gain_A = 0.0;
  double exact_gain_B = 0.0;
};

// utilities.first belongs to the TypeL majority, utilities.second to the
// TypeH minority. Precondition margin 1e-9.
DeviationAudit AuditDeviations(const DeviationExperiment& exp,
                               const AnonymousMechanism& mechanism,
                               const std::pair<UtilityFunction, UtilityFunction>& utilities,
                               double mu);

struct Declaration {
  AgentType type = AgentType::kTypeH;
  Signal signal = Signal::kH;
};

// Direct mechanism simulating a symmetric profile: each declared (type,
// signal) is replaced by a report drawn from its law, then the wrapped
// mechanism runs on the simulated profile.
template <typename R>
class RevelationWrapper {
 public:
  using Inner = std::function<Alternative(std::span<const R>, std::mt19937_64&)>;
  // Finite report law with non-negative weights.
  using ReportLaw = std::vector<std::pair<R, double>>;

  RevelationWrapper(Inner inner, std::function<ReportLaw(AgentType, Signal)> profile)
      : inner_(std::move(inner)) {
    for (AgentType t : {AgentType::kTypeL, AgentType::kTypeH}) {
      for (Signal s : {Signal::kL, Signal::kH}) {
        ReportLaw law = profile(t, s);
        if (law.empty()) Fail(ErrorKind::kParameter, "revelation wrapper: empty report law");
        std::vector<double> w;
        for (const auto& [r, p] : law) {
          if (!(p >= 0.0)) Fail(ErrorKind::kParameter, "revelation wrapper: negative weight");
          w.push_back(p);
        }
        auto& slot = slots_[Index(t, s)];
        slot.reports.reserve(law.size());
        for (auto& entry : law) slot.reports.push_back(std::move(entry.first));
        slot.sampler = std::discrete_distribution<size_t>(w.begin(), w.end());
      }
    }
  }

  Alternative operator()(std::span<const Declaration> declarations, std::mt19937_64& rng) const {
    std::vector<R> simulated;
    simulated.reserve(declarations.size());
    for (const auto& d : declarations) {
      auto& slot = slots_[Index(d.type, d.signal)];
      simulated.push_back(slot.reports[slot.sampler(rng)]);
    }
    return inner_(std::span<const R>(simulated), rng);
  }

  Alternative Run(std::span<const Declaration> declarations, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return (*this)(declarations, rng);
  }

 private:
  struct Slot {
    std::vector<R> reports;
    mutable std::discrete_distribution<size_t> sampler;
  };
  static size_t Index(AgentType t, Signal s) {
    return (t == AgentType::kTypeH ? 2 : 0) + (s == Signal::kH ? 1 : 0);
  }

  Inner inner_;
  std::array<Slot, 4> slots_;
};

}  // namespace infoagg

#endif  // INFOAGG_IMPOSSIBILITY_H_
