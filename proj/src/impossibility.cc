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

#include "infoagg/impossibility.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

namespace infoagg {
namespace {

constexpr double kCountSlack = 1e-9;
// q may undershoot 0 by rounding at alpha = 1/(delta + 1).
constexpr double kQSlack = 1e-12;
constexpr double kApproximationConstant = 7.6;
constexpr double kPreconditionMargin = 1e-9;

double Expectation(const CountDistribution& d, const CountMechanism& m) {
  double s = 0.0;
  for (size_t i = 0; i < d.probabilities.size(); ++i) {
    if (d.probabilities[i] == 0.0) continue;
    s += d.probabilities[i] * m(d.offset + static_cast<std::int64_t>(i));
  }
  return s;
}

CountDistribution Mixed(std::int64_t majority, double p_major, std::int64_t minority,
                        double p_minor) {
  return Convolve(Binomial(majority, p_major), Binomial(minority, p_minor));
}

// Pr[A] when the TypeL majority and the TypeH minority both report their
// signals truthfully in a state with signal-h probability p_h.
double TruthfulPrA(const DeviationExperiment& exp, const AnonymousMechanism& m, double p_h) {
  const auto maj = Binomial(exp.majority_count(), p_h);
  const auto min = Binomial(exp.minority_count(), p_h);
  double s = 0.0;
  ReportTally tally{exp.majority_count(), 0, exp.minority_count(), 0};
  for (size_t i = 0; i < maj.probabilities.size(); ++i) {
    if (maj.probabilities[i] == 0.0) continue;
    tally.type_L_h = static_cast<std::int64_t>(i);
    for (size_t j = 0; j < min.probabilities.size(); ++j) {
      if (min.probabilities[j] == 0.0) continue;
      tally.type_H_h = static_cast<std::int64_t>(j);
      s += maj.probabilities[i] * min.probabilities[j] * m(tally);
    }
  }
  return s;
}

}  // namespace

std::int64_t DeviationExperiment::majority_count() const {
  return static_cast<std::int64_t>(std::floor(alpha * static_cast<double>(n) + kCountSlack));
}

std::int64_t DeviationExperiment::minority_count() const {
  return static_cast<std::int64_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(n) - kCountSlack));
}

SignalModel DeviationExperiment::signal_model(double mu) const {
  return SignalModel{mu, 0.5 + delta / 2.0, 0.5 - delta / 2.0};
}

DeviationExperiment MakeExperiment(double alpha, double delta, std::int64_t n) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    Fail(ErrorKind::kParameter, "deviation experiment: alpha must lie in (1/2, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    Fail(ErrorKind::kParameter, "deviation experiment: delta must lie in (0, 1)");
  }
  if (n < 1) Fail(ErrorKind::kParameter, "deviation experiment: n must be positive");
  DeviationExperiment exp{alpha, delta, n, 0.0};
  const std::int64_t minority = exp.minority_count();
  if (minority < 1) {
    Fail(ErrorKind::kConstruction, "deviation experiment: no minority agents at n = " +
                                       std::to_string(n));
  }
  double q = (1.0 - delta * static_cast<double>(exp.majority_count()) /
                        static_cast<double>(minority)) /
             2.0;
  if (q < 0.0 && q >= -kQSlack) q = 0.0;
  if (!(q >= 0.0 && q <= 1.0)) {
    Fail(ErrorKind::kConstruction,
         "deviation experiment: imitation probability q = " + std::to_string(q) +
             " outside [0, 1]; alpha exceeds 1/(delta + 1) at n = " + std::to_string(n));
  }
  exp.q = q;
  return exp;
}

CountingDistributions MakeCountingDistributions(const DeviationExperiment& exp) {
  if (!(exp.q >= 0.0 && exp.q <= 1.0)) {
    Fail(ErrorKind::kConstruction, "counting distributions: q outside [0, 1]");
  }
  const double p_up = 0.5 + exp.delta / 2.0;
  const double p_down = 0.5 - exp.delta / 2.0;
  return {Mixed(exp.majority_count(), p_up, exp.minority_count(), exp.q),
          Mixed(exp.majority_count(), p_down, exp.minority_count(), 1.0 - exp.q)};
}

GaussianApproximation BinomialGaussianGap(std::int64_t n, double p) {
  GaussianApproximation out;
  const double var = static_cast<double>(n) * p * (1.0 - p);
  if (!(var > 0.0)) {
    Fail(ErrorKind::kParameter, "binomial-Gaussian gap: variance must be positive");
  }
  out.sigma = std::sqrt(var);
  out.bound = kApproximationConstant / out.sigma;
  out.tvd = Tvd(Binomial(n, p), DiscretizedGaussian(static_cast<double>(n) * p, var));
  return out;
}

AnalyticBound ComputeAnalyticBound(const DeviationExperiment& exp) {
  AnalyticBound b;
  const double p = 0.5 + exp.delta / 2.0;
  b.sigma_majority = std::sqrt(static_cast<double>(exp.majority_count()) * p * (1.0 - p));
  b.sigma_minority = std::sqrt(static_cast<double>(exp.minority_count()) * exp.q * (1.0 - exp.q));

  const double shift = static_cast<double>(exp.majority_count()) * exp.delta;
  b.integer_shift = static_cast<std::int64_t>(std::floor(shift + kCountSlack));
  b.fractional_shift = std::max(0.0, shift - static_cast<double>(b.integer_shift));

  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto side = [&](double sigma) {
    if (sigma > 0.0) {
      b.approximation_terms += 2.0 * kApproximationConstant / sigma;
      b.shift_terms += b.fractional_shift * inv_sqrt_2pi / sigma;
    } else if (b.fractional_shift > 0.0) {
      b.shift_terms = std::numeric_limits<double>::infinity();
    }
  };
  side(b.sigma_majority);
  side(b.sigma_minority);
  return b;
}

std::vector<TvdRow> TvdDecayExperiment(double alpha, double delta,
                                       std::span<const std::int64_t> n_values) {
  std::vector<std::future<TvdRow>> jobs;
  jobs.reserve(n_values.size());
  for (std::int64_t n : n_values) {
    const auto exp = MakeExperiment(alpha, delta, n);
    jobs.push_back(std::async(std::launch::async, [exp] {
      const auto counts = MakeCountingDistributions(exp);
      TvdRow row;
      row.n = exp.n;
      row.q = exp.q;
      row.tvd = Tvd(counts.in_H, counts.in_L);
      row.bound = ComputeAnalyticBound(exp).total();
      row.tvd_sqrt_n = row.tvd * std::sqrt(static_cast<double>(exp.n));
      return row;
    }));
  }
  std::vector<TvdRow> rows;
  rows.reserve(jobs.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

CountMechanism ThresholdCountMechanism(std::int64_t cutoff) {
  return [cutoff](std::int64_t h_count) { return h_count < cutoff ? 1.0 : 0.0; };
}

bool IndistinguishabilityGap::within_tvd() const {
  // Both sides are sums over the same support; allow accumulation error.
  return gap <= tvd + 1e-12;
}

IndistinguishabilityGap MeasureGap(const CountingDistributions& counts,
                                   const CountMechanism& mechanism) {
  IndistinguishabilityGap g;
  g.pr_A_in_H = Expectation(counts.in_H, mechanism);
  g.pr_A_in_L = Expectation(counts.in_L, mechanism);
  g.gap = std::abs(g.pr_A_in_H - g.pr_A_in_L);
  g.tvd = Tvd(counts.in_H, counts.in_L);
  return g;
}

CountMechanism AllTypeL(const AnonymousMechanism& mechanism, std::int64_t n) {
  return [mechanism, n](std::int64_t h_count) {
    return mechanism(ReportTally{n, h_count, 0, 0});
  };
}

AnonymousMechanism TallyThresholdMechanism(double threshold) {
  return [threshold](const ReportTally& t) {
    const std::int64_t n = t.n();
    if (n <= 0) Fail(ErrorKind::kInput, "tally mechanism: empty profile");
    const AgentType majority = t.type_L > t.type_H ? AgentType::kTypeL : AgentType::kTypeH;
    const double l_frequency =
        static_cast<double>(n - t.type_L_h - t.type_H_h) / static_cast<double>(n);
    const WorldState state = l_frequency > threshold ? WorldState::kL : WorldState::kH;
    return PreferredAlternative(majority, state) == Alternative::kA ? 1.0 : 0.0;
  };
}

DeviationAudit AuditDeviations(const DeviationExperiment& exp,
                               const AnonymousMechanism& mechanism,
                               const std::pair<UtilityFunction, UtilityFunction>& utilities,
                               double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) Fail(ErrorKind::kParameter, "audit: mu must lie in [0, 1]");
  const UtilityFunction& minority = utilities.second;
  if (minority.owner_type() != AgentType::kTypeH ||
      utilities.first.owner_type() != AgentType::kTypeL) {
    Fail(ErrorKind::kParameter, "audit: utilities must be (TypeL, TypeH)");
  }
  const double p_up = 0.5 + exp.delta / 2.0;
  const double p_down = 0.5 - exp.delta / 2.0;
  const std::int64_t maj = exp.majority_count();
  const std::int64_t min = exp.minority_count();

  DeviationAudit a;
  a.epsilon = 0.25 * std::min(mu, 1.0 - mu);
  const auto counts = MakeCountingDistributions(exp);
  a.tvd = Tvd(counts.in_H, counts.in_L);

  const double truth_A_in_H = TruthfulPrA(exp, mechanism, p_up);
  const double truth_A_in_L = TruthfulPrA(exp, mechanism, p_down);
  a.truthful_imd_in_H = 1.0 - truth_A_in_H;
  a.truthful_imd_in_L = truth_A_in_L;
  a.precondition_holds = a.truthful_imd_in_H >= 1.0 - kPreconditionMargin &&
                         a.truthful_imd_in_L >= 1.0 - kPreconditionMargin;

  const CountMechanism seen = AllTypeL(mechanism, exp.n);
  a.pr_A_in_H = Expectation(counts.in_H, seen);
  a.pr_R_in_L = 1.0 - Expectation(counts.in_L, seen);
  const double dv_H = minority.delta_v(WorldState::kH);
  const double dv_L = minority.delta_v(WorldState::kL);
  a.gain_A = mu * a.pr_A_in_H * dv_H;
  a.gain_B = (1.0 - mu) * a.pr_R_in_L * dv_L;
  a.case_A = a.pr_A_in_H >= 0.5;
  a.clears_epsilon = std::max(a.gain_A, a.gain_B) >= a.epsilon;

  // Signed value of moving Pr[A] by d in state s, for the minority.
  auto worth = [&](WorldState s, double d) {
    return d * (minority.value(s, Alternative::kA) - minority.value(s, Alternative::kR));
  };
  const double dev_A_in_L = Expectation(Mixed(maj, p_down, min, exp.q), seen);
  const double dev_B_in_H = Expectation(Mixed(maj, p_up, min, 1.0 - exp.q), seen);
  a.exact_gain_A = mu * worth(WorldState::kH, a.pr_A_in_H - truth_A_in_H) +
                   (1.0 - mu) * worth(WorldState::kL, dev_A_in_L - truth_A_in_L);
  a.exact_gain_B = mu * worth(WorldState::kH, dev_B_in_H - truth_A_in_H) +
                   (1.0 - mu) * worth(WorldState::kL, (1.0 - a.pr_R_in_L) - truth_A_in_L);
  return a;
}

}  // namespace infoagg
