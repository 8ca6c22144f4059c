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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "infoagg/error.h"
#include "infoagg/majority_vote.h"
#include "infoagg/truthful_mechanism.h"

namespace infoagg {
namespace {

const UtilityFunction kMajorityUtility(AgentType::kTypeL, 1, 0, 0, 1);
const UtilityFunction kMinorityUtility(AgentType::kTypeH, 0, 1, 1, 0);

TEST(Experiment, ReferenceConstruction) {
  const auto exp = MakeExperiment(0.7, 0.25, 1000);
  EXPECT_EQ(exp.majority_count(), 700);
  EXPECT_EQ(exp.minority_count(), 300);
  EXPECT_NEAR(exp.q, 5.0 / 24.0, 1e-15);
  const auto c = MakeCountingDistributions(exp);
  EXPECT_NEAR(c.in_H.mean(), 500.0, 1e-9);
  EXPECT_NEAR(c.in_L.mean(), 500.0, 1e-9);
  EXPECT_NEAR(c.in_H.variance(), c.in_L.variance(), 1e-9);
  EXPECT_NEAR(c.in_H.total(), 1.0, 1e-12);
}

TEST(Experiment, MomentsMatchAcrossParameters) {
  for (double alpha : {0.55, 0.6, 0.65, 0.7, 0.75}) {
    for (std::int64_t n : {51, 200, 999}) {
      const auto exp = MakeExperiment(alpha, 0.25, n);
      const auto c = MakeCountingDistributions(exp);
      EXPECT_NEAR(c.in_H.mean(), c.in_L.mean(), 1e-8) << alpha << " " << n;
      EXPECT_NEAR(c.in_H.variance(), c.in_L.variance(), 1e-8) << alpha << " " << n;
    }
  }
}

TEST(Experiment, BoundaryGivesDegenerateMinority) {
  const auto exp = MakeExperiment(0.8, 0.25, 1000);
  EXPECT_EQ(exp.q, 0.0);
  const auto c = MakeCountingDistributions(exp);
  EXPECT_NEAR(c.in_H.mean(), c.in_L.mean(), 1e-9);
  EXPECT_LT(Tvd(c.in_H, c.in_L), 1.0);
  const auto b = ComputeAnalyticBound(exp);
  EXPECT_EQ(b.sigma_minority, 0.0);
  EXPECT_EQ(b.fractional_shift, 0.0);
  EXPECT_TRUE(std::isfinite(b.total()));
}

TEST(Experiment, RejectsAlphaAboveThreshold) {
  try {
    MakeExperiment(0.85, 0.25, 1000);
    FAIL() << "expected construction error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConstruction);
  }
  EXPECT_THROW(MakeExperiment(0.4, 0.25, 100), Error);
  EXPECT_THROW(MakeExperiment(0.7, 0.0, 100), Error);
}

TEST(TvdDecay, DecreasesWithStableScaledConstant) {
  const std::vector<std::int64_t> ns{400, 1600, 6400};
  const auto rows = TvdDecayExperiment(0.7, 0.25, ns);
  ASSERT_EQ(rows.size(), 3u);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, ns[i]);
    EXPECT_LE(rows[i].tvd, rows[i].bound);
    if (i > 0) EXPECT_LT(rows[i].tvd, rows[i - 1].tvd);
  }
  double lo = rows[0].tvd_sqrt_n, hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, r.tvd_sqrt_n);
    hi = std::max(hi, r.tvd_sqrt_n);
  }
  EXPECT_LT(hi / lo, 1.25);
}

TEST(AnalyticBound, SplitsShift) {
  const auto exp = MakeExperiment(0.7, 0.25, 1001);
  const auto b = ComputeAnalyticBound(exp);
  const double shift = static_cast<double>(exp.majority_count()) * exp.delta;
  EXPECT_NEAR(static_cast<double>(b.integer_shift) + b.fractional_shift, shift, 1e-12);
  EXPECT_GE(b.fractional_shift, 0.0);
  EXPECT_LT(b.fractional_shift, 1.0);
  EXPECT_GT(b.approximation_terms, 0.0);
}

TEST(BinomialGaussian, WithinGuarantee) {
  for (std::int64_t n : {10, 100, 1000, 10000}) {
    for (double p : {0.1, 0.5, 0.625}) {
      const auto g = BinomialGaussianGap(n, p);
      EXPECT_LE(g.tvd, g.bound) << n << " " << p;
    }
  }
}

TEST(Gap, BoundedByTvd) {
  const auto exp = MakeExperiment(0.7, 0.25, 1000);
  const auto c = MakeCountingDistributions(exp);
  double best = 0.0;
  std::int64_t best_cutoff = 0;
  for (std::int64_t cutoff = 400; cutoff <= 600; cutoff += 2) {
    const auto g = MeasureGap(c, ThresholdCountMechanism(cutoff));
    EXPECT_TRUE(g.within_tvd()) << cutoff;
    if (g.gap > best) {
      best = g.gap;
      best_cutoff = cutoff;
    }
  }
  EXPECT_NEAR(static_cast<double>(best_cutoff), 500.0, 10.0);
  const auto constant = MeasureGap(c, [](std::int64_t) { return 1.0; });
  EXPECT_NEAR(constant.gap, 0.0, 1e-12);
}

TEST(Gap, RandomizedMechanisms) {
  const auto c = MakeCountingDistributions(MakeExperiment(0.65, 0.3, 500));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> table(501);
    for (auto& x : table) x = u(rng);
    const auto g = MeasureGap(c, [&](std::int64_t k) { return table[static_cast<size_t>(k)]; });
    EXPECT_TRUE(g.within_tvd());
  }
}

TEST(Audit, ThresholdMechanismClearsEpsilon) {
  const auto exp = MakeExperiment(0.7, 0.25, 1000);
  const auto a =
      AuditDeviations(exp, TallyThresholdMechanism(0.5), {kMajorityUtility, kMinorityUtility}, 0.5);
  EXPECT_TRUE(a.precondition_holds);
  EXPECT_LE(a.tvd, 0.25);
  EXPECT_DOUBLE_EQ(a.epsilon, 0.125);
  EXPECT_GE(std::max(a.gain_A, a.gain_B), 0.125);
  EXPECT_TRUE(a.clears_epsilon);
  // The exact ex-ante gains include any extra benefit in the other state.
  EXPECT_GE(a.exact_gain_A, a.gain_A - 1e-9);
  EXPECT_GE(a.exact_gain_B, a.gain_B - 1e-9);
}

TEST(Audit, VanishingPriorGivesVacuousEpsilon) {
  const auto exp = MakeExperiment(0.7, 0.25, 400);
  const auto a = AuditDeviations(exp, TallyThresholdMechanism(0.5),
                                 {kMajorityUtility, kMinorityUtility}, 1e-9);
  EXPECT_LT(a.epsilon, 1e-9);
}

TEST(Audit, IgnoringMechanismFailsPrecondition) {
  const auto exp = MakeExperiment(0.7, 0.25, 400);
  const auto a = AuditDeviations(exp, [](const ReportTally&) { return 1.0; },
                                 {kMajorityUtility, kMinorityUtility}, 0.5);
  EXPECT_FALSE(a.precondition_holds);
  EXPECT_THROW(AuditDeviations(exp, TallyThresholdMechanism(0.5),
                               {kMinorityUtility, kMajorityUtility}, 0.5),
               Error);
}

std::vector<Declaration> RandomDeclarations(std::mt19937_64& rng, int n) {
  std::vector<Declaration> d(static_cast<size_t>(n));
  std::bernoulli_distribution coin(0.5);
  for (auto& x : d) {
    x.type = coin(rng) ? AgentType::kTypeH : AgentType::kTypeL;
    x.signal = coin(rng) ? Signal::kH : Signal::kL;
  }
  return d;
}

TEST(RevelationWrapper, IdentityProfileMatchesMechanism) {
  const SignalModel sm{0.5, 0.75, 0.5};
  RevelationWrapper<Report> wrapped(
      [](std::span<const Report> r, std::mt19937_64&) {
        return RunMechanism(r, static_cast<std::int64_t>(r.size())).output;
      },
      [&](AgentType t, Signal s) {
        return RevelationWrapper<Report>::ReportLaw{{TruthfulMap(t, s, sm), 1.0}};
      });
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = RandomDeclarations(rng, 25);
    std::vector<Report> direct;
    for (const auto& x : d) direct.push_back(TruthfulMap(x.type, x.signal, sm));
    EXPECT_EQ(wrapped(d, rng), RunMechanism(direct, 25).output);
  }
}

TEST(RevelationWrapper, OptimalProfileMatchesExactOutcome) {
  const SignalModel sm{0.5, 0.75, 0.5};
  const VotingStrategy opt = OptimalStrategy(sm);
  RevelationWrapper<Alternative> wrapped(
      [](std::span<const Alternative> v, std::mt19937_64& rng) { return MajorityVote(v, rng); },
      [&](AgentType, Signal s) {
        const double b = opt.beta(s);
        return RevelationWrapper<Alternative>::ReportLaw{{Alternative::kA, b},
                                                         {Alternative::kR, 1.0 - b}};
      });
  const std::int64_t n = 21;
  Configuration config;
  config.signal_model = sm;
  const double exact_in_H =
      ExactOutcome(InstanceShape::Of(config, n), {opt, opt}, config, WorldState::kH);

  std::mt19937_64 rng(99);
  std::bernoulli_distribution signal_h(sm.p_h_given_H);
  const int trials = 40000;
  int wins = 0;
  std::vector<Declaration> d(static_cast<size_t>(n));
  for (int t = 0; t < trials; ++t) {
    for (auto& x : d) x = {AgentType::kTypeH, signal_h(rng) ? Signal::kH : Signal::kL};
    if (wrapped(d, rng) == Alternative::kA) ++wins;
  }
  const double se = std::sqrt(exact_in_H * (1.0 - exact_in_H) / trials);
  EXPECT_NEAR(static_cast<double>(wins) / trials, exact_in_H, 5.0 * se);
}

TEST(RevelationWrapper, SeedDeterminesOutput) {
  RevelationWrapper<Alternative> wrapped(
      [](std::span<const Alternative> v, std::mt19937_64& rng) { return MajorityVote(v, rng); },
      [](AgentType, Signal) {
        return RevelationWrapper<Alternative>::ReportLaw{{Alternative::kA, 0.5},
                                                         {Alternative::kR, 0.5}};
      });
  std::mt19937_64 rng(1);
  const auto d = RandomDeclarations(rng, 40);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(wrapped.Run(d, seed), wrapped.Run(d, seed));
  }
}

}  // namespace
}  // namespace infoagg
