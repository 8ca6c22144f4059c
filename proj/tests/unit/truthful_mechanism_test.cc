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

#include "infoagg/truthful_mechanism.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "infoagg/error.h"
#include "infoagg/majority_vote.h"

namespace infoagg {
namespace {

const SignalModel kTable1{0.5, 0.75, 0.5};

SignalModel RandomModel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (;;) {
    SignalModel sm{u(rng), u(rng), u(rng)};
    if (sm.delta() > 1e-3) return sm;
  }
}

Configuration TypeH(const SignalModel& sm, double alpha) {
  Configuration c;
  c.signal_model = sm;
  c.alpha_H = alpha;
  c.alpha_L = 1.0 - alpha;
  return c;
}

std::vector<Report> Population(std::int64_t h_truthful_l, std::int64_t h_truthful_h,
                               std::int64_t minority_l, std::int64_t minority_h, double threshold) {
  std::vector<Report> r;
  for (std::int64_t i = 0; i < h_truthful_l; ++i) r.push_back({AgentType::kTypeH, Signal::kL, threshold});
  for (std::int64_t i = 0; i < h_truthful_h; ++i) r.push_back({AgentType::kTypeH, Signal::kH, threshold});
  for (std::int64_t i = 0; i < minority_l; ++i) r.push_back({AgentType::kTypeL, Signal::kL, threshold});
  for (std::int64_t i = 0; i < minority_h; ++i) r.push_back({AgentType::kTypeL, Signal::kH, threshold});
  return r;
}

TEST(IdealThreshold, ReferenceValues) {
  EXPECT_NEAR(IdealThreshold(kTable1), 0.4, 1e-15);
  EXPECT_NEAR(IdealThreshold({0.5, 0.7, 0.3}), 0.5, 1e-15);
  std::mt19937_64 rng(61);
  for (int i = 0; i < 1000; ++i) {
    const SignalModel sm = RandomModel(rng);
    EXPECT_NEAR(IdealThreshold(sm), sm.p_l_given_L() / (1 + sm.delta()), 1e-14);
  }
}

TEST(ThetaStar, ReferenceValuesAndOrdering) {
  EXPECT_NEAR(ThetaStar(kTable1), 0.8, 1e-15);
  EXPECT_NEAR(ThetaStar({0.5, 1 - 1e-12, 1e-12}), 0.5, 1e-11);
  std::mt19937_64 rng(67);
  for (int i = 0; i < 100; ++i) {
    const SignalModel sm = RandomModel(rng);
    EXPECT_LE(ThetaStar(sm), ThetaMaj(sm) + 1e-12);
  }
  const SignalModel unbiased{0.5, 0.65, 0.35};
  EXPECT_NEAR(ThetaStar(unbiased), ThetaMaj(unbiased), 1e-14);
  EXPECT_GT(ThetaMaj(kTable1) - ThetaStar(kTable1), 1e-3);
}

TEST(FrequencyInequalities, RunningExample) {
  const auto c = CheckFrequencyInequalities(kTable1, 0.84);
  ASSERT_TRUE(c.strategic_applicable);
  EXPECT_TRUE(c.all_hold());
  EXPECT_NEAR(c.strategic[0].lhs, 0.42, 1e-15);
  EXPECT_NEAR(c.strategic[1].rhs, 0.37, 1e-15);
  EXPECT_NEAR(c.strategic[2].rhs, 0.58, 1e-15);
}

TEST(FrequencyInequalities, UnanimityReducesToTruthfulChain) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 100; ++i) {
    const SignalModel sm = RandomModel(rng);
    const auto c = CheckFrequencyInequalities(sm, 1.0);
    ASSERT_TRUE(c.strategic_applicable);
    EXPECT_NEAR(c.strategic[0].slack, c.truthful[0].slack, 1e-15);
    EXPECT_NEAR(c.strategic[1].slack, c.truthful[1].slack, 1e-15);
    EXPECT_NEAR(c.strategic[2].slack, c.truthful[2].slack, 1e-15);
    EXPECT_NEAR(c.strategic[3].slack, c.truthful[3].slack, 1e-15);
  }
}

TEST(FrequencyInequalities, BoundaryHasZeroSlack) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 100; ++i) {
    const SignalModel sm = RandomModel(rng);
    const auto s = StrategicInequalities(sm, ThetaStar(sm));
    double m = 1.0;
    for (const auto& c : s) m = std::min(m, std::abs(c.slack));
    EXPECT_LT(m, 1e-14);
    EXPECT_FALSE(CheckFrequencyInequalities(sm, ThetaStar(sm)).strategic_applicable);
  }
}

TEST(FrequencyInequalities, RandomModelsAboveThresholdHavePositiveSlack) {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const SignalModel sm = RandomModel(rng);
    const double lo = ThetaStar(sm);
    const double alpha = lo + (1.0 - lo) * (0.001 + 0.999 * u(rng));
    const auto c = CheckFrequencyInequalities(sm, alpha);
    EXPECT_TRUE(c.strategic_applicable);
    EXPECT_GT(c.min_slack(), 0.0);
  }
}

TEST(RunMechanism, RunningExampleStateL) {
  // 840 TypeH and 160 TypeL agents; l-frequency 0.5 in state L.
  const auto r = Population(420, 420, 80, 80, 0.4);
  const auto t = RunMechanism(r, 1000);
  EXPECT_EQ(t.identified_majority, AgentType::kTypeH);
  EXPECT_DOUBLE_EQ(t.collective_threshold, 0.4);
  EXPECT_EQ(t.assessed_state, WorldState::kL);
  EXPECT_EQ(t.output, Alternative::kR);
}

TEST(RunMechanism, RunningExampleStateHMinoritiesClaimL) {
  const auto r = Population(210, 630, 160, 0, 0.4);
  const auto t = RunMechanism(r, 1000);
  EXPECT_NEAR(t.l_frequency, 0.37, 1e-15);
  EXPECT_EQ(t.assessed_state, WorldState::kH);
  EXPECT_EQ(t.output, Alternative::kA);
}

TEST(RunMechanism, SingleReport) {
  const std::vector<Report> r{{AgentType::kTypeH, Signal::kH, 0.4}};
  const auto t = RunMechanism(r, 1);
  EXPECT_DOUBLE_EQ(t.l_frequency, 0.0);
  EXPECT_EQ(t.assessed_state, WorldState::kH);
  EXPECT_EQ(t.output, Alternative::kA);
}

TEST(RunMechanism, InputErrors) {
  const std::vector<Report> none;
  try {
    RunMechanism(none, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInput);
  }
  const std::vector<Report> one{{AgentType::kTypeH, Signal::kH, 0.4}};
  EXPECT_THROW(RunMechanism(one, 2), Error);
  const std::vector<Report> bad{{AgentType::kTypeH, Signal::kH, 1.0}};
  EXPECT_THROW(RunMechanism(bad, 1), Error);
}

TEST(RunMechanism, StrictComparisonEqualityAssessesH) {
  const auto r = Population(2, 3, 0, 0, 0.4);
  const auto t = RunMechanism(r, 5);
  EXPECT_DOUBLE_EQ(t.l_frequency, 0.4);
  EXPECT_EQ(t.assessed_state, WorldState::kH);
}

TEST(RunMechanism, TypeTieGoesToTypeH) {
  const auto r = Population(1, 1, 1, 1, 0.4);
  const auto t = RunMechanism(r, 4);
  EXPECT_TRUE(t.majority_tie);
  EXPECT_EQ(t.identified_majority, AgentType::kTypeH);
}

TEST(RunMechanism, LowerMedianForEvenN) {
  std::vector<Report> r;
  for (double th : {0.1, 0.2, 0.3, 0.4}) r.push_back({AgentType::kTypeH, Signal::kH, th});
  EXPECT_DOUBLE_EQ(RunMechanism(r, 4).collective_threshold, 0.2);
  r.push_back({AgentType::kTypeH, Signal::kH, 0.9});
  EXPECT_DOUBLE_EQ(RunMechanism(r, 5).collective_threshold, 0.3);
}

TEST(RunMechanism, AnonymousUnderPermutation) {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Report> r;
    for (int i = 0; i < 31; ++i) {
      r.push_back({u(rng) < 0.6 ? AgentType::kTypeH : AgentType::kTypeL,
                   u(rng) < 0.5 ? Signal::kL : Signal::kH, u(rng)});
    }
    const auto base = RunMechanism(r, 31);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(r.begin(), r.end(), rng);
      const auto t = RunMechanism(r, 31);
      EXPECT_EQ(t.identified_majority, base.identified_majority);
      EXPECT_EQ(t.collective_threshold, base.collective_threshold);
      EXPECT_EQ(t.assessed_state, base.assessed_state);
      EXPECT_EQ(t.output, base.output);
    }
  }
}

TEST(RunMechanism, MinorityCannotMoveTypeOrThreshold) {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Report> r;
    for (int i = 0; i < 11; ++i) r.push_back({AgentType::kTypeH, u(rng) < 0.5 ? Signal::kL : Signal::kH, 0.4});
    for (int i = 0; i < 8; ++i) {
      r.push_back({u(rng) < 0.5 ? AgentType::kTypeH : AgentType::kTypeL,
                   u(rng) < 0.5 ? Signal::kL : Signal::kH, u(rng)});
    }
    const auto t = RunMechanism(r, 19);
    EXPECT_EQ(t.identified_majority, AgentType::kTypeH);
    EXPECT_DOUBLE_EQ(t.collective_threshold, 0.4);
  }
}

TEST(TruthfulSuccess, ExceedsHoeffdingBoundAtRunningExampleScale) {
  const auto s = TruthfulSuccessProbability(TypeH(kTable1, 0.84), 201);
  EXPECT_NEAR(s.deviation, 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(s.bound, 1.0 - 2.0 * std::exp(-2.0 * 201.0 / 900.0), 1e-15);
  EXPECT_GT(s.probability, s.bound);
}

TEST(TruthfulSuccess, SingleAgentSharpSignals) {
  const auto s = TruthfulSuccessProbability(TypeH({0.5, 0.9, 0.1}, 1.0), 1);
  EXPECT_NEAR(s.probability, 0.9, 1e-15);
}

TEST(TruthfulSuccess, NondecreasingInN) {
  double prev = 0.0;
  for (int n : {11, 101, 1001}) {
    const double p = TruthfulSuccessProbability(TypeH(kTable1, 0.84), n).probability;
    EXPECT_GE(p, prev);
    prev = p;
  }
  EXPECT_GT(prev, 0.999);
}

TEST(TruthfulSuccess, UnidentifiedMajorityYieldsZero) {
  // floor(0.6 * 1) = 0 majority agents: the lone agent is TypeL.
  const auto s = TruthfulSuccessProbability(TypeH(kTable1, 0.6), 1);
  EXPECT_FALSE(s.majority_identified);
  EXPECT_DOUBLE_EQ(s.probability, 0.0);
}

TEST(TruthfulMap, CarriesIdealThreshold) {
  const Report r = TruthfulMap(AgentType::kTypeH, Signal::kH, kTable1);
  EXPECT_EQ(r.declared_type, AgentType::kTypeH);
  EXPECT_EQ(r.declared_signal, Signal::kH);
  EXPECT_NEAR(r.threshold_value, 0.4, 1e-15);
  EXPECT_EQ(TruthfulMap(AgentType::kTypeL, Signal::kL, kTable1).threshold_value, r.threshold_value);
}

TEST(TruthfulMap, MonteCarloMatchesExactSuccess) {
  const Configuration c = TypeH(kTable1, 0.84);
  const std::int64_t n = 25;
  const auto exact = TruthfulSuccessProbability(c, n);
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto maj = c.majority_count(n);
  const int trials = 40000;
  int ok = 0;
  std::vector<Report> reports(static_cast<size_t>(n));
  for (int t = 0; t < trials; ++t) {
    const WorldState w = u(rng) < c.signal_model.mu ? WorldState::kH : WorldState::kL;
    for (std::int64_t i = 0; i < n; ++i) {
      const Signal s = u(rng) < c.signal_model.p_signal(Signal::kH, w) ? Signal::kH : Signal::kL;
      reports[static_cast<size_t>(i)] =
          TruthfulMap(i < maj ? AgentType::kTypeH : AgentType::kTypeL, s, c.signal_model);
    }
    if (RunMechanism(reports, n).output == InformedMajorityDecision(c, w)) ++ok;
  }
  const double freq = static_cast<double>(ok) / trials;
  const double se = std::sqrt(exact.probability * (1 - exact.probability) / trials);
  EXPECT_LE(std::abs(freq - exact.probability), 4 * se);
}

}  // namespace
}  // namespace infoagg
