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

#include "infoagg/elicitation.h"

#include <gtest/gtest.h>

#include <random>

#include "infoagg/majority_vote.h"
#include "infoagg/truthful_mechanism.h"

namespace infoagg {
namespace {

const SignalModel kTable1{0.5, 0.75, 0.5};

SignalModel RandomModel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (;;) {
    SignalModel sm{u(rng), u(rng), u(rng)};
    if (sm.delta() > 0.02) return sm;
  }
}

TEST(SynthesizeResponse, RunningExampleAnswers) {
  const auto l = SynthesizeResponse(kTable1, Signal::kL, AgentType::kTypeH);
  EXPECT_NEAR(l.posterior_L, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(l.peer_l_prediction, 5.0 / 12.0, 1e-15);
  EXPECT_NEAR(l.counterfactual_posterior_L, 2.0 / 5.0, 1e-15);
  EXPECT_NEAR(l.counterfactual_peer_l_prediction, 7.0 / 20.0, 1e-15);
  EXPECT_EQ(l.preference_in_L, Alternative::kR);
  const auto h = SynthesizeResponse(kTable1, Signal::kH, AgentType::kTypeL);
  EXPECT_NEAR(h.posterior_L, 2.0 / 5.0, 1e-15);
  EXPECT_NEAR(h.peer_l_prediction, 7.0 / 20.0, 1e-15);
  EXPECT_EQ(h.preference_in_L, Alternative::kA);
}

TEST(SynthesizeResponse, CertainPriorKillsPosterior) {
  const SignalModel sure{1.0, 0.75, 0.5};
  for (auto s : {Signal::kL, Signal::kH}) {
    EXPECT_DOUBLE_EQ(SynthesizeResponse(sure, s, AgentType::kTypeH).posterior_L, 0.0);
  }
}

TEST(RecoverParameters, RunningExample) {
  QuestionnaireResponse r;
  r.declared_signal = Signal::kL;
  r.posterior_L = 2.0 / 3.0;
  r.counterfactual_posterior_L = 2.0 / 5.0;
  r.peer_l_prediction = 5.0 / 12.0;
  r.counterfactual_peer_l_prediction = 7.0 / 20.0;
  const auto p = RecoverParameters(r);
  EXPECT_NEAR(p.delta, 0.25, 1e-14);
  EXPECT_NEAR(p.p_l_given_H, 0.25, 1e-14);
  EXPECT_NEAR(p.p_l_given_L, 0.5, 1e-14);
  EXPECT_NEAR(p.threshold, 0.4, 1e-14);
}

TEST(RecoverParameters, RoundTripRandomModels) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const SignalModel sm = RandomModel(rng);
    for (auto s : {Signal::kL, Signal::kH}) {
      for (auto t : {AgentType::kTypeL, AgentType::kTypeH}) {
        const auto p = RecoverParameters(SynthesizeResponse(sm, s, t));
        EXPECT_NEAR(p.delta, sm.delta(), 1e-12);
        EXPECT_NEAR(p.p_l_given_H, sm.p_l_given_H(), 1e-12);
        EXPECT_NEAR(p.p_l_given_L, sm.p_l_given_L(), 1e-12);
        EXPECT_NEAR(p.threshold, IdealThreshold(sm), 1e-12);
      }
    }
  }
}

TEST(RecoverParameters, NumeratorAndDenominatorShareSign) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 200; ++i) {
    const SignalModel sm = RandomModel(rng);
    const auto r = SynthesizeResponse(sm, Signal::kH, AgentType::kTypeH);
    const double num = r.peer_l_prediction - r.counterfactual_peer_l_prediction;
    const double den = r.posterior_L - r.counterfactual_posterior_L;
    EXPECT_GT(num * den, 0.0);
  }
}

TEST(RecoverParameters, DegenerateAndInconsistentResponses) {
  QuestionnaireResponse r;
  r.posterior_L = r.counterfactual_posterior_L = 0.5;
  try {
    RecoverParameters(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateSignal);
  }
  // Peer predictions moving against the posteriors.
  r.posterior_L = 0.6;
  r.counterfactual_posterior_L = 0.4;
  r.peer_l_prediction = 0.3;
  r.counterfactual_peer_l_prediction = 0.5;
  try {
    RecoverParameters(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInconsistentResponse);
  }
  r.peer_l_prediction = 1.3;
  EXPECT_THROW(RecoverParameters(r), Error);
  // Positive gap but recovered probability above 1.
  QuestionnaireResponse big;
  big.posterior_L = 0.2;
  big.counterfactual_posterior_L = 0.1;
  big.peer_l_prediction = 0.95;
  big.counterfactual_peer_l_prediction = 0.05;
  EXPECT_THROW(RecoverParameters(big), Error);
}

TEST(AggregateReports, SingleRespondent) {
  const std::vector<QuestionnaireResponse> one{SynthesizeResponse(kTable1, Signal::kH, AgentType::kTypeL)};
  const auto a = AggregateReports(one);
  ASSERT_EQ(a.reports.size(), 1u);
  EXPECT_EQ(a.reports[0].declared_type, AgentType::kTypeL);
  EXPECT_EQ(a.reports[0].declared_signal, Signal::kH);
  EXPECT_NEAR(a.reports[0].threshold_value, 0.4, 1e-14);
  EXPECT_TRUE(a.coherent);
}

TEST(AggregateReports, ExcludesInconsistentTenth) {
  std::vector<QuestionnaireResponse> pop;
  for (int i = 0; i < 100; ++i) {
    auto r = SynthesizeResponse(kTable1, i % 3 ? Signal::kH : Signal::kL,
                                i % 4 ? AgentType::kTypeH : AgentType::kTypeL);
    if (i % 10 == 7) std::swap(r.peer_l_prediction, r.counterfactual_peer_l_prediction);
    pop.push_back(r);
  }
  const auto a = AggregateReports(pop);
  EXPECT_EQ(a.excluded.size(), 10u);
  EXPECT_EQ(a.reports.size(), 90u);
  for (const auto& e : a.excluded) EXPECT_EQ(e.index % 10, 7u);
  EXPECT_TRUE(a.coherent);
}

TEST(AggregateReports, FlagsIncoherentPopulation) {
  const std::vector<QuestionnaireResponse> pop{
      SynthesizeResponse(kTable1, Signal::kL, AgentType::kTypeH),
      SynthesizeResponse({0.5, 0.8, 0.4}, Signal::kL, AgentType::kTypeH)};
  const auto a = AggregateReports(pop);
  EXPECT_FALSE(a.coherent);
  EXPECT_NEAR(a.delta_spread, 0.15, 1e-12);
}

TEST(AggregateReports, Errors) {
  const std::vector<QuestionnaireResponse> none;
  EXPECT_THROW(AggregateReports(none), Error);
  QuestionnaireResponse bad;
  const std::vector<QuestionnaireResponse> all_bad{bad, bad};
  try {
    AggregateReports(all_bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAggregation);
  }
}

TEST(AggregateReports, PipelineMatchesTruthfulSuccess) {
  Configuration c;
  c.signal_model = kTable1;
  c.alpha_H = 0.84;
  c.alpha_L = 0.16;
  const std::int64_t n = 51;
  const auto exact = TruthfulSuccessProbability(c, n);
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int trials = 20000;
  int ok = 0;
  std::vector<QuestionnaireResponse> pop(n);
  for (int t = 0; t < trials; ++t) {
    const WorldState w = u(rng) < c.signal_model.mu ? WorldState::kH : WorldState::kL;
    for (std::int64_t i = 0; i < n; ++i) {
      const Signal s = u(rng) < c.signal_model.p_signal(Signal::kH, w) ? Signal::kH : Signal::kL;
      pop[static_cast<size_t>(i)] = SynthesizeResponse(
          kTable1, s, i < c.majority_count(n) ? AgentType::kTypeH : AgentType::kTypeL);
    }
    const auto agg = AggregateReports(pop);
    if (RunMechanism(agg.reports, n).output == InformedMajorityDecision(c, w)) ++ok;
  }
  const double freq = static_cast<double>(ok) / trials;
  const double se = std::sqrt(exact.probability * (1 - exact.probability) / trials);
  EXPECT_LE(std::abs(freq - exact.probability), 4 * se + 1e-12);
}

}  // namespace
}  // namespace infoagg
