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

#include "infoagg/io.h"

#include <gtest/gtest.h>

#include <string>

#include "infoagg/error.h"
#include "infoagg/reproduce.h"

namespace infoagg::io {
namespace {

const char* kInstance = R"({"mu": 0.5, "p_h_given_H": 0.75, "p_h_given_L": 0.5,
  "alpha_L": 0.25, "alpha_H": 0.75, "n": 4,
  "utilities": [{"type": "H", "vLA": 0, "vLR": 5, "vHA": 1, "vHR": 0, "count": 3},
                {"type": "L", "vLA": 1, "vLR": 0, "vHA": 0, "vHR": 5}]})";

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kUsage;
}

std::string MessageOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceJson, ParsesAndExpandsCounts) {
  const Instance inst = InstanceFromJson(ParseJson(kInstance, "inst.json"));
  EXPECT_EQ(inst.n, 4);
  ASSERT_EQ(inst.utilities.size(), 4u);
  EXPECT_EQ(inst.utilities[3].owner_type(), AgentType::kTypeL);
  EXPECT_EQ(inst.utilities[0].value(WorldState::kL, Alternative::kR), 5);
  EXPECT_TRUE(ValidateInstance(inst).empty());
}

TEST(InstanceJson, RoundTrips) {
  const Instance inst = InstanceFromJson(ParseJson(kInstance, "inst.json"));
  const json j = ToJson(inst);
  const Instance back = InstanceFromJson(ParseJson(j.dump(), "round"));
  EXPECT_EQ(ToJson(back), j);
  EXPECT_EQ(j["utilities"].size(), 2u);
  EXPECT_EQ(j["utilities"][0]["count"], 3);
}

TEST(InstanceJson, MissingFieldNamed) {
  const auto msg = MessageOf([] { InstanceFromJson(ParseJson(R"({"mu": 0.5})", "x")); });
  EXPECT_NE(msg.find("p_h_given_H"), std::string::npos);
  const auto nested = MessageOf([] {
    InstanceFromJson(ParseJson(R"({"mu": 0.5, "p_h_given_H": 0.75, "p_h_given_L": 0.5,
      "alpha_L": 0.25, "alpha_H": 0.75, "n": 1, "utilities": [{"type": "H", "vLA": 0}]})",
                               "x"));
  });
  EXPECT_NE(nested.find("utilities[0].vLR"), std::string::npos);
}

TEST(InstanceJson, MalformedReportsLine) {
  const auto msg = MessageOf([] { ParseJson("{\n\"mu\": 0.5,\n", "cfg.json"); });
  EXPECT_NE(msg.find("cfg.json:3"), std::string::npos) << msg;
  EXPECT_EQ(KindOf([] { ParseJson("[1,", "x"); }), ErrorKind::kParse);
}

TEST(ProfileJson, NamedAndExplicitStrategies) {
  const SignalModel sm{0.5, 0.75, 0.5};
  const auto p = ProfileFromJson(
      ParseJson(R"({"L": "always-A", "H": {"delta_l": 0.5, "delta_h": 0.3}})", "p"), sm);
  EXPECT_EQ(p.strategy_for_L, VotingStrategy::AlwaysA());
  EXPECT_DOUBLE_EQ(p.strategy_for_H.delta_h, 0.3);
  const auto opt = ProfileFromJson(ParseJson(R"({"L": "optimal", "H": "optimal"})", "p"), sm);
  EXPECT_EQ(opt.strategy_for_L, OptimalStrategyFor(AgentType::kTypeL, sm));
  EXPECT_EQ(KindOf([&] { ProfileFromJson(ParseJson(R"({"L": "x", "H": "neutral"})", "p"), sm); }),
            ErrorKind::kParse);
}

TEST(ReportsCsv, RoundTripsAndLocatesErrors) {
  const std::vector<Report> reports{{AgentType::kTypeH, Signal::kL, 0.4},
                                    {AgentType::kTypeL, Signal::kH, 0.35}};
  const auto text = ReportsToCsv(reports);
  EXPECT_EQ(text, "type,signal,threshold\nH,l,0.4\nL,h,0.35\n");
  EXPECT_EQ(ParseReportsCsv(text, "r.csv"), reports);
  const auto msg =
      MessageOf([] { ParseReportsCsv("type,signal,threshold\n\nH,l,1.5\n", "r.csv"); });
  EXPECT_NE(msg.find("r.csv:3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("threshold"), std::string::npos);
  EXPECT_EQ(KindOf([] { ParseReportsCsv("a,b\n", "r.csv"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseReportsCsv("type,signal,threshold\nH,l\n", "r.csv"); }),
            ErrorKind::kParse);
}

TEST(QuestionnaireCsv, RoundTrips) {
  std::vector<QuestionnaireResponse> q(1);
  q[0].preference_in_L = Alternative::kA;
  q[0].declared_signal = Signal::kH;
  q[0].peer_l_prediction = 0.35;
  q[0].posterior_L = 0.4;
  q[0].counterfactual_peer_l_prediction = 5.0 / 12.0;
  q[0].counterfactual_posterior_L = 2.0 / 3.0;
  const auto back = ParseQuestionnaireCsv(QuestionnaireToCsv(q), "q.csv");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].counterfactual_peer_l_prediction, 5.0 / 12.0);
  EXPECT_EQ(back[0].preference_in_L, Alternative::kA);
  const auto msg = MessageOf([] {
    ParseQuestionnaireCsv("pref_L,signal,peer_l,posterior_L,cf_peer_l,cf_posterior_L\n"
                          "A,h,0.3,abc,0.2,0.1\n",
                          "q.csv");
  });
  EXPECT_NE(msg.find("posterior_L"), std::string::npos) << msg;
}

TEST(DistributionCsv, Rows) {
  EXPECT_EQ(DistributionToCsv(Binomial(2, 0.5)), "index,probability\n0,0.25\n1,0.5\n2,0.25\n");
}

TEST(Reproduce, EveryRegisteredExamplePasses) {
  for (const auto& id : ReproductionIds()) {
    const auto r = Reproduce(id);
    EXPECT_TRUE(r.all_pass()) << id;
  }
  EXPECT_EQ(KindOf([] { Reproduce("missing"); }), ErrorKind::kUsage);
}

}  // namespace
}  // namespace infoagg::io
