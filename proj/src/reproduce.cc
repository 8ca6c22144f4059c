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

#include "infoagg/reproduce.h"

#include <cmath>
#include <functional>
#include <map>

#include "infoagg/elicitation.h"
#include "infoagg/equilibrium.h"
#include "infoagg/error.h"
#include "infoagg/impossibility.h"
#include "infoagg/majority_vote.h"
#include "infoagg/truthful_mechanism.h"

namespace infoagg {
namespace {

const SignalModel kReferenceModel{0.5, 0.75, 0.5};

class Builder {
 public:
  Builder(std::string id, std::string description) {
    report_.id = std::move(id);
    report_.description = std::move(description);
  }
  void Near(const std::string& name, double expected, double actual, double tol) {
    report_.checks.push_back({name, expected, actual, tol, std::abs(actual - expected) <= tol});
  }
  void True(const std::string& name, bool value) {
    report_.checks.push_back({name, 1.0, value ? 1.0 : 0.0, 0.0, value});
  }
  ReproductionReport Done() { return std::move(report_); }

 private:
  ReproductionReport report_;
};

Configuration TypeHMajority(const SignalModel& sm, double alpha) {
  Configuration c;
  c.signal_model = sm;
  c.alpha_H = alpha;
  c.alpha_L = 1.0 - alpha;
  return c;
}

ReproductionReport OptimalStrategyExample() {
  Builder b("optimal-strategy", "optimal strategy and shares, P(h|H) = 0.75, P(h|L) = 0.5");
  const auto opt = OptimalStrategy(kReferenceModel);
  const auto shares = ExpectedSharesOf(opt, kReferenceModel);
  b.Near("delta_l", 0.5, opt.delta_l, 1e-12);
  b.Near("delta_h", 0.3, opt.delta_h, 1e-12);
  b.Near("p_A^H at optimum", 0.6, shares.a_in_H, 1e-12);
  b.Near("p_R^L at optimum", 0.6, shares.r_in_L, 1e-12);
  b.Near("M", 0.6, MValue(kReferenceModel), 1e-12);
  const auto other = ExpectedSharesOf({1.0 / 6.0, 1.0 / 8.0}, kReferenceModel);
  b.Near("p_A^H at (1/6, 1/8)", 53.0 / 96.0, other.a_in_H, 1e-12);
  b.Near("p_R^L at (1/6, 1/8)", 25.0 / 48.0, other.r_in_L, 1e-12);
  return b.Done();
}

ReproductionReport ThresholdExample() {
  Builder b("threshold", "majority-vote and mechanism thresholds");
  const double maj = ThetaMaj(kReferenceModel);
  const double star = ThetaStar(kReferenceModel);
  b.Near("theta_maj", 5.0 / 6.0, maj, 1e-12);
  b.Near("theta*", 0.8, star, 1e-12);
  b.True("theta_maj >= theta*", maj >= star);
  const SignalModel unbiased{0.5, 0.7, 0.3};
  b.Near("unbiased theta_maj - theta*", 0.0, ThetaMaj(unbiased) - ThetaStar(unbiased), 1e-12);
  return b.Done();
}

ReproductionReport ExAnteUtilityExample() {
  Builder b("exante-utility", "n = 3 TypeH electorate, informative vs uninformative voting");
  const Configuration all_h = TypeHMajority(kReferenceModel, 1.0);
  const auto shape = InstanceShape::Of(all_h, 3);
  const auto third = VotingStrategy::FromBetas(1.0 / 3.0, 1.0 / 3.0);
  const auto informative = ExactOutcomeDistribution(
      shape, {VotingStrategy::Informative(), VotingStrategy::Informative()}, all_h);
  const auto uninformative = ExactOutcomeDistribution(shape, {third, third}, all_h);
  b.Near("lambda_A^H informative", 27.0 / 32.0, informative.lambda_A_H, 1e-12);
  b.Near("lambda_A^L informative", 0.5, informative.lambda_A_L, 1e-12);
  b.Near("lambda_A^H uninformative", 7.0 / 27.0, uninformative.lambda_A_H, 1e-12);
  b.Near("lambda_A^L uninformative", 7.0 / 27.0, uninformative.lambda_A_L, 1e-12);
  const UtilityFunction type_h(AgentType::kTypeH, 0, 5, 1, 0);
  const UtilityFunction type_l(AgentType::kTypeL, 1, 0, 0, 5);
  const double du_h = UtilityDifference(type_h, informative, uninformative, 0.5);
  const double du_l = UtilityDifference(type_l, informative, uninformative, 0.5);
  b.Near("du TypeH", 535.0 / 1728.0, du_h, 1e-12);
  b.Near("du TypeL", 2317.0 / 1728.0, du_l, 1e-12);
  b.Near("du TypeH, two decimals", 0.31, du_h, 5e-3);
  // The two-decimal TypeL figure is obtained from rounded per-state shifts;
  // the exact value is 1.3409.
  auto round2 = [](double x) { return std::round(x * 100.0) / 100.0; };
  const double shift_H = round2(0.5 * (uninformative.lambda_A_H - informative.lambda_A_H));
  const double shift_L = round2(0.5 * (uninformative.lambda_A_L - informative.lambda_A_L));
  b.Near("du TypeL from rounded shifts", 1.33, shift_L * 1 - shift_H * 5, 5e-3);
  return b.Done();
}

ReproductionReport MechanismRunningExample() {
  Builder b("mechanism-running", "threshold mechanism at alpha = 0.84");
  const double alpha = 0.84;
  const double threshold = IdealThreshold(kReferenceModel);
  b.Near("threshold", 0.4, threshold, 1e-12);
  const double freq_L = alpha * kReferenceModel.p_l_given_L() + (1.0 - alpha);
  const double freq_H = alpha * kReferenceModel.p_l_given_H() + (1.0 - alpha);
  b.Near("l-frequency in L, minority reports l", 0.58, freq_L, 1e-12);
  b.Near("l-frequency in H, minority reports l", 0.37, freq_H, 1e-12);
  b.True("frequencies straddle the threshold", freq_H < threshold && threshold < freq_L);
  const auto cert = CheckFrequencyInequalities(kReferenceModel, alpha);
  b.True("strategic inequalities hold", cert.strategic_applicable && cert.all_hold());
  const auto s = TruthfulSuccessProbability(TypeHMajority(kReferenceModel, alpha), 201);
  b.True("exact success at n = 201 exceeds bound", s.probability > s.bound);
  b.Near("bound at n = 201", 1.0 - 2.0 * std::exp(-2.0 * 201.0 / 900.0), s.bound, 1e-12);
  return b.Done();
}

ReproductionReport ElicitationExample() {
  Builder b("elicitation-roundtrip", "questionnaire answers and parameter recovery, mu = 1/2");
  const auto l = SynthesizeResponse(kReferenceModel, Signal::kL, AgentType::kTypeH);
  const auto h = SynthesizeResponse(kReferenceModel, Signal::kH, AgentType::kTypeH);
  b.Near("peer l-prediction after l", 5.0 / 12.0, l.peer_l_prediction, 1e-12);
  b.Near("peer l-prediction after h", 7.0 / 20.0, h.peer_l_prediction, 1e-12);
  for (const auto* resp : {&l, &h}) {
    const auto r = RecoverParameters(*resp);
    const std::string tag = resp == &l ? " (signal l)" : " (signal h)";
    b.Near("delta" + tag, kReferenceModel.delta(), r.delta, 1e-12);
    b.Near("P(l|H)" + tag, kReferenceModel.p_l_given_H(), r.p_l_given_H, 1e-12);
    b.Near("P(l|L)" + tag, kReferenceModel.p_l_given_L(), r.p_l_given_L, 1e-12);
    b.Near("threshold" + tag, 0.4, r.threshold, 1e-12);
  }
  return b.Done();
}

ReproductionReport TvdDecayExample() {
  Builder b("tvd-decay", "indistinguishable count laws, alpha = 0.7, delta = 0.25");
  const std::vector<std::int64_t> ns{400, 1600, 6400};
  const auto rows = TvdDecayExperiment(0.7, 0.25, ns);
  double lo = rows.front().tvd_sqrt_n, hi = lo;
  bool monotone = true, bounded = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) monotone = monotone && rows[i].tvd < rows[i - 1].tvd;
    bounded = bounded && rows[i].tvd <= rows[i].bound;
    lo = std::min(lo, rows[i].tvd_sqrt_n);
    hi = std::max(hi, rows[i].tvd_sqrt_n);
  }
  b.True("tvd strictly decreasing", monotone);
  b.True("tvd <= analytic bound", bounded);
  b.True("tvd * sqrt(n) within a factor 1.5", hi <= 1.5 * lo);
  const auto exp = MakeExperiment(0.7, 0.25, 1000);
  const auto c = MakeCountingDistributions(exp);
  b.Near("q at n = 1000", 5.0 / 24.0, exp.q, 1e-12);
  b.Near("mean in H", 500.0, c.in_H.mean(), 1e-9);
  b.Near("mean in L", 500.0, c.in_L.mean(), 1e-9);
  return b.Done();
}

const std::map<std::string, std::function<ReproductionReport()>>& Registry() {
  static const std::map<std::string, std::function<ReproductionReport()>> r{
      {"optimal-strategy", OptimalStrategyExample},
      {"threshold", ThresholdExample},
      {"exante-utility", ExAnteUtilityExample},
      {"mechanism-running", MechanismRunningExample},
      {"elicitation-roundtrip", ElicitationExample},
      {"tvd-decay", TvdDecayExample},
  };
  return r;
}

}  // namespace

bool ReproductionReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

std::vector<std::string> ReproductionIds() {
  return {"optimal-strategy", "threshold",  "exante-utility", "mechanism-running",
          "elicitation-roundtrip", "tvd-decay"};
}

ReproductionReport Reproduce(const std::string& id) {
  const auto& r = Registry();
  const auto it = r.find(id);
  if (it == r.end()) {
    std::string ids;
    for (const auto& name : ReproductionIds()) ids += (ids.empty() ? "" : ", ") + name;
    Fail(ErrorKind::kUsage, "unknown example id '" + id + "'; expected one of: " + ids);
  }
  return it->second();
}

}  // namespace infoagg
