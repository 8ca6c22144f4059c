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

#include <algorithm>
#include <cmath>
#include <limits>

#include "infoagg/discrete_prob.h"
#include "infoagg/error.h"

namespace infoagg {
namespace {

InequalityCheck Greater(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs - rhs, lhs > rhs};
}

// Same comparison run_mechanism applies.
bool AssessesL(std::int64_t l_count, std::int64_t n, double threshold) {
  return static_cast<double>(l_count) / static_cast<double>(n) > threshold;
}

}  // namespace

std::vector<std::string> Validate(const Report& r) {
  std::vector<std::string> errors;
  if (!(r.threshold_value > 0.0 && r.threshold_value < 1.0)) {
    errors.push_back("threshold must lie strictly inside (0, 1)");
  }
  return errors;
}

double IdealThreshold(const SignalModel& sm) {
  return sm.p_l_given_L() / (sm.p_l_given_L() + sm.p_h_given_H);
}

double ThetaStar(const SignalModel& sm) { return 1.0 / (sm.delta() + 1.0); }

bool FrequencyCertificate::all_hold() const {
  auto ok = [](const std::vector<InequalityCheck>& v) {
    return std::all_of(v.begin(), v.end(), [](const InequalityCheck& c) { return c.holds; });
  };
  return ok(truthful) && (!strategic_applicable || ok(strategic));
}

double FrequencyCertificate::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : truthful) m = std::min(m, c.slack);
  if (strategic_applicable) {
    for (const auto& c : strategic) m = std::min(m, c.slack);
  }
  return m;
}

std::vector<InequalityCheck> StrategicInequalities(const SignalModel& sm, double alpha) {
  const double d = IdealThreshold(sm);
  const double a = alpha;
  return {
      Greater("alpha*P(l|L) > threshold", a * sm.p_l_given_L(), d),
      Greater("threshold > alpha*P(l|H) + (1-alpha)", d, a * sm.p_l_given_H() + (1 - a)),
      Greater("1-threshold > alpha*P(h|L) + (1-alpha)", 1 - d, a * sm.p_h_given_L + (1 - a)),
      Greater("alpha*P(h|H) > 1-threshold", a * sm.p_h_given_H, 1 - d),
  };
}

FrequencyCertificate CheckFrequencyInequalities(const SignalModel& sm, double alpha) {
  RequireValid(sm);
  if (!(alpha > 0.5 && alpha <= 1.0)) {
    Fail(ErrorKind::kParameter, "majority fraction must lie in (1/2, 1]");
  }
  FrequencyCertificate c;
  c.threshold = IdealThreshold(sm);
  c.alpha = alpha;
  const double d = c.threshold;
  c.truthful = {
      Greater("P(l|L) > threshold", sm.p_l_given_L(), d),
      Greater("threshold > P(l|H)", d, sm.p_l_given_H()),
      Greater("1-threshold > P(h|L)", 1 - d, sm.p_h_given_L),
      Greater("P(h|H) > 1-threshold", sm.p_h_given_H, 1 - d),
  };
  c.strategic_applicable = alpha > ThetaStar(sm);
  if (c.strategic_applicable) c.strategic = StrategicInequalities(sm, alpha);
  return c;
}

MechanismTrace RunMechanism(std::span<const Report> reports, std::int64_t n) {
  if (reports.empty()) Fail(ErrorKind::kInput, "mechanism needs at least one report");
  if (static_cast<std::int64_t>(reports.size()) != n) {
    Fail(ErrorKind::kInput, "expected " + std::to_string(n) + " reports, got " +
                                std::to_string(reports.size()));
  }
  MechanismTrace t;
  std::vector<double> thresholds;
  thresholds.reserve(reports.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    const Report& r = reports[i];
    if (!Validate(r).empty()) {
      Fail(ErrorKind::kInput, "report " + std::to_string(i) + ": threshold " +
                                  std::to_string(r.threshold_value) + " outside (0, 1)");
    }
    (r.declared_type == AgentType::kTypeH ? t.type_H_reports : t.type_L_reports) += 1;
    if (r.declared_signal == Signal::kL) ++t.l_reports;
    thresholds.push_back(r.threshold_value);
  }
  t.majority_tie = t.type_H_reports == t.type_L_reports;
  t.identified_majority =
      t.type_L_reports > t.type_H_reports ? AgentType::kTypeL : AgentType::kTypeH;

  // Lower median: order statistic ceil(n/2).
  const auto mid = thresholds.begin() + (static_cast<std::ptrdiff_t>(n) + 1) / 2 - 1;
  std::nth_element(thresholds.begin(), mid, thresholds.end());
  t.collective_threshold = *mid;

  t.l_frequency = static_cast<double>(t.l_reports) / static_cast<double>(n);
  t.assessed_state =
      AssessesL(t.l_reports, n, t.collective_threshold) ? WorldState::kL : WorldState::kH;
  t.output = PreferredAlternative(t.identified_majority, t.assessed_state);
  return t;
}

TruthfulSuccess TruthfulSuccessProbability(const Configuration& config, std::int64_t n) {
  RequireValid(config);
  if (n < 1) Fail(ErrorKind::kParameter, "n must be positive");
  const SignalModel& sm = config.signal_model;
  const double d = IdealThreshold(sm);
  TruthfulSuccess s;
  s.deviation = std::min(sm.p_l_given_L() - d, d - sm.p_l_given_H()) / 3.0;
  s.bound = 1.0 - 2.0 * HoeffdingBound(n, s.deviation);

  const std::int64_t maj = config.majority_count(n);
  const std::int64_t min = n - maj;
  AgentType identified = AgentType::kTypeH;
  if (maj != min) identified = maj > min ? config.majority_type() : config.minority_type();
  s.majority_identified = identified == config.majority_type();
  if (!s.majority_identified) return s;

  for (auto w : {WorldState::kL, WorldState::kH}) {
    const auto counts = Binomial(n, sm.p_signal(Signal::kL, w));
    double assess_L = 0.0;
    double assess_H = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
      (AssessesL(k, n, d) ? assess_L : assess_H) += counts.pmf(k);
    }
    if (w == WorldState::kL) {
      s.success_in_L = assess_L;
    } else {
      s.success_in_H = assess_H;
    }
  }
  s.probability = sm.mu * s.success_in_H + (1.0 - sm.mu) * s.success_in_L;
  return s;
}

Report TruthfulMap(AgentType agent_type, Signal signal, const SignalModel& sm) {
  return {agent_type, signal, IdealThreshold(sm)};
}

}  // namespace infoagg
