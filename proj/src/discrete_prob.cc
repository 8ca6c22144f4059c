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

#include "infoagg/discrete_prob.h"

#include <cmath>
#include <numbers>

namespace infoagg {

std::vector<std::string> Validate(const CountDistribution& d) {
  std::vector<std::string> errors;
  if (d.probabilities.empty()) {
    errors.push_back("distribution has empty support");
    return errors;
  }
  if (std::any_of(d.probabilities.begin(), d.probabilities.end(),
                  [](double p) { return !(p >= 0.0); })) {
    errors.push_back("distribution has a negative or NaN entry");
  }
  if (std::abs(d.total() - 1.0) > 1e-9) errors.push_back("distribution does not sum to 1");
  return errors;
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double NormalInterval(double a, double b) {
  const double s = std::numbers::sqrt2;
  if (a >= 0.0) return 0.5 * (std::erfc(a / s) - std::erfc(b / s));
  if (b <= 0.0) return 0.5 * (std::erfc(-b / s) - std::erfc(-a / s));
  return 1.0 - NormalCdf(a) - 0.5 * std::erfc(b / s);
}

CountDistribution DiscretizedGaussian(double mean, double variance, std::int64_t lo,
                                      std::int64_t hi) {
  if (!(variance > 0.0)) Fail(ErrorKind::kParameter, "discretized gaussian: variance must be positive");
  if (hi < lo) Fail(ErrorKind::kParameter, "discretized gaussian: empty support range");
  const double sigma = std::sqrt(variance);
  CountDistribution d;
  d.offset = lo;
  d.probabilities.resize(static_cast<size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) {
    const double a = (static_cast<double>(i) - mean - 0.5) / sigma;
    const double b = (static_cast<double>(i) - mean + 0.5) / sigma;
    d.probabilities[static_cast<size_t>(i - lo)] = NormalInterval(a, b);
  }
  const double mass = d.total();
  if (1.0 - mass > 1e-12) {
    Fail(ErrorKind::kParameter, "discretized gaussian: support range truncates mass " +
                                    std::to_string(1.0 - mass));
  }
  for (auto& p : d.probabilities) p /= mass;
  return d;
}

CountDistribution DiscretizedGaussian(double mean, double variance) {
  if (!(variance > 0.0)) Fail(ErrorKind::kParameter, "discretized gaussian: variance must be positive");
  const double half_width = 12.0 * std::sqrt(variance);
  const auto lo = static_cast<std::int64_t>(std::floor(mean - half_width));
  const auto hi = static_cast<std::int64_t>(std::ceil(mean + half_width));
  return DiscretizedGaussian(mean, variance, lo, hi);
}

double HoeffdingBound(std::int64_t n, double deviation) {
  if (n < 0) Fail(ErrorKind::kParameter, "hoeffding bound: n must be non-negative");
  if (!(deviation >= 0.0)) Fail(ErrorKind::kParameter, "hoeffding bound: deviation must be non-negative");
  return std::exp(-2.0 * deviation * deviation * static_cast<double>(n));
}

}  // namespace infoagg
