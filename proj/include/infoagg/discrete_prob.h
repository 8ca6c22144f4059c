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

// Integer-support probability vectors: binomials, sums of independent counts,
// tails with tie weighting, total variation distance and the discretized
// Gaussian. The arithmetic templates accept any field type (double in the
// library, exact rationals in the regression oracles).

#ifndef INFOAGG_DISCRETE_PROB_H_
#define INFOAGG_DISCRETE_PROB_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "infoagg/error.h"

namespace infoagg {

template <typename Real>
struct BasicCountDistribution {
  // Support is {offset, ..., offset + probabilities.size() - 1}.
  std::int64_t offset = 0;
  std::vector<Real> probabilities{Real(1)};

  std::int64_t min_support() const { return offset; }
  std::int64_t max_support() const {
    return offset + static_cast<std::int64_t>(probabilities.size()) - 1;
  }
  Real pmf(std::int64_t k) const {
    if (k < min_support() || k > max_support()) return Real(0);
    return probabilities[static_cast<size_t>(k - offset)];
  }
  Real total() const {
    Real s(0);
    for (const auto& p : probabilities) s += p;
    return s;
  }
  Real mean() const {
    Real m(0);
    for (size_t i = 0; i < probabilities.size(); ++i) {
      m += probabilities[i] * Real(offset + static_cast<std::int64_t>(i));
    }
    return m;
  }
  Real variance() const {
    const Real m = mean();
    Real v(0);
    for (size_t i = 0; i < probabilities.size(); ++i) {
      const Real d = Real(offset + static_cast<std::int64_t>(i)) - m;
      v += probabilities[i] * d * d;
    }
    return v;
  }
};

using CountDistribution = BasicCountDistribution<double>;

// Empty when the distribution sums to 1 within 1e-9 and has no negative mass.
std::vector<std::string> Validate(const CountDistribution& d);

template <typename Real>
BasicCountDistribution<Real> PointMass(std::int64_t k) {
  return BasicCountDistribution<Real>{k, {Real(1)}};
}

// Multiplicative recurrence outward from the mode, then normalization; no
// factorials, stable for n up to 10^6 in double.
template <typename Real>
BasicCountDistribution<Real> Binomial(std::int64_t n, const Real& p) {
  if (n < 0) Fail(ErrorKind::kParameter, "binomial: n must be non-negative");
  if (!(p >= Real(0) && p <= Real(1))) {
    Fail(ErrorKind::kParameter, "binomial: p must lie in [0, 1]");
  }
  BasicCountDistribution<Real> d;
  d.offset = 0;
  d.probabilities.assign(static_cast<size_t>(n + 1), Real(0));
  if (p == Real(0)) {
    d.probabilities.front() = Real(1);
    return d;
  }
  if (p == Real(1)) {
    d.probabilities.back() = Real(1);
    return d;
  }
  const Real q = Real(1) - p;
  const double p_approx = static_cast<double>(p);
  auto mode = static_cast<std::int64_t>(std::floor(static_cast<double>(n + 1) * p_approx));
  mode = std::clamp<std::int64_t>(mode, 0, n);

  auto& v = d.probabilities;
  v[static_cast<size_t>(mode)] = Real(1);
  const Real up = p / q;
  const Real down = q / p;
  for (std::int64_t k = mode; k < n; ++k) {
    v[static_cast<size_t>(k + 1)] =
        v[static_cast<size_t>(k)] * Real(n - k) / Real(k + 1) * up;
  }
  for (std::int64_t k = mode; k > 0; --k) {
    v[static_cast<size_t>(k - 1)] =
        v[static_cast<size_t>(k)] * Real(k) / Real(n - k + 1) * down;
  }
  const Real s = d.total();
  for (auto& x : v) x /= s;
  return d;
}

// Distribution of the sum of independent draws.
template <typename Real>
BasicCountDistribution<Real> Convolve(const BasicCountDistribution<Real>& a,
                                      const BasicCountDistribution<Real>& b) {
  BasicCountDistribution<Real> out;
  out.offset = a.offset + b.offset;
  out.probabilities.assign(a.probabilities.size() + b.probabilities.size() - 1, Real(0));
  for (size_t i = 0; i < a.probabilities.size(); ++i) {
    const Real& ai = a.probabilities[i];
    if (ai == Real(0)) continue;
    for (size_t j = 0; j < b.probabilities.size(); ++j) {
      out.probabilities[i + j] += ai * b.probabilities[j];
    }
  }
  return out;
}

// Half the L1 distance over the union of supports.
template <typename Real>
Real Tvd(const BasicCountDistribution<Real>& a, const BasicCountDistribution<Real>& b) {
  using std::abs;
  const std::int64_t lo = std::min(a.min_support(), b.min_support());
  const std::int64_t hi = std::max(a.max_support(), b.max_support());
  Real s(0);
  for (std::int64_t k = lo; k <= hi; ++k) s += abs(a.pmf(k) - b.pmf(k));
  return s / Real(2);
}

// Pr[X > threshold] + tie_weight * Pr[X == threshold].
template <typename Real>
Real UpperTail(const BasicCountDistribution<Real>& d, double threshold, const Real& tie_weight) {
  Real s(0);
  for (size_t i = 0; i < d.probabilities.size(); ++i) {
    const double k = static_cast<double>(d.offset + static_cast<std::int64_t>(i));
    if (k > threshold) {
      s += d.probabilities[i];
    } else if (k == threshold) {
      s += tie_weight * d.probabilities[i];
    }
  }
  return s;
}

// Standard normal CDF through erfc, accurate in both tails.
double NormalCdf(double x);

// Phi(b) - Phi(a) for a <= b without cancellation in the tails.
double NormalInterval(double a, double b);

// pmf(i) = Phi((i - mean + 1/2) / sigma) - Phi((i - mean - 1/2) / sigma) on
// [lo, hi], renormalized. Throws if variance <= 0 or if the range drops more
// than 1e-12 of the mass.
CountDistribution DiscretizedGaussian(double mean, double variance, std::int64_t lo,
                                      std::int64_t hi);
// Same on mean +/- 12 sigma.
CountDistribution DiscretizedGaussian(double mean, double variance);

// One-sided Hoeffding tail exp(-2 c^2 n); the two-sided bound is twice this.
double HoeffdingBound(std::int64_t n, double deviation);

}  // namespace infoagg

#endif  // INFOAGG_DISCRETE_PROB_H_
