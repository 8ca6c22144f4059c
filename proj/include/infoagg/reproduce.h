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

// Registry of worked examples. Each entry recomputes a reference scenario
// through the library and compares every value with its stored target.

#ifndef INFOAGG_REPRODUCE_H_
#define INFOAGG_REPRODUCE_H_

#include <string>
#include <vector>

namespace infoagg {

struct ReproductionCheck {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  // Absolute tolerance; boolean checks use expected 1 and tolerance 0.
  double tolerance = 0.0;
  bool pass = false;
};

struct ReproductionReport {
  std::string id;
  std::string description;
  std::vector<ReproductionCheck> checks;

  bool all_pass() const;
};

std::vector<std::string> ReproductionIds();

// Throws Error(kUsage) listing the registered ids for an unknown id.
ReproductionReport Reproduce(const std::string& id);

}  // namespace infoagg

#endif  // INFOAGG_REPRODUCE_H_
