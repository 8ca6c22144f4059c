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

#ifndef INFOAGG_ERROR_H_
#define INFOAGG_ERROR_H_

#include <stdexcept>
#include <string>

namespace infoagg {

enum class ErrorKind {
  kParameter,
  kInput,
  kConstruction,
  kDegenerateSignal,
  kInconsistentResponse,
  kAggregation,
  kParse,
  kUsage,
};

const char* ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type; callers that
// care about the category switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace infoagg

#endif  // INFOAGG_ERROR_H_
