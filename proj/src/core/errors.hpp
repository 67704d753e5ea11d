// Copyright 2026 The magicsquare Authors
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

#ifndef MSQ_CORE_ERRORS_HPP
#define MSQ_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace msq {

enum class ErrorCode {
  InvalidArgument,
  NotFound,
  NotScalar,
  NoCommonPanel,
  Internal,
  Io,
};

/// Every failure raised by the core carries one of the codes above so the C
/// API can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string &detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message, std::string detail = {}) {
  throw Error(code, message, std::move(detail));
}

}  // namespace msq

#endif  // MSQ_CORE_ERRORS_HPP
