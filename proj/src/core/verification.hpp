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

#ifndef MSQ_CORE_VERIFICATION_HPP
#define MSQ_CORE_VERIFICATION_HPP

#include <string>
#include <vector>

#include "serialization.hpp"

namespace msq {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  Variant variant = Variant::Standard;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Deterministic structural checks of a variant: operator products,
/// commutation, eigenbases, the two-sided decomposition, no-signaling and
/// order independence.
VerifyReport run_verification(Variant variant);

Json verify_to_json(const VerifyReport &report);
std::string verify_to_text(const VerifyReport &report);

/// Eigenbases of every setting plus the reconstruction residuals.
Json eigen_to_json(Variant variant);
std::string eigen_to_text(Variant variant);

/// Coloring census and both game values.
struct ClassicalSummary {
  Variant variant = Variant::Standard;
  ColoringCensus census;
  GameValueReport three_by_three;
  GameValueReport six_by_six;
};

ClassicalSummary classical_summary(Variant variant);
Json classical_to_json(const ClassicalSummary &summary);
std::string classical_to_text(const ClassicalSummary &summary);

}  // namespace msq

#endif  // MSQ_CORE_VERIFICATION_HPP
