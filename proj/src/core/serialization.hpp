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

#ifndef MSQ_CORE_SERIALIZATION_HPP
#define MSQ_CORE_SERIALIZATION_HPP

// JSON and text renderings shared by the CLI and the HTTP service. The round
// record schema is:
//
//   { "round": 0,
//     "alice": {"setting": "R1",
//               "panels": [{"row": 1, "col": 1, "color": "red"}, ...]},
//     "bob":   {...},
//     "seed_fingerprint": "00000000deadbeef" }
//
// Rows and columns are 1-based, colors are lowercase, and only lit panels
// are listed, in the setting's panel order.

#include <string>

#include <json.hpp>

#include "classical_analysis.hpp"
#include "experiment.hpp"

namespace msq {

using Json = nlohmann::ordered_json;

std::string hex16(std::uint64_t value);
std::uint64_t parse_hex16(const std::string &text);

Json panels_to_json(const PanelGrid &grid);
Json record_to_json(const RoundRecord &record);
/// Validates settings, lit positions and colors; throws InvalidArgument.
RoundRecord record_from_json(const Json &json);

Json tally_to_json(const RoundTally &tally, Variant variant);
Json batch_to_json(const BatchReport &report);
std::string batch_to_text(const BatchReport &report);

Json constraint_report_to_json(const ConstraintReport &report);
Json census_to_json(const ColoringCensus &census);
Json game_value_to_json(const GameValueReport &report);
Json reality_chains_to_json(const std::vector<RealityChain> &chains);

/// "RGR"-style label of a triple.
std::string triple_label(const Triple &colors);

}  // namespace msq

#endif  // MSQ_CORE_SERIALIZATION_HPP
