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

#include "serialization.hpp"

#include <cstdio>
#include <sstream>

#include "errors.hpp"

namespace msq {

namespace {

[[noreturn]] void bad_record(const std::string &what, std::string detail = {}) {
  fail(ErrorCode::InvalidArgument, "malformed round record: " + what, std::move(detail));
}

PanelGrid grid_from_json(const Json &side) {
  if (!side.is_object() || !side.contains("setting") || !side["setting"].is_string())
    bad_record("missing setting");
  const std::string token = side["setting"].get<std::string>();
  const auto setting = parse_setting(token);
  if (!setting) bad_record("unknown setting", token);

  if (!side.contains("panels") || !side["panels"].is_array() || side["panels"].size() != 3)
    bad_record("expected exactly three lit panels");
  Triple colors{};
  std::array<bool, 3> seen{};
  for (const Json &panel : side["panels"]) {
    if (!panel.is_object() || !panel.contains("row") || !panel.contains("col") || !panel.contains("color") ||
        !panel["row"].is_number_integer() || !panel["col"].is_number_integer() || !panel["color"].is_string())
      bad_record("panel needs integer row, col and a color");
    const Cell cell{panel["row"].get<int>() - 1, panel["col"].get<int>() - 1};
    const auto slot = slot_of(*setting, cell);
    if (!slot || seen[*slot]) bad_record("panel is not lit by the setting", token);
    const std::string color_token = panel["color"].get<std::string>();
    const auto color = parse_color(color_token);
    if (!color) bad_record("unknown color", color_token);
    seen[*slot] = true;
    colors[*slot] = *color;
  }
  return PanelGrid(*setting, colors);
}

std::string format_frequency(std::uint64_t count, std::uint64_t uses) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", uses ? static_cast<double>(count) / static_cast<double>(uses) : 0.0);
  return buffer;
}

}  // namespace

std::string hex16(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::uint64_t parse_hex16(const std::string &text) {
  if (text.size() != 16 || text.find_first_not_of("0123456789abcdef") != std::string::npos)
    fail(ErrorCode::InvalidArgument, "expected 16 lowercase hex digits", text);
  return std::stoull(text, nullptr, 16);
}

std::string triple_label(const Triple &colors) {
  std::string out;
  for (Color c : colors) out += c == Color::Red ? 'R' : 'G';
  return out;
}

Json panels_to_json(const PanelGrid &grid) {
  Json panels = Json::array();
  const auto cells = setting_cells(grid.setting());
  for (std::size_t k = 0; k < 3; ++k)
    panels.push_back({{"row", cells[k].row + 1}, {"col", cells[k].col + 1}, {"color", to_string(grid.colors()[k])}});
  return {{"setting", to_string(grid.setting())}, {"panels", std::move(panels)}};
}

Json record_to_json(const RoundRecord &record) {
  return {{"round", record.round_index},
          {"alice", panels_to_json(record.alice_panels)},
          {"bob", panels_to_json(record.bob_panels)},
          {"seed_fingerprint", hex16(record.seed_fingerprint)}};
}

RoundRecord record_from_json(const Json &json) {
  if (!json.is_object()) bad_record("not an object");
  if (!json.contains("round") || !json["round"].is_number_unsigned()) bad_record("missing round index");
  if (!json.contains("seed_fingerprint") || !json["seed_fingerprint"].is_string())
    bad_record("missing seed_fingerprint");
  if (!json.contains("alice") || !json.contains("bob")) bad_record("missing party");

  RoundRecord record;
  record.round_index = json["round"].get<std::uint64_t>();
  record.alice_panels = grid_from_json(json["alice"]);
  record.bob_panels = grid_from_json(json["bob"]);
  record.alice_setting = record.alice_panels.setting();
  record.bob_setting = record.bob_panels.setting();
  record.seed_fingerprint = parse_hex16(json["seed_fingerprint"].get<std::string>());
  return record;
}

Json tally_to_json(const RoundTally &tally, Variant variant) {
  auto party = [&](const std::array<SettingTally, 6> &tallies) {
    Json out = Json::object();
    for (Setting s : kAllSettings) {
      const SettingTally &t = tallies[index_of(s)];
      Json outcomes = Json::array();
      for (std::size_t k = 0; k < 4; ++k) {
        outcomes.push_back({{"colors", triple_label(outcome_colors(s, variant, k))},
                            {"count", t.outcomes[k]},
                            {"frequency", t.uses ? static_cast<double>(t.outcomes[k]) / static_cast<double>(t.uses) : 0.0}});
      }
      out[std::string(to_string(s))] = {{"uses", t.uses}, {"outcomes", std::move(outcomes)}, {"invalid", t.invalid}};
    }
    return out;
  };
  return {{"rounds", tally.rounds},
          {"parity_violations", tally.parity_violations},
          {"correlation_violations", tally.correlation_violations},
          {"rounds_with_common_panels", tally.rounds_with_common_panels},
          {"frequencies", {{"alice", party(tally.alice)}, {"bob", party(tally.bob)}}}};
}

Json batch_to_json(const BatchReport &report) {
  Json out = {{"seed", report.seed}, {"policy", report.policy.describe()}, {"variant", to_string(report.variant)}};
  const Json tally = tally_to_json(report.tally, report.variant);
  for (auto &[key, value] : tally.items()) out[key] = value;
  Json records = Json::array();
  for (const RoundRecord &r : report.records) records.push_back(record_to_json(r));
  out["records"] = std::move(records);
  return out;
}

std::string batch_to_text(const BatchReport &report) {
  const RoundTally &t = report.tally;
  std::ostringstream os;
  os << "rounds " << t.rounds << "  seed " << report.seed << "  policy " << report.policy.describe()
     << "  variant " << to_string(report.variant) << "\n";
  os << "parity violations " << t.parity_violations << "  correlation violations " << t.correlation_violations
     << "  rounds with common panels " << t.rounds_with_common_panels << "\n\n";
  os << "party  setting   uses  outcome frequencies                      invalid\n";
  for (Party party : {Party::Alice, Party::Bob}) {
    const auto &tallies = party == Party::Alice ? t.alice : t.bob;
    for (Setting s : kAllSettings) {
      const SettingTally &st = tallies[index_of(s)];
      char head[40];
      std::snprintf(head, sizeof head, "%-6s %-7s %6llu ", party_name(party), std::string(to_string(s)).c_str(),
                    static_cast<unsigned long long>(st.uses));
      os << head;
      for (std::size_t k = 0; k < 4; ++k)
        os << " " << triple_label(outcome_colors(s, report.variant, k)) << " "
           << format_frequency(st.outcomes[k], st.uses);
      os << "  " << st.invalid << "\n";
    }
  }
  return os.str();
}

Json constraint_report_to_json(const ConstraintReport &report) {
  Json satisfied = Json::object();
  Json violated = Json::array();
  for (Setting s : kAllSettings) {
    satisfied[std::string(to_string(s))] = report.ok(s);
    if (!report.ok(s)) violated.push_back(to_string(s));
  }
  return {{"satisfied", std::move(satisfied)},
          {"violated", std::move(violated)},
          {"satisfied_count", report.satisfied_count},
          {"all_satisfied", report.satisfied_count == 6}};
}

Json census_to_json(const ColoringCensus &census) {
  Json histogram = Json::object();
  for (std::size_t k = 0; k < census.histogram.size(); ++k) histogram[std::to_string(k)] = census.histogram[k];
  return {{"total", census.total},
          {"fully_satisfying", census.fully_satisfying},
          {"max_satisfied", census.max_satisfied},
          {"histogram", std::move(histogram)}};
}

Json game_value_to_json(const GameValueReport &report) {
  return {{"game", to_string(report.game)},
          {"variant", to_string(report.variant)},
          {"classical_value", report.classical_value.str()},
          {"quantum_value", report.quantum_value.display()},
          {"classical_wins", report.classical_value.wins},
          {"question_pairs", report.classical_value.total},
          {"optimal_strategy_count", report.optimal_strategy_count}};
}

Json reality_chains_to_json(const std::vector<RealityChain> &chains) {
  Json out = Json::array();
  for (const RealityChain &c : chains) {
    out.push_back({{"row", c.cell.row + 1},
                   {"col", c.cell.col + 1},
                   {"alice_color", to_string(c.alice_color)},
                   {"predicted_bob_color", to_string(c.predicted_bob_color)},
                   {"observed_bob_color", to_string(c.observed_bob_color)},
                   {"confirmed", c.confirmed}});
  }
  return out;
}

}  // namespace msq
