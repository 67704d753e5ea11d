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

#include "classical_analysis.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "errors.hpp"

namespace msq {

namespace {

constexpr unsigned kAllPanels = 0x1FFu;

unsigned cell_bit(Cell c) { return 1u << (c.row * 3 + c.col); }

// Red mask of a triple placed on its setting's panels.
unsigned placed_red_mask(Setting s, const Triple &colors) {
  unsigned mask = 0;
  const auto cells = setting_cells(s);
  for (std::size_t k = 0; k < 3; ++k)
    if (colors[k] == Color::Red) mask |= cell_bit(cells[k]);
  return mask;
}

unsigned line_mask(Setting s) {
  unsigned mask = 0;
  for (const Cell &c : setting_cells(s)) mask |= cell_bit(c);
  return mask;
}

// A party strategy flattened to two 9-bit red masks: the colors its row
// answers paint, and the colors its column answers paint.
struct PackedStrategy {
  unsigned rows = 0;
  unsigned cols = 0;
};

std::vector<PackedStrategy> packed_strategies(std::span<const Setting> settings, Variant variant) {
  std::vector<PackedStrategy> out;
  std::size_t count = 1;
  for (std::size_t k = 0; k < settings.size(); ++k) count *= 4;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    PackedStrategy p;
    std::size_t rest = code;
    for (Setting s : settings) {
      const unsigned mask = placed_red_mask(s, outcome_colors(s, variant, rest % 4));
      rest /= 4;
      (is_row(s) ? p.rows : p.cols) |= mask;
    }
    out.push_back(p);
  }
  return out;
}

unsigned equal_lines(unsigned a, unsigned b, std::span<const Setting> lines) {
  unsigned n = 0;
  for (Setting s : lines) n += ((a ^ b) & line_mask(s)) == 0 ? 1u : 0u;
  return n;
}

}  // namespace

Coloring Coloring::from_red_mask(unsigned mask) {
  std::array<Color, 9> colors{};
  for (unsigned k = 0; k < 9; ++k) colors[k] = (mask >> k) & 1u ? Color::Red : Color::Green;
  return Coloring(colors);
}

unsigned Coloring::red_mask() const {
  unsigned mask = 0;
  for (unsigned k = 0; k < 9; ++k)
    if (colors_[k] == Color::Red) mask |= 1u << k;
  return mask;
}

ConstraintReport check_coloring(const Coloring &coloring, Variant variant) {
  ConstraintReport report;
  for (Setting s : kAllSettings) {
    const auto cells = setting_cells(s);
    const PanelGrid grid(s, {coloring.at(cells[0]), coloring.at(cells[1]), coloring.at(cells[2])});
    report.satisfied[index_of(s)] = verify_parity(grid, s, variant);
  }
  report.satisfied_count = static_cast<int>(std::count(report.satisfied.begin(), report.satisfied.end(), true));
  return report;
}

ColoringCensus enumerate_colorings(Variant variant) {
  ColoringCensus census;
  for (unsigned mask = 0; mask < 512; ++mask) {
    const int k = check_coloring(Coloring::from_red_mask(mask), variant).satisfied_count;
    ++census.total;
    ++census.histogram[static_cast<std::size_t>(k)];
    census.max_satisfied = std::max(census.max_satisfied, k);
    if (k == 6) ++census.fully_satisfying;
  }
  return census;
}

std::string_view to_string(Game g) { return g == Game::ThreeByThree ? "3x3" : "6x6"; }

std::optional<Game> parse_game(std::string_view text) {
  if (text == "3x3") return Game::ThreeByThree;
  if (text == "6x6") return Game::SixBySix;
  return std::nullopt;
}

std::span<const Setting> allowed_settings(Game game, Party party) {
  if (game == Game::SixBySix) return kAllSettings;
  return party == Party::Alice ? std::span<const Setting>(kRowSettings)
                               : std::span<const Setting>(kColumnSettings);
}

bool DeterministicStrategy::valid(Variant variant) const {
  for (Setting s : kAllSettings) {
    const auto &answer = answers[index_of(s)];
    if (answer && !verify_parity(PanelGrid(s, *answer), s, variant)) return false;
  }
  return true;
}

std::uint64_t strategy_wins(Game game, const DeterministicStrategy &alice, const DeterministicStrategy &bob) {
  std::uint64_t wins = 0;
  for (Setting a : allowed_settings(game, Party::Alice)) {
    for (Setting b : allowed_settings(game, Party::Bob)) {
      const auto &ta = alice.answers[index_of(a)];
      const auto &tb = bob.answers[index_of(b)];
      if (!ta || !tb) fail(ErrorCode::InvalidArgument, "strategy has no answer for an allowed setting");
      if (verify_correlation(PanelGrid(a, *ta), PanelGrid(b, *tb))) ++wins;
    }
  }
  return wins;
}

GameValueReport classical_game_value(Game game, Variant variant) {
  const auto alice_settings = allowed_settings(game, Party::Alice);
  const auto bob_settings = allowed_settings(game, Party::Bob);
  const std::vector<PackedStrategy> alice = packed_strategies(alice_settings, variant);
  const std::vector<PackedStrategy> bob = packed_strategies(bob_settings, variant);

  // Question pairs that never share a panel (distinct rows, distinct
  // columns) are won by every strategy pair.
  std::uint64_t vacuous = 0;
  for (Setting a : alice_settings)
    for (Setting b : bob_settings)
      if (common_panels(a, b).empty()) ++vacuous;

  const bool alice_has_rows = std::any_of(alice_settings.begin(), alice_settings.end(), is_row);
  const bool alice_has_cols = !std::all_of(alice_settings.begin(), alice_settings.end(), is_row);
  const bool bob_has_rows = std::any_of(bob_settings.begin(), bob_settings.end(), is_row);
  const bool bob_has_cols = !std::all_of(bob_settings.begin(), bob_settings.end(), is_row);

  std::uint64_t best = 0;
  std::uint64_t best_count = 0;
  for (const PackedStrategy &pa : alice) {
    for (const PackedStrategy &pb : bob) {
      std::uint64_t wins = vacuous;
      if (alice_has_rows && bob_has_cols) wins += std::popcount(~(pa.rows ^ pb.cols) & kAllPanels);
      if (alice_has_cols && bob_has_rows) wins += std::popcount(~(pa.cols ^ pb.rows) & kAllPanels);
      if (alice_has_rows && bob_has_rows) wins += equal_lines(pa.rows, pb.rows, kRowSettings);
      if (alice_has_cols && bob_has_cols) wins += equal_lines(pa.cols, pb.cols, kColumnSettings);
      if (wins > best) {
        best = wins;
        best_count = 0;
      }
      if (wins == best) ++best_count;
    }
  }

  GameValueReport report;
  report.game = game;
  report.variant = variant;
  report.classical_value = Fraction{best, alice_settings.size() * bob_settings.size()};
  report.quantum_value = quantum_game_value(game, variant);
  report.optimal_strategy_count = best_count;
  return report;
}

Fraction hill_climb_game_value(Game game, Variant variant, std::uint64_t seed, int restarts) {
  std::mt19937_64 rng(seed);
  const std::array<Party, 2> parties = {Party::Alice, Party::Bob};
  const std::uint64_t total = allowed_settings(game, Party::Alice).size() * allowed_settings(game, Party::Bob).size();

  std::uint64_t best = 0;
  for (int restart = 0; restart < restarts; ++restart) {
    std::array<DeterministicStrategy, 2> pair;
    for (std::size_t p = 0; p < 2; ++p) {
      pair[p].party = parties[p];
      for (Setting s : allowed_settings(game, parties[p]))
        pair[p].answers[index_of(s)] = outcome_colors(s, variant, rng() % 4);
    }
    std::uint64_t current = strategy_wins(game, pair[0], pair[1]);

    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t p = 0; p < 2 && !improved; ++p) {
        for (Setting s : allowed_settings(game, parties[p])) {
          const Triple original = *pair[p].answers[index_of(s)];
          for (std::size_t k = 0; k < 4; ++k) {
            pair[p].answers[index_of(s)] = outcome_colors(s, variant, k);
            const std::uint64_t wins = strategy_wins(game, pair[0], pair[1]);
            if (wins > current) {
              current = wins;
              improved = true;
              break;
            }
            pair[p].answers[index_of(s)] = original;
          }
          if (improved) break;
        }
      }
    }
    best = std::max(best, current);
  }
  return Fraction{best, total};
}

Fraction quantum_game_value(Game game, Variant variant) {
  std::uint64_t total = 0;
  for (Setting a : allowed_settings(game, Party::Alice)) {
    for (Setting b : allowed_settings(game, Party::Bob)) {
      ++total;
      const double loss = loss_probability(a, b, variant);
      if (loss > kTolerance)
        fail(ErrorCode::Internal, "quantum strategy loses a question pair",
             std::string(to_string(a)) + "/" + std::string(to_string(b)));
    }
  }
  return Fraction{total, total};
}

std::vector<RealityChain> element_of_reality_trace(const RoundRecord &record) {
  const auto shared = common_panels(record.alice_setting, record.bob_setting);
  if (shared.empty())
    fail(ErrorCode::NoCommonPanel, "the two screens share no lit panel",
         std::string(to_string(record.alice_setting)) + "/" + std::string(to_string(record.bob_setting)));

  std::vector<RealityChain> chains;
  for (const Cell &cell : shared) {
    RealityChain chain;
    chain.cell = cell;
    chain.alice_color = *record.alice_panels.at(cell);
    chain.predicted_bob_color = chain.alice_color;
    chain.observed_bob_color = *record.bob_panels.at(cell);
    chain.confirmed = chain.predicted_bob_color == chain.observed_bob_color;
    chains.push_back(chain);
  }
  return chains;
}

}  // namespace msq
