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

#ifndef MSQ_CORE_CLASSICAL_ANALYSIS_HPP
#define MSQ_CORE_CLASSICAL_ANALYSIS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "experiment.hpp"

namespace msq {

/// A definite color for every panel, row-major.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(const std::array<Color, 9> &colors) : colors_(colors) {}
  /// Bit (row * 3 + col) set means red.
  static Coloring from_red_mask(unsigned mask);

  Color at(Cell c) const { return colors_[c.row * 3 + c.col]; }
  const std::array<Color, 9> &colors() const { return colors_; }
  unsigned red_mask() const;

 private:
  std::array<Color, 9> colors_{Color::Green, Color::Green, Color::Green, Color::Green, Color::Green,
                               Color::Green, Color::Green, Color::Green, Color::Green};
};

struct ConstraintReport {
  std::array<bool, 6> satisfied{};
  int satisfied_count = 0;

  bool ok(Setting s) const { return satisfied[index_of(s)]; }
};

ConstraintReport check_coloring(const Coloring &coloring, Variant variant);

struct ColoringCensus {
  std::uint64_t total = 0;
  std::uint64_t fully_satisfying = 0;
  int max_satisfied = 0;
  /// histogram[k] = number of colorings satisfying exactly k settings.
  std::array<std::uint64_t, 7> histogram{};
};

/// Exhausts all 512 colorings.
ColoringCensus enumerate_colorings(Variant variant);

/// wins / total, kept unreduced so "34/36" reads as wins over question pairs.
struct Fraction {
  std::uint64_t wins = 0;
  std::uint64_t total = 1;

  std::string str() const { return std::to_string(wins) + "/" + std::to_string(total); }
  /// "1" for a perfect score, otherwise str().
  std::string display() const { return wins == total ? "1" : str(); }
  friend bool operator==(const Fraction &a, const Fraction &b) { return a.wins * b.total == b.wins * a.total; }
  friend bool operator<(const Fraction &a, const Fraction &b) { return a.wins * b.total < b.wins * a.total; }
  friend bool operator<=(const Fraction &a, const Fraction &b) { return !(b < a); }
};

enum class Game : std::uint8_t { ThreeByThree, SixBySix };

std::string_view to_string(Game g);
std::optional<Game> parse_game(std::string_view text);

/// Settings a party may use in a game.
std::span<const Setting> allowed_settings(Game game, Party party);

/// Per-setting answers for one party. Entries for settings outside the game
/// are empty; every present triple satisfies the setting's parity.
struct DeterministicStrategy {
  Party party = Party::Alice;
  std::array<std::optional<Triple>, 6> answers{};

  bool valid(Variant variant) const;
};

/// Number of winning question pairs for a strategy pair. A pair wins when
/// all shared panels match; pairs without shared panels count as wins.
std::uint64_t strategy_wins(Game game, const DeterministicStrategy &alice, const DeterministicStrategy &bob);

struct GameValueReport {
  Game game = Game::ThreeByThree;
  Variant variant = Variant::Standard;
  Fraction classical_value;
  Fraction quantum_value;
  std::uint64_t optimal_strategy_count = 0;
};

/// Exhaustive search over all deterministic strategy pairs.
GameValueReport classical_game_value(Game game, Variant variant);

/// Independent searcher: random-restart hill climbing over strategy pairs,
/// changing one answer at a time.
Fraction hill_climb_game_value(Game game, Variant variant, std::uint64_t seed, int restarts);

/// Quantum value from the analytic loss probabilities of every question
/// pair; 1 when no pair can lose beyond kTolerance.
Fraction quantum_game_value(Game game, Variant variant);

struct RealityChain {
  Cell cell;
  Color alice_color = Color::Green;
  Color predicted_bob_color = Color::Green;
  Color observed_bob_color = Color::Green;
  bool confirmed = false;
};

/// For every panel lit on both screens: Alice's color predicts Bob's, and
/// the prediction is checked against the record. Throws NoCommonPanel.
std::vector<RealityChain> element_of_reality_trace(const RoundRecord &record);

}  // namespace msq

#endif  // MSQ_CORE_CLASSICAL_ANALYSIS_HPP
