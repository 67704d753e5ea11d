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

#ifndef MSQ_CORE_EXPERIMENT_HPP
#define MSQ_CORE_EXPERIMENT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magic_square.hpp"

namespace msq {

/// Green shows +1, red shows -1.
enum class Color : std::uint8_t { Red, Green };

constexpr Color color_of(Outcome o) { return o == Outcome::Plus ? Color::Green : Color::Red; }
constexpr Outcome outcome_of(Color c) { return c == Color::Green ? Outcome::Plus : Outcome::Minus; }
constexpr Color swapped(Color c) { return c == Color::Red ? Color::Green : Color::Red; }

std::string_view to_string(Color c);
std::optional<Color> parse_color(std::string_view text);

using Triple = std::array<Color, 3>;

/// One detector screen: the lit row or column and its colors, in the
/// setting's panel order. Unlit panels have no color.
class PanelGrid {
 public:
  PanelGrid() = default;
  PanelGrid(Setting setting, Triple colors) : setting_(setting), colors_(colors) {}

  Setting setting() const { return setting_; }
  const Triple &colors() const { return colors_; }
  std::optional<Color> at(Cell cell) const;
  int red_count() const;

  friend bool operator==(const PanelGrid &, const PanelGrid &) = default;

 private:
  Setting setting_ = Setting::R1;
  Triple colors_{Color::Green, Color::Green, Color::Green};
};

struct RoundRecord {
  std::uint64_t round_index = 0;
  Setting alice_setting = Setting::R1;
  Setting bob_setting = Setting::R1;
  PanelGrid alice_panels;
  PanelGrid bob_panels;
  std::uint64_t seed_fingerprint = 0;

  friend bool operator==(const RoundRecord &, const RoundRecord &) = default;
};

/// True iff the red count of the lit panels has the parity required by the
/// setting's product sign (even for +I, odd for -I).
bool verify_parity(const PanelGrid &grid, Setting setting, Variant variant);

/// True iff every panel lit on both screens shows the same color. Vacuously
/// true when nothing is shared.
bool verify_correlation(const PanelGrid &a, const PanelGrid &b);

/// How each side's setting is chosen in a round. In Fixed mode a side left
/// empty is drawn uniformly from all six settings.
struct SettingPolicy {
  enum class Mode : std::uint8_t { UniformRandom, Fixed, RowsForAliceColsForBob };

  Mode mode = Mode::UniformRandom;
  std::optional<Setting> alice;
  std::optional<Setting> bob;

  static SettingPolicy uniform() { return {}; }
  static SettingPolicy fixed(std::optional<Setting> a, std::optional<Setting> b) {
    return {Mode::Fixed, a, b};
  }
  static SettingPolicy rows_for_alice_cols_for_bob() { return {Mode::RowsForAliceColsForBob, {}, {}}; }

  /// "random", "cleve", or "fixed:<A>:<B>" where a side may read "random".
  std::string describe() const;

  friend bool operator==(const SettingPolicy &, const SettingPolicy &) = default;
};

/// Parses the textual forms produced by describe(). When `allow_random_side`
/// is false a fixed policy must name two settings.
std::optional<SettingPolicy> parse_policy(std::string_view text, bool allow_random_side = false);

/// 64-bit fingerprint of the substream used by round `round_index` of a run
/// seeded with `seed`. The fingerprint alone reproduces the round.
std::uint64_t round_fingerprint(std::uint64_t seed, std::uint64_t round_index);

/// Per-round random source. Draw order within a round is fixed: Alice's
/// setting (if drawn), Bob's setting (if drawn), Alice's three measurement
/// draws, Bob's three measurement draws.
class RoundStream {
 public:
  explicit RoundStream(std::uint64_t fingerprint);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Unbiased uniform pick.
  Setting pick(std::span<const Setting> choices);

 private:
  std::mt19937_64 engine_;
};

RoundRecord run_round(const SettingPolicy &policy, Variant variant, std::uint64_t seed,
                      std::uint64_t round_index);

/// Replays a round from its recorded fingerprint.
RoundRecord replay_round(const SettingPolicy &policy, Variant variant, std::uint64_t fingerprint,
                         std::uint64_t round_index);

/// Outcome counts of one setting for one party. Parity-valid triples are
/// indexed by (o1, o2) in the order (+,+), (+,-), (-,+), (-,-).
struct SettingTally {
  std::uint64_t uses = 0;
  std::array<std::uint64_t, 4> outcomes{};
  std::uint64_t invalid = 0;

  friend bool operator==(const SettingTally &, const SettingTally &) = default;
};

/// The colors of parity-valid outcome `index` for a setting.
Triple outcome_colors(Setting setting, Variant variant, std::size_t index);

struct RoundTally {
  std::uint64_t rounds = 0;
  std::uint64_t parity_violations = 0;
  std::uint64_t correlation_violations = 0;
  std::uint64_t rounds_with_common_panels = 0;
  std::array<SettingTally, 6> alice{};
  std::array<SettingTally, 6> bob{};

  void add(const RoundRecord &record, Variant variant);

  friend bool operator==(const RoundTally &, const RoundTally &) = default;
};

struct BatchReport {
  std::uint64_t seed = 0;
  SettingPolicy policy;
  Variant variant = Variant::Standard;
  RoundTally tally;
  std::vector<RoundRecord> records;

  friend bool operator==(const BatchReport &, const BatchReport &) = default;
};

struct BatchOptions {
  bool keep_records = true;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Runs `rounds` independent rounds. The result depends only on
/// (rounds, policy, variant, seed), never on the thread count.
BatchReport run_batch(std::uint64_t rounds, const SettingPolicy &policy, Variant variant,
                      std::uint64_t seed, BatchOptions options = {});

// Analytic (sampling-free) distributions over outcome triples. A triple is
// indexed by bits: bit k set means observable k of the setting gave -1.
using TripleDistribution = std::array<double, 8>;
using JointDistribution = std::array<TripleDistribution, 8>;

/// Joint distribution of (Alice triple, Bob triple) on the source state when
/// one party's projectors are applied before the other's.
JointDistribution joint_distribution(Setting alice, Setting bob, Variant variant, bool bob_first = false);

/// Largest change in Bob's triple distribution for `bob_setting` across the
/// six Alice settings and the no-measurement baseline.
double no_signaling_check(Setting bob_setting, Variant variant);

/// Largest deviation between the triple distributions obtained from the six
/// measurement orders of a setting's observables.
double triple_order_deviation(Setting setting, Party party, Variant variant);

/// Largest deviation between Alice-first and Bob-first joint distributions.
double party_order_deviation(Setting alice, Setting bob, Variant variant);

/// Probability that the shared panels disagree for a pair of settings.
double loss_probability(Setting alice, Setting bob, Variant variant);

}  // namespace msq

#endif  // MSQ_CORE_EXPERIMENT_HPP
