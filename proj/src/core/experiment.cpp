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

#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "errors.hpp"

namespace msq {

namespace {

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

Triple measure_triple(StateVector &state, const std::array<Observable, 3> &obs, RoundStream &stream) {
  Triple colors{};
  for (std::size_t k = 0; k < 3; ++k) {
    Measurement m = measure(state, obs[k], stream.uniform());
    colors[k] = color_of(m.outcome);
    state = std::move(m.state);
  }
  return colors;
}

RoundRecord simulate(const SettingPolicy &policy, Variant variant, std::uint64_t fingerprint,
                     std::uint64_t round_index) {
  RoundStream stream(fingerprint);
  RoundRecord record;
  record.round_index = round_index;
  record.seed_fingerprint = fingerprint;

  switch (policy.mode) {
    case SettingPolicy::Mode::UniformRandom:
      record.alice_setting = stream.pick(kAllSettings);
      record.bob_setting = stream.pick(kAllSettings);
      break;
    case SettingPolicy::Mode::Fixed:
      record.alice_setting = policy.alice ? *policy.alice : stream.pick(kAllSettings);
      record.bob_setting = policy.bob ? *policy.bob : stream.pick(kAllSettings);
      break;
    case SettingPolicy::Mode::RowsForAliceColsForBob:
      record.alice_setting = stream.pick(kRowSettings);
      record.bob_setting = stream.pick(kColumnSettings);
      break;
  }

  StateVector state = source_state();
  const auto alice_obs = square(variant, Party::Alice).setting_observables(record.alice_setting);
  const auto bob_obs = square(variant, Party::Bob).setting_observables(record.bob_setting);
  record.alice_panels = PanelGrid(record.alice_setting, measure_triple(state, alice_obs, stream));
  record.bob_panels = PanelGrid(record.bob_setting, measure_triple(state, bob_obs, stream));
  return record;
}

std::size_t valid_outcome_index(const Triple &colors) {
  return (colors[0] == Color::Red ? 2u : 0u) + (colors[1] == Color::Red ? 1u : 0u);
}

// Projectors of one party's setting for every outcome triple, embedded on
// the full register. Index: [observable][0 for +1, 1 for -1].
using SettingProjectors = std::array<std::array<Matrix16, 2>, 3>;

SettingProjectors setting_projectors(Variant variant, Party party, Setting s) {
  const auto obs = square(variant, party).setting_observables(s);
  SettingProjectors out;
  for (std::size_t k = 0; k < 3; ++k) {
    const Matrix16 m = embed_observable(obs[k]);
    out[k][0] = projector(m, Outcome::Plus);
    out[k][1] = projector(m, Outcome::Minus);
  }
  return out;
}

Vector16 apply_triple(const SettingProjectors &p, unsigned triple, const Vector16 &v,
                      const std::array<int, 3> &order = {0, 1, 2}) {
  Vector16 out = v;
  for (int k : order) out = p[k][(triple >> k) & 1u] * out;
  return out;
}

}  // namespace

std::string_view to_string(Color c) { return c == Color::Red ? "red" : "green"; }

std::optional<Color> parse_color(std::string_view text) {
  if (text == "red") return Color::Red;
  if (text == "green") return Color::Green;
  return std::nullopt;
}

std::optional<Color> PanelGrid::at(Cell cell) const {
  if (const auto slot = slot_of(setting_, cell)) return colors_[*slot];
  return std::nullopt;
}

int PanelGrid::red_count() const {
  return static_cast<int>(std::count(colors_.begin(), colors_.end(), Color::Red));
}

bool verify_parity(const PanelGrid &grid, Setting setting, Variant variant) {
  if (grid.setting() != setting) return false;
  const bool odd = grid.red_count() % 2 == 1;
  return odd == (setting_sign(variant, setting) < 0);
}

bool verify_correlation(const PanelGrid &a, const PanelGrid &b) {
  for (const Cell &cell : common_panels(a.setting(), b.setting()))
    if (a.at(cell) != b.at(cell)) return false;
  return true;
}

std::string SettingPolicy::describe() const {
  switch (mode) {
    case Mode::UniformRandom: return "random";
    case Mode::RowsForAliceColsForBob: return "cleve";
    case Mode::Fixed: break;
  }
  auto side = [](const std::optional<Setting> &s) {
    return s ? std::string(to_string(*s)) : std::string("random");
  };
  return "fixed:" + side(alice) + ":" + side(bob);
}

std::optional<SettingPolicy> parse_policy(std::string_view text, bool allow_random_side) {
  if (text == "random") return SettingPolicy::uniform();
  if (text == "cleve") return SettingPolicy::rows_for_alice_cols_for_bob();
  constexpr std::string_view prefix = "fixed:";
  if (!text.starts_with(prefix)) return std::nullopt;
  text.remove_prefix(prefix.size());
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;

  SettingPolicy policy = SettingPolicy::fixed(std::nullopt, std::nullopt);
  const std::array<std::string_view, 2> sides = {text.substr(0, colon), text.substr(colon + 1)};
  const std::array<std::optional<Setting> *, 2> slots = {&policy.alice, &policy.bob};
  for (std::size_t k = 0; k < 2; ++k) {
    if (allow_random_side && sides[k] == "random") continue;
    const auto s = parse_setting(sides[k]);
    if (!s) return std::nullopt;
    *slots[k] = *s;
  }
  return policy;
}

std::uint64_t round_fingerprint(std::uint64_t seed, std::uint64_t round_index) {
  std::seed_seq seq{lo32(seed), hi32(seed), lo32(round_index), hi32(round_index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
}

RoundStream::RoundStream(std::uint64_t fingerprint) {
  std::seed_seq seq{lo32(fingerprint), hi32(fingerprint)};
  engine_.seed(seq);
}

double RoundStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Setting RoundStream::pick(std::span<const Setting> choices) {
  const std::uint64_t n = choices.size();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return choices[x % n];
}

RoundRecord run_round(const SettingPolicy &policy, Variant variant, std::uint64_t seed,
                      std::uint64_t round_index) {
  return simulate(policy, variant, round_fingerprint(seed, round_index), round_index);
}

RoundRecord replay_round(const SettingPolicy &policy, Variant variant, std::uint64_t fingerprint,
                         std::uint64_t round_index) {
  return simulate(policy, variant, fingerprint, round_index);
}

Triple outcome_colors(Setting setting, Variant variant, std::size_t index) {
  const Outcome o1 = index & 2u ? Outcome::Minus : Outcome::Plus;
  const Outcome o2 = index & 1u ? Outcome::Minus : Outcome::Plus;
  const Outcome o3 = outcome_from_sign(setting_sign(variant, setting) * value(o1) * value(o2));
  return {color_of(o1), color_of(o2), color_of(o3)};
}

void RoundTally::add(const RoundRecord &record, Variant variant) {
  ++rounds;
  const auto count = [&](std::array<SettingTally, 6> &tallies, const PanelGrid &grid, Setting s) {
    SettingTally &t = tallies[index_of(s)];
    ++t.uses;
    if (verify_parity(grid, s, variant)) {
      ++t.outcomes[valid_outcome_index(grid.colors())];
      return true;
    }
    ++t.invalid;
    return false;
  };
  const bool alice_ok = count(alice, record.alice_panels, record.alice_setting);
  const bool bob_ok = count(bob, record.bob_panels, record.bob_setting);
  parity_violations += static_cast<std::uint64_t>(!alice_ok) + static_cast<std::uint64_t>(!bob_ok);

  if (!common_panels(record.alice_setting, record.bob_setting).empty()) {
    ++rounds_with_common_panels;
    if (!verify_correlation(record.alice_panels, record.bob_panels)) ++correlation_violations;
  }
}

BatchReport run_batch(std::uint64_t rounds, const SettingPolicy &policy, Variant variant,
                      std::uint64_t seed, BatchOptions options) {
  if (rounds == 0) fail(ErrorCode::InvalidArgument, "a batch needs at least one round");

  // Make sure the cached squares exist before workers race to build them.
  (void)square(variant, Party::Alice);
  (void)setting_sign(variant, Setting::R1);

  std::vector<RoundRecord> records(rounds);
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, rounds));

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) records[i] = run_round(policy, variant, seed, i);
  };
  if (threads <= 1) {
    work(0, rounds);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (rounds + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min(rounds, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }

  BatchReport report;
  report.seed = seed;
  report.policy = policy;
  report.variant = variant;
  for (const RoundRecord &r : records) report.tally.add(r, variant);
  if (options.keep_records) report.records = std::move(records);
  return report;
}

JointDistribution joint_distribution(Setting alice, Setting bob, Variant variant, bool bob_first) {
  const SettingProjectors pa = setting_projectors(variant, Party::Alice, alice);
  const SettingProjectors pb = setting_projectors(variant, Party::Bob, bob);
  const Vector16 &psi = source_state().amplitudes();

  JointDistribution dist{};
  for (unsigned ta = 0; ta < 8; ++ta) {
    for (unsigned tb = 0; tb < 8; ++tb) {
      const Vector16 v = bob_first ? apply_triple(pa, ta, apply_triple(pb, tb, psi))
                                   : apply_triple(pb, tb, apply_triple(pa, ta, psi));
      dist[ta][tb] = clamp_probability(v.squaredNorm());
    }
  }
  return dist;
}

double no_signaling_check(Setting bob_setting, Variant variant) {
  const SettingProjectors pb = setting_projectors(variant, Party::Bob, bob_setting);
  const Vector16 &psi = source_state().amplitudes();

  TripleDistribution baseline{};
  for (unsigned tb = 0; tb < 8; ++tb) baseline[tb] = apply_triple(pb, tb, psi).squaredNorm();

  double deviation = 0.0;
  for (Setting a : kAllSettings) {
    const JointDistribution joint = joint_distribution(a, bob_setting, variant);
    for (unsigned tb = 0; tb < 8; ++tb) {
      double marginal = 0.0;
      for (unsigned ta = 0; ta < 8; ++ta) marginal += joint[ta][tb];
      deviation = std::max(deviation, std::abs(marginal - baseline[tb]));
    }
  }
  return deviation;
}

double triple_order_deviation(Setting setting, Party party, Variant variant) {
  const SettingProjectors p = setting_projectors(variant, party, setting);
  const Vector16 &psi = source_state().amplitudes();

  std::array<int, 3> order = {0, 1, 2};
  TripleDistribution reference{};
  for (unsigned t = 0; t < 8; ++t) reference[t] = apply_triple(p, t, psi, order).squaredNorm();

  double deviation = 0.0;
  while (std::next_permutation(order.begin(), order.end())) {
    for (unsigned t = 0; t < 8; ++t)
      deviation = std::max(deviation, std::abs(apply_triple(p, t, psi, order).squaredNorm() - reference[t]));
  }
  return deviation;
}

double party_order_deviation(Setting alice, Setting bob, Variant variant) {
  const JointDistribution a_first = joint_distribution(alice, bob, variant, false);
  const JointDistribution b_first = joint_distribution(alice, bob, variant, true);
  double deviation = 0.0;
  for (unsigned ta = 0; ta < 8; ++ta)
    for (unsigned tb = 0; tb < 8; ++tb)
      deviation = std::max(deviation, std::abs(a_first[ta][tb] - b_first[ta][tb]));
  return deviation;
}

double loss_probability(Setting alice, Setting bob, Variant variant) {
  const JointDistribution joint = joint_distribution(alice, bob, variant);
  const auto shared = common_panels(alice, bob);
  double loss = 0.0;
  for (unsigned ta = 0; ta < 8; ++ta) {
    for (unsigned tb = 0; tb < 8; ++tb) {
      bool match = true;
      for (const Cell &cell : shared) {
        const unsigned a_bit = (ta >> *slot_of(alice, cell)) & 1u;
        const unsigned b_bit = (tb >> *slot_of(bob, cell)) & 1u;
        match = match && a_bit == b_bit;
      }
      if (!match) loss += joint[ta][tb];
    }
  }
  return loss;
}

}  // namespace msq
