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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "classical_analysis.hpp"
#include "experiment.hpp"
#include "magic_square.hpp"

#ifndef MSQ_CLI_PATH
#error "MSQ_CLI_PATH must point at the msq executable"
#endif

using namespace msq;

namespace {

struct Outcome_ {
  bool passed;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

// Shared between the two rule criteria.
const BatchReport &uniform_batch() {
  static const BatchReport batch = run_batch(10000, SettingPolicy::uniform(), Variant::Standard, 20261018);
  return batch;
}

Outcome_ rule_one() {
  const auto start = Clock::now();
  const BatchReport &b = uniform_batch();
  const double t = seconds_since(start);
  std::uint64_t uses = 0;
  for (Setting s : kAllSettings) uses += b.tally.alice[index_of(s)].uses + b.tally.bob[index_of(s)].uses;
  const bool ok = b.tally.parity_violations == 0 && uses == 20000 && t < 10.0;
  return {ok, "10000 rounds, " + std::to_string(b.tally.parity_violations) + " parity violations, " + fmt(t) + " s"};
}

Outcome_ rule_two() {
  const BatchReport &b = uniform_batch();
  std::uint64_t mismatches = 0;
  for (const RoundRecord &r : b.records)
    for (const Cell &c : common_panels(r.alice_setting, r.bob_setting))
      mismatches += r.alice_panels.at(c) != r.bob_panels.at(c);
  const bool ok = mismatches == 0 && b.tally.correlation_violations == 0 && b.tally.rounds_with_common_panels > 0;
  return {ok, std::to_string(b.tally.rounds_with_common_panels) + " overlapping rounds, " + std::to_string(mismatches) +
                  " mismatched panels"};
}

Outcome_ frequency() {
  constexpr std::uint64_t n = 10000;
  const double se = std::sqrt(0.25 * 0.75 / static_cast<double>(n));
  double worst_z = 0.0;
  bool ok = true;
  for (Setting s : kAllSettings) {
    const BatchReport b = run_batch(n, SettingPolicy::fixed(s, s), Variant::Standard, 1000 + index_of(s), {false, 0});
    for (const SettingTally *t : {&b.tally.alice[index_of(s)], &b.tally.bob[index_of(s)]}) {
      ok = ok && t->uses == n && t->invalid == 0;
      for (std::uint64_t c : t->outcomes) {
        const double z = std::abs(static_cast<double>(c) / static_cast<double>(n) - 0.25) / se;
        worst_z = std::max(worst_z, z);
      }
    }
  }
  ok = ok && worst_z < 5.0;
  return {ok, "6 settings x 2 parties x 10000 rounds, worst deviation " + fmt(worst_z) + " SE"};
}

Outcome_ operator_identities() {
  const auto start = Clock::now();
  const ProductReport r = product_check(MagicSquare::standard(Party::Alice));
  const std::array<int, 6> expected = {1, 1, 1, 1, 1, -1};
  bool ok = r.signs == expected && r.max_residual < 1e-12;
  double worst_commutator = 0.0;
  for (Party p : {Party::Alice, Party::Bob}) {
    const MagicSquare &sq = square(Variant::Standard, p);
    for (Setting s : kAllSettings) {
      const auto obs = sq.setting_observables(s);
      for (const auto &a : obs)
        for (const auto &b : obs) {
          worst_commutator = std::max(worst_commutator, commutator_norm(a, b));
          ok = ok && commutes(a, b);
        }
    }
  }
  const double t = seconds_since(start);
  ok = ok && worst_commutator < 1e-12 && t < 1.0;
  std::string signs;
  for (int s : r.signs) signs += s > 0 ? '+' : '-';
  return {ok, "signs " + signs + ", residual " + fmt(r.max_residual) + ", commutator " + fmt(worst_commutator) + ", " +
                  fmt(t) + " s"};
}

Outcome_ decomposition() {
  double err = 0.0, imag = 0.0;
  for (Setting s : kAllSettings) {
    const DecompositionCheck d = biorthogonal_decomposition_check(s);
    err = std::max(err, d.reconstruction_error);
    imag = std::max(imag, d.max_imaginary);
  }
  return {err < 1e-12 && imag < 1e-12, "max reconstruction error " + fmt(err) + ", max imaginary " + fmt(imag)};
}

Outcome_ impossibility() {
  const ColoringCensus c = enumerate_colorings(Variant::Standard);
  const bool ok = c.total == 512 && c.fully_satisfying == 0 && c.max_satisfied == 5;
  return {ok, std::to_string(c.fully_satisfying) + " of " + std::to_string(c.total) + " colorings, max satisfied " +
                  std::to_string(c.max_satisfied)};
}

// Second exhaustive search, through explicit strategies and the generic
// scoring route rather than packed bitmasks.
std::uint64_t strategy_search_three_by_three() {
  std::vector<Triple> row_answers[3], col_answers[3];
  for (Setting s : kAllSettings)
    for (std::size_t k = 0; k < 4; ++k) {
      const Triple t = outcome_colors(s, Variant::Standard, k);
      (is_row(s) ? row_answers : col_answers)[line_of(s)].push_back(t);
    }
  std::uint64_t best = 0;
  for (int a = 0; a < 64; ++a) {
    DeterministicStrategy alice{Party::Alice, {}};
    for (int r = 0; r < 3; ++r) alice.answers[static_cast<std::size_t>(r)] = row_answers[r][static_cast<std::size_t>((a >> (2 * r)) & 3)];
    for (int b = 0; b < 64; ++b) {
      DeterministicStrategy bob{Party::Bob, {}};
      for (int c = 0; c < 3; ++c) bob.answers[static_cast<std::size_t>(3 + c)] = col_answers[c][static_cast<std::size_t>((b >> (2 * c)) & 3)];
      best = std::max(best, strategy_wins(Game::ThreeByThree, alice, bob));
    }
  }
  return best;
}

Outcome_ game_values() {
  const auto start = Clock::now();
  const GameValueReport three = classical_game_value(Game::ThreeByThree, Variant::Standard);
  const std::uint64_t second = strategy_search_three_by_three();
  const Fraction climbed = hill_climb_game_value(Game::ThreeByThree, Variant::Standard, 1, 100);
  const GameValueReport six = classical_game_value(Game::SixBySix, Variant::Standard);
  const BatchReport cleve =
      run_batch(100000, SettingPolicy::rows_for_alice_cols_for_bob(), Variant::Standard, 4242, {false, 0});
  const std::uint64_t losses = cleve.tally.correlation_violations + cleve.tally.parity_violations;
  const Fraction quantum = quantum_game_value(Game::ThreeByThree, Variant::Standard);
  const double t = seconds_since(start);
  const bool ok = three.classical_value.wins == 8 && three.classical_value.total == 9 && second == 8 &&
                  climbed == three.classical_value && quantum.wins == quantum.total && losses == 0 &&
                  cleve.tally.rounds_with_common_panels == 100000 && t < 60.0;
  return {ok, "3x3 classical " + three.classical_value.str() + " (strategy search " + std::to_string(second) +
                  "/9, hill climb " + climbed.str() + "), 6x6 classical " + six.classical_value.str() + ", " +
                  std::to_string(losses) + " losses in 100000 rounds, " + fmt(t) + " s"};
}

Outcome_ no_signaling_and_order() {
  double worst = 0.0;
  for (Setting b : kAllSettings) worst = std::max(worst, no_signaling_check(b, Variant::Standard));
  for (Setting s : kAllSettings) {
    worst = std::max(worst, triple_order_deviation(s, Party::Alice, Variant::Standard));
    worst = std::max(worst, triple_order_deviation(s, Party::Bob, Variant::Standard));
    for (Setting b : kAllSettings) worst = std::max(worst, party_order_deviation(s, b, Variant::Standard));
  }
  return {worst < 1e-12, "max deviation " + fmt(worst)};
}

std::string capture(const std::string &command, int &status) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[65536];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe.get())) > 0) out.append(buf, n);
  status = pclose(pipe.release());
  return out;
}

Outcome_ determinism() {
  const std::string cmd = std::string("\"") + MSQ_CLI_PATH + "\" run --rounds 1000 --seed 42 --format json";
  int s1 = 0, s2 = 0;
  const std::string a = capture(cmd, s1);
  const std::string b = capture(cmd, s2);
  const bool ok = s1 == 0 && s2 == 0 && !a.empty() && a == b;
  return {ok, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different") + ", exit " +
                  std::to_string(s1) + "/" + std::to_string(s2)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome_()>>> criteria = {
      {"rule-1-parity", rule_one},
      {"rule-2-correlation", rule_two},
      {"frequency", frequency},
      {"operator-identities", operator_identities},
      {"decomposition", decomposition},
      {"impossibility", impossibility},
      {"game-values", game_values},
      {"no-signaling-order", no_signaling_and_order},
      {"determinism", determinism},
  };
  int failures = 0;
  for (const auto &[name, run] : criteria) {
    Outcome_ o{false, ""};
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
