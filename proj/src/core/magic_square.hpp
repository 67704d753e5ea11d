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

#ifndef MSQ_CORE_MAGIC_SQUARE_HPP
#define MSQ_CORE_MAGIC_SQUARE_HPP

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "quantum_core.hpp"

namespace msq {

/// Detector switch positions: rows top to bottom, columns left to right.
enum class Setting : std::uint8_t { R1, R2, R3, C1, C2, C3 };

inline constexpr std::array<Setting, 6> kAllSettings = {Setting::R1, Setting::R2, Setting::R3,
                                                       Setting::C1, Setting::C2, Setting::C3};
inline constexpr std::array<Setting, 3> kRowSettings = {Setting::R1, Setting::R2, Setting::R3};
inline constexpr std::array<Setting, 3> kColumnSettings = {Setting::C1, Setting::C2, Setting::C3};

constexpr std::size_t index_of(Setting s) { return static_cast<std::size_t>(s); }
constexpr bool is_row(Setting s) { return index_of(s) < 3; }
/// Row index for R-settings, column index for C-settings (0-based).
constexpr int line_of(Setting s) { return static_cast<int>(index_of(s) % 3); }

std::string_view to_string(Setting s);
std::optional<Setting> parse_setting(std::string_view text);

/// A panel position, 0-based. Serialized forms are 1-based.
struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell &, const Cell &) = default;
};

/// Lit panels of a setting in measurement order (rows left to right,
/// columns top to bottom).
std::array<Cell, 3> setting_cells(Setting s);

/// Position of `cell` within the setting's triple, if lit.
std::optional<int> slot_of(Setting s, Cell cell);

/// Panels lit on both detectors, in row-major order.
std::vector<Cell> common_panels(Setting a, Setting b);

enum class Variant : std::uint8_t { Standard, SignedSymmetric };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

/// Per-cell sign flips applied on top of the standard square.
class SignMask {
 public:
  constexpr SignMask() = default;
  static SignMask of(std::initializer_list<Cell> cells);

  bool negated(Cell c) const { return bits_ >> (c.row * 3 + c.col) & 1u; }
  unsigned bits() const { return bits_; }
  std::vector<Cell> cells() const;

  friend bool operator==(const SignMask &, const SignMask &) = default;

 private:
  unsigned bits_ = 0;
};

/// Negates the second and third cells of the last row, read literally.
SignMask literal_last_row_mask();

/// Negates the first and second cells of the last row. This is the last-row
/// pair that makes every row product +I and every column product -I.
SignMask symmetric_last_row_mask();

class MagicSquare {
 public:
  /// Standard grid with no sign flips.
  static MagicSquare standard(Party party);
  /// Standard grid with `mask` applied; the caller is responsible for
  /// interpreting the resulting products.
  static MagicSquare with_mask(Party party, SignMask mask);
  /// Grid for a named variant. SignedSymmetric is validated with
  /// product_check and throws Internal if the products are not symmetric.
  static MagicSquare make(Variant variant, Party party);

  const Observable &cell(int row, int col) const { return cells_[row * 3 + col]; }
  /// Copy with one cell replaced; used to probe corrupted squares.
  MagicSquare replaced(Cell at, const Observable &obs) const;
  Party party() const { return party_; }
  Variant variant() const { return variant_; }
  const SignMask &mask() const { return mask_; }

  std::array<Observable, 3> setting_observables(Setting s) const;

 private:
  MagicSquare() = default;
  std::array<Observable, 9> cells_{};
  Party party_ = Party::Alice;
  Variant variant_ = Variant::Standard;
  SignMask mask_;
};

/// Cached, validated squares for the two named variants.
const MagicSquare &square(Variant variant, Party party);

struct ProductReport {
  std::array<int, 6> signs{};
  double max_residual = 0.0;

  int sign(Setting s) const { return signs[index_of(s)]; }
};

/// Multiplies each setting's three embedded matrices; every product must be
/// +I or -I within kTolerance. Throws NotScalar otherwise.
ProductReport product_check(const MagicSquare &sq);

/// Required product sign of a setting under a named variant.
int setting_sign(Variant variant, Setting s);

/// The last-row cell pairs whose negation yields rows +I and columns -I.
std::vector<std::pair<Cell, Cell>> symmetric_last_row_pairs();

struct EigenVector {
  std::array<Outcome, 3> eigenvalues{};
  Vector4 coefficients;  // (a, b, c, d) on |00>, |01>, |10>, |11>
};

struct SettingEigenbasis {
  Setting setting = Setting::R1;
  std::array<EigenVector, 4> vectors;
};

/// Joint eigenvectors from products of projectors. Eigenvalue triples are
/// enumerated as (o1, o2) = (+,+), (+,-), (-,+), (-,-) with o3 fixed by the
/// setting's product sign. Each vector's first non-negligible coefficient is
/// made real and positive.
SettingEigenbasis simultaneous_eigenbasis(const MagicSquare &sq, Setting s);

struct DecompositionCheck {
  double reconstruction_error = 0.0;
  double max_imaginary = 0.0;
};

/// Rebuilds the source state as (1/2) sum_i |psi_i>_A |phi_i>_B, where the
/// psi_i are Alice's eigenbasis for `s` and phi_i carries the conjugated
/// coefficients on Bob's qubits.
DecompositionCheck biorthogonal_decomposition_check(Setting s, Variant variant = Variant::Standard);

}  // namespace msq

#endif  // MSQ_CORE_MAGIC_SQUARE_HPP
