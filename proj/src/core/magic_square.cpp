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

#include "magic_square.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace msq {

namespace {

constexpr std::array<std::string_view, 6> kSettingNames = {"R1", "R2", "R3", "C1", "C2", "C3"};

// Row-major cells of the standard square, as (first, second) factors.
constexpr std::array<std::pair<Pauli, Pauli>, 9> kStandardCells = {{
    {Pauli::I, Pauli::Z}, {Pauli::Z, Pauli::I}, {Pauli::Z, Pauli::Z},
    {Pauli::X, Pauli::I}, {Pauli::I, Pauli::X}, {Pauli::X, Pauli::X},
    {Pauli::X, Pauli::Z}, {Pauli::Z, Pauli::X}, {Pauli::Y, Pauli::Y},
}};

// Coefficients smaller than this are treated as zero when fixing the phase.
constexpr double kPhaseThreshold = 1e-9;

bool symmetric_signs(const ProductReport &r) {
  for (Setting s : kRowSettings)
    if (r.sign(s) != 1) return false;
  for (Setting s : kColumnSettings)
    if (r.sign(s) != -1) return false;
  return true;
}

}  // namespace

std::string_view to_string(Setting s) { return kSettingNames[index_of(s)]; }

std::optional<Setting> parse_setting(std::string_view text) {
  for (Setting s : kAllSettings)
    if (kSettingNames[index_of(s)] == text) return s;
  return std::nullopt;
}

std::array<Cell, 3> setting_cells(Setting s) {
  const int k = line_of(s);
  if (is_row(s)) return {Cell{k, 0}, Cell{k, 1}, Cell{k, 2}};
  return {Cell{0, k}, Cell{1, k}, Cell{2, k}};
}

std::optional<int> slot_of(Setting s, Cell cell) {
  const auto cells = setting_cells(s);
  for (int i = 0; i < 3; ++i)
    if (cells[i] == cell) return i;
  return std::nullopt;
}

std::vector<Cell> common_panels(Setting a, Setting b) {
  std::vector<Cell> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (slot_of(a, {r, c}) && slot_of(b, {r, c})) out.push_back({r, c});
  return out;
}

std::string_view to_string(Variant v) { return v == Variant::Standard ? "standard" : "signed"; }

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "standard") return Variant::Standard;
  if (text == "signed") return Variant::SignedSymmetric;
  return std::nullopt;
}

SignMask SignMask::of(std::initializer_list<Cell> cells) {
  SignMask m;
  for (const Cell &c : cells) m.bits_ |= 1u << (c.row * 3 + c.col);
  return m;
}

std::vector<Cell> SignMask::cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (negated({r, c})) out.push_back({r, c});
  return out;
}

SignMask literal_last_row_mask() { return SignMask::of({{2, 1}, {2, 2}}); }
SignMask symmetric_last_row_mask() { return SignMask::of({{2, 0}, {2, 1}}); }

MagicSquare MagicSquare::standard(Party party) { return with_mask(party, SignMask{}); }

MagicSquare MagicSquare::with_mask(Party party, SignMask mask) {
  MagicSquare sq;
  sq.party_ = party;
  sq.mask_ = mask;
  sq.variant_ = mask == symmetric_last_row_mask() ? Variant::SignedSymmetric : Variant::Standard;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const auto [first, second] = kStandardCells[r * 3 + c];
      sq.cells_[r * 3 + c] = Observable{first, second, mask.negated({r, c}) ? -1 : 1, party};
    }
  }
  return sq;
}

MagicSquare MagicSquare::make(Variant variant, Party party) {
  if (variant == Variant::Standard) return standard(party);
  MagicSquare sq = with_mask(party, symmetric_last_row_mask());
  if (!symmetric_signs(product_check(sq)))
    fail(ErrorCode::Internal, "signed square does not have symmetric products");
  return sq;
}

MagicSquare MagicSquare::replaced(Cell at, const Observable &obs) const {
  MagicSquare copy = *this;
  copy.cells_[at.row * 3 + at.col] = obs;
  return copy;
}

std::array<Observable, 3> MagicSquare::setting_observables(Setting s) const {
  const auto cells = setting_cells(s);
  return {cell(cells[0].row, cells[0].col), cell(cells[1].row, cells[1].col),
          cell(cells[2].row, cells[2].col)};
}

const MagicSquare &square(Variant variant, Party party) {
  static const std::array<MagicSquare, 4> cache = {
      MagicSquare::make(Variant::Standard, Party::Alice),
      MagicSquare::make(Variant::Standard, Party::Bob),
      MagicSquare::make(Variant::SignedSymmetric, Party::Alice),
      MagicSquare::make(Variant::SignedSymmetric, Party::Bob),
  };
  return cache[static_cast<std::size_t>(variant) * 2 + static_cast<std::size_t>(party)];
}

ProductReport product_check(const MagicSquare &sq) {
  ProductReport report;
  for (Setting s : kAllSettings) {
    const auto obs = sq.setting_observables(s);
    const Matrix16 p = embed_observable(obs[0]) * embed_observable(obs[1]) * embed_observable(obs[2]);
    const int sign = p(0, 0).real() >= 0.0 ? 1 : -1;
    const double residual =
        (p - static_cast<double>(sign) * Matrix16::Identity()).cwiseAbs().maxCoeff();
    if (residual > kTolerance)
      fail(ErrorCode::NotScalar, "product of setting observables is not +I or -I",
           std::string(to_string(s)));
    report.signs[index_of(s)] = sign;
    report.max_residual = std::max(report.max_residual, residual);
  }
  return report;
}

int setting_sign(Variant variant, Setting s) {
  static const std::array<ProductReport, 2> reports = {
      product_check(square(Variant::Standard, Party::Alice)),
      product_check(square(Variant::SignedSymmetric, Party::Alice)),
  };
  return reports[static_cast<std::size_t>(variant)].sign(s);
}

std::vector<std::pair<Cell, Cell>> symmetric_last_row_pairs() {
  std::vector<std::pair<Cell, Cell>> out;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const Cell ca{2, a};
      const Cell cb{2, b};
      if (symmetric_signs(product_check(MagicSquare::with_mask(Party::Alice, SignMask::of({ca, cb})))))
        out.emplace_back(ca, cb);
    }
  }
  return out;
}

SettingEigenbasis simultaneous_eigenbasis(const MagicSquare &sq, Setting s) {
  const auto obs = sq.setting_observables(s);
  const std::array<Matrix4, 3> m = {local_matrix(obs[0]), local_matrix(obs[1]), local_matrix(obs[2])};
  const Matrix4 product = m[0] * m[1] * m[2];
  const int sign = product(0, 0).real() >= 0.0 ? 1 : -1;

  SettingEigenbasis basis;
  basis.setting = s;
  std::size_t i = 0;
  for (Outcome o1 : {Outcome::Plus, Outcome::Minus}) {
    for (Outcome o2 : {Outcome::Plus, Outcome::Minus}) {
      const Outcome o3 = outcome_from_sign(sign * value(o1) * value(o2));
      const Matrix4 p = projector(m[0], o1) * projector(m[1], o2) * projector(m[2], o3);

      Eigen::Index best = 0;
      p.colwise().norm().maxCoeff(&best);
      Vector4 v = p.col(best);
      const double n = v.norm();
      if (n < kPhaseThreshold)
        fail(ErrorCode::Internal, "empty joint eigenspace", std::string(to_string(s)));
      v /= n;
      for (Eigen::Index k = 0; k < 4; ++k) {
        if (std::abs(v(k)) > kPhaseThreshold) {
          v *= std::conj(v(k)) / std::abs(v(k));
          break;
        }
      }
      basis.vectors[i++] = EigenVector{{o1, o2, o3}, v};
    }
  }
  return basis;
}

DecompositionCheck biorthogonal_decomposition_check(Setting s, Variant variant) {
  const SettingEigenbasis basis = simultaneous_eigenbasis(square(variant, Party::Alice), s);

  DecompositionCheck check;
  Vector16 rebuilt = Vector16::Zero();
  for (const EigenVector &psi : basis.vectors) {
    for (Eigen::Index k = 0; k < 4; ++k)
      check.max_imaginary = std::max(check.max_imaginary, std::abs(psi.coefficients(k).imag()));
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2)
        for (int b3 = 0; b3 < 2; ++b3)
          for (int b4 = 0; b4 < 2; ++b4) {
            const Complex alice = psi.coefficients(b1 * 2 + b3);
            const Complex bob = std::conj(psi.coefficients(b2 * 2 + b4));
            rebuilt(static_cast<Eigen::Index>(basis_index(b1, b2, b3, b4))) += 0.5 * alice * bob;
          }
  }
  check.reconstruction_error = (rebuilt - source_state().amplitudes()).norm();
  return check;
}

}  // namespace msq
