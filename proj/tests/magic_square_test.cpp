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

#include "gtest/gtest.h"

#include "errors.hpp"
#include "oracles.hpp"

using namespace msq;

namespace {

Pauli letter(char c) {
  switch (c) {
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: return Pauli::I;
  }
}

// Sign of the product of three operators, by explicit matrix arithmetic on
// the oracle's matrices. Returns 0 when the product is not +-identity.
int oracle_product_sign(int setting, const std::array<double, 9> &signs) {
  const auto cells = oracle::setting_cells(setting);
  oracle::Mat acc = oracle::cell_operator(cells[0], false, signs[static_cast<std::size_t>(cells[0])]);
  for (int k = 1; k < 3; ++k) {
    const oracle::Mat m = oracle::cell_operator(cells[static_cast<std::size_t>(k)], false,
                                                signs[static_cast<std::size_t>(cells[static_cast<std::size_t>(k)])]);
    oracle::Mat next = oracle::zeros(16);
    for (std::size_t i = 0; i < 16; ++i)
      for (std::size_t j = 0; j < 16; ++j)
        for (std::size_t l = 0; l < 16; ++l) next[i][j] += acc[i][l] * m[l][j];
    acc = next;
  }
  const oracle::C d = acc[0][0];
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j)
      if (std::abs(acc[i][j] - (i == j ? d : oracle::C{})) > 1e-12) return 0;
  if (std::abs(d - 1.0) < 1e-12) return 1;
  if (std::abs(d + 1.0) < 1e-12) return -1;
  return 0;
}

std::array<double, 9> signs_of(const SignMask &mask) {
  std::array<double, 9> s = oracle::unit_signs();
  for (const Cell &c : mask.cells()) s[static_cast<std::size_t>(c.row * 3 + c.col)] = -1;
  return s;
}

}  // namespace

TEST(magic_square, cells_match_reference_grid_for_both_parties) {
  for (Party party : {Party::Alice, Party::Bob}) {
    const MagicSquare sq = MagicSquare::standard(party);
    for (int k = 0; k < 9; ++k) {
      const char *l = oracle::square_letters()[static_cast<std::size_t>(k)];
      const Observable &obs = sq.cell(k / 3, k % 3);
      EXPECT_EQ(obs.first, letter(l[0]));
      EXPECT_EQ(obs.second, letter(l[1]));
      EXPECT_EQ(obs.sign, 1);
      EXPECT_EQ(obs.party, party);
    }
  }
}

TEST(magic_square, setting_observables_follow_lit_cells) {
  const MagicSquare &sq = square(Variant::Standard, Party::Alice);
  for (Setting s : kAllSettings) {
    const auto cells = setting_cells(s);
    const auto obs = sq.setting_observables(s);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(obs[k], sq.cell(cells[k].row, cells[k].col));
  }
  EXPECT_EQ(setting_cells(Setting::C2)[2], (Cell{2, 1}));
  EXPECT_EQ(setting_cells(Setting::R3)[0], (Cell{2, 0}));
}

TEST(magic_square, setting_names_round_trip) {
  for (Setting s : kAllSettings) EXPECT_EQ(parse_setting(to_string(s)), s);
  EXPECT_EQ(parse_setting("r1"), std::nullopt);
  EXPECT_EQ(parse_setting("R4"), std::nullopt);
  EXPECT_EQ(parse_variant("signed"), Variant::SignedSymmetric);
  EXPECT_EQ(parse_variant("standard"), Variant::Standard);
  EXPECT_EQ(parse_variant("other"), std::nullopt);
}

TEST(magic_square, common_panels_of_row_and_column_is_their_crossing) {
  EXPECT_EQ(common_panels(Setting::R2, Setting::C1), (std::vector<Cell>{{1, 0}}));
  EXPECT_EQ(common_panels(Setting::R1, Setting::R1).size(), 3u);
  EXPECT_TRUE(common_panels(Setting::R1, Setting::R2).empty());
  EXPECT_TRUE(common_panels(Setting::C1, Setting::C3).empty());
}

TEST(product_check, standard_rows_identity_columns_identity_except_last) {
  for (Party party : {Party::Alice, Party::Bob}) {
    const ProductReport r = product_check(MagicSquare::standard(party));
    for (Setting s : kAllSettings) {
      const int expected = s == Setting::C3 ? -1 : 1;
      EXPECT_EQ(r.sign(s), expected) << to_string(s);
      EXPECT_EQ(oracle_product_sign(static_cast<int>(index_of(s)), oracle::unit_signs()), expected);
    }
    EXPECT_LT(r.max_residual, kTolerance);
  }
}

TEST(product_check, signed_symmetric_rows_plus_columns_minus) {
  const ProductReport r = product_check(MagicSquare::make(Variant::SignedSymmetric, Party::Alice));
  const auto signs = signs_of(symmetric_last_row_mask());
  for (Setting s : kAllSettings) {
    const int expected = is_row(s) ? 1 : -1;
    EXPECT_EQ(r.sign(s), expected) << to_string(s);
    EXPECT_EQ(setting_sign(Variant::SignedSymmetric, s), expected);
    EXPECT_EQ(oracle_product_sign(static_cast<int>(index_of(s)), signs), expected);
  }
}

TEST(product_check, literal_last_row_mask_gives_asymmetric_columns) {
  const ProductReport r = product_check(MagicSquare::with_mask(Party::Alice, literal_last_row_mask()));
  const auto signs = signs_of(literal_last_row_mask());
  const std::array<int, 6> expected = {1, 1, 1, 1, -1, 1};
  for (Setting s : kAllSettings) {
    EXPECT_EQ(r.sign(s), expected[index_of(s)]) << to_string(s);
    EXPECT_EQ(oracle_product_sign(static_cast<int>(index_of(s)), signs), expected[index_of(s)]);
  }
}

TEST(product_check, only_one_last_row_pair_makes_signs_symmetric) {
  // Oracle: try all three pairs of last-row cells by brute force.
  std::vector<std::pair<int, int>> found;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      auto signs = oracle::unit_signs();
      signs[static_cast<std::size_t>(6 + a)] = signs[static_cast<std::size_t>(6 + b)] = -1;
      bool ok = true;
      for (int s = 0; s < 6; ++s) ok = ok && oracle_product_sign(s, signs) == (s < 3 ? 1 : -1);
      if (ok) found.emplace_back(a, b);
    }
  ASSERT_EQ(found.size(), 1u);
  const auto pairs = symmetric_last_row_pairs();
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first, (Cell{2, found[0].first}));
  EXPECT_EQ(pairs[0].second, (Cell{2, found[0].second}));
  EXPECT_EQ(symmetric_last_row_mask().cells(), (std::vector<Cell>{pairs[0].first, pairs[0].second}));
}

TEST(product_check, corrupted_cell_is_not_scalar) {
  const MagicSquare bad =
      MagicSquare::standard(Party::Alice).replaced({0, 0}, Observable{Pauli::X, Pauli::I, 1, Party::Alice});
  try {
    product_check(bad);
    FAIL() << "expected NotScalar";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotScalar);
  }
}

TEST(commutation, cells_on_a_line_commute_and_parties_commute) {
  const MagicSquare &a = square(Variant::Standard, Party::Alice);
  const MagicSquare &b = square(Variant::Standard, Party::Bob);
  for (Setting s : kAllSettings) {
    const auto obs = a.setting_observables(s);
    for (const auto &x : obs)
      for (const auto &y : obs) EXPECT_LT(commutator_norm(x, y), kTolerance);
  }
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) EXPECT_LT(commutator_norm(a.cell(i / 3, i % 3), b.cell(j / 3, j % 3)), kTolerance);
  // ZI and XI share no line.
  EXPECT_FALSE(commutes(a.cell(0, 1), a.cell(1, 0)));
}

TEST(eigenbasis, first_row_is_computational_basis) {
  const SettingEigenbasis basis = simultaneous_eigenbasis(square(Variant::Standard, Party::Alice), Setting::R1);
  // (o1, o2) lexicographic with + first. o1 belongs to IZ (second qubit),
  // o2 to ZI (first qubit); the vector index is first*2 + second.
  const std::array<int, 4> expected_index = {0b00, 0b10, 0b01, 0b11};
  for (std::size_t k = 0; k < 4; ++k) {
    const Vector4 &v = basis.vectors[k].coefficients;
    for (int i = 0; i < 4; ++i) {
      const Complex want = i == expected_index[k] ? Complex(1.0, 0.0) : Complex{};
      EXPECT_LT(std::abs(v(i) - want), 1e-12) << k << " " << i;
    }
  }
  EXPECT_EQ(basis.vectors[1].eigenvalues[0], Outcome::Plus);
  EXPECT_EQ(basis.vectors[1].eigenvalues[1], Outcome::Minus);
  EXPECT_EQ(basis.vectors[1].eigenvalues[2], Outcome::Minus);
}

TEST(eigenbasis, every_setting_is_orthonormal_complete_and_consistent) {
  for (Variant variant : {Variant::Standard, Variant::SignedSymmetric}) {
    const MagicSquare &sq = square(variant, Party::Alice);
    for (Setting s : kAllSettings) {
      const SettingEigenbasis basis = simultaneous_eigenbasis(sq, s);
      const auto obs = sq.setting_observables(s);
      Matrix4 completeness = Matrix4::Zero();
      for (std::size_t i = 0; i < 4; ++i) {
        const Vector4 &vi = basis.vectors[i].coefficients;
        for (std::size_t j = 0; j < 4; ++j) {
          const Complex g = vi.dot(basis.vectors[j].coefficients);
          EXPECT_LT(std::abs(g - (i == j ? 1.0 : 0.0)), 1e-12);
        }
        completeness += vi * vi.adjoint();
        for (std::size_t k = 0; k < 3; ++k) {
          const Vector4 mv = local_matrix(obs[k]) * vi;
          EXPECT_LT((mv - static_cast<double>(value(basis.vectors[i].eigenvalues[k])) * vi).norm(), 1e-12);
        }
        EXPECT_EQ(value(basis.vectors[i].eigenvalues[2]),
                  setting_sign(variant, s) * value(basis.vectors[i].eigenvalues[0]) *
                      value(basis.vectors[i].eigenvalues[1]));
        // Phase convention: first non-negligible coefficient is real positive.
        for (int c = 0; c < 4; ++c) {
          if (std::abs(vi(c)) > 1e-9) {
            EXPECT_GT(vi(c).real(), 0.0);
            EXPECT_LT(std::abs(vi(c).imag()), 1e-12);
            break;
          }
        }
      }
      EXPECT_LT((completeness - Matrix4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(eigenbasis, last_column_vectors_are_maximally_entangled) {
  const SettingEigenbasis basis = simultaneous_eigenbasis(square(Variant::Standard, Party::Alice), Setting::C3);
  for (const EigenVector &ev : basis.vectors) {
    // Coefficient matrix C[a][b] for |ab>; maximal entanglement means
    // C C^dagger = I/2.
    Eigen::Matrix2cd c;
    c << ev.coefficients(0), ev.coefficients(1), ev.coefficients(2), ev.coefficients(3);
    EXPECT_LT((c * c.adjoint() - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(decomposition, reconstructs_source_for_every_setting_with_real_coefficients) {
  for (Variant variant : {Variant::Standard, Variant::SignedSymmetric})
    for (Setting s : kAllSettings) {
      const DecompositionCheck d = biorthogonal_decomposition_check(s, variant);
      EXPECT_LT(d.reconstruction_error, 1e-12) << to_string(s);
      EXPECT_LT(d.max_imaginary, 1e-12) << to_string(s);
    }
}

TEST(decomposition, independent_reconstruction_from_eigenvectors) {
  // amplitude(b1,b2,b3,b4) = 1/2 sum_k psi_k[b1 b3] conj(psi_k[b2 b4]), checked
  // here against the oracle source directly.
  const oracle::Vec src = oracle::source_state();
  for (Setting s : kAllSettings) {
    const SettingEigenbasis basis = simultaneous_eigenbasis(square(Variant::Standard, Party::Alice), s);
    for (std::size_t idx = 0; idx < 16; ++idx) {
      const int b1 = oracle::bit(idx, 1), b2 = oracle::bit(idx, 2), b3 = oracle::bit(idx, 3), b4 = oracle::bit(idx, 4);
      Complex sum{};
      for (const EigenVector &ev : basis.vectors)
        sum += ev.coefficients(b1 * 2 + b3) * std::conj(ev.coefficients(b2 * 2 + b4));
      EXPECT_LT(std::abs(0.5 * sum - src[idx]), 1e-12);
    }
  }
}
