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

// Brute-force reference computations used only by tests. None of these call
// into the library's linear algebra; they rebuild everything from explicit
// index arithmetic so they can check it.

#ifndef MSQ_TESTS_ORACLES_HPP
#define MSQ_TESTS_ORACLES_HPP

#include <array>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;
using Vec = std::vector<C>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<C>(n, C{})); }

inline Mat pauli(char p) {
  const C i{0, 1};
  switch (p) {
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, -i}, {i, 0}};
    case 'Z': return {{1, 0}, {0, -1}};
    default: return {{1, 0}, {0, 1}};
  }
}

inline Mat kron(const Mat &a, const Mat &b) {
  const std::size_t na = a.size(), nb = b.size();
  Mat out = zeros(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return out;
}

/// Operator on qubits 1..4 from per-qubit Pauli letters, qubit 1 leftmost.
inline Mat four_qubit(const std::array<char, 4> &letters, double sign = 1.0) {
  Mat m = kron(kron(kron(pauli(letters[0]), pauli(letters[1])), pauli(letters[2])), pauli(letters[3]));
  for (auto &row : m)
    for (auto &x : row) x *= sign;
  return m;
}

inline Vec mat_vec(const Mat &m, const Vec &v) {
  Vec out(v.size(), C{});
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Vec source_state() {
  Vec v(16, C{});
  v[0b0000] = v[0b1100] = v[0b0011] = v[0b1111] = 0.5;
  return v;
}

inline int bit(std::size_t index, int qubit) { return static_cast<int>((index >> (4 - qubit)) & 1u); }

/// Reduced density operator on qubits (qa, qb) by explicit partial trace.
inline Mat reduced_density(const Vec &psi, int qa, int qb) {
  Mat rho = zeros(4);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) {
      bool same_rest = true;
      for (int q = 1; q <= 4; ++q)
        if (q != qa && q != qb && bit(i, q) != bit(j, q)) same_rest = false;
      if (!same_rest) continue;
      const std::size_t r = static_cast<std::size_t>(bit(i, qa) * 2 + bit(i, qb));
      const std::size_t c = static_cast<std::size_t>(bit(j, qa) * 2 + bit(j, qb));
      rho[r][c] += psi[i] * std::conj(psi[j]);
    }
  return rho;
}

/// Random normalized four-qubit state.
inline Vec random_state(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Vec v(16);
  double n = 0;
  for (auto &x : v) {
    x = C{g(rng), g(rng)};
    n += std::norm(x);
  }
  for (auto &x : v) x /= std::sqrt(n);
  return v;
}

/// The reference square as two-letter Pauli strings, row-major.
inline const std::array<const char *, 9> &square_letters() {
  static const std::array<const char *, 9> cells = {"IZ", "ZI", "ZZ", "XI", "IX", "XX", "XZ", "ZX", "YY"};
  return cells;
}

/// Row-major cell indices lit by setting 0..5 (R1..R3, C1..C3).
inline std::array<int, 3> setting_cells(int setting) {
  if (setting < 3) return {setting * 3, setting * 3 + 1, setting * 3 + 2};
  const int c = setting - 3;
  return {c, 3 + c, 6 + c};
}

/// Four-qubit operator for one cell. Alice holds qubits 1 and 3, Bob 2 and 4.
inline Mat cell_operator(int cell, bool bob, double sign = 1.0) {
  const char *l = square_letters()[static_cast<std::size_t>(cell)];
  std::array<char, 4> letters = {'I', 'I', 'I', 'I'};
  letters[bob ? 1 : 0] = l[0];
  letters[bob ? 3 : 2] = l[1];
  return four_qubit(letters, sign);
}

/// (I + o M) / 2.
inline Mat projector(const Mat &m, int o) {
  Mat p = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) p[i][j] = (static_cast<double>(i == j) + static_cast<double>(o) * m[i][j]) / 2.0;
  return p;
}

/// P(alice triple ta, bob triple tb) on the source, bit k of a triple set
/// meaning the k-th lit cell reads -1.
inline double joint_probability(int alice_setting, unsigned ta, int bob_setting, unsigned tb,
                                const std::array<double, 9> &signs) {
  Vec v = source_state();
  const auto ca = setting_cells(alice_setting);
  const auto cb = setting_cells(bob_setting);
  for (int k = 0; k < 3; ++k) {
    const int cell = ca[static_cast<std::size_t>(k)];
    v = mat_vec(projector(cell_operator(cell, false, signs[static_cast<std::size_t>(cell)]), (ta >> k) & 1u ? -1 : 1), v);
  }
  for (int k = 0; k < 3; ++k) {
    const int cell = cb[static_cast<std::size_t>(k)];
    v = mat_vec(projector(cell_operator(cell, true, signs[static_cast<std::size_t>(cell)]), (tb >> k) & 1u ? -1 : 1), v);
  }
  double p = 0;
  for (const C &x : v) p += std::norm(x);
  return p;
}

inline std::array<double, 9> unit_signs() { return {1, 1, 1, 1, 1, 1, 1, 1, 1}; }

}  // namespace oracle

#endif  // MSQ_TESTS_ORACLES_HPP
