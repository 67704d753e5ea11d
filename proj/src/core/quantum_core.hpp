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

#ifndef MSQ_CORE_QUANTUM_CORE_HPP
#define MSQ_CORE_QUANTUM_CORE_HPP

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace msq {

/// Single tolerance for every algebraic comparison in the library.
inline constexpr double kTolerance = 1e-12;

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;
using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
using Vector4 = Eigen::Matrix<Complex, 4, 1>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

// Index convention for the four-qubit register: the flat index of basis
// state |b1 b2 b3 b4> is b1*8 + b2*4 + b3*2 + b4, i.e. qubit 1 is the most
// significant bit. A party's two-qubit space uses the same rule, with the
// party's first qubit as the high bit. Nothing else in the code base is
// allowed to assume an ordering.
constexpr int qubit_bit(int qubit) { return 4 - qubit; }

constexpr std::size_t basis_index(int b1, int b2, int b3, int b4) {
  return static_cast<std::size_t>((b1 << 3) | (b2 << 2) | (b3 << 1) | b4);
}

enum class Pauli : std::uint8_t { I, X, Y, Z };

const Matrix2 &pauli_matrix(Pauli p);
char pauli_char(Pauli p);

enum class Party : std::uint8_t { Alice, Bob };

/// Alice holds qubits (1, 3), Bob holds (2, 4).
constexpr std::array<int, 2> party_qubits(Party party) {
  return party == Party::Alice ? std::array<int, 2>{1, 3} : std::array<int, 2>{2, 4};
}

const char *party_name(Party party);

/// A measured eigenvalue. Kept as an exact integer so parity products never
/// touch floating point.
enum class Outcome : std::int8_t { Plus = 1, Minus = -1 };

constexpr int value(Outcome o) { return static_cast<int>(o); }
constexpr Outcome outcome_from_sign(int sign) { return sign > 0 ? Outcome::Plus : Outcome::Minus; }

/// sign * (first on the party's first qubit) (x) (second on its second qubit).
struct Observable {
  Pauli first = Pauli::I;
  Pauli second = Pauli::I;
  int sign = 1;
  Party party = Party::Alice;

  friend bool operator==(const Observable &, const Observable &) = default;
};

/// Two-qubit matrix of the observable on its party's own space.
Matrix4 local_matrix(const Observable &obs);

/// Full 16x16 embedding onto qubits 1..4, identity on the other party.
Matrix16 embed_observable(const Observable &obs);

class StateVector {
 public:
  /// Validates unit norm within kTolerance and finiteness of every amplitude.
  static StateVector from_amplitudes(const Vector16 &amplitudes);

  const Vector16 &amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(int b1, int b2, int b3, int b4) const {
    return amplitudes_(static_cast<Eigen::Index>(basis_index(b1, b2, b3, b4)));
  }
  double norm() const { return amplitudes_.norm(); }

 private:
  explicit StateVector(Vector16 amplitudes) : amplitudes_(std::move(amplitudes)) {}
  Vector16 amplitudes_;
};

/// Two Bell pairs: qubits (1,2) and (3,4) each in (|00> + |11>)/sqrt(2).
StateVector source_state();

/// Real part of <state|M|state>; the discarded imaginary part is below
/// kTolerance for Hermitian M.
double expectation(const StateVector &state, const Observable &obs);

struct Measurement {
  Outcome outcome;
  StateVector state;
  double probability_plus;
};

/// Projective measurement with projectors (I +/- M)/2. The outcome is +1 iff
/// `draw` (uniform in [0,1)) is below the clamped probability of +1.
Measurement measure(const StateVector &state, const Observable &obs, double draw);

/// Normalized projection P*state. Throws Internal when the projection
/// vanishes.
StateVector project(const StateVector &state, const Matrix16 &projector);

/// Born probability of the +1 or -1 branch, with rounding noise clamped.
double branch_probability(const StateVector &state, const Matrix16 &m, Outcome outcome);

/// (I + o*M)/2.
Matrix16 projector(const Matrix16 &m, Outcome outcome);
Matrix4 projector(const Matrix4 &m, Outcome outcome);

/// Clamps rounding noise in a probability into [0, 1]; values more than
/// kTolerance outside the interval are reported as internal errors.
double clamp_probability(double p);

/// Pauli-algebra decision: the products commute iff an even number of
/// single-qubit factor pairs anticommute.
bool commutes(const Observable &a, const Observable &b);

/// Frobenius norm of the matrix commutator [A, B]; the independent matrix
/// route for commutes().
double commutator_norm(const Observable &a, const Observable &b);

}  // namespace msq

#endif  // MSQ_CORE_QUANTUM_CORE_HPP
