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

#include "quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace msq {

namespace {

constexpr double kVanishingNorm = 1e-14;

Matrix2 make_pauli(Pauli p) {
  const Complex i{0.0, 1.0};
  Matrix2 m;
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

bool anticommute(Pauli a, Pauli b) { return a != Pauli::I && b != Pauli::I && a != b; }

}  // namespace

const Matrix2 &pauli_matrix(Pauli p) {
  static const std::array<Matrix2, 4> table = {make_pauli(Pauli::I), make_pauli(Pauli::X),
                                               make_pauli(Pauli::Y), make_pauli(Pauli::Z)};
  return table[static_cast<std::size_t>(p)];
}

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

const char *party_name(Party party) { return party == Party::Alice ? "alice" : "bob"; }

Matrix4 local_matrix(const Observable &obs) {
  const Matrix2 &a = pauli_matrix(obs.first);
  const Matrix2 &b = pauli_matrix(obs.second);
  Matrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r >> 1, c >> 1) * b(r & 1, c & 1);
  return static_cast<double>(obs.sign) * m;
}

Matrix16 embed_observable(const Observable &obs) {
  std::array<Pauli, 5> on_qubit{Pauli::I, Pauli::I, Pauli::I, Pauli::I, Pauli::I};
  const auto qubits = party_qubits(obs.party);
  on_qubit[qubits[0]] = obs.first;
  on_qubit[qubits[1]] = obs.second;

  Matrix16 m;
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      Complex entry{1.0, 0.0};
      for (int q = 1; q <= 4 && entry != Complex{}; ++q) {
        const int rb = (r >> qubit_bit(q)) & 1;
        const int cb = (c >> qubit_bit(q)) & 1;
        entry *= pauli_matrix(on_qubit[q])(rb, cb);
      }
      m(r, c) = entry;
    }
  }
  return static_cast<double>(obs.sign) * m;
}

StateVector StateVector::from_amplitudes(const Vector16 &amplitudes) {
  for (Eigen::Index k = 0; k < amplitudes.size(); ++k) {
    if (!std::isfinite(amplitudes(k).real()) || !std::isfinite(amplitudes(k).imag()))
      fail(ErrorCode::InvalidArgument, "state amplitude is not finite", std::to_string(k));
  }
  const double n2 = amplitudes.squaredNorm();
  if (std::abs(n2 - 1.0) > kTolerance)
    fail(ErrorCode::InvalidArgument, "state is not normalized", std::to_string(n2));
  return StateVector(amplitudes);
}

StateVector source_state() {
  Vector16 v = Vector16::Zero();
  for (int x : {0, 1})
    for (int y : {0, 1}) v(static_cast<Eigen::Index>(basis_index(x, x, y, y))) = 0.5;
  return StateVector::from_amplitudes(v);
}

double clamp_probability(double p) {
  if (p < -kTolerance || p > 1.0 + kTolerance)
    fail(ErrorCode::Internal, "probability outside [0, 1]", std::to_string(p));
  return std::clamp(p, 0.0, 1.0);
}

double expectation(const StateVector &state, const Observable &obs) {
  const Vector16 &psi = state.amplitudes();
  const Complex e = psi.dot(embed_observable(obs) * psi);
  if (std::abs(e.imag()) > kTolerance)
    fail(ErrorCode::Internal, "expectation value has an imaginary part", std::to_string(e.imag()));
  return e.real();
}

Matrix16 projector(const Matrix16 &m, Outcome outcome) {
  return 0.5 * (Matrix16::Identity() + static_cast<double>(value(outcome)) * m);
}

Matrix4 projector(const Matrix4 &m, Outcome outcome) {
  return 0.5 * (Matrix4::Identity() + static_cast<double>(value(outcome)) * m);
}

double branch_probability(const StateVector &state, const Matrix16 &m, Outcome outcome) {
  const Vector16 &psi = state.amplitudes();
  return clamp_probability((projector(m, outcome) * psi).squaredNorm());
}

StateVector project(const StateVector &state, const Matrix16 &p) {
  Vector16 v = p * state.amplitudes();
  const double n = v.norm();
  if (n < kVanishingNorm) fail(ErrorCode::Internal, "projection onto a zero-probability branch");
  return StateVector::from_amplitudes(v / n);
}

Measurement measure(const StateVector &state, const Observable &obs, double draw) {
  const Matrix16 m = embed_observable(obs);
  double p_plus = clamp_probability(0.5 * (1.0 + expectation(state, obs)));
  // Rounding noise must not select an empty branch.
  if (p_plus < kTolerance) p_plus = 0.0;
  if (p_plus > 1.0 - kTolerance) p_plus = 1.0;
  const Outcome outcome = draw < p_plus ? Outcome::Plus : Outcome::Minus;
  return Measurement{outcome, project(state, projector(m, outcome)), p_plus};
}

bool commutes(const Observable &a, const Observable &b) {
  if (a.party != b.party) return true;
  const int anti = int{anticommute(a.first, b.first)} + int{anticommute(a.second, b.second)};
  return anti % 2 == 0;
}

double commutator_norm(const Observable &a, const Observable &b) {
  const Matrix16 ma = embed_observable(a);
  const Matrix16 mb = embed_observable(b);
  return (ma * mb - mb * ma).norm();
}

}  // namespace msq
