// Copyright 2026 The stabsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense state-vector reference backend. Exponential in qubit count by
// construction; callers gate it behind a qubit limit. Basis convention:
// qubit 1 is the most significant index bit.

#ifndef STABSIM_ORACLE_HPP
#define STABSIM_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "stabsim/circuit.hpp"
#include "stabsim/pauli.hpp"
#include "stabsim/tableau.hpp"

namespace stabsim {

using DenseUnitary = Eigen::MatrixXcd;

struct DenseState {
  std::size_t num_qubits = 0;
  Eigen::VectorXcd amps;  // size 2^num_qubits
};

DenseState zero_state(std::size_t n);

void apply_gate(DenseState& psi, const CliffordGate& g);

/// Applies a (not necessarily Hermitian) packed operator, phase included.
void apply_operator(DenseState& psi, const PauliOperator& p);

/// Probability that measuring the Hermitian observable a yields +1.
double prob_plus(const DenseState& psi, const PauliOperator& a);

/// Projects onto the `outcome` eigenspace of a and renormalizes.
/// Throws std::runtime_error if the projection annihilates the state.
void project(DenseState& psi, const PauliOperator& a, int outcome);

/// Removes qubit q (0-based). The qubit must be unentangled; the surviving
/// factor keeps its global phase.
void drop_qubit(DenseState& psi, std::size_t q);

/// Squared overlap |<a|b>|^2.
double fidelity(const DenseState& a, const DenseState& b);

/// The unique state fixed by a full-rank commuting Hermitian generator set.
/// Searches basis start vectors in ascending index order, so sign patterns
/// that annihilate |0...0> still resolve. Global phase is normalized to make
/// the first nonzero amplitude positive real.
DenseState stabilizer_to_state(const GeneratorSet& gens);

/// Dense state the tableau describes for given per-pair input amplitudes
/// (pair order; missing entries mean |0>). Fixed-zero structure comes from
/// the stabilizer rows.
DenseState predict_state(const Tableau& t, const std::vector<QubitAmps>& pair_inputs);

/// Squared norm of the projection of psi onto the joint +1 eigenspace of
/// the tableau's stabilizer rows. Scores row correctness without assuming
/// anything about the logical amplitudes.
double span_fidelity(const Tableau& t, const DenseState& psi);

/// Reconstructs the full unitary of a measurement-free all-data tableau
/// (no stabilizer rows, one pair per qubit) from its tracked images.
DenseUnitary tableau_to_unitary(const Tableau& t);

/// Dense matrix of one elementary gate on an n-qubit register.
DenseUnitary gate_unitary(std::size_t n, const CliffordGate& g);

/// Dense matrix of a packed operator.
DenseUnitary pauli_unitary(const PauliOperator& p);

/// Runs the circuit with the dense reference driving every draw and scoring
/// every step (Backend::Both with the given options).
Trace cross_validate(const Circuit& c, const RunOptions& opts);

}  // namespace stabsim

#endif  // STABSIM_ORACLE_HPP
