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

#ifndef STABSIM_TABLEAU_HPP
#define STABSIM_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stabsim/pauli.hpp"

namespace stabsim {

/// How a circuit qubit enters the tracked state.
enum class InputKind {
  FixedZero,  // starts in the +1 eigenstate of Z, contributes a stabilizer row
  Data        // holds an arbitrary state, contributes a tracked logical pair
};

/// One of the three unitary primitives tracked by conjugation.
struct CliffordGate {
  enum class Kind { R, P, CNOT };
  Kind kind = Kind::R;
  std::size_t q0 = 0;  // target for R/P, control for CNOT
  std::size_t q1 = 0;  // CNOT target
};

/// Which update path a measurement took.
enum class MeasureCase {
  Deterministic,      // observable lies in the stabilizer group up to sign
  StabilizerWitness,  // a stabilizer row anticommuted; outcome is a fresh draw
  LogicalWitness      // only logical rows anticommuted; a pair is retired
};

/// Everything recorded about one measurement.
struct MeasurementRecord {
  PauliOperator observable;  // as written in the request
  int outcome = +1;          // raw draw, or the resolved deterministic value
  MeasureCase kind = MeasureCase::Deterministic;
  bool force_plus = false;   // post-state pinned to the +1 eigenspace
  bool corrected = false;    // force_plus was active and the raw draw was -1
  std::optional<PauliOperator> witness;  // anticommuting row used for updates
  std::optional<std::string> bit;        // classical bit bound to the outcome
};

/// Tracked images of one data qubit's X and Z under the circuit so far.
struct LogicalPair {
  PauliOperator x;
  PauliOperator z;
  std::string label;
};

/// Printable view of a tableau: signed row strings with their prefixes.
struct Snapshot {
  std::vector<std::string> stabilizer_rows;
  // (prefix, row) with prefix "Xbar" / "Xbar_<label>" and the Z analogues.
  std::vector<std::pair<std::string, std::string>> x_rows;
  std::vector<std::pair<std::string, std::string>> z_rows;

  /// Renders the block body: two-space indented stabilizer rows, then
  /// "<prefix>: <row>" logical lines, each line newline terminated.
  std::string text() const;
};

/// Stabilizer tableau: generator rows for the fixed inputs plus a tracked
/// logical pair per data qubit. Rank plus pair count always equals the
/// qubit count, rows are Hermitian, independent and pairwise commuting,
/// and each pair anticommutes only within itself.
class Tableau {
 public:
  Tableau() = default;

  /// Fresh tableau: one Z row per FixedZero qubit (ascending), one logical
  /// pair per Data qubit. data_labels, when nonempty, runs parallel to
  /// inputs and names the pair of each Data qubit; unnamed pairs get their
  /// 1-based qubit index.
  static Tableau init(const std::vector<InputKind>& inputs,
                      const std::vector<std::string>& data_labels = {});

  /// As init, but declared_rows replace the default Z rows of the FixedZero
  /// qubits they touch. Each declared row must be Hermitian, act as the
  /// identity on every Data qubit, and together with the remaining default
  /// rows fully constrain the FixedZero qubits. Throws std::invalid_argument
  /// when those conditions fail.
  static Tableau init(const std::vector<InputKind>& inputs,
                      const std::vector<PauliOperator>& declared_rows,
                      const std::vector<std::string>& data_labels = {});

  /// Builds a tableau directly from stabilizer rows and logical pairs, the
  /// shape a code description produces. Throws std::invalid_argument when
  /// the rows violate any structural invariant.
  static Tableau from_rows(std::size_t num_qubits,
                           std::vector<PauliOperator> stabilizer_rows,
                           std::vector<LogicalPair> pairs);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<PauliOperator>& stabilizer_rows() const { return stab_; }
  const std::vector<LogicalPair>& logical_pairs() const { return pairs_; }
  std::size_t num_rows() const { return stab_.size() + 2 * pairs_.size(); }

  /// Conjugates every tracked row. Cost is one word operation per row.
  void apply_gate(const CliffordGate& g);

  /// Conjugates by a Hermitian Pauli: rows anticommuting with e flip sign.
  void apply_pauli(const PauliOperator& e);

  /// Measures Hermitian observable a.
  ///
  /// The three cases are exhaustive: a stabilizer row anticommutes (fresh
  /// draw, rows folded through the witness, the witness slot replaced by
  /// +/-a), only logical rows anticommute (fresh draw, the witness's pair
  /// retired, +/-a appended), or the observable's bits lie in the row span
  /// (deterministic, tableau untouched).
  ///
  /// force_plus pins the post-state to the +1 eigenspace of a while still
  /// recording the raw draw; this equals drawing -1 and then conjugating by
  /// the witness, so the resulting rows do not depend on the draw.
  /// forced_draw, when set, supplies the draw (cross-checking against a
  /// reference backend); otherwise rng must be non-null in the two random
  /// cases.
  MeasurementRecord measure(const PauliOperator& a, bool force_plus,
                            std::optional<int> forced_draw,
                            std::mt19937_64* rng);

  /// Removes qubit q (0-based). Requires the stabilizer to pin q completely:
  /// after in-group reduction some row must act on q alone, every other
  /// row's letter at q must be clearable by that row. Throws
  /// std::runtime_error otherwise.
  void drop_qubit(std::size_t q);

  Snapshot snapshot() const;

  /// Checks every structural invariant; returns an empty string on success
  /// and a description of the first violation otherwise.
  std::string validate() const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<PauliOperator> stab_;
  std::vector<LogicalPair> pairs_;
  bool started_single_pair_ = false;

  std::string pair_prefix(const LogicalPair& p, char which) const;
};

/// True when both tableaus describe the same tracked map: equal canonical
/// stabilizer groups and, pair by pair, logical images equal modulo the
/// stabilizer with matching signs. Requires matching qubit counts and pair
/// labels.
bool equivalent(const Tableau& a, const Tableau& b);

/// Timing summary of a random gate workload, used by the benchmark command.
struct WorkloadResult {
  std::size_t qubits = 0;
  std::size_t gates = 0;
  std::size_t measurements = 0;
  std::size_t rows = 0;
  std::size_t bytes_per_row = 0;
  double seconds = 0.0;
};

/// Runs a seeded random workload over R, P, CNOT, single-letter sign flips
/// and single-qubit measurements on a half Data, half FixedZero register,
/// timing only the instruction loop.
WorkloadResult run_random_clifford_workload(std::size_t n, std::size_t gates,
                                            std::uint64_t seed);

}  // namespace stabsim

#endif  // STABSIM_TABLEAU_HPP
