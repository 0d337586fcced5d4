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

#ifndef STABSIM_CIRCUIT_HPP
#define STABSIM_CIRCUIT_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stabsim/pauli.hpp"
#include "stabsim/tableau.hpp"

namespace stabsim {

/// Parse failure with 1-based source coordinates.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error(std::move(message)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Single-letter sign-flip layer (the X, Y and Z instructions).
struct PauliGateInstr {
  std::size_t q = 0;  // 0-based
  char letter = 'X';
  friend bool operator==(const PauliGateInstr&, const PauliGateInstr&) =
      default;
};

struct MeasureInstr {
  PauliOperator observable;
  std::string bit;           // empty when unbound
  bool random_mode = false;  // default records the draw but pins +1
  friend bool operator==(const MeasureInstr&, const MeasureInstr&) = default;
};

struct CondPauliInstr {
  std::string bit;
  PauliOperator correction;  // applied when the bound outcome was -1
  friend bool operator==(const CondPauliInstr&, const CondPauliInstr&) =
      default;
};

struct DropInstr {
  std::size_t q = 0;  // 0-based at the time of execution
  friend bool operator==(const DropInstr&, const DropInstr&) = default;
};

inline bool operator==(const CliffordGate& a, const CliffordGate& b) {
  return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1;
}

using Instruction = std::variant<CliffordGate, PauliGateInstr, MeasureInstr,
                                 CondPauliInstr, DropInstr>;

/// Instructions grouped under one analysis label; the trace emits one block
/// per step.
struct Step {
  std::string label;
  std::vector<Instruction> instructions;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<InputKind> inputs;
  std::vector<std::string> data_labels;  // per qubit, empty when unnamed
  std::vector<PauliOperator> declared_rows;
  std::vector<Step> steps;
  bool explicit_steps = false;

  bool has_random_measurement() const;
  bool has_measurement_or_drop() const;
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Parses the line-oriented text grammar. Keywords are case-insensitive,
/// qubit indices 1-based, '#' starts a comment. Throws ParseError.
Circuit parse_circuit(std::string_view text);
Circuit parse_circuit_file(const std::string& path);

/// Canonical text form; parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit& c);

enum class Backend { TableauOnly, OracleOnly, Both };

/// One measurement as seen by the run, with the reference side's view.
struct MeasurementEvent {
  MeasurementRecord record;
  double prob_plus = -1.0;  // reference probability, -1 without a reference
  bool fair_draw = false;   // reference probability was exactly one half
  bool determinism_ok = true;
};

/// One trace block: the tableau after the step, plus per-step diagnostics.
struct StepTrace {
  std::string label;
  Snapshot snapshot;
  std::vector<MeasurementEvent> measurements;
  double fidelity = -1.0;  // reference score, -1 when not computed
  /// After a measurement retires a logical pair, carried input amplitudes
  /// no longer describe the state, so fidelity degrades to the projection
  /// onto the claimed stabilizer eigenspace.
  bool span_scored = false;
};

struct Trace {
  std::vector<StepTrace> steps;  // steps.front() is the Start block
  Tableau final_tableau;
  std::vector<std::complex<double>> final_amplitudes;  // reference backend
  std::size_t fair_draws = 0;
  std::size_t fair_plus = 0;
  double min_fidelity = 1.0;
  bool determinism_ok = true;
};

using QubitAmps = std::array<std::complex<double>, 2>;

struct RunOptions {
  Backend backend = Backend::TableauOnly;
  std::uint64_t seed = 0;
  std::size_t oracle_limit = 12;
  /// Reference-side input states for data qubits, keyed by pair order
  /// (missing entries start in |0>). Only read when a reference runs.
  std::vector<QubitAmps> data_inputs;
};

/// Executes the circuit. The tableau backend always runs; the reference
/// backend additionally tracks dense amplitudes, drives every measurement
/// draw from its exact probabilities, and scores per-step overlap between
/// the dense state and the tableau's reconstruction (see
/// StepTrace::span_scored for the post-retirement scoring rule).
Trace run(const Circuit& c, const RunOptions& opts);

/// Text trace: one "== <label>" block per step with the snapshot body.
std::string format_trace(const Trace& t);

/// Line records: tab-separated row and measurement entries per step.
std::string format_records(const Trace& t);

}  // namespace stabsim

#endif  // STABSIM_CIRCUIT_HPP
