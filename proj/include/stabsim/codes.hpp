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

#ifndef STABSIM_CODES_HPP
#define STABSIM_CODES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stabsim/circuit.hpp"
#include "stabsim/pauli.hpp"
#include "stabsim/tableau.hpp"

namespace stabsim {

/// A code description: n physical qubits, a generating set for the
/// protected group, and (optionally) one X/Z operator pair per protected
/// qubit. logical_x/logical_z are either both empty or both k entries long.
struct StabilizerCode {
  std::size_t num_qubits = 0;
  std::size_t num_logical = 0;
  std::vector<PauliOperator> generators;
  std::vector<PauliOperator> logical_x;
  std::vector<PauliOperator> logical_z;
};

/// Parses the code file format:
///
///   # comment
///   code n=5 k=1
///   XZZXI
///   IXZZX
///   XIXZZ
///   ZXIXZ
///   logical X XXXXX
///   logical Z ZZZZZ
///
/// The header comes first; each remaining line is a generator row or a
/// `logical X|Z <operator>` line. Grammar errors throw ParseError; the
/// result still needs check_code for the group-level rules.
StabilizerCode parse_code(std::string_view text);
StabilizerCode parse_code_file(const std::string& path);

/// Structural validation: generators Hermitian, commuting and independent
/// with rank n - k; logical operators, when present, k per kind, commuting
/// with the group, anticommuting exactly with their partner, independent of
/// everything else. Returns an empty string when the code is well formed,
/// otherwise a description of the first problem.
std::string check_code(const StabilizerCode& code);

/// One bit per generator: 1 when e anticommutes with that row.
std::vector<int> syndrome(const StabilizerCode& code, const PauliOperator& e);

/// Packs syndrome bits into an integer, bit i = generator i.
std::uint64_t pack_syndrome(const std::vector<int>& bits);

/// Fills logical_x/logical_z when both are empty (a no-op otherwise).
/// Candidates are scanned by weight, then letter pattern (X < Y < Z), then
/// support position; each X operator is the first candidate commuting with
/// the group and everything chosen before it while staying outside their
/// span, and each Z partner is the first candidate that additionally
/// anticommutes with its X. Throws std::invalid_argument on an invalid
/// code.
void complete_logicals(StabilizerCode& code);

struct DistanceResult {
  std::size_t distance = 0;
  /// True when some nonidentity group element weighs less than distance.
  bool degenerate = false;
  /// A minimum-weight operator that commutes with every generator yet lies
  /// outside the group: the lightest undetectable logical action.
  PauliOperator witness;
};

/// Minimum weight over operators that slip past every syndrome bit without
/// acting as a group element. Enumerates candidates by weight, support
/// combination, then letters (X < Y < Z); jobs > 1 splits each weight level
/// across threads, keeping the reported witness independent of the split.
/// Requires k >= 1.
DistanceResult code_distance(const StabilizerCode& code, std::size_t jobs = 1);

/// Syndrome -> minimum-weight correction for every error of weight <= t
/// (the zero syndrome maps to the identity). Throws std::runtime_error when
/// two errors within that weight budget share a syndrome without being
/// equal modulo the group, since no table can then distinguish them.
std::map<std::uint64_t, PauliOperator> build_syndrome_table(
    const StabilizerCode& code, std::size_t t);

enum class ExperimentMode { Detect, Correct };

struct ExperimentResult {
  PauliOperator injected;
  std::vector<int> syndrome_bits;
  /// Some syndrome bit fired.
  bool detected = false;
  /// Correction looked up from the syndrome table (identity in detect mode
  /// or when the syndrome has no entry).
  PauliOperator correction;
  bool in_table = false;
  /// Final tableau equivalent to the untouched encoding: protected content
  /// survived.
  bool recovered = false;
};

/// Injects error into a freshly encoded tableau, extracts the syndrome by
/// measuring every generator (each read is deterministic and leaves the
/// rows alone), optionally applies the table correction for weight <= t,
/// and compares against the clean tableau. Completes missing logical
/// operators first.
ExperimentResult run_code_experiment(const StabilizerCode& code,
                                     const PauliOperator& error,
                                     ExperimentMode mode, std::size_t t = 1);

}  // namespace stabsim

#endif  // STABSIM_CODES_HPP
