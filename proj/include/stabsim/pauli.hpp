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

#ifndef STABSIM_PAULI_HPP
#define STABSIM_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stabsim {

/// Signed Pauli operator on n qubits, stored in symplectic form.
///
/// The operator is i^s * prod_q X^{x_q} Z^{z_q}, with X written before Z on
/// each qubit and s tracked mod 4. A bare Y is stored as x=z=1 with +1 added
/// to s (Y = i X Z), so the printed sign is i^(s - #Y) and the operator is
/// Hermitian exactly when (s - #Y) is even.
///
/// Bits are packed 64 per word; qubit q lives in word q/64, bit q%64.
/// Qubit indices are 0-based here; text formats are 1-based.
class PauliOperator {
 public:
  PauliOperator() = default;

  /// Identity on n qubits.
  explicit PauliOperator(std::size_t num_qubits);

  /// Builds from a letter string over {I,X,Y,Z}; sign_exp is the printed
  /// sign as a power of i (0:+, 1:+i, 2:-, 3:-i).
  static PauliOperator from_letters(std::string_view letters,
                                    unsigned sign_exp = 0);

  /// Single-qubit letter ('X', 'Y' or 'Z') at qubit q, printed sign +1.
  static PauliOperator single(std::size_t num_qubits, std::size_t q,
                              char letter);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_words() const { return x_.size(); }

  bool x_bit(std::size_t q) const;
  bool z_bit(std::size_t q) const;
  void set_x(std::size_t q, bool v);
  void set_z(std::size_t q, bool v);

  /// Letter at qubit q, one of 'I', 'X', 'Y', 'Z'.
  char letter(std::size_t q) const;

  /// Storage phase exponent s (power of i in the X-before-Z form).
  unsigned phase_exp() const { return phase_exp_; }
  void set_phase_exp(unsigned s) { phase_exp_ = s & 3u; }

  /// Printed sign as a power of i: (s - #Y) mod 4.
  unsigned display_exp() const;

  /// Number of qubits carrying a Y letter.
  std::size_t count_y() const;

  /// Number of non-identity letters.
  std::size_t weight() const;

  bool is_hermitian() const { return (display_exp() & 1u) == 0; }

  /// True when every letter is I, regardless of sign.
  bool is_identity_letters() const;

  /// Multiplies s by i^k.
  void mul_phase(unsigned k) { phase_exp_ = (phase_exp_ + k) & 3u; }

  /// Multiplies by -1.
  void flip_sign() { mul_phase(2); }

  /// In-place right multiplication: *this = *this * other.
  PauliOperator& operator*=(const PauliOperator& other);

  /// Conjugation by the basis-change gate on qubit q
  /// (X -> Z, Z -> X, Y -> -Y).
  void conj_r(std::size_t q);

  /// Conjugation by the quarter-phase gate on qubit q
  /// (X -> Y, Y -> -X, Z -> Z).
  void conj_p(std::size_t q);

  /// Conjugation by controlled-NOT with control c, target t
  /// (Xc -> Xc Xt, Zt -> Zc Zt, Zc and Xt fixed).
  void conj_cnot(std::size_t c, std::size_t t);

  /// Removes qubit q from the operator; its letter there must be I.
  void erase_qubit(std::size_t q);

  /// Formats per the display grammar: explicit sign from {+, -, +i, -i}
  /// followed by one letter per qubit.
  std::string str() const;

  friend bool operator==(const PauliOperator& a, const PauliOperator& b);
  friend bool operator!=(const PauliOperator& a, const PauliOperator& b) {
    return !(a == b);
  }

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  unsigned phase_exp_ = 0;

  friend PauliOperator multiply(const PauliOperator&, const PauliOperator&);
  friend bool commutes(const PauliOperator&, const PauliOperator&);
};

/// Product a * b with the phase rule of the X-before-Z form:
/// s = s_a + s_b + 2 * |{q : z_a(q) and x_b(q)}| mod 4.
PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);

/// True when a and b commute; the test is the symplectic form
/// sum_q (x_a z_b + z_a x_b) mod 2 == 0.
bool commutes(const PauliOperator& a, const PauliOperator& b);

/// Number of non-identity letters in a.
std::size_t weight(const PauliOperator& a);

/// Image of e under conjugation by a Hermitian Pauli m:
/// e itself when they commute, -e when they anticommute.
PauliOperator conjugate_sign_flip(const PauliOperator& e,
                                  const PauliOperator& m);

/// Parses the text grammar: optional sign from {+, -, +i, -i, i}, then one
/// letter per qubit from {I,X,Y,Z}. Throws std::invalid_argument on any
/// violation; when expected_qubits is nonzero the letter count must match.
PauliOperator parse_pauli(std::string_view text, std::size_t expected_qubits = 0);

/// A list of generators over a fixed qubit count.
struct GeneratorSet {
  std::size_t num_qubits = 0;
  std::vector<PauliOperator> generators;
};

/// Result of Gauss-Jordan reduction of a GeneratorSet.
///
/// Rows are in reduced row echelon form over GF(2) with column order
/// (x_1..x_n, z_1..z_n) and exact phases carried through every elimination
/// step. Two sets generate the same signed group exactly when their
/// canonical forms compare equal. Dependent input rows reduce to phased
/// identities; a residual -1 or +/-i identity is recorded rather than kept
/// as a row, and when one is present row signs are normalized to +.
struct CanonicalForm {
  GeneratorSet canonical;
  std::size_t rank = 0;
  bool contains_minus_identity = false;
  bool contains_imag_identity = false;
  /// Per canonical row, a bit mask over the input generators whose product
  /// (taken in canonical row order) yields that row.
  std::vector<std::vector<std::uint64_t>> row_masks;
};

CanonicalForm canonicalize(const GeneratorSet& gens);

/// Outcome of reducing a probe operator against a canonical form.
struct MembershipResult {
  /// True when some phase multiple of e lies in the generated group.
  bool binary_in_span = false;
  /// With binary_in_span: e = i^phase_exp * g for a group element g, the
  /// exponent reduced modulo the group's phase subgroup. phase_exp == 0
  /// means e itself is in the group.
  unsigned phase_exp = 0;
  /// Bit mask over the input generators combining to g's binary part.
  std::vector<std::uint64_t> combination;
};

/// Decides whether any phase multiple of e lies in the group generated by
/// gens, resolving the exact phase and a generator combination witness.
MembershipResult membership(const GeneratorSet& gens, const PauliOperator& e);
MembershipResult membership(const CanonicalForm& form, const PauliOperator& e);

/// Validity report for a set intended as stabilizer rows.
struct StabilizerCheck {
  bool ok = false;
  std::size_t rank = 0;
  std::string error;
};

/// Stabilizer rows must be Hermitian, pairwise commuting, independent, and
/// must not generate -1 times the identity.
StabilizerCheck check_stabilizer_rows(const GeneratorSet& gens);

}  // namespace stabsim

#endif  // STABSIM_PAULI_HPP
