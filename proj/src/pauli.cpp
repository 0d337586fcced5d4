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

#include "stabsim/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace stabsim {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) {
  return (n + kWordBits - 1) / kWordBits;
}

void require_same_width(const PauliOperator& a, const PauliOperator& b,
                        const char* what) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument(std::string(what) +
                                ": operators act on different qubit counts");
  }
}

}  // namespace

PauliOperator::PauliOperator(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      x_(word_count(num_qubits), 0),
      z_(word_count(num_qubits), 0) {}

PauliOperator PauliOperator::from_letters(std::string_view letters,
                                          unsigned sign_exp) {
  PauliOperator p(letters.size());
  std::size_t ys = 0;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    switch (letters[q]) {
      case 'I':
        break;
      case 'X':
        p.set_x(q, true);
        break;
      case 'Y':
        p.set_x(q, true);
        p.set_z(q, true);
        ++ys;
        break;
      case 'Z':
        p.set_z(q, true);
        break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli letter '") +
                                    letters[q] + "'");
    }
  }
  p.phase_exp_ = (sign_exp + ys) & 3u;
  return p;
}

PauliOperator PauliOperator::single(std::size_t num_qubits, std::size_t q,
                                    char letter) {
  if (q >= num_qubits) {
    throw std::invalid_argument("qubit index out of range");
  }
  PauliOperator p(num_qubits);
  switch (letter) {
    case 'X':
      p.set_x(q, true);
      break;
    case 'Y':
      p.set_x(q, true);
      p.set_z(q, true);
      p.phase_exp_ = 1;
      break;
    case 'Z':
      p.set_z(q, true);
      break;
    default:
      throw std::invalid_argument("single expects letter X, Y or Z");
  }
  return p;
}

bool PauliOperator::x_bit(std::size_t q) const {
  return (x_[q / kWordBits] >> (q % kWordBits)) & 1u;
}

bool PauliOperator::z_bit(std::size_t q) const {
  return (z_[q / kWordBits] >> (q % kWordBits)) & 1u;
}

void PauliOperator::set_x(std::size_t q, bool v) {
  std::uint64_t mask = std::uint64_t{1} << (q % kWordBits);
  if (v) {
    x_[q / kWordBits] |= mask;
  } else {
    x_[q / kWordBits] &= ~mask;
  }
}

void PauliOperator::set_z(std::size_t q, bool v) {
  std::uint64_t mask = std::uint64_t{1} << (q % kWordBits);
  if (v) {
    z_[q / kWordBits] |= mask;
  } else {
    z_[q / kWordBits] &= ~mask;
  }
}

char PauliOperator::letter(std::size_t q) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[(x_bit(q) ? 1 : 0) | (z_bit(q) ? 2 : 0)];
}

unsigned PauliOperator::display_exp() const {
  return (phase_exp_ + 4u - static_cast<unsigned>(count_y() & 3u)) & 3u;
}

std::size_t PauliOperator::count_y() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    total += std::popcount(x_[w] & z_[w]);
  }
  return total;
}

std::size_t PauliOperator::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    total += std::popcount(x_[w] | z_[w]);
  }
  return total;
}

bool PauliOperator::is_identity_letters() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) {
      return false;
    }
  }
  return true;
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& other) {
  require_same_width(*this, other, "multiply");
  // s = s_a + s_b + 2 * parity of overlap between this->z and other->x,
  // from commuting each Z of the left factor past each X of the right.
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    acc ^= z_[w] & other.x_[w];
    x_[w] ^= other.x_[w];
    z_[w] ^= other.z_[w];
  }
  unsigned swap_phase = (std::popcount(acc) & 1) ? 2u : 0u;
  phase_exp_ = (phase_exp_ + other.phase_exp_ + swap_phase) & 3u;
  return *this;
}

void PauliOperator::conj_r(std::size_t q) {
  bool x = x_bit(q);
  bool z = z_bit(q);
  if (x && z) {
    flip_sign();
  }
  set_x(q, z);
  set_z(q, x);
}

void PauliOperator::conj_p(std::size_t q) {
  bool x = x_bit(q);
  if (x) {
    set_z(q, !z_bit(q));
    mul_phase(1);
  }
}

void PauliOperator::conj_cnot(std::size_t c, std::size_t t) {
  // In the X-before-Z form the update is phase free.
  if (x_bit(c)) {
    set_x(t, !x_bit(t));
  }
  if (z_bit(t)) {
    set_z(c, !z_bit(c));
  }
}

void PauliOperator::erase_qubit(std::size_t q) {
  if (q >= num_qubits_) {
    throw std::invalid_argument("erase_qubit: index out of range");
  }
  if (letter(q) != 'I') {
    throw std::logic_error("erase_qubit: qubit still carries a letter");
  }
  for (std::size_t i = q; i + 1 < num_qubits_; ++i) {
    set_x(i, x_bit(i + 1));
    set_z(i, z_bit(i + 1));
  }
  if (num_qubits_ > 0) {
    set_x(num_qubits_ - 1, false);
    set_z(num_qubits_ - 1, false);
    --num_qubits_;
  }
  x_.resize(word_count(num_qubits_));
  z_.resize(word_count(num_qubits_));
}

std::string PauliOperator::str() const {
  static constexpr const char* kSigns[4] = {"+", "+i", "-", "-i"};
  std::string out = kSigns[display_exp()];
  out.reserve(out.size() + num_qubits_);
  for (std::size_t q = 0; q < num_qubits_; ++q) {
    out.push_back(letter(q));
  }
  return out;
}

bool operator==(const PauliOperator& a, const PauliOperator& b) {
  return a.num_qubits_ == b.num_qubits_ && a.phase_exp_ == b.phase_exp_ &&
         a.x_ == b.x_ && a.z_ == b.z_;
}

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator out = a;
  out *= b;
  return out;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  require_same_width(a, b, "commutes");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.x_.size(); ++w) {
    acc ^= (a.x_[w] & b.z_[w]) ^ (a.z_[w] & b.x_[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

std::size_t weight(const PauliOperator& a) { return a.weight(); }

PauliOperator conjugate_sign_flip(const PauliOperator& e,
                                  const PauliOperator& m) {
  if (!m.is_hermitian()) {
    throw std::invalid_argument("conjugate_sign_flip: m must be Hermitian");
  }
  PauliOperator out = e;
  if (!commutes(e, m)) {
    out.flip_sign();
  }
  return out;
}

PauliOperator parse_pauli(std::string_view text, std::size_t expected_qubits) {
  if (text.empty()) {
    throw std::invalid_argument("empty Pauli string");
  }
  unsigned sign_exp = 0;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    bool minus = text[0] == '-';
    ++pos;
    if (pos < text.size() && text[pos] == 'i') {
      sign_exp = minus ? 3 : 1;
      ++pos;
    } else {
      sign_exp = minus ? 2 : 0;
    }
  } else if (text[0] == 'i') {
    sign_exp = 1;
    ++pos;
  }
  std::string_view letters = text.substr(pos);
  if (letters.empty()) {
    throw std::invalid_argument("Pauli string has a sign but no letters");
  }
  for (std::size_t k = 0; k < letters.size(); ++k) {
    char c = letters[k];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument(
          std::string("invalid Pauli letter '") + c + "' at position " +
          std::to_string(pos + k + 1));
    }
  }
  if (expected_qubits != 0 && letters.size() != expected_qubits) {
    throw std::invalid_argument(
        "Pauli string has " + std::to_string(letters.size()) +
        " letters, expected " + std::to_string(expected_qubits));
  }
  return PauliOperator::from_letters(letters, sign_exp);
}

namespace {

// Column c < n addresses the x bit of qubit c, column n + c the z bit.
bool column_bit(const PauliOperator& p, std::size_t col) {
  std::size_t n = p.num_qubits();
  return col < n ? p.x_bit(col) : p.z_bit(col - n);
}

void xor_mask(std::vector<std::uint64_t>& into,
              const std::vector<std::uint64_t>& from) {
  for (std::size_t w = 0; w < into.size(); ++w) {
    into[w] ^= from[w];
  }
}

}  // namespace

CanonicalForm canonicalize(const GeneratorSet& gens) {
  const std::size_t n = gens.num_qubits;
  for (const PauliOperator& g : gens.generators) {
    if (g.num_qubits() != n) {
      throw std::invalid_argument("canonicalize: generator width mismatch");
    }
  }
  std::vector<PauliOperator> rows = gens.generators;
  const std::size_t m = rows.size();
  const std::size_t mask_words = word_count(m == 0 ? 1 : m);
  std::vector<std::vector<std::uint64_t>> masks(
      m, std::vector<std::uint64_t>(mask_words, 0));
  for (std::size_t i = 0; i < m; ++i) {
    masks[i][i / kWordBits] = std::uint64_t{1} << (i % kWordBits);
  }

  std::size_t r = 0;
  for (std::size_t col = 0; col < 2 * n && r < m; ++col) {
    std::size_t pivot = m;
    for (std::size_t i = r; i < m; ++i) {
      if (column_bit(rows[i], col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == m) {
      continue;
    }
    std::swap(rows[r], rows[pivot]);
    std::swap(masks[r], masks[pivot]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != r && column_bit(rows[i], col)) {
        rows[i] *= rows[r];
        xor_mask(masks[i], masks[r]);
      }
    }
    ++r;
  }

  CanonicalForm form;
  form.rank = r;
  // Rows past the rank reduced to phased identities; their phases expose
  // the group's phase subgroup.
  for (std::size_t i = r; i < m; ++i) {
    unsigned s = rows[i].phase_exp();
    if (s == 2) {
      form.contains_minus_identity = true;
    } else if (s == 1 || s == 3) {
      form.contains_imag_identity = true;
    }
  }
  // An independent row with an imaginary printed sign squares to -1.
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].display_exp() & 1u) {
      form.contains_minus_identity = true;
    }
  }
  if (form.contains_imag_identity) {
    form.contains_minus_identity = true;
  }
  rows.resize(r);
  masks.resize(r);
  // Pick the least printed sign exponent available in each row's phase
  // coset so equal groups canonicalize to byte-equal rows.
  for (PauliOperator& row : rows) {
    if (form.contains_imag_identity) {
      row.set_phase_exp(static_cast<unsigned>(row.count_y()));
    } else if (form.contains_minus_identity && (row.display_exp() & 2u)) {
      row.flip_sign();
    }
  }
  form.canonical = GeneratorSet{n, std::move(rows)};
  form.row_masks = std::move(masks);
  return form;
}

MembershipResult membership(const CanonicalForm& form, const PauliOperator& e) {
  const std::size_t n = form.canonical.num_qubits;
  if (e.num_qubits() != n) {
    throw std::invalid_argument("membership: operator width mismatch");
  }
  MembershipResult out;
  std::size_t mask_words =
      form.row_masks.empty() ? 1 : form.row_masks.front().size();
  out.combination.assign(mask_words, 0);

  // Reduce the binary part of e against the echelon rows, tracking which
  // rows were used; phases are resolved afterwards from the exact product.
  std::vector<std::uint64_t> rx = e.x_words();
  std::vector<std::uint64_t> rz = e.z_words();
  auto res_bit = [&](std::size_t col) {
    std::size_t q = col < n ? col : col - n;
    const std::vector<std::uint64_t>& v = col < n ? rx : rz;
    return (v[q / kWordBits] >> (q % kWordBits)) & 1u;
  };
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < form.canonical.generators.size(); ++j) {
    const PauliOperator& row = form.canonical.generators[j];
    // The pivot column is the first set column of an echelon row.
    std::size_t pivot_col = 2 * n;
    for (std::size_t col = 0; col < 2 * n; ++col) {
      if (column_bit(row, col)) {
        pivot_col = col;
        break;
      }
    }
    if (pivot_col == 2 * n || !res_bit(pivot_col)) {
      continue;
    }
    const std::vector<std::uint64_t>& wx = row.x_words();
    const std::vector<std::uint64_t>& wz = row.z_words();
    for (std::size_t w = 0; w < rx.size(); ++w) {
      rx[w] ^= wx[w];
      rz[w] ^= wz[w];
    }
    used.push_back(j);
    xor_mask(out.combination, form.row_masks[j]);
  }
  for (std::size_t w = 0; w < rx.size(); ++w) {
    if (rx[w] | rz[w]) {
      return out;
    }
  }
  out.binary_in_span = true;
  PauliOperator g(n);
  for (std::size_t j : used) {
    g *= form.canonical.generators[j];
  }
  unsigned raw = (e.phase_exp() + 4u - g.phase_exp()) & 3u;
  if (form.contains_imag_identity) {
    raw = 0;
  } else if (form.contains_minus_identity) {
    raw &= 1u;
  }
  out.phase_exp = raw;
  return out;
}

MembershipResult membership(const GeneratorSet& gens, const PauliOperator& e) {
  return membership(canonicalize(gens), e);
}

StabilizerCheck check_stabilizer_rows(const GeneratorSet& gens) {
  StabilizerCheck out;
  for (std::size_t i = 0; i < gens.generators.size(); ++i) {
    const PauliOperator& g = gens.generators[i];
    if (g.num_qubits() != gens.num_qubits) {
      out.error = "generator " + std::to_string(i + 1) + " width mismatch";
      return out;
    }
    if (!g.is_hermitian()) {
      out.error = "generator " + std::to_string(i + 1) + " (" + g.str() +
                  ") is not Hermitian";
      return out;
    }
    for (std::size_t j = i + 1; j < gens.generators.size(); ++j) {
      if (!commutes(g, gens.generators[j])) {
        out.error = "generators " + std::to_string(i + 1) + " and " +
                    std::to_string(j + 1) + " anticommute";
        return out;
      }
    }
  }
  CanonicalForm form = canonicalize(gens);
  out.rank = form.rank;
  if (form.contains_minus_identity || form.contains_imag_identity) {
    out.error = "generators produce a negative identity product";
    return out;
  }
  if (form.rank != gens.generators.size()) {
    out.error = "generators are dependent (rank " + std::to_string(form.rank) +
                " of " + std::to_string(gens.generators.size()) + ")";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace stabsim
