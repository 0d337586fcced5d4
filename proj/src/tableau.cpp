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

#include "stabsim/tableau.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace stabsim {

namespace {

// Echelon basis over GF(2) of the given rows, exact phases kept, used for
// in-place reduction of single operators.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::vector<PauliOperator> rows) {
    for (PauliOperator& row : rows) {
      insert(std::move(row));
    }
  }

  // Multiplies p by basis rows until no basis pivot column remains set.
  void reduce(PauliOperator& p) const {
    for (const auto& [col, row] : rows_) {
      if (column_bit(p, col)) {
        p *= row;
      }
    }
  }

 private:
  static bool column_bit(const PauliOperator& p, std::size_t col) {
    std::size_t n = p.num_qubits();
    return col < n ? p.x_bit(col) : p.z_bit(col - n);
  }

  void insert(PauliOperator row) {
    for (const auto& [col, basis_row] : rows_) {
      if (column_bit(row, col)) {
        row *= basis_row;
      }
    }
    std::size_t n = row.num_qubits();
    for (std::size_t col = 0; col < 2 * n; ++col) {
      if (column_bit(row, col)) {
        rows_.emplace_back(col, std::move(row));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return;
      }
    }
  }

  std::vector<std::pair<std::size_t, PauliOperator>> rows_;
};

int draw_outcome(std::optional<int> forced, std::mt19937_64* rng) {
  if (forced.has_value()) {
    if (*forced != 1 && *forced != -1) {
      throw std::invalid_argument("forced measurement draw must be +1 or -1");
    }
    return *forced;
  }
  if (rng == nullptr) {
    throw std::runtime_error(
        "measurement needs a random draw but no generator was supplied");
  }
  return ((*rng)() & 1u) ? -1 : +1;
}

}  // namespace

std::string Snapshot::text() const {
  std::string out;
  for (const std::string& row : stabilizer_rows) {
    out += "  ";
    out += row;
    out += '\n';
  }
  for (const auto& [prefix, row] : x_rows) {
    out += prefix;
    out += ": ";
    out += row;
    out += '\n';
  }
  for (const auto& [prefix, row] : z_rows) {
    out += prefix;
    out += ": ";
    out += row;
    out += '\n';
  }
  return out;
}

Tableau Tableau::init(const std::vector<InputKind>& inputs,
                      const std::vector<std::string>& data_labels) {
  return init(inputs, std::vector<PauliOperator>{}, data_labels);
}

Tableau Tableau::init(const std::vector<InputKind>& inputs,
                      const std::vector<PauliOperator>& declared_rows,
                      const std::vector<std::string>& data_labels) {
  const std::size_t n = inputs.size();
  if (!data_labels.empty() && data_labels.size() != n) {
    throw std::invalid_argument("data_labels must be empty or one per qubit");
  }
  Tableau t;
  t.num_qubits_ = n;

  std::vector<bool> covered(n, false);
  for (const PauliOperator& row : declared_rows) {
    if (row.num_qubits() != n) {
      throw std::invalid_argument("stabilizer row width mismatch");
    }
    if (!row.is_hermitian()) {
      throw std::invalid_argument("stabilizer row " + row.str() +
                                  " is not Hermitian");
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (row.letter(q) == 'I') {
        continue;
      }
      if (inputs[q] == InputKind::Data) {
        throw std::invalid_argument(
            "stabilizer row " + row.str() +
            " acts on data qubit " + std::to_string(q + 1));
      }
      covered[q] = true;
    }
  }
  std::size_t zero_count = 0;
  t.stab_ = declared_rows;
  for (std::size_t q = 0; q < n; ++q) {
    if (inputs[q] == InputKind::FixedZero) {
      ++zero_count;
      if (!covered[q]) {
        t.stab_.push_back(PauliOperator::single(n, q, 'Z'));
      }
    }
  }
  if (t.stab_.size() != zero_count) {
    throw std::invalid_argument(
        "declared stabilizer rows do not match the zero-input qubits they "
        "cover (" +
        std::to_string(t.stab_.size()) + " rows for " +
        std::to_string(zero_count) + " qubits)");
  }
  if (!t.stab_.empty()) {
    StabilizerCheck check = check_stabilizer_rows({n, t.stab_});
    if (!check.ok) {
      throw std::invalid_argument("invalid stabilizer declaration: " +
                                  check.error);
    }
  }

  for (std::size_t q = 0; q < n; ++q) {
    if (inputs[q] != InputKind::Data) {
      continue;
    }
    LogicalPair pair;
    pair.x = PauliOperator::single(n, q, 'X');
    pair.z = PauliOperator::single(n, q, 'Z');
    pair.label = (!data_labels.empty() && !data_labels[q].empty())
                     ? data_labels[q]
                     : std::to_string(q + 1);
    t.pairs_.push_back(std::move(pair));
  }
  t.started_single_pair_ = t.pairs_.size() == 1;
  return t;
}

Tableau Tableau::from_rows(std::size_t num_qubits,
                           std::vector<PauliOperator> stabilizer_rows,
                           std::vector<LogicalPair> pairs) {
  Tableau t;
  t.num_qubits_ = num_qubits;
  t.stab_ = std::move(stabilizer_rows);
  t.pairs_ = std::move(pairs);
  t.started_single_pair_ = t.pairs_.size() == 1;
  std::string err = t.validate();
  if (!err.empty()) {
    throw std::invalid_argument(err);
  }
  return t;
}

void Tableau::apply_gate(const CliffordGate& g) {
  if (g.q0 >= num_qubits_ ||
      (g.kind == CliffordGate::Kind::CNOT &&
       (g.q1 >= num_qubits_ || g.q1 == g.q0))) {
    throw std::invalid_argument("gate qubit index out of range");
  }
  auto for_each_row = [&](auto&& fn) {
    for (PauliOperator& row : stab_) {
      fn(row);
    }
    for (LogicalPair& pair : pairs_) {
      fn(pair.x);
      fn(pair.z);
    }
  };
  switch (g.kind) {
    case CliffordGate::Kind::R:
      for_each_row([&](PauliOperator& row) { row.conj_r(g.q0); });
      break;
    case CliffordGate::Kind::P:
      for_each_row([&](PauliOperator& row) { row.conj_p(g.q0); });
      break;
    case CliffordGate::Kind::CNOT:
      for_each_row([&](PauliOperator& row) { row.conj_cnot(g.q0, g.q1); });
      break;
  }
}

void Tableau::apply_pauli(const PauliOperator& e) {
  if (e.num_qubits() != num_qubits_) {
    throw std::invalid_argument("apply_pauli: operator width mismatch");
  }
  if (!e.is_hermitian()) {
    throw std::invalid_argument("apply_pauli: operator must be Hermitian");
  }
  auto flip_if_anticommuting = [&](PauliOperator& row) {
    if (!commutes(row, e)) {
      row.flip_sign();
    }
  };
  for (PauliOperator& row : stab_) {
    flip_if_anticommuting(row);
  }
  for (LogicalPair& pair : pairs_) {
    flip_if_anticommuting(pair.x);
    flip_if_anticommuting(pair.z);
  }
}

MeasurementRecord Tableau::measure(const PauliOperator& a, bool force_plus,
                                   std::optional<int> forced_draw,
                                   std::mt19937_64* rng) {
  if (a.num_qubits() != num_qubits_) {
    throw std::invalid_argument("measure: observable width mismatch");
  }
  if (!a.is_hermitian()) {
    throw std::invalid_argument("measure: observable " + a.str() +
                                " is not Hermitian");
  }
  MeasurementRecord rec;
  rec.observable = a;
  rec.force_plus = force_plus;

  std::size_t stab_witness = stab_.size();
  for (std::size_t i = 0; i < stab_.size(); ++i) {
    if (!commutes(stab_[i], a)) {
      stab_witness = i;
      break;
    }
  }

  if (stab_witness < stab_.size()) {
    rec.kind = MeasureCase::StabilizerWitness;
    const PauliOperator witness = stab_[stab_witness];
    rec.witness = witness;
    for (std::size_t j = 0; j < stab_.size(); ++j) {
      if (j != stab_witness && !commutes(stab_[j], a)) {
        stab_[j] *= witness;
      }
    }
    for (LogicalPair& pair : pairs_) {
      if (!commutes(pair.x, a)) {
        pair.x *= witness;
      }
      if (!commutes(pair.z, a)) {
        pair.z *= witness;
      }
    }
    rec.outcome = draw_outcome(forced_draw, rng);
    PauliOperator new_row = a;
    if (!force_plus && rec.outcome == -1) {
      new_row.flip_sign();
    }
    rec.corrected = force_plus && rec.outcome == -1;
    stab_[stab_witness] = std::move(new_row);
    return rec;
  }

  // No stabilizer row anticommutes; look for a logical witness, scanning
  // pairs in order and X before Z inside a pair.
  std::size_t pair_idx = pairs_.size();
  bool witness_is_x = false;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    if (!commutes(pairs_[p].x, a)) {
      pair_idx = p;
      witness_is_x = true;
      break;
    }
    if (!commutes(pairs_[p].z, a)) {
      pair_idx = p;
      witness_is_x = false;
      break;
    }
  }

  if (pair_idx < pairs_.size()) {
    rec.kind = MeasureCase::LogicalWitness;
    const PauliOperator witness =
        witness_is_x ? pairs_[pair_idx].x : pairs_[pair_idx].z;
    rec.witness = witness;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (p == pair_idx) {
        continue;
      }
      if (!commutes(pairs_[p].x, a)) {
        pairs_[p].x *= witness;
      }
      if (!commutes(pairs_[p].z, a)) {
        pairs_[p].z *= witness;
      }
    }
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(pair_idx));
    rec.outcome = draw_outcome(forced_draw, rng);
    PauliOperator new_row = a;
    if (!force_plus && rec.outcome == -1) {
      new_row.flip_sign();
    }
    rec.corrected = force_plus && rec.outcome == -1;
    stab_.push_back(std::move(new_row));
    return rec;
  }

  // Everything commutes, so the observable's bits lie in the stabilizer's
  // row space and the outcome is already decided.
  rec.kind = MeasureCase::Deterministic;
  MembershipResult m = membership(GeneratorSet{num_qubits_, stab_}, a);
  if (!m.binary_in_span || (m.phase_exp & 1u)) {
    throw std::logic_error("measure: tableau invariants are broken");
  }
  rec.outcome = m.phase_exp == 0 ? +1 : -1;
  return rec;
}

void Tableau::drop_qubit(std::size_t q) {
  if (q >= num_qubits_) {
    throw std::invalid_argument("drop: qubit index out of range");
  }
  auto touches = [&](const PauliOperator& p) { return p.letter(q) != 'I'; };

  std::vector<std::size_t> touching;
  for (std::size_t i = 0; i < stab_.size(); ++i) {
    if (touches(stab_[i])) {
      touching.push_back(i);
    }
  }
  if (touching.empty()) {
    throw std::runtime_error("drop: qubit " + std::to_string(q + 1) +
                             " is not constrained by the stabilizer");
  }
  const std::size_t pivot_idx = touching.front();
  const char pivot_letter = stab_[pivot_idx].letter(q);
  for (std::size_t k = 1; k < touching.size(); ++k) {
    if (stab_[touching[k]].letter(q) != pivot_letter) {
      throw std::runtime_error("drop: qubit " + std::to_string(q + 1) +
                               " is not pinned to a single letter");
    }
    stab_[touching[k]] *= stab_[pivot_idx];
  }

  // Reduce the pivot modulo the other rows; the remainder must act on q
  // alone, otherwise q is still entangled with the rest of the register.
  std::vector<PauliOperator> others;
  others.reserve(stab_.size() - 1);
  for (std::size_t i = 0; i < stab_.size(); ++i) {
    if (i != pivot_idx) {
      others.push_back(stab_[i]);
    }
  }
  EchelonBasis basis(std::move(others));
  basis.reduce(stab_[pivot_idx]);
  if (stab_[pivot_idx].weight() != 1) {
    throw std::runtime_error("drop: qubit " + std::to_string(q + 1) +
                             " is still entangled with the register");
  }
  const PauliOperator pivot = stab_[pivot_idx];

  for (LogicalPair& pair : pairs_) {
    for (PauliOperator* member : {&pair.x, &pair.z}) {
      if (!touches(*member)) {
        continue;
      }
      if (member->letter(q) != pivot_letter) {
        throw std::runtime_error(
            "drop: a tracked row holds qubit " + std::to_string(q + 1) +
            " in a basis the stabilizer does not pin");
      }
      *member *= pivot;
    }
  }

  stab_.erase(stab_.begin() + static_cast<std::ptrdiff_t>(pivot_idx));
  for (PauliOperator& row : stab_) {
    row.erase_qubit(q);
  }
  for (LogicalPair& pair : pairs_) {
    pair.x.erase_qubit(q);
    pair.z.erase_qubit(q);
  }
  --num_qubits_;
}

std::string Tableau::pair_prefix(const LogicalPair& p, char which) const {
  std::string prefix = which == 'x' ? "Xbar" : "Zbar";
  if (!started_single_pair_) {
    prefix += "_";
    prefix += p.label;
  }
  return prefix;
}

Snapshot Tableau::snapshot() const {
  Snapshot snap;
  for (const PauliOperator& row : stab_) {
    snap.stabilizer_rows.push_back(row.str());
  }
  for (const LogicalPair& pair : pairs_) {
    snap.x_rows.emplace_back(pair_prefix(pair, 'x'), pair.x.str());
  }
  for (const LogicalPair& pair : pairs_) {
    snap.z_rows.emplace_back(pair_prefix(pair, 'z'), pair.z.str());
  }
  return snap;
}

std::string Tableau::validate() const {
  if (stab_.size() + pairs_.size() != num_qubits_) {
    return "row count does not match the qubit count";
  }
  if (!stab_.empty()) {
    StabilizerCheck check = check_stabilizer_rows({num_qubits_, stab_});
    if (!check.ok) {
      return "stabilizer rows: " + check.error;
    }
  }
  std::vector<PauliOperator> all = stab_;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const LogicalPair& pair = pairs_[p];
    if (pair.x.num_qubits() != num_qubits_ ||
        pair.z.num_qubits() != num_qubits_) {
      return "logical pair width mismatch";
    }
    if (!pair.x.is_hermitian() || !pair.z.is_hermitian()) {
      return "logical pair " + pair.label + " is not Hermitian";
    }
    if (commutes(pair.x, pair.z)) {
      return "logical pair " + pair.label + " does not anticommute";
    }
    for (const PauliOperator& row : stab_) {
      if (!commutes(pair.x, row) || !commutes(pair.z, row)) {
        return "logical pair " + pair.label +
               " anticommutes with a stabilizer row";
      }
    }
    for (std::size_t o = 0; o < pairs_.size(); ++o) {
      if (o == p) {
        continue;
      }
      if (!commutes(pair.x, pairs_[o].x) || !commutes(pair.x, pairs_[o].z) ||
          !commutes(pair.z, pairs_[o].x) || !commutes(pair.z, pairs_[o].z)) {
        return "logical pairs " + pair.label + " and " + pairs_[o].label +
               " do not commute";
      }
    }
    all.push_back(pair.x);
    all.push_back(pair.z);
  }
  CanonicalForm full = canonicalize(GeneratorSet{num_qubits_, all});
  if (full.rank != all.size()) {
    return "tracked rows are dependent";
  }
  return "";
}

bool equivalent(const Tableau& a, const Tableau& b) {
  if (a.num_qubits() != b.num_qubits() ||
      a.logical_pairs().size() != b.logical_pairs().size()) {
    return false;
  }
  for (std::size_t p = 0; p < a.logical_pairs().size(); ++p) {
    if (a.logical_pairs()[p].label != b.logical_pairs()[p].label) {
      return false;
    }
  }
  CanonicalForm fa =
      canonicalize(GeneratorSet{a.num_qubits(), a.stabilizer_rows()});
  CanonicalForm fb =
      canonicalize(GeneratorSet{b.num_qubits(), b.stabilizer_rows()});
  if (fa.canonical.generators != fb.canonical.generators) {
    return false;
  }
  // Logical images must agree modulo the shared stabilizer, signs included:
  // the product of matching members has to reduce to a +1 group element.
  for (std::size_t p = 0; p < a.logical_pairs().size(); ++p) {
    for (auto select : {&LogicalPair::x, &LogicalPair::z}) {
      PauliOperator prod = a.logical_pairs()[p].*select;
      prod *= b.logical_pairs()[p].*select;
      MembershipResult m = membership(fa, prod);
      if (!m.binary_in_span || m.phase_exp != 0) {
        return false;
      }
    }
  }
  return true;
}

WorkloadResult run_random_clifford_workload(std::size_t n, std::size_t gates,
                                            std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("workload needs at least two qubits");
  }
  std::vector<InputKind> inputs(n);
  for (std::size_t q = 0; q < n; ++q) {
    inputs[q] = (q % 2 == 0) ? InputKind::FixedZero : InputKind::Data;
  }
  Tableau t = Tableau::init(inputs);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);

  WorkloadResult result;
  result.qubits = n;
  result.gates = gates;
  result.bytes_per_row = 16 * ((n + 63) / 64) + 4;

  // Measurements start after a scrambling prefix so early deterministic
  // outcomes do not dominate the timing.
  const std::size_t warmup = gates / 20;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < gates; ++i) {
    std::uint64_t pick = rng() % 100;
    if (pick < 30) {
      t.apply_gate({CliffordGate::Kind::R, rng() % n, 0});
    } else if (pick < 50) {
      t.apply_gate({CliffordGate::Kind::P, rng() % n, 0});
    } else if (pick < 90 || i < warmup) {
      std::size_t c = rng() % n;
      std::size_t d = rng() % (n - 1);
      if (d >= c) {
        ++d;
      }
      t.apply_gate({CliffordGate::Kind::CNOT, c, d});
    } else if (pick < 95) {
      static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
      t.apply_pauli(PauliOperator::single(n, rng() % n, kLetters[rng() % 3]));
    } else {
      t.measure(PauliOperator::single(n, rng() % n, 'Z'), false, std::nullopt,
                &rng);
      ++result.measurements;
    }
  }
  auto stop = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(stop - start).count();
  result.rows = t.num_rows();
  return result;
}

}  // namespace stabsim
