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

#include "stabsim/oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace stabsim {

namespace {

using cd = std::complex<double>;

constexpr double kSqrtHalf = 0.7071067811865475244;

// Index bit for qubit q in an n-qubit register (qubit 1 most significant).
std::uint64_t index_mask(std::size_t n, std::size_t q) {
  return std::uint64_t{1} << (n - 1 - q);
}

cd i_power(unsigned e) {
  switch (e & 3u) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

struct PackedMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  cd phase;
};

PackedMasks index_masks(std::size_t n, const PauliOperator& p) {
  if (p.num_qubits() != n) {
    throw std::invalid_argument("operator width does not match the state");
  }
  if (n > 24) {
    throw std::invalid_argument("dense reference limited to 24 qubits");
  }
  PackedMasks m;
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x_bit(q)) m.x |= index_mask(n, q);
    if (p.z_bit(q)) m.z |= index_mask(n, q);
  }
  m.phase = i_power(p.phase_exp());
  return m;
}

Eigen::VectorXcd apply_masks(const Eigen::VectorXcd& in,
                             const PackedMasks& m) {
  const auto dim = in.size();
  Eigen::VectorXcd out(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto sb = static_cast<std::uint64_t>(b);
    const double sign =
        (std::popcount(sb & m.z) & 1u) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(sb ^ m.x)] = m.phase * sign * in[b];
  }
  return out;
}

}  // namespace

DenseState zero_state(std::size_t n) {
  if (n > 24) {
    throw std::invalid_argument("dense reference limited to 24 qubits");
  }
  DenseState psi;
  psi.num_qubits = n;
  psi.amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  psi.amps[0] = cd{1.0, 0.0};
  return psi;
}

void apply_gate(DenseState& psi, const CliffordGate& g) {
  const std::size_t n = psi.num_qubits;
  if (g.q0 >= n || (g.kind == CliffordGate::Kind::CNOT && g.q1 >= n)) {
    throw std::invalid_argument("gate qubit out of range");
  }
  const auto dim = psi.amps.size();
  switch (g.kind) {
    case CliffordGate::Kind::R: {
      const std::uint64_t m = index_mask(n, g.q0);
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (static_cast<std::uint64_t>(b) & m) continue;
        const Eigen::Index b1 = static_cast<Eigen::Index>(
            static_cast<std::uint64_t>(b) | m);
        const cd a0 = psi.amps[b];
        const cd a1 = psi.amps[b1];
        psi.amps[b] = (a0 + a1) * kSqrtHalf;
        psi.amps[b1] = (a0 - a1) * kSqrtHalf;
      }
      break;
    }
    case CliffordGate::Kind::P: {
      const std::uint64_t m = index_mask(n, g.q0);
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (static_cast<std::uint64_t>(b) & m) {
          psi.amps[b] *= cd{0.0, 1.0};
        }
      }
      break;
    }
    case CliffordGate::Kind::CNOT: {
      const std::uint64_t mc = index_mask(n, g.q0);
      const std::uint64_t mt = index_mask(n, g.q1);
      for (Eigen::Index b = 0; b < dim; ++b) {
        const auto sb = static_cast<std::uint64_t>(b);
        if ((sb & mc) && !(sb & mt)) {
          std::swap(psi.amps[b],
                    psi.amps[static_cast<Eigen::Index>(sb | mt)]);
        }
      }
      break;
    }
  }
}

void apply_operator(DenseState& psi, const PauliOperator& p) {
  psi.amps = apply_masks(psi.amps, index_masks(psi.num_qubits, p));
}

double prob_plus(const DenseState& psi, const PauliOperator& a) {
  if (!a.is_hermitian()) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  const Eigen::VectorXcd image =
      apply_masks(psi.amps, index_masks(psi.num_qubits, a));
  const double expectation = psi.amps.dot(image).real();
  return 0.5 * (1.0 + expectation);
}

void project(DenseState& psi, const PauliOperator& a, int outcome) {
  if (outcome != 1 && outcome != -1) {
    throw std::invalid_argument("outcome must be +1 or -1");
  }
  const Eigen::VectorXcd image =
      apply_masks(psi.amps, index_masks(psi.num_qubits, a));
  psi.amps = 0.5 * (psi.amps + static_cast<double>(outcome) * image);
  const double nrm = psi.amps.norm();
  if (nrm < 1e-9) {
    throw std::runtime_error("projection annihilated the state");
  }
  psi.amps /= nrm;
}

void drop_qubit(DenseState& psi, std::size_t q) {
  const std::size_t n = psi.num_qubits;
  if (q >= n) {
    throw std::invalid_argument("drop qubit out of range");
  }
  const std::size_t bitpos = n - 1 - q;
  const std::uint64_t low = (std::uint64_t{1} << bitpos) - 1;
  const Eigen::Index half = psi.amps.size() / 2;
  Eigen::VectorXcd v0(half);
  Eigen::VectorXcd v1(half);
  for (Eigen::Index b = 0; b < psi.amps.size(); ++b) {
    const auto sb = static_cast<std::uint64_t>(b);
    const auto idx = static_cast<Eigen::Index>(((sb >> (bitpos + 1)) << bitpos) |
                                               (sb & low));
    if (sb & (std::uint64_t{1} << bitpos)) {
      v1[idx] = psi.amps[b];
    } else {
      v0[idx] = psi.amps[b];
    }
  }
  const double n0 = v0.squaredNorm();
  const double n1 = v1.squaredNorm();
  Eigen::VectorXcd kept = (n1 > n0 + 1e-9) ? v1 : v0;
  const double nrm = kept.norm();
  if (nrm < 1e-9) {
    throw std::runtime_error("dropped qubit leaves no amplitude");
  }
  psi.num_qubits = n - 1;
  psi.amps = kept / nrm;
}

double fidelity(const DenseState& a, const DenseState& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("states differ in width");
  }
  return std::norm(a.amps.dot(b.amps));
}

DenseState stabilizer_to_state(const GeneratorSet& gens) {
  const std::size_t n = gens.num_qubits;
  if (n > 24) {
    throw std::invalid_argument("dense reference limited to 24 qubits");
  }
  std::vector<PackedMasks> masks;
  masks.reserve(gens.generators.size());
  for (const auto& g : gens.generators) {
    if (!g.is_hermitian()) {
      throw std::invalid_argument("generators must be Hermitian");
    }
    masks.push_back(index_masks(n, g));
  }
  const double floor =
      0.5 * std::pow(0.5, static_cast<double>(gens.generators.size()));
  const Eigen::Index dim = Eigen::Index{1} << n;
  for (Eigen::Index start = 0; start < dim; ++start) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[start] = cd{1.0, 0.0};
    bool dead = false;
    for (const auto& m : masks) {
      psi = 0.5 * (psi + apply_masks(psi, m));
      if (psi.squaredNorm() < floor) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    psi /= psi.norm();
    for (Eigen::Index b = 0; b < dim; ++b) {
      if (std::abs(psi[b]) > 1e-9) {
        psi *= std::conj(psi[b]) / std::abs(psi[b]);
        break;
      }
    }
    DenseState out;
    out.num_qubits = n;
    out.amps = std::move(psi);
    return out;
  }
  throw std::runtime_error("generator set fixes no state");
}

DenseState predict_state(const Tableau& t,
                         const std::vector<QubitAmps>& pair_inputs) {
  const std::size_t n = t.num_qubits();
  GeneratorSet virt;
  virt.num_qubits = n;
  for (const auto& row : t.stabilizer_rows()) {
    virt.generators.push_back(row);
  }
  const auto& pairs = t.logical_pairs();
  for (const auto& pr : pairs) {
    virt.generators.push_back(pr.z);
  }
  DenseState base = stabilizer_to_state(virt);
  const std::size_t k = pairs.size();
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(base.amps.size());
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k);
       ++pattern) {
    cd coeff{1.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) {
      const bool one = (pattern >> j) & 1u;
      if (j < pair_inputs.size()) {
        coeff *= pair_inputs[j][one ? 1 : 0];
      } else if (one) {
        coeff = cd{0.0, 0.0};
      }
      if (std::abs(coeff) < 1e-15) break;
    }
    if (std::abs(coeff) < 1e-15) continue;
    DenseState term;
    term.num_qubits = n;
    term.amps = base.amps;
    for (std::size_t j = 0; j < k; ++j) {
      if ((pattern >> j) & 1u) {
        apply_operator(term, pairs[j].x);
      }
    }
    acc += coeff * term.amps;
  }
  DenseState out;
  out.num_qubits = n;
  const double nrm = acc.norm();
  if (nrm < 1e-9) {
    throw std::runtime_error("input amplitudes sum to the zero state");
  }
  out.amps = acc / nrm;
  return out;
}

double span_fidelity(const Tableau& t, const DenseState& psi) {
  const std::size_t n = t.num_qubits();
  GeneratorSet virt;
  virt.num_qubits = n;
  for (const auto& row : t.stabilizer_rows()) {
    virt.generators.push_back(row);
  }
  const auto& pairs = t.logical_pairs();
  for (const auto& pr : pairs) {
    virt.generators.push_back(pr.z);
  }
  const DenseState base = stabilizer_to_state(virt);
  const std::size_t k = pairs.size();
  double acc = 0.0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k);
       ++pattern) {
    DenseState branch;
    branch.num_qubits = n;
    branch.amps = base.amps;
    for (std::size_t j = 0; j < k; ++j) {
      if ((pattern >> j) & 1u) {
        apply_operator(branch, pairs[j].x);
      }
    }
    acc += std::norm(branch.amps.dot(psi.amps));
  }
  return acc;
}

DenseUnitary tableau_to_unitary(const Tableau& t) {
  const std::size_t n = t.num_qubits();
  if (!t.stabilizer_rows().empty() || t.logical_pairs().size() != n) {
    throw std::invalid_argument(
        "unitary extraction needs an all-data tableau with no "
        "stabilizer rows");
  }
  GeneratorSet zimgs;
  zimgs.num_qubits = n;
  for (const auto& pr : t.logical_pairs()) {
    zimgs.generators.push_back(pr.z);
  }
  const DenseState col0 = stabilizer_to_state(zimgs);
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseUnitary u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    DenseState psi;
    psi.num_qubits = n;
    psi.amps = col0.amps;
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<std::uint64_t>(c) & index_mask(n, j)) {
        apply_operator(psi, t.logical_pairs()[j].x);
      }
    }
    u.col(c) = psi.amps;
  }
  return u;
}

DenseUnitary gate_unitary(std::size_t n, const CliffordGate& g) {
  if (n > 12) {
    throw std::invalid_argument("gate matrices limited to 12 qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseUnitary u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    DenseState psi;
    psi.num_qubits = n;
    psi.amps = Eigen::VectorXcd::Zero(dim);
    psi.amps[c] = cd{1.0, 0.0};
    apply_gate(psi, g);
    u.col(c) = psi.amps;
  }
  return u;
}

DenseUnitary pauli_unitary(const PauliOperator& p) {
  const std::size_t n = p.num_qubits();
  if (n > 12) {
    throw std::invalid_argument("gate matrices limited to 12 qubits");
  }
  const PackedMasks m = index_masks(n, p);
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseUnitary u = DenseUnitary::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto sc = static_cast<std::uint64_t>(c);
    const double sign = (std::popcount(sc & m.z) & 1u) ? -1.0 : 1.0;
    u(static_cast<Eigen::Index>(sc ^ m.x), c) = m.phase * sign;
  }
  return u;
}

Trace cross_validate(const Circuit& c, const RunOptions& opts) {
  RunOptions both = opts;
  both.backend = Backend::Both;
  return run(c, both);
}

}  // namespace stabsim
