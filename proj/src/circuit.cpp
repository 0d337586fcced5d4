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

#include "stabsim/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "stabsim/oracle.hpp"

namespace stabsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return static_cast<char>(std::tolower(ch));
  });
  return out;
}

struct Token {
  std::string text;
  std::size_t col = 1;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) {
    return std::isdigit(ch) != 0;
  });
}

// 1-based index token in [1, limit]; returns the 0-based value.
std::size_t parse_index(const Token& tok, std::size_t line_no,
                        std::size_t limit, const char* what) {
  if (!all_digits(tok.text) || tok.text.size() > 9) {
    throw ParseError(std::string(what) + " index must be a number, got '" +
                         tok.text + "'",
                     line_no, tok.col);
  }
  const unsigned long v = std::stoul(tok.text);
  if (v < 1 || v > limit) {
    throw ParseError(std::string(what) + " index " + tok.text +
                         " out of range 1.." + std::to_string(limit),
                     line_no, tok.col);
  }
  return static_cast<std::size_t>(v - 1);
}

PauliOperator parse_pauli_token(const Token& tok, std::size_t line_no,
                                std::size_t width, const char* what) {
  try {
    PauliOperator p = parse_pauli(tok.text, width);
    if (!p.is_hermitian()) {
      throw ParseError(std::string(what) + " '" + tok.text +
                           "' is not Hermitian",
                       line_no, tok.col);
    }
    return p;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + " '" + tok.text + "': " + e.what(),
                     line_no, tok.col);
  }
}

std::string instr_text(const Instruction& in) {
  return std::visit(
      Overloaded{
          [](const CliffordGate& g) -> std::string {
            switch (g.kind) {
              case CliffordGate::Kind::R:
                return "R " + std::to_string(g.q0 + 1);
              case CliffordGate::Kind::P:
                return "P " + std::to_string(g.q0 + 1);
              default:
                return "CNOT " + std::to_string(g.q0 + 1) + " " +
                       std::to_string(g.q1 + 1);
            }
          },
          [](const PauliGateInstr& p) -> std::string {
            return std::string(1, p.letter) + " " + std::to_string(p.q + 1);
          },
          [](const MeasureInstr& m) -> std::string {
            std::string s = "measure " + m.observable.str();
            if (!m.bit.empty()) s += " -> " + m.bit;
            if (m.random_mode) s += " random";
            return s;
          },
          [](const CondPauliInstr& c) -> std::string {
            return "if " + c.bit + " apply " + c.correction.str();
          },
          [](const DropInstr& d) -> std::string {
            return "drop " + std::to_string(d.q + 1);
          },
      },
      in);
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

bool Circuit::has_random_measurement() const {
  for (const auto& step : steps) {
    for (const auto& in : step.instructions) {
      if (const auto* m = std::get_if<MeasureInstr>(&in)) {
        if (m->random_mode) return true;
      }
    }
  }
  return false;
}

bool Circuit::has_measurement_or_drop() const {
  for (const auto& step : steps) {
    for (const auto& in : step.instructions) {
      if (std::holds_alternative<MeasureInstr>(in) ||
          std::holds_alternative<DropInstr>(in)) {
        return true;
      }
    }
  }
  return false;
}

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_qubits = false;
  bool header_done = false;
  std::vector<bool> input_seen;
  std::set<std::string> names_seen;
  std::set<std::string> bits;
  std::size_t cur_n = 0;

  auto add_instr = [&](Instruction in) {
    header_done = true;
    if (c.explicit_steps) {
      c.steps.back().instructions.push_back(std::move(in));
    } else {
      Step s;
      s.label = instr_text(in);
      s.instructions.push_back(std::move(in));
      c.steps.push_back(std::move(s));
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const std::vector<Token> toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string key = lower(toks[0].text);

    if (!have_qubits) {
      if (key != "qubits") {
        throw ParseError("expected 'qubits <n>' before anything else", line_no,
                         toks[0].col);
      }
      if (toks.size() != 2 || !all_digits(toks[1].text) ||
          toks[1].text.size() > 5) {
        throw ParseError("qubits wants one count, e.g. 'qubits 3'", line_no,
                         toks[0].col);
      }
      const unsigned long n = std::stoul(toks[1].text);
      if (n < 1 || n > 4096) {
        throw ParseError("qubit count must be in 1..4096", line_no,
                         toks[1].col);
      }
      c.num_qubits = n;
      cur_n = n;
      c.inputs.assign(n, InputKind::Data);
      c.data_labels.assign(n, "");
      input_seen.assign(n, false);
      have_qubits = true;
      continue;
    }

    if (key == "qubits") {
      throw ParseError("duplicate qubits line", line_no, toks[0].col);
    }

    if (key == "input") {
      if (header_done) {
        throw ParseError("input lines belong in the header", line_no,
                         toks[0].col);
      }
      if (toks.size() < 3 || toks.size() > 4) {
        throw ParseError("input wants: input <q> zero|data [name]", line_no,
                         toks[0].col);
      }
      const std::size_t q = parse_index(toks[1], line_no, c.num_qubits,
                                        "qubit");
      if (input_seen[q]) {
        throw ParseError("duplicate input line for qubit " + toks[1].text,
                         line_no, toks[1].col);
      }
      input_seen[q] = true;
      const std::string kind = lower(toks[2].text);
      if (kind == "zero") {
        if (toks.size() == 4) {
          throw ParseError("names apply to data inputs only", line_no,
                           toks[3].col);
        }
        c.inputs[q] = InputKind::FixedZero;
      } else if (kind == "data") {
        c.inputs[q] = InputKind::Data;
        if (toks.size() == 4) {
          if (all_digits(toks[3].text)) {
            throw ParseError("data names must not be bare numbers", line_no,
                             toks[3].col);
          }
          if (!names_seen.insert(toks[3].text).second) {
            throw ParseError("duplicate data name '" + toks[3].text + "'",
                             line_no, toks[3].col);
          }
          c.data_labels[q] = toks[3].text;
        }
      } else {
        throw ParseError("input kind must be zero or data, got '" +
                             toks[2].text + "'",
                         line_no, toks[2].col);
      }
      continue;
    }

    if (key == "stabilizer") {
      if (header_done) {
        throw ParseError("stabilizer lines belong in the header", line_no,
                         toks[0].col);
      }
      if (toks.size() != 2) {
        throw ParseError("stabilizer wants one operator", line_no,
                         toks[0].col);
      }
      c.declared_rows.push_back(parse_pauli_token(
          toks[1], line_no, c.num_qubits, "stabilizer row"));
      continue;
    }

    if (key == "step") {
      const std::size_t after = toks[0].col - 1 + toks[0].text.size();
      std::string label(raw.substr(std::min(after, raw.size())));
      const auto b = label.find_first_not_of(" \t\r");
      const auto e = label.find_last_not_of(" \t\r");
      label = (b == std::string::npos) ? std::string()
                                       : label.substr(b, e - b + 1);
      if (label.empty()) {
        throw ParseError("step needs a label", line_no, toks[0].col);
      }
      if (!c.explicit_steps && !c.steps.empty()) {
        throw ParseError("step directives cannot follow bare instructions",
                         line_no, toks[0].col);
      }
      c.explicit_steps = true;
      header_done = true;
      c.steps.push_back(Step{std::move(label), {}});
      continue;
    }

    if (key == "r" || key == "p") {
      if (toks.size() != 2) {
        throw ParseError("gate wants one qubit index", line_no, toks[0].col);
      }
      CliffordGate g;
      g.kind = (key == "r") ? CliffordGate::Kind::R : CliffordGate::Kind::P;
      g.q0 = parse_index(toks[1], line_no, cur_n, "qubit");
      add_instr(g);
      continue;
    }

    if (key == "cnot") {
      if (toks.size() != 3) {
        throw ParseError("CNOT wants control and target indices", line_no,
                         toks[0].col);
      }
      CliffordGate g;
      g.kind = CliffordGate::Kind::CNOT;
      g.q0 = parse_index(toks[1], line_no, cur_n, "control");
      g.q1 = parse_index(toks[2], line_no, cur_n, "target");
      if (g.q0 == g.q1) {
        throw ParseError("control and target must differ", line_no,
                         toks[2].col);
      }
      add_instr(g);
      continue;
    }

    if (key == "x" || key == "y" || key == "z") {
      if (toks.size() != 2) {
        throw ParseError("gate wants one qubit index", line_no, toks[0].col);
      }
      PauliGateInstr p;
      p.q = parse_index(toks[1], line_no, cur_n, "qubit");
      p.letter = static_cast<char>(std::toupper(
          static_cast<unsigned char>(key[0])));
      add_instr(p);
      continue;
    }

    if (key == "measure") {
      if (toks.size() < 2) {
        throw ParseError("measure wants an observable", line_no, toks[0].col);
      }
      MeasureInstr m;
      m.observable =
          parse_pauli_token(toks[1], line_no, cur_n, "observable");
      std::size_t i = 2;
      if (i < toks.size() && toks[i].text == "->") {
        if (i + 1 >= toks.size()) {
          throw ParseError("-> wants a bit name", line_no, toks[i].col);
        }
        if (!bits.insert(toks[i + 1].text).second) {
          throw ParseError("bit '" + toks[i + 1].text + "' already bound",
                           line_no, toks[i + 1].col);
        }
        m.bit = toks[i + 1].text;
        i += 2;
      }
      if (i < toks.size() && lower(toks[i].text) == "random") {
        m.random_mode = true;
        ++i;
      }
      if (i != toks.size()) {
        throw ParseError("unexpected token '" + toks[i].text +
                             "' after measure",
                         line_no, toks[i].col);
      }
      add_instr(std::move(m));
      continue;
    }

    if (key == "if") {
      if (toks.size() != 4 || lower(toks[2].text) != "apply") {
        throw ParseError("if wants: if <bit> apply <operator>", line_no,
                         toks[0].col);
      }
      if (!bits.count(toks[1].text)) {
        throw ParseError("if references unbound bit '" + toks[1].text + "'",
                         line_no, toks[1].col);
      }
      CondPauliInstr cp;
      cp.bit = toks[1].text;
      cp.correction =
          parse_pauli_token(toks[3], line_no, cur_n, "correction");
      add_instr(std::move(cp));
      continue;
    }

    if (key == "drop") {
      if (toks.size() != 2) {
        throw ParseError("drop wants one qubit index", line_no, toks[0].col);
      }
      if (cur_n == 0) {
        throw ParseError("no qubits left to drop", line_no, toks[0].col);
      }
      DropInstr d;
      d.q = parse_index(toks[1], line_no, cur_n, "qubit");
      --cur_n;
      add_instr(d);
      continue;
    }

    throw ParseError("unknown directive '" + toks[0].text + "'", line_no,
                     toks[0].col);
  }

  if (!have_qubits) {
    throw ParseError("empty circuit: expected 'qubits <n>'", 1, 1);
  }
  return c;
}

Circuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open circuit file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.num_qubits << "\n";
  for (std::size_t q = 0; q < c.num_qubits; ++q) {
    out << "input " << (q + 1)
        << (c.inputs[q] == InputKind::FixedZero ? " zero" : " data");
    if (c.inputs[q] == InputKind::Data && !c.data_labels[q].empty()) {
      out << " " << c.data_labels[q];
    }
    out << "\n";
  }
  for (const auto& row : c.declared_rows) {
    out << "stabilizer " << row.str() << "\n";
  }
  for (const auto& step : c.steps) {
    if (c.explicit_steps) {
      out << "step " << step.label << "\n";
    }
    for (const auto& in : step.instructions) {
      out << instr_text(in) << "\n";
    }
  }
  return out.str();
}

Trace run(const Circuit& c, const RunOptions& opts) {
  const bool with_oracle = opts.backend != Backend::TableauOnly;
  const bool score = opts.backend == Backend::Both;
  constexpr double kTol = 1e-9;

  Tableau t = c.declared_rows.empty()
                  ? Tableau::init(c.inputs, c.data_labels)
                  : Tableau::init(c.inputs, c.declared_rows, c.data_labels);
  std::mt19937_64 rng(splitmix64(opts.seed));
  std::map<std::string, int> bit_values;

  // Reference-side inputs are keyed by pair label so retirement and
  // reordering cannot desynchronize them.
  std::map<std::string, QubitAmps> input_by_label;
  DenseState psi;
  if (with_oracle) {
    if (c.num_qubits > opts.oracle_limit) {
      throw std::runtime_error(
          "circuit uses " + std::to_string(c.num_qubits) +
          " qubits, above the reference limit " +
          std::to_string(opts.oracle_limit));
    }
    const auto& pairs = t.logical_pairs();
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      QubitAmps amps{std::complex<double>{1.0, 0.0},
                     std::complex<double>{0.0, 0.0}};
      if (j < opts.data_inputs.size()) {
        amps = opts.data_inputs[j];
        const double nrm =
            std::norm(amps[0]) + std::norm(amps[1]);
        if (std::abs(nrm - 1.0) > 1e-9) {
          throw std::invalid_argument(
              "data input amplitudes must be normalized");
        }
      }
      input_by_label.emplace(pairs[j].label, amps);
    }
  }
  auto current_inputs = [&]() {
    std::vector<QubitAmps> v;
    v.reserve(t.logical_pairs().size());
    for (const auto& pr : t.logical_pairs()) {
      v.push_back(input_by_label.at(pr.label));
    }
    return v;
  };
  if (with_oracle) {
    psi = predict_state(t, current_inputs());
  }

  Trace tr;
  bool inputs_tracked = true;
  auto push_block = [&](const std::string& label,
                        std::vector<MeasurementEvent> evs) {
    StepTrace st;
    st.label = label;
    st.snapshot = t.snapshot();
    st.measurements = std::move(evs);
    if (score) {
      if (inputs_tracked) {
        const DenseState pred = predict_state(t, current_inputs());
        st.fidelity = fidelity(psi, pred);
      } else {
        st.fidelity = span_fidelity(t, psi);
        st.span_scored = true;
      }
      tr.min_fidelity = std::min(tr.min_fidelity, st.fidelity);
    }
    tr.steps.push_back(std::move(st));
  };
  push_block("Start", {});

  for (const Step& step : c.steps) {
    std::vector<MeasurementEvent> evs;
    for (const Instruction& in : step.instructions) {
      std::visit(
          Overloaded{
              [&](const CliffordGate& g) {
                t.apply_gate(g);
                if (with_oracle) apply_gate(psi, g);
              },
              [&](const PauliGateInstr& pg) {
                const PauliOperator e =
                    PauliOperator::single(t.num_qubits(), pg.q, pg.letter);
                t.apply_pauli(e);
                if (with_oracle) apply_operator(psi, e);
              },
              [&](const MeasureInstr& m) {
                MeasurementEvent ev;
                const bool force = !m.random_mode;
                MeasurementRecord rec;
                if (with_oracle) {
                  const double p = prob_plus(psi, m.observable);
                  ev.prob_plus = p;
                  int out;
                  if (p > 1.0 - kTol) {
                    out = +1;
                  } else if (p < kTol) {
                    out = -1;
                  } else {
                    std::uniform_real_distribution<double> unit(0.0, 1.0);
                    out = (unit(rng) < p) ? +1 : -1;
                    if (std::abs(p - 0.5) < kTol) {
                      ev.fair_draw = true;
                      ++tr.fair_draws;
                      if (out == +1) ++tr.fair_plus;
                    }
                  }
                  rec = t.measure(m.observable, force, out, nullptr);
                  if (rec.kind == MeasureCase::Deterministic) {
                    ev.determinism_ok = (rec.outcome == +1)
                                            ? (p > 1.0 - kTol)
                                            : (p < kTol);
                    if (!ev.determinism_ok) tr.determinism_ok = false;
                  } else if (rec.kind == MeasureCase::LogicalWitness) {
                    inputs_tracked = false;
                  }
                  project(psi, m.observable, rec.outcome);
                  if (force && rec.outcome == -1 &&
                      rec.kind != MeasureCase::Deterministic) {
                    apply_operator(psi, *rec.witness);
                  }
                } else {
                  rec = t.measure(m.observable, force, std::nullopt, &rng);
                }
                if (!m.bit.empty()) {
                  rec.bit = m.bit;
                  bit_values[m.bit] = rec.outcome;
                }
                ev.record = std::move(rec);
                evs.push_back(std::move(ev));
              },
              [&](const CondPauliInstr& cp) {
                if (bit_values.at(cp.bit) == -1) {
                  t.apply_pauli(cp.correction);
                  if (with_oracle) apply_operator(psi, cp.correction);
                }
              },
              [&](const DropInstr& d) {
                t.drop_qubit(d.q);
                if (with_oracle) drop_qubit(psi, d.q);
              },
          },
          in);
    }
    push_block(step.label, std::move(evs));
  }

  tr.final_tableau = t;
  if (with_oracle) {
    tr.final_amplitudes.assign(psi.amps.data(),
                               psi.amps.data() + psi.amps.size());
  }
  return tr;
}

std::string format_trace(const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    out += "== " + t.steps[i].label + "\n";
    out += t.steps[i].snapshot.text();
    if (i + 1 < t.steps.size()) out += "\n";
  }
  return out;
}

std::string format_records(const Trace& t) {
  std::ostringstream out;
  for (const auto& st : t.steps) {
    out << "step\t" << st.label << "\n";
    for (const auto& row : st.snapshot.stabilizer_rows) {
      out << "row\tstab\t" << row << "\n";
    }
    auto emit_logical = [&](const std::pair<std::string, std::string>& pr) {
      std::string name = pr.first;
      if (const auto colon = name.find(':'); colon != std::string::npos) {
        name = name.substr(0, colon);
      }
      out << "row\t" << name << "\t" << pr.second << "\n";
    };
    for (const auto& pr : st.snapshot.x_rows) emit_logical(pr);
    for (const auto& pr : st.snapshot.z_rows) emit_logical(pr);
    for (const auto& ev : st.measurements) {
      const char* kind = "deterministic";
      if (ev.record.kind == MeasureCase::StabilizerWitness) {
        kind = "stabilizer-witness";
      } else if (ev.record.kind == MeasureCase::LogicalWitness) {
        kind = "logical-witness";
      }
      out << "measure\t" << ev.record.observable.str() << "\t"
          << (ev.record.outcome > 0 ? "+1" : "-1") << "\t" << kind << "\t"
          << (ev.record.force_plus ? "pinned" : "random") << "\t"
          << (ev.record.bit ? *ev.record.bit : "-") << "\t"
          << (ev.prob_plus >= 0.0 ? format_double(ev.prob_plus) : "-")
          << "\n";
    }
    if (st.fidelity >= 0.0) {
      out << "fidelity\t" << format_double(st.fidelity) << "\n";
    }
  }
  return out.str();
}

}  // namespace stabsim
