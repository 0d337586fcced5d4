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

#include <CLI11.hpp>

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "stabsim/circuit.hpp"
#include "stabsim/codes.hpp"
#include "stabsim/oracle.hpp"
#include "stabsim/pauli.hpp"
#include "stabsim/tableau.hpp"

namespace {

std::string format_double(double v) {
  if (v == 0.0) {
    v = 0.0;  // fold the sign of a negative zero
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// 0 ok, 2 when the variable is set but unreadable.
int env_seed(std::optional<std::uint64_t>& seed) {
  const char* raw = std::getenv("STABSIM_SEED");
  if (raw == nullptr || *raw == '\0') {
    return 0;
  }
  errno = 0;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0' || raw[0] == '-') {
    std::fprintf(stderr, "error: STABSIM_SEED is not an unsigned integer\n");
    return 2;
  }
  seed = value;
  return 0;
}

stabsim::Backend backend_from(const std::string& name) {
  if (name == "oracle") {
    return stabsim::Backend::OracleOnly;
  }
  if (name == "both") {
    return stabsim::Backend::Both;
  }
  return stabsim::Backend::TableauOnly;
}

void dump_amplitudes(const Eigen::VectorXcd& amps) {
  std::string out;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    out += std::to_string(static_cast<std::size_t>(i));
    out += ' ';
    out += format_double(amps[i].real());
    out += ' ';
    out += format_double(amps[i].imag());
    out += '\n';
  }
  std::fputs(out.c_str(), stdout);
}

std::string syndrome_string(std::uint64_t packed, std::size_t bits) {
  std::string s(bits, '0');
  for (std::size_t i = 0; i < bits; ++i) {
    if (packed & (std::uint64_t{1} << i)) {
      s[i] = '1';
    }
  }
  return s;
}

int cmd_trace(const std::string& file, const std::string& backend,
              const std::string& format,
              std::optional<std::uint64_t> seed, std::size_t limit) {
  stabsim::Circuit c = stabsim::parse_circuit_file(file);
  if (c.has_random_measurement() && !seed) {
    std::fprintf(stderr,
                 "error: the circuit draws random outcomes; pass --seed or "
                 "set STABSIM_SEED\n");
    return 2;
  }
  stabsim::RunOptions opts;
  opts.backend = backend_from(backend);
  opts.seed = seed.value_or(0);
  opts.oracle_limit = limit;
  stabsim::Trace tr = stabsim::run(c, opts);
  std::string out = format == "records" ? stabsim::format_records(tr)
                                        : stabsim::format_trace(tr);
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_verify(const std::string& file, std::size_t trials,
               std::optional<std::uint64_t> seed, std::size_t limit) {
  stabsim::Circuit c = stabsim::parse_circuit_file(file);
  if (c.has_random_measurement() && !seed) {
    std::fprintf(stderr,
                 "error: the circuit draws random outcomes; pass --seed or "
                 "set STABSIM_SEED\n");
    return 2;
  }
  if (trials == 0) {
    trials = 1;
  }
  std::uint64_t base = seed.value_or(0);
  double min_fidelity = 1.0;
  bool determinism_ok = true;
  std::size_t fair_draws = 0;
  std::size_t fair_plus = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    stabsim::RunOptions opts;
    opts.backend = stabsim::Backend::Both;
    opts.seed = base + t;
    opts.oracle_limit = limit;
    stabsim::Trace tr = stabsim::run(c, opts);
    min_fidelity = std::min(min_fidelity, tr.min_fidelity);
    determinism_ok = determinism_ok && tr.determinism_ok;
    fair_draws += tr.fair_draws;
    fair_plus += tr.fair_plus;
  }
  std::printf("trials %zu\n", trials);
  std::printf("min-fidelity %s\n", format_double(min_fidelity).c_str());
  std::printf("fair-draws %zu (plus %zu)\n", fair_draws, fair_plus);
  std::printf("determinism %s\n", determinism_ok ? "ok" : "violated");
  if (min_fidelity < 1.0 - 1e-9 || !determinism_ok) {
    std::fprintf(stderr, "error: the backends disagree\n");
    return 1;
  }
  std::printf("verified\n");
  return 0;
}

int cmd_ket(const std::string& file, std::size_t limit) {
  stabsim::StabilizerCode code = stabsim::parse_code_file(file);
  std::string err = stabsim::check_code(code);
  if (!err.empty()) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return 1;
  }
  if (code.num_logical != 0) {
    std::fprintf(stderr,
                 "error: the group leaves %zu qubits free; a single ket "
                 "needs k=0\n",
                 code.num_logical);
    return 1;
  }
  if (code.num_qubits > limit) {
    std::fprintf(stderr,
                 "error: the group uses %zu qubits, above the reference "
                 "limit %zu\n",
                 code.num_qubits, limit);
    return 1;
  }
  stabsim::DenseState psi = stabsim::stabilizer_to_state(
      stabsim::GeneratorSet{code.num_qubits, code.generators});
  dump_amplitudes(psi.amps);
  return 0;
}

int cmd_unitary(const std::string& file, std::size_t limit) {
  stabsim::Circuit c = stabsim::parse_circuit_file(file);
  bool all_data = true;
  for (stabsim::InputKind kind : c.inputs) {
    all_data = all_data && kind == stabsim::InputKind::Data;
  }
  if (!all_data || !c.declared_rows.empty() || c.has_measurement_or_drop()) {
    std::fprintf(stderr,
                 "error: unitary extraction needs a measurement-free network "
                 "over data inputs only\n");
    return 1;
  }
  if (c.num_qubits > limit) {
    std::fprintf(stderr,
                 "error: the circuit uses %zu qubits, above the reference "
                 "limit %zu\n",
                 c.num_qubits, limit);
    return 1;
  }
  stabsim::RunOptions opts;
  opts.backend = stabsim::Backend::TableauOnly;
  stabsim::Trace tr = stabsim::run(c, opts);
  stabsim::DenseUnitary u = stabsim::tableau_to_unitary(tr.final_tableau);
  std::string out;
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index col = 0; col < u.cols(); ++col) {
      out += std::to_string(static_cast<std::size_t>(r * u.cols() + col));
      out += ' ';
      out += format_double(u(r, col).real());
      out += ' ';
      out += format_double(u(r, col).imag());
      out += '\n';
    }
  }
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_code_validate(const std::string& file) {
  stabsim::StabilizerCode code = stabsim::parse_code_file(file);
  std::string err = stabsim::check_code(code);
  if (!err.empty()) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return 1;
  }
  std::printf("ok: n=%zu k=%zu, %zu generators%s\n", code.num_qubits,
              code.num_logical, code.generators.size(),
              code.logical_x.empty() ? "" : ", logical operators declared");
  return 0;
}

int cmd_code_distance(const std::string& file, std::size_t jobs) {
  stabsim::StabilizerCode code = stabsim::parse_code_file(file);
  stabsim::DistanceResult d = stabsim::code_distance(code, jobs);
  std::printf("d=%zu %s\n", d.distance,
              d.degenerate ? "degenerate" : "nondegenerate");
  std::printf("witness %s\n", d.witness.str().c_str());
  return 0;
}

int cmd_code_table(const std::string& file, std::size_t weight) {
  stabsim::StabilizerCode code = stabsim::parse_code_file(file);
  std::map<std::uint64_t, stabsim::PauliOperator> table =
      stabsim::build_syndrome_table(code, weight);
  std::string out;
  for (const auto& [key, corr] : table) {
    out += syndrome_string(key, code.generators.size());
    out += ' ';
    out += corr.str();
    out += '\n';
  }
  std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_code_experiment(const std::string& file, const std::string& error,
                        const std::string& mode, std::size_t weight) {
  stabsim::StabilizerCode code = stabsim::parse_code_file(file);
  stabsim::PauliOperator e = stabsim::parse_pauli(error, code.num_qubits);
  stabsim::ExperimentResult res = stabsim::run_code_experiment(
      code, e,
      mode == "detect" ? stabsim::ExperimentMode::Detect
                       : stabsim::ExperimentMode::Correct,
      weight);
  std::printf("injected %s\n", res.injected.str().c_str());
  std::printf("syndrome %s\n",
              syndrome_string(stabsim::pack_syndrome(res.syndrome_bits),
                              res.syndrome_bits.size())
                  .c_str());
  std::printf("detected %s\n", res.detected ? "yes" : "no");
  std::printf("correction %s\n", res.correction.str().c_str());
  std::printf("recovered %s\n", res.recovered ? "yes" : "no");
  return 0;
}

int cmd_bench(const std::vector<std::size_t>& qubits, std::size_t gates,
              std::optional<std::uint64_t> seed) {
  std::printf("qubits gates measurements seconds ns-per-gate row-bits\n");
  for (std::size_t n : qubits) {
    stabsim::WorkloadResult w =
        stabsim::run_random_clifford_workload(n, gates, seed.value_or(0));
    double per_gate =
        w.gates == 0 ? 0.0 : w.seconds / static_cast<double>(w.gates) * 1e9;
    std::printf("%zu %zu %zu %s %.1f %zu\n", w.qubits, w.gates,
                w.measurements, format_double(w.seconds).c_str(), per_gate,
                2 * n + 1);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabilizer circuit engine"};
  app.require_subcommand(1);

  std::string file;
  std::string backend = "tableau";
  std::string format = "text";
  std::string mode = "correct";
  std::string error_text;
  std::optional<std::uint64_t> seed;
  std::size_t oracle_limit = 12;
  std::size_t trials = 1;
  std::size_t jobs = 1;
  std::size_t weight = 1;
  std::size_t gates = 100000;
  std::vector<std::size_t> bench_qubits{100, 200, 400};

  CLI::App* trace = app.add_subcommand(
      "trace", "Run a circuit and print its per-step rows");
  trace->add_option("file", file, "circuit file")->required();
  trace->add_option("--backend", backend, "tableau|oracle|both")
      ->check(CLI::IsMember({"tableau", "oracle", "both"}));
  trace->add_option("--format", format, "text|records")
      ->check(CLI::IsMember({"text", "records"}));
  trace->add_option("--seed", seed, "measurement draw seed");
  trace->add_option("--oracle-limit", oracle_limit,
                    "reference backend qubit cap");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run both backends and compare them step by step");
  verify->add_option("file", file, "circuit file")->required();
  verify->add_option("--trials", trials, "number of seeded runs");
  verify->add_option("--seed", seed, "base draw seed");
  verify->add_option("--oracle-limit", oracle_limit,
                     "reference backend qubit cap");

  CLI::App* ket = app.add_subcommand(
      "ket", "Print the amplitudes a k=0 group description pins");
  ket->add_option("file", file, "code file with k=0")->required();
  ket->add_option("--oracle-limit", oracle_limit,
                  "reference backend qubit cap");

  CLI::App* unitary = app.add_subcommand(
      "unitary", "Print the matrix of a measurement-free data circuit");
  unitary->add_option("file", file, "circuit file")->required();
  unitary->add_option("--oracle-limit", oracle_limit,
                      "reference backend qubit cap");

  CLI::App* code = app.add_subcommand("code", "Code description workflows");
  code->require_subcommand(1);
  CLI::App* validate =
      code->add_subcommand("validate", "Check a code description");
  validate->add_option("file", file, "code file")->required();
  CLI::App* distance = code->add_subcommand(
      "distance", "Scan for the lightest undetected logical action");
  distance->add_option("file", file, "code file")->required();
  distance->add_option("--jobs", jobs, "worker threads");
  CLI::App* table = code->add_subcommand(
      "syndrome-table", "Print syndrome -> correction entries");
  table->add_option("file", file, "code file")->required();
  table->add_option("--weight", weight, "largest corrected error weight");
  CLI::App* experiment = code->add_subcommand(
      "experiment", "Inject an error, read the syndrome, try recovery");
  experiment->add_option("file", file, "code file")->required();
  experiment->add_option("--error", error_text, "error operator")->required();
  experiment->add_option("--mode", mode, "detect|correct")
      ->check(CLI::IsMember({"detect", "correct"}));
  experiment->add_option("--weight", weight, "largest corrected error weight");

  CLI::App* bench = app.add_subcommand(
      "bench", "Time random gate workloads against the register size");
  bench->add_option("--qubits", bench_qubits, "register sizes");
  bench->add_option("--gates", gates, "instructions per workload");
  bench->add_option("--seed", seed, "workload seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!seed) {
    int rc = env_seed(seed);
    if (rc != 0) {
      return rc;
    }
  }

  try {
    if (trace->parsed()) {
      return cmd_trace(file, backend, format, seed, oracle_limit);
    }
    if (verify->parsed()) {
      return cmd_verify(file, trials, seed, oracle_limit);
    }
    if (ket->parsed()) {
      return cmd_ket(file, oracle_limit);
    }
    if (unitary->parsed()) {
      return cmd_unitary(file, oracle_limit);
    }
    if (code->parsed()) {
      if (validate->parsed()) {
        return cmd_code_validate(file);
      }
      if (distance->parsed()) {
        return cmd_code_distance(file, jobs);
      }
      if (table->parsed()) {
        return cmd_code_table(file, weight);
      }
      return cmd_code_experiment(file, error_text, mode, weight);
    }
    return cmd_bench(bench_qubits, gates, seed);
  } catch (const stabsim::ParseError& e) {
    std::fprintf(stderr, "error: line %zu, column %zu: %s\n", e.line(),
                 e.column(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
