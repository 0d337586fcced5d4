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

#include "stabsim/codes.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace stabsim {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

std::size_t parse_count(const Token& tok, const char* prefix,
                        std::size_t line_no) {
  std::string_view v = tok.text;
  std::string_view p = prefix;
  if (v.substr(0, p.size()) != p || v.size() == p.size()) {
    throw ParseError(std::string("expected ") + prefix + "<count>", line_no,
                     tok.column);
  }
  std::size_t value = 0;
  for (std::size_t i = p.size(); i < v.size(); ++i) {
    if (v[i] < '0' || v[i] > '9' || value > 100000) {
      throw ParseError(std::string("expected ") + prefix + "<count>", line_no,
                       tok.column);
    }
    value = value * 10 + static_cast<std::size_t>(v[i] - '0');
  }
  return value;
}

PauliOperator parse_row(const Token& tok, std::size_t num_qubits,
                        std::size_t line_no) {
  try {
    return parse_pauli(tok.text, num_qubits);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line_no, tok.column);
  }
}

// Advances a strictly increasing index tuple over {0..n-1}; false past the
// last combination.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  std::size_t w = c.size();
  for (std::size_t i = w; i-- > 0;) {
    if (c[i] + (w - i) < n) {
      ++c[i];
      for (std::size_t j = i + 1; j < w; ++j) {
        c[j] = c[j - 1] + 1;
      }
      return true;
    }
  }
  return false;
}

// letters[i] indexes kLetters at support position i.
constexpr char kLetters[3] = {'X', 'Y', 'Z'};

PauliOperator build_candidate(std::size_t n,
                              const std::vector<std::size_t>& support,
                              const std::vector<int>& letters) {
  std::string s(n, 'I');
  for (std::size_t i = 0; i < support.size(); ++i) {
    s[support[i]] = kLetters[letters[i]];
  }
  return PauliOperator::from_letters(s);
}

// Rightmost position moves fastest, X < Y < Z.
bool next_letters(std::vector<int>& letters) {
  for (std::size_t i = letters.size(); i-- > 0;) {
    if (letters[i] < 2) {
      ++letters[i];
      std::fill(letters.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                letters.end(), 0);
      return true;
    }
  }
  return false;
}

bool zero_syndrome(const std::vector<PauliOperator>& gens,
                   const PauliOperator& e) {
  for (const PauliOperator& g : gens) {
    if (!commutes(e, g)) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> supports_of_weight(std::size_t n,
                                                         std::size_t w) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(w);
  std::iota(c.begin(), c.end(), 0);
  do {
    out.push_back(c);
  } while (next_combination(c, n));
  return out;
}

}  // namespace

StabilizerCode parse_code(std::string_view text) {
  StabilizerCode code;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::vector<Token> tokens = split_line(raw);
    if (tokens.empty()) {
      continue;
    }
    std::string head = lower(tokens[0].text);
    if (!have_header) {
      if (head != "code") {
        throw ParseError("expected the code header first", line_no,
                         tokens[0].column);
      }
      if (tokens.size() != 3) {
        throw ParseError("code header reads: code n=<count> k=<count>",
                         line_no, tokens[0].column);
      }
      code.num_qubits = parse_count(tokens[1], "n=", line_no);
      code.num_logical = parse_count(tokens[2], "k=", line_no);
      if (code.num_qubits == 0 || code.num_qubits > 4096) {
        throw ParseError("qubit count out of range", line_no,
                         tokens[1].column);
      }
      if (code.num_logical > code.num_qubits) {
        throw ParseError("more protected qubits than physical qubits",
                         line_no, tokens[2].column);
      }
      have_header = true;
      continue;
    }
    if (head == "code") {
      throw ParseError("duplicate code header", line_no, tokens[0].column);
    }
    if (head == "logical") {
      if (tokens.size() != 3 ||
          (lower(tokens[1].text) != "x" && lower(tokens[1].text) != "z")) {
        throw ParseError("logical lines read: logical X|Z <operator>",
                         line_no, tokens[0].column);
      }
      PauliOperator op = parse_row(tokens[2], code.num_qubits, line_no);
      if (lower(tokens[1].text) == "x") {
        code.logical_x.push_back(std::move(op));
      } else {
        code.logical_z.push_back(std::move(op));
      }
      continue;
    }
    if (tokens.size() != 1) {
      throw ParseError("generator lines hold a single operator", line_no,
                       tokens[1].column);
    }
    if (!code.logical_x.empty() || !code.logical_z.empty()) {
      throw ParseError("generator lines must precede logical lines", line_no,
                       tokens[0].column);
    }
    code.generators.push_back(parse_row(tokens[0], code.num_qubits, line_no));
  }
  if (!have_header) {
    throw ParseError("empty code description", 1, 1);
  }
  return code;
}

StabilizerCode parse_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

std::string check_code(const StabilizerCode& code) {
  const std::size_t n = code.num_qubits;
  if (n == 0) {
    return "code has no qubits";
  }
  if (code.generators.size() > n) {
    return "more generators than qubits";
  }
  if (!code.generators.empty()) {
    StabilizerCheck chk =
        check_stabilizer_rows(GeneratorSet{n, code.generators});
    if (!chk.ok) {
      return chk.error;
    }
  }
  const std::size_t r = code.generators.size();
  if (code.num_logical != n - r) {
    return "header counts " + std::to_string(code.num_logical) +
           " protected qubits, but " + std::to_string(r) +
           " generators on " + std::to_string(n) + " qubits leave " +
           std::to_string(n - r);
  }
  if (code.logical_x.size() != code.logical_z.size()) {
    return "logical X and Z operators must come in pairs";
  }
  if (code.logical_x.empty()) {
    return "";
  }
  const std::size_t k = code.num_logical;
  if (code.logical_x.size() != k) {
    return "expected " + std::to_string(k) + " logical pairs, got " +
           std::to_string(code.logical_x.size());
  }
  std::vector<PauliOperator> all = code.generators;
  for (std::size_t i = 0; i < k; ++i) {
    for (auto side : {std::make_pair('X', &code.logical_x),
                      std::make_pair('Z', &code.logical_z)}) {
      const PauliOperator& op = (*side.second)[i];
      std::string name =
          std::string("logical ") + side.first + " " + std::to_string(i + 1);
      if (op.num_qubits() != n) {
        return name + " does not act on " + std::to_string(n) + " qubits";
      }
      if (!op.is_hermitian()) {
        return name + " is not Hermitian";
      }
      for (const PauliOperator& g : code.generators) {
        if (!commutes(op, g)) {
          return name + " anticommutes with generator " + g.str();
        }
      }
      all.push_back(op);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      bool anti = !commutes(code.logical_x[i], code.logical_z[j]);
      if (anti != (i == j)) {
        return "logical X " + std::to_string(i + 1) + " and Z " +
               std::to_string(j + 1) +
               (i == j ? " must anticommute" : " must commute");
      }
      if (i < j && !commutes(code.logical_x[i], code.logical_x[j])) {
        return "logical X " + std::to_string(i + 1) + " and X " +
               std::to_string(j + 1) + " must commute";
      }
      if (i < j && !commutes(code.logical_z[i], code.logical_z[j])) {
        return "logical Z " + std::to_string(i + 1) + " and Z " +
               std::to_string(j + 1) + " must commute";
      }
    }
  }
  CanonicalForm full = canonicalize(GeneratorSet{n, all});
  if (full.rank != r + 2 * k) {
    return "logical operators are not independent of the group";
  }
  return "";
}

std::vector<int> syndrome(const StabilizerCode& code, const PauliOperator& e) {
  if (e.num_qubits() != code.num_qubits) {
    throw std::invalid_argument("operator width does not match the code");
  }
  std::vector<int> bits;
  bits.reserve(code.generators.size());
  for (const PauliOperator& g : code.generators) {
    bits.push_back(commutes(e, g) ? 0 : 1);
  }
  return bits;
}

std::uint64_t pack_syndrome(const std::vector<int>& bits) {
  if (bits.size() > 64) {
    throw std::invalid_argument("more than 64 syndrome bits");
  }
  std::uint64_t packed = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      packed |= std::uint64_t{1} << i;
    }
  }
  return packed;
}

void complete_logicals(StabilizerCode& code) {
  std::string err = check_code(code);
  if (!err.empty()) {
    throw std::invalid_argument(err);
  }
  if (!code.logical_x.empty() || code.num_logical == 0) {
    return;
  }
  const std::size_t n = code.num_qubits;
  std::vector<PauliOperator> chosen;

  // Pattern-major scan: weight, then letters, then support placement, so a
  // lighter or more X-like operator always wins over a later placement.
  auto first_match = [&](auto&& accept) -> PauliOperator {
    for (std::size_t w = 1; w <= n; ++w) {
      std::vector<int> letters(w, 0);
      do {
        std::vector<std::size_t> support(w);
        std::iota(support.begin(), support.end(), 0);
        do {
          PauliOperator e = build_candidate(n, support, letters);
          if (accept(e)) {
            return e;
          }
        } while (next_combination(support, n));
      } while (next_letters(letters));
    }
    throw std::logic_error("logical completion found no candidate");
  };

  for (std::size_t j = 0; j < code.num_logical; ++j) {
    std::vector<PauliOperator> rows = code.generators;
    rows.insert(rows.end(), chosen.begin(), chosen.end());
    CanonicalForm span = canonicalize(GeneratorSet{n, rows});
    PauliOperator x = first_match([&](const PauliOperator& e) {
      if (!zero_syndrome(code.generators, e)) {
        return false;
      }
      for (const PauliOperator& c : chosen) {
        if (!commutes(e, c)) {
          return false;
        }
      }
      return !membership(span, e).binary_in_span;
    });
    PauliOperator z = first_match([&](const PauliOperator& e) {
      if (!zero_syndrome(code.generators, e) || commutes(e, x)) {
        return false;
      }
      for (const PauliOperator& c : chosen) {
        if (!commutes(e, c)) {
          return false;
        }
      }
      return true;
    });
    chosen.push_back(x);
    chosen.push_back(z);
    code.logical_x.push_back(std::move(x));
    code.logical_z.push_back(std::move(z));
  }
}

DistanceResult code_distance(const StabilizerCode& code, std::size_t jobs) {
  std::string err = check_code(code);
  if (!err.empty()) {
    throw std::invalid_argument(err);
  }
  if (code.num_logical == 0) {
    throw std::invalid_argument(
        "the group pins every qubit, so no undetected action exists");
  }
  if (jobs == 0) {
    jobs = 1;
  }
  const std::size_t n = code.num_qubits;
  CanonicalForm form = canonicalize(GeneratorSet{n, code.generators});
  bool lighter_element = false;

  for (std::size_t w = 1; w <= n; ++w) {
    std::vector<std::vector<std::size_t>> supports = supports_of_weight(n, w);
    struct Hit {
      std::size_t support_idx;
      std::uint64_t letter_idx;
    };
    std::vector<std::optional<Hit>> hits(jobs);
    std::vector<char> saw_element(jobs, 0);

    auto scan = [&](std::size_t id) {
      for (std::size_t si = id; si < supports.size(); si += jobs) {
        std::vector<int> letters(w, 0);
        std::uint64_t li = 0;
        bool more = true;
        while (more) {
          PauliOperator e = build_candidate(n, supports[si], letters);
          if (zero_syndrome(code.generators, e)) {
            if (membership(form, e).binary_in_span) {
              saw_element[id] = 1;
            } else {
              hits[id] = Hit{si, li};
              return;  // strides ascend, so the first hit is the stride min
            }
          }
          more = next_letters(letters);
          ++li;
        }
      }
    };

    std::vector<std::thread> workers;
    for (std::size_t id = 1; id < jobs; ++id) {
      workers.emplace_back(scan, id);
    }
    scan(0);
    for (std::thread& th : workers) {
      th.join();
    }

    std::optional<Hit> best;
    for (const std::optional<Hit>& h : hits) {
      if (h && (!best || h->support_idx < best->support_idx ||
                (h->support_idx == best->support_idx &&
                 h->letter_idx < best->letter_idx))) {
        best = h;
      }
    }
    if (best) {
      std::vector<int> letters(w, 0);
      std::uint64_t li = best->letter_idx;
      for (std::size_t i = w; i-- > 0;) {
        letters[i] = static_cast<int>(li % 3);
        li /= 3;
      }
      DistanceResult res;
      res.distance = w;
      res.degenerate = lighter_element;
      res.witness = build_candidate(n, supports[best->support_idx], letters);
      return res;
    }
    if (std::any_of(saw_element.begin(), saw_element.end(),
                    [](char c) { return c != 0; })) {
      lighter_element = true;
    }
  }
  throw std::logic_error("distance scan exhausted all weights");
}

std::map<std::uint64_t, PauliOperator> build_syndrome_table(
    const StabilizerCode& code, std::size_t t) {
  std::string err = check_code(code);
  if (!err.empty()) {
    throw std::invalid_argument(err);
  }
  if (code.generators.size() > 64) {
    throw std::invalid_argument("more than 64 syndrome bits");
  }
  const std::size_t n = code.num_qubits;
  if (t > n) {
    t = n;
  }
  CanonicalForm form = canonicalize(GeneratorSet{n, code.generators});
  std::map<std::uint64_t, PauliOperator> table;
  table.emplace(0, PauliOperator(n));
  for (std::size_t w = 1; w <= t; ++w) {
    for (const std::vector<std::size_t>& support : supports_of_weight(n, w)) {
      std::vector<int> letters(w, 0);
      bool more = true;
      while (more) {
        PauliOperator e = build_candidate(n, support, letters);
        std::uint64_t s = pack_syndrome(syndrome(code, e));
        auto it = table.find(s);
        if (it == table.end()) {
          table.emplace(s, e);
        } else {
          PauliOperator diff = multiply(it->second, e);
          if (!membership(form, diff).binary_in_span) {
            throw std::runtime_error("syndrome collision: " +
                                     it->second.str() + " and " + e.str() +
                                     " are not equal modulo the group");
          }
        }
        more = next_letters(letters);
      }
    }
  }
  return table;
}

ExperimentResult run_code_experiment(const StabilizerCode& code,
                                     const PauliOperator& error,
                                     ExperimentMode mode, std::size_t t) {
  StabilizerCode c = code;
  std::string err = check_code(c);
  if (!err.empty()) {
    throw std::invalid_argument(err);
  }
  if (c.logical_x.empty() && c.num_logical > 0) {
    complete_logicals(c);
  }
  const std::size_t n = c.num_qubits;
  if (error.num_qubits() != n) {
    throw std::invalid_argument("error width does not match the code");
  }
  if (!error.is_hermitian()) {
    throw std::invalid_argument("error " + error.str() + " is not Hermitian");
  }

  std::vector<LogicalPair> pairs;
  for (std::size_t j = 0; j < c.num_logical; ++j) {
    LogicalPair pair;
    pair.x = c.logical_x[j];
    pair.z = c.logical_z[j];
    pair.label = std::to_string(j + 1);
    pairs.push_back(std::move(pair));
  }
  Tableau clean = Tableau::from_rows(n, c.generators, std::move(pairs));
  Tableau state = clean;
  state.apply_pauli(error);

  ExperimentResult res;
  res.injected = error;
  res.correction = PauliOperator(n);
  for (const PauliOperator& g : c.generators) {
    // Generator reads resolve in-span, so they leave the rows alone.
    MeasurementRecord rec = state.measure(g, false, std::nullopt, nullptr);
    res.syndrome_bits.push_back(rec.outcome < 0 ? 1 : 0);
  }
  res.detected = std::any_of(res.syndrome_bits.begin(),
                             res.syndrome_bits.end(),
                             [](int b) { return b != 0; });
  if (mode == ExperimentMode::Correct) {
    std::map<std::uint64_t, PauliOperator> table = build_syndrome_table(c, t);
    auto it = table.find(pack_syndrome(res.syndrome_bits));
    if (it != table.end()) {
      res.in_table = true;
      res.correction = it->second;
      state.apply_pauli(res.correction);
    }
  }
  res.recovered = equivalent(state, clean);
  return res;
}

}  // namespace stabsim
