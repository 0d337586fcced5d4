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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stabsim/codes.hpp"
#include "stabsim/pauli.hpp"

using stabsim::DistanceResult;
using stabsim::ExperimentMode;
using stabsim::ExperimentResult;
using stabsim::ParseError;
using stabsim::PauliOperator;
using stabsim::StabilizerCode;
using stabsim::build_syndrome_table;
using stabsim::check_code;
using stabsim::code_distance;
using stabsim::complete_logicals;
using stabsim::membership;
using stabsim::multiply;
using stabsim::pack_syndrome;
using stabsim::parse_code;
using stabsim::parse_code_file;
using stabsim::parse_pauli;
using stabsim::run_code_experiment;
using stabsim::syndrome;

namespace {

const std::string kCircuitsDir = STABSIM_CIRCUITS_DIR;

StabilizerCode five_qubit() {
  return parse_code_file(kCircuitsDir + "/five_qubit.code");
}

StabilizerCode four_qubit() {
  return parse_code_file(kCircuitsDir + "/four_qubit.code");
}

// Independent distance route: every undetected logical action is a logical
// class representative times a group element, so the minimum weight over
// all such products must agree with the enumeration scan.
std::size_t class_distance(const StabilizerCode& code) {
  const std::size_t n = code.num_qubits;
  const std::size_t r = code.generators.size();
  const std::size_t k = code.num_logical;
  std::vector<PauliOperator> elements;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
    PauliOperator e(n);
    for (std::size_t i = 0; i < r; ++i) {
      if (m & (std::uint64_t{1} << i)) {
        e *= code.generators[i];
      }
    }
    elements.push_back(e);
  }
  std::size_t best = n + 1;
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << (2 * k)); ++c) {
    PauliOperator rep(n);
    for (std::size_t j = 0; j < k; ++j) {
      if (c & (std::uint64_t{1} << (2 * j))) {
        rep *= code.logical_x[j];
      }
      if (c & (std::uint64_t{1} << (2 * j + 1))) {
        rep *= code.logical_z[j];
      }
    }
    for (const PauliOperator& e : elements) {
      best = std::min(best, stabsim::weight(multiply(rep, e)));
    }
  }
  return best;
}

void expect_parse_error(const std::string& text, const std::string& fragment,
                        std::size_t line) {
  try {
    parse_code(text);
    FAIL_CHECK("no error for: " << text);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    CHECK(e.line() == line);
  }
}

}  // namespace

TEST_CASE("the bundled code files parse and validate") {
  StabilizerCode five = five_qubit();
  CHECK(five.num_qubits == 5);
  CHECK(five.num_logical == 1);
  REQUIRE(five.generators.size() == 4);
  CHECK(five.generators[0].str() == "+XZZXI");
  CHECK(five.generators[1].str() == "+IXZZX");
  CHECK(five.generators[2].str() == "+XIXZZ");
  CHECK(five.generators[3].str() == "+ZXIXZ");
  REQUIRE(five.logical_x.size() == 1);
  REQUIRE(five.logical_z.size() == 1);
  CHECK(five.logical_x[0].str() == "+XXXXX");
  CHECK(five.logical_z[0].str() == "+ZZZZZ");
  CHECK(check_code(five) == "");

  StabilizerCode four = four_qubit();
  CHECK(four.num_qubits == 4);
  CHECK(four.num_logical == 2);
  REQUIRE(four.generators.size() == 2);
  CHECK(four.logical_x.empty());
  CHECK(four.logical_z.empty());
  CHECK(check_code(four) == "");

  StabilizerCode bell = parse_code_file(kCircuitsDir + "/bell_pair.code");
  CHECK(bell.num_qubits == 2);
  CHECK(bell.num_logical == 0);
  CHECK(check_code(bell) == "");
}

TEST_CASE("code grammar errors carry line numbers") {
  expect_parse_error("XZZXI\n", "expected the code header", 1);
  expect_parse_error("code n=5\nXZZXI\n", "code header reads", 1);
  expect_parse_error("code n=0 k=0\n", "qubit count out of range", 1);
  expect_parse_error("code n=2 k=3\n", "more protected qubits", 1);
  expect_parse_error("code n=2 k=1\ncode n=2 k=1\n", "duplicate code header",
                     2);
  expect_parse_error("code n=2 k=1\nXX ZZ\n", "single operator", 2);
  expect_parse_error("code n=2 k=1\nlogical Y XX\n", "logical X|Z", 2);
  expect_parse_error("code n=2 k=1\nlogical X XX\nZZ\n",
                     "generator lines must precede", 3);
  expect_parse_error("code n=2 k=1\nXXX\n", "", 2);
  expect_parse_error("code n=2 k=1\nQQ\n", "", 2);
  expect_parse_error("", "empty code description", 1);
}

TEST_CASE("check_code rejects group-level violations") {
  StabilizerCode bad;
  bad.num_qubits = 2;
  bad.num_logical = 0;
  bad.generators = {parse_pauli("XX", 2), parse_pauli("ZI", 2)};
  CHECK(check_code(bad).find("anticommute") != std::string::npos);

  StabilizerCode dep = parse_code("code n=2 k=0\nXX\nXX\n");
  CHECK(check_code(dep).find("dependent") != std::string::npos);

  StabilizerCode wrong_k = parse_code("code n=2 k=0\nXX\n");
  CHECK(check_code(wrong_k).find("leave") != std::string::npos);

  StabilizerCode pairless = parse_code("code n=2 k=1\nXX\nlogical X ZZ\n");
  CHECK(check_code(pairless).find("pairs") != std::string::npos);

  StabilizerCode commuting =
      parse_code("code n=2 k=1\nXX\nlogical X ZZ\nlogical Z ZZ\n");
  CHECK(check_code(commuting).find("must anticommute") != std::string::npos);

  StabilizerCode detected =
      parse_code("code n=2 k=1\nXX\nlogical X ZI\nlogical Z XI\n");
  CHECK(check_code(detected).find("anticommutes with generator") !=
        std::string::npos);

  StabilizerCode skew;
  skew.num_qubits = 2;
  skew.num_logical = 1;
  skew.generators = {parse_pauli("XX", 2)};
  skew.logical_x = {PauliOperator::from_letters("ZZ", 1)};
  skew.logical_z = {parse_pauli("YZ", 2)};
  CHECK(check_code(skew).find("not Hermitian") != std::string::npos);
}

TEST_CASE("the syndrome map is the anticommutation profile") {
  StabilizerCode five = five_qubit();
  PauliOperator e = parse_pauli("XIIII", 5);
  std::vector<int> bits = syndrome(five, e);
  REQUIRE(bits.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(bits[i] == (stabsim::commutes(e, five.generators[i]) ? 0 : 1));
  }
  CHECK(bits == std::vector<int>{0, 0, 0, 1});
  CHECK(pack_syndrome(bits) == 8);
  CHECK(pack_syndrome({1, 0, 1}) == 5);
  CHECK_THROWS_AS(syndrome(five, parse_pauli("XI", 2)),
                  std::invalid_argument);
}

TEST_CASE("logical completion fills the four-qubit pairs") {
  StabilizerCode four = four_qubit();
  complete_logicals(four);
  REQUIRE(four.logical_x.size() == 2);
  REQUIRE(four.logical_z.size() == 2);
  CHECK(four.logical_x[0].str() == "+XXII");
  CHECK(four.logical_z[0].str() == "+YIYI");
  CHECK(four.logical_x[1].str() == "+XIXI");
  CHECK(four.logical_z[1].str() == "+YYII");
  CHECK(check_code(four) == "");

  StabilizerCode five = five_qubit();
  complete_logicals(five);  // already present: untouched
  CHECK(five.logical_x[0].str() == "+XXXXX");

  StabilizerCode bare = parse_code("code n=5 k=1\nXZZXI\nIXZZX\nXIXZZ\nZXIXZ\n");
  complete_logicals(bare);
  CHECK(check_code(bare) == "");
  REQUIRE(bare.logical_x.size() == 1);
  CHECK(stabsim::weight(bare.logical_x[0]) >= 3);
}

TEST_CASE("the five-qubit code has distance three, nondegenerate") {
  StabilizerCode five = five_qubit();
  DistanceResult d = code_distance(five);
  CHECK(d.distance == 3);
  CHECK_FALSE(d.degenerate);
  CHECK(d.witness.str() == "+XYXII");
  CHECK(stabsim::weight(d.witness) == 3);
  for (const PauliOperator& g : five.generators) {
    CHECK(stabsim::commutes(d.witness, g));
  }
  CHECK_FALSE(membership(stabsim::GeneratorSet{5, five.generators}, d.witness)
                  .binary_in_span);
  CHECK(class_distance(five) == 3);
}

TEST_CASE("the four-qubit code has distance two, nondegenerate") {
  StabilizerCode four = four_qubit();
  DistanceResult d = code_distance(four);
  CHECK(d.distance == 2);
  CHECK_FALSE(d.degenerate);
  CHECK(d.witness.str() == "+XXII");
  complete_logicals(four);
  CHECK(class_distance(four) == 2);
}

TEST_CASE("distance is independent of the job split") {
  StabilizerCode five = five_qubit();
  DistanceResult one = code_distance(five, 1);
  for (std::size_t jobs : {2, 3, 4, 7}) {
    DistanceResult many = code_distance(five, jobs);
    CHECK(many.distance == one.distance);
    CHECK(many.degenerate == one.degenerate);
    CHECK(many.witness == one.witness);
  }
  StabilizerCode bell = parse_code_file(kCircuitsDir + "/bell_pair.code");
  CHECK_THROWS_AS(code_distance(bell), std::invalid_argument);
}

TEST_CASE("tying letters pairwise leaves weight-one distance") {
  // ZZI and IZZ never see a lone Z, so a single phase letter slips through.
  StabilizerCode rep = parse_code("code n=3 k=1\nZZI\nIZZ\n");
  DistanceResult d = code_distance(rep);
  CHECK(d.distance == 1);
  CHECK(d.witness.str() == "+ZII");
  CHECK_FALSE(d.degenerate);

  StabilizerCode pinless = parse_code("code n=2 k=1\nXX\n");
  DistanceResult d2 = code_distance(pinless);
  CHECK(d2.distance == 1);
  CHECK(d2.witness.str() == "+XI");
}

TEST_CASE("group elements below the distance mark degeneracy") {
  // Three blocks of tied Z pairs plus two X walls: the lightest undetected
  // operator weighs three, yet ZZ pairs weigh two inside the group.
  StabilizerCode blocks = parse_code(
      "code n=9 k=1\n"
      "ZZIIIIIII\nIZZIIIIII\nIIIZZIIII\nIIIIZZIII\nIIIIIIZZI\nIIIIIIIZZ\n"
      "XXXXXXIII\nIIIXXXXXX\n");
  CHECK(check_code(blocks) == "");
  DistanceResult d = code_distance(blocks, 2);
  CHECK(d.distance == 3);
  CHECK(d.degenerate);
  CHECK(d.witness.str() == "+XXXIIIIII");
  complete_logicals(blocks);
  CHECK(check_code(blocks) == "");
  CHECK(class_distance(blocks) == 3);
}

TEST_CASE("the five-qubit weight-one table is a bijection") {
  StabilizerCode five = five_qubit();
  std::map<std::uint64_t, PauliOperator> table = build_syndrome_table(five, 1);
  REQUIRE(table.size() == 16);
  std::set<std::uint64_t> keys;
  for (const auto& [key, corr] : table) {
    keys.insert(key);
    CHECK(stabsim::weight(corr) <= 1);
    CHECK(pack_syndrome(syndrome(five, corr)) == key);
  }
  CHECK(keys.size() == 16);
  CHECK(*keys.rbegin() == 15);
  CHECK(table.at(0).is_identity_letters());

  // Every single-letter error is its own table entry.
  for (std::size_t q = 0; q < 5; ++q) {
    for (char letter : {'X', 'Y', 'Z'}) {
      PauliOperator e = PauliOperator::single(5, q, letter);
      CHECK(table.at(pack_syndrome(syndrome(five, e))) == e);
    }
  }
}

TEST_CASE("tables refuse inequivalent collisions but accept equivalent ones") {
  StabilizerCode four = four_qubit();
  try {
    build_syndrome_table(four, 1);
    FAIL_CHECK("no collision reported");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("syndrome collision") !=
          std::string::npos);
  }

  // In the correlated-pair group every letter collision is a group element,
  // so the table builds and folds the pair down to four syndromes.
  StabilizerCode bell = parse_code_file(kCircuitsDir + "/bell_pair.code");
  std::map<std::uint64_t, PauliOperator> table = build_syndrome_table(bell, 1);
  CHECK(table.size() == 4);
}

TEST_CASE("weight-one errors on the five-qubit code are repaired") {
  StabilizerCode five = five_qubit();
  for (std::size_t q = 0; q < 5; ++q) {
    for (char letter : {'X', 'Y', 'Z'}) {
      PauliOperator e = PauliOperator::single(5, q, letter);
      ExperimentResult res =
          run_code_experiment(five, e, ExperimentMode::Correct, 1);
      CHECK(res.detected);
      CHECK(res.in_table);
      CHECK(res.correction == e);
      CHECK(res.recovered);
      CHECK(res.syndrome_bits == syndrome(five, e));
    }
  }
  ExperimentResult clean = run_code_experiment(
      five, PauliOperator(5), ExperimentMode::Correct, 1);
  CHECK_FALSE(clean.detected);
  CHECK(clean.recovered);
}

TEST_CASE("errors past the correction budget are flagged, not repaired") {
  StabilizerCode five = five_qubit();
  ExperimentResult res = run_code_experiment(
      five, parse_pauli("XXIII", 5), ExperimentMode::Correct, 1);
  CHECK(res.detected);
  CHECK(res.in_table);
  CHECK_FALSE(res.recovered);
}

TEST_CASE("group elements act trivially, logical operators invisibly") {
  StabilizerCode five = five_qubit();
  PauliOperator element = multiply(five.generators[0], five.generators[1]);
  ExperimentResult trivial =
      run_code_experiment(five, element, ExperimentMode::Detect);
  CHECK_FALSE(trivial.detected);
  CHECK(trivial.recovered);

  ExperimentResult logical = run_code_experiment(
      five, parse_pauli("XXXXX", 5), ExperimentMode::Detect);
  CHECK_FALSE(logical.detected);
  CHECK_FALSE(logical.recovered);

  ExperimentResult detect_only =
      run_code_experiment(five, parse_pauli("XIIII", 5), ExperimentMode::Detect);
  CHECK(detect_only.detected);
  CHECK(detect_only.correction.is_identity_letters());
  CHECK_FALSE(detect_only.recovered);
}

TEST_CASE("the four-qubit code detects weight one but cannot correct it") {
  StabilizerCode four = four_qubit();
  ExperimentResult res =
      run_code_experiment(four, parse_pauli("XIII", 4), ExperimentMode::Detect);
  CHECK(res.detected);
  CHECK_FALSE(res.recovered);

  ExperimentResult undetected =
      run_code_experiment(four, parse_pauli("XXII", 4), ExperimentMode::Detect);
  CHECK_FALSE(undetected.detected);
  CHECK_FALSE(undetected.recovered);

  CHECK_THROWS_AS(run_code_experiment(four, parse_pauli("XIII", 4),
                                      ExperimentMode::Correct, 1),
                  std::runtime_error);
}

TEST_CASE("corrections act modulo the group") {
  StabilizerCode bell = parse_code_file(kCircuitsDir + "/bell_pair.code");
  ExperimentResult res = run_code_experiment(
      bell, parse_pauli("IX", 2), ExperimentMode::Correct, 1);
  CHECK(res.detected);
  CHECK(res.in_table);
  // The stored correction differs from the injected error by a group
  // element, which is just as good.
  CHECK(res.correction.str() == "+XI");
  CHECK(res.recovered);
}
