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

// Shared generator for runnable random circuit programs: gates, sign-flip
// layers, measurements in both modes, and classical corrections. Drops are
// left out because their legality depends on the quantum state.

#ifndef STABSIM_TESTS_RANDOM_CIRCUITS_HPP
#define STABSIM_TESTS_RANDOM_CIRCUITS_HPP

#include <random>
#include <string>
#include <vector>

namespace random_circuits {

inline std::string random_observable(std::mt19937_64& rng, std::size_t n) {
  static const char kLetters[] = {'X', 'Y', 'Z'};
  std::string letters(n, 'I');
  while (letters.find_first_not_of('I') == std::string::npos) {
    for (std::size_t q = 0; q < n; ++q) {
      letters[q] = (rng() & 1) ? 'I' : kLetters[rng() % 3];
    }
  }
  return ((rng() & 1) ? "+" : "-") + letters;
}

inline std::string random_circuit_text(std::mt19937_64& rng,
                                       std::size_t max_qubits = 5,
                                       std::size_t max_instructions = 40) {
  const std::size_t n = 2 + rng() % (max_qubits - 1);
  std::string text = "qubits " + std::to_string(n) + "\n";
  for (std::size_t q = 0; q < n; ++q) {
    text += "input " + std::to_string(q + 1) +
            ((rng() & 1) ? " zero\n" : " data\n");
  }
  const std::size_t count = 5 + rng() % (max_instructions - 4);
  std::vector<std::string> bits;
  int next_bit = 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t r = rng() % 100;
    if (r < 45) {
      const std::uint64_t g = rng() % 3;
      if (g == 0) {
        text += "R " + std::to_string(1 + rng() % n) + "\n";
      } else if (g == 1) {
        text += "P " + std::to_string(1 + rng() % n) + "\n";
      } else if (n >= 2) {
        const std::size_t c = 1 + rng() % n;
        std::size_t t = 1 + rng() % n;
        while (t == c) t = 1 + rng() % n;
        text += "CNOT " + std::to_string(c) + " " + std::to_string(t) + "\n";
      }
    } else if (r < 60) {
      static const char kLetters[] = {'X', 'Y', 'Z'};
      text += std::string(1, kLetters[rng() % 3]) + " " +
              std::to_string(1 + rng() % n) + "\n";
    } else if (r < 85) {
      std::string bit = "m" + std::to_string(next_bit++);
      text += "measure " + random_observable(rng, n) + " -> " + bit;
      if (rng() & 1) text += " random";
      text += "\n";
      bits.push_back(bit);
    } else if (!bits.empty()) {
      text += "if " + bits[rng() % bits.size()] + " apply " +
              random_observable(rng, n) + "\n";
    } else {
      text += "R " + std::to_string(1 + rng() % n) + "\n";
    }
  }
  return text;
}

}  // namespace random_circuits

#endif  // STABSIM_TESTS_RANDOM_CIRCUITS_HPP
