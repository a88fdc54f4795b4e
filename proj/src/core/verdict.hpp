// Copyright 2026 The ksr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KSR_CORE_VERDICT_HPP_
#define KSR_CORE_VERDICT_HPP_

#include <cstdint>
#include <string>

#include "core/term.hpp"

namespace ksr {

// Words over the semantic alphabet: byte 0 is the distinguished zero symbol,
// byte 1+i is the letter with pool id i.
using Word = std::string;
inline constexpr char kZeroSymbol = 0;

inline Word::value_type letter_symbol(LetterId id) {
  return static_cast<Word::value_type>(id + 1);
}

// Prints a semantic word; the zero symbol is rendered as "0".
inline std::string render_word(const TermPool& pool, const Word& w) {
  std::string out;
  for (char c : w) {
    if (c == kZeroSymbol) out += '0';
    else out += pool.letter_name(static_cast<LetterId>(c - 1));
  }
  return out;
}

enum class Outcome : uint8_t { Equal, Unequal, InconclusiveAtBound };

struct Verdict {
  Outcome outcome = Outcome::Equal;
  Word witness;        // set iff outcome == Unequal
  uint32_t bound = 0;  // set iff outcome == InconclusiveAtBound

  bool equal() const { return outcome == Outcome::Equal; }
  bool unequal() const { return outcome == Outcome::Unequal; }
};

}  // namespace ksr

#endif  // KSR_CORE_VERDICT_HPP_
