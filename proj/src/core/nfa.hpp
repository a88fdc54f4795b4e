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

#ifndef KSR_CORE_NFA_HPP_
#define KSR_CORE_NFA_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "core/term.hpp"
#include "core/verdict.hpp"

namespace ksr {

// Explicit automaton over the semantic alphabet (letters plus, in KS mode,
// the distinguished zero symbol). States are one per tree position, so this
// representation is only for terms of modest tree size; the decision engine
// handles the large DAG-shared inputs.
struct Nfa {
  uint32_t num_states = 0;
  bool has_zero_symbol = false;
  bool saturated = false;
  std::vector<std::vector<std::pair<char, uint32_t>>> edges;  // (symbol, target)
  std::vector<uint32_t> initial;    // sorted
  std::vector<uint32_t> accepting;  // sorted

  bool is_accepting(uint32_t q) const;
};

struct NfaTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NfaMode : uint8_t { KA, KS };

// KA mode: the classical position construction, 0 denotes the empty
// language. KS mode: 0 denotes the one-word language over the zero symbol
// and the automaton is saturated after every operator application (and on
// the leaves), so its language is the closed language of the term.
// `zero_as_symbol_unsaturated` builds the classical automaton with 0 read
// as the zero symbol but performs no saturation; saturating that once at
// the end must give the same language as KS mode.
Nfa nfa_of_term(const TermPool& pool, TermId t, NfaMode mode, uint32_t max_states = 20000);
Nfa nfa_of_term_zero_as_symbol(const TermPool& pool, TermId t, uint32_t max_states = 20000);

// Adds a zero-symbol edge q -> q' for every q' reachable from q (including
// q itself). Idempotent; the added edges never change reachability.
Nfa saturate_zero(const Nfa& n);

// Language equivalence / inclusion via on-the-fly subset products with a
// visited-pair front. Unequal verdicts carry a shortest witness word.
Verdict nfa_equivalent(const Nfa& x, const Nfa& y);
Verdict nfa_included(const Nfa& x, const Nfa& y);

bool nfa_member(const Nfa& n, const Word& w);

// All accepted words of length <= maxlen, lexicographic in symbol order.
std::set<Word> nfa_words_upto(const Nfa& n, uint32_t maxlen);

// Graphviz dump; the zero symbol prints as "0".
std::string nfa_to_dot(const TermPool& pool, const Nfa& n);

}  // namespace ksr

#endif  // KSR_CORE_NFA_HPP_
