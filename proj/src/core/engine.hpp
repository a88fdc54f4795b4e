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

#ifndef KSR_CORE_ENGINE_HPP_
#define KSR_CORE_ENGINE_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "core/term.hpp"
#include "core/verdict.hpp"

namespace ksr {

enum class Theory : uint8_t { KS, KA };

struct DecisionBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineStats {
  uint64_t pairs_explored = 0;
  uint64_t distinct_states = 0;
  uint64_t derivative_terms = 0;  // pool growth during the run
};

struct EngineLimits {
  uint64_t max_pairs = 4'000'000;
  uint64_t max_states = 1'000'000;
};

// Language equivalence on term DAGs via lazily determinized derivative
// sets with a union-find congruence (Hopcroft-Karp on the fly).
//
// A state is a set of terms. Under KS the state {u1,...,uk} denotes the
// closure of the union of the classical word languages of the ui, where the
// constant 0 is read as the one-word language over the zero symbol and
// closure adds the zero-symbol word and everything reachable by replacing
// substrings with the zero symbol. Letter derivatives are Antimirov partial
// derivatives; the derivative by the zero symbol is the suffix transformer,
// which realizes automaton saturation symbolically (the residual after
// reading one zero symbol is the closure of the suffix language). Under KA
// the zero symbol does not exist and 0 denotes the empty language.
//
// Explicit automata for these inputs would need one state per tree
// position, which is astronomically large for elimination images; this
// engine only materializes the reachable derivative sets.
class Engine {
 public:
  Engine(TermPool& pool, Theory theory, EngineLimits limits = {});

  // Shortest counterexample in breadth-first order, letters before the zero
  // symbol within a level.
  Verdict equivalence(TermId x, TermId y);
  Verdict inclusion(TermId x, TermId y);

  // Word membership (KS: membership in the closed language).
  bool member(TermId t, const Word& w);

  const EngineStats& stats() const { return stats_; }

 private:
  using StateId = uint32_t;

  StateId intern_state(std::vector<TermId> elems);
  StateId successor(StateId s, char symbol);
  StateId state_of_term(TermId t);
  bool accepting(StateId s) const;
  std::vector<char> symbols_for(TermId x, TermId y);
  Verdict run(TermId x, TermId y, bool inclusion_only);

  TermPool& pool_;
  Theory theory_;
  EngineLimits limits_;
  EngineStats stats_;

  std::vector<std::vector<TermId>> states_;
  std::vector<uint8_t> state_accepting_;
  std::unordered_map<uint64_t, std::vector<StateId>> state_table_;
  std::unordered_map<uint64_t, StateId> succ_memo_;
};

}  // namespace ksr

#endif  // KSR_CORE_ENGINE_HPP_
