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

#ifndef KSR_CORE_CLOSURE_HPP_
#define KSR_CORE_CLOSURE_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "core/term.hpp"
#include "core/verdict.hpp"

namespace ksr {

struct ClosureBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All words of length <= maxlen of the refinement closure: a word is refined
// by replacing an arbitrary (possibly empty) substring with the zero symbol
// or with an already-enumerated word of a hypothesis term, where the
// hypothesis word sets are themselves closed iteratively to a joint
// fixpoint. The set is a fixpoint of the rewrite restricted to the bound.
struct BoundedLanguage {
  uint32_t maxlen = 0;
  std::set<Word> words;
};

// Enumerates the closure bottom-up over the term (each operator applied to
// already-closed bounded word sets, then re-closed), which keeps the
// intermediate words short: starting from whole-term word sets would miss
// short residues of long source words. `budget` caps the total number of
// distinct words touched.
BoundedLanguage bounded_closure(TermPool& pool, TermId t,
                                const std::vector<HoareHypothesis>& hyps, uint32_t maxlen,
                                size_t budget = 200000);

inline constexpr size_t kDefaultClosureBudget = 200000;

}  // namespace ksr

#endif  // KSR_CORE_CLOSURE_HPP_
