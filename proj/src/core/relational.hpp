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

#ifndef KSR_CORE_RELATIONAL_HPP_
#define KSR_CORE_RELATIONAL_HPP_

#include <cstdint>
#include <vector>

#include "core/term.hpp"

namespace ksr {

// Binary relation on a carrier of at most 8 states, packed row-major into a
// uint64 (bit r*8+c means r relates to c). Element 0 is the distinguished
// bottom state.
using Rel = uint64_t;

// Refutation-only model: + is union, ; is composition, * is reflexive
// transitive closure, 1 is the identity, and 0 denotes {(bottom, bottom)}.
// Every letter relation relates bottom to an output iff that output is
// bottom, which makes 0 a least element, so all axioms except annihilation
// hold. Inequality of interpretations refutes provable equality.
struct RelationalModel {
  uint8_t carrier = 2;
  std::vector<Rel> letter_rel;  // indexed by pool letter id

  static Rel identity(uint8_t carrier);
  static Rel bottom_only();
};

Rel rel_compose(Rel a, Rel b, uint8_t carrier);
Rel rel_star(Rel a, uint8_t carrier);

// Interprets a term; letters must have an interpretation in the model.
Rel eval_relational(const TermPool& pool, TermId t, const RelationalModel& model);

// Deterministic per seed; every generated relation satisfies the
// bottom-row constraint.
std::vector<RelationalModel> random_relational_models(size_t num_letters, uint8_t carrier_size,
                                                      size_t count, uint64_t seed);

}  // namespace ksr

#endif  // KSR_CORE_RELATIONAL_HPP_
