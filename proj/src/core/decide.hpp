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

#ifndef KSR_CORE_DECIDE_HPP_
#define KSR_CORE_DECIDE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/engine.hpp"
#include "core/term.hpp"
#include "core/transform.hpp"
#include "core/verdict.hpp"

namespace ksr {

// Ground equality in the closed-language model (equivalently: equality of
// the saturated automata). Unequal verdicts carry a shortest witness.
Verdict decide_ks(TermPool& pool, TermId x, TermId y, EngineStats* stats = nullptr);

// Classical regular-expression equivalence (0 = empty language).
Verdict decide_ka(TermPool& pool, TermId x, TermId y, EngineStats* stats = nullptr);

// x <= y in the respective theory.
Verdict decide_ks_leq(TermPool& pool, TermId x, TermId y);
Verdict decide_ka_leq(TermPool& pool, TermId x, TermId y);

struct EliminationReport {
  Equation original;
  Equation transformed;
  TermId hyp_term = kNoTerm;  // combined hypothesis a
  TermId m_term = kNoTerm;
  uint64_t a_tree = 0;
  uint64_t m_tree = 0, m_dag = 0;
  uint64_t f_lhs_tree = 0, f_lhs_dag = 0;
  uint64_t f_rhs_tree = 0, f_rhs_dag = 0;
  EngineStats engine;
  Verdict verdict;
  double millis = 0;
};

// Full pipeline: combine hypotheses, build the context, transform the goal,
// decide the transformed equation in the closed-language model.
EliminationReport decide_under_hoare(TermPool& pool, const Problem& problem);

// Baseline pipeline in the classical theory: goal sides are replaced by
// S*;a;S* + side and decided as regular expressions.
EliminationReport decide_under_hoare_ka(TermPool& pool, const Problem& problem);

// Verdict of the staged pipeline that eliminates each hypothesis in its own
// stage (images composed left to right) instead of summing hypotheses.
EliminationReport decide_under_hoare_staged(TermPool& pool, const Problem& problem);

struct CrosscheckReport {
  Verdict decider;
  bool oracle_ran = false;          // false when the word budget was exhausted
  bool oracle_difference = false;   // some word <= maxlen on exactly one side
  Word oracle_witness;
  uint32_t maxlen = 0;
  size_t models_total = 0;
  size_t models_admitting = 0;      // models satisfying all hypotheses
  size_t models_refuting = 0;       // admitting models that distinguish the goal
  size_t models_refuting_image = 0; // models distinguishing the transformed goal
  bool consistent = true;
  std::string detail;
};

struct CrosscheckOptions {
  uint32_t maxlen = 6;
  size_t word_budget = 200000;
  size_t models = 50;
  uint8_t carrier = 4;
  uint64_t seed = 1;
};

// Triangulates the decision against the bounded refinement oracle and
// against random relational models. Any disagreement is a hard error
// (consistent = false); an exhausted oracle budget degrades to a partial
// report instead.
CrosscheckReport crosscheck(TermPool& pool, const Problem& problem,
                            const CrosscheckOptions& opts);

}  // namespace ksr

#endif  // KSR_CORE_DECIDE_HPP_
