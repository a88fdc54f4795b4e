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

#ifndef KSR_CORE_LEMMAS_HPP_
#define KSR_CORE_LEMMAS_HPP_

#include <string>
#include <vector>

#include "core/term.hpp"

namespace ksr {

struct UnknownLemmaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LemmaStatus : uint8_t {
  Pass,
  Fail,
  HypothesisNotSampled,  // conditional lemma whose premise failed to hold
};

struct LemmaResult {
  std::string lemma;
  uint32_t sample = 0;
  LemmaStatus status = LemmaStatus::Pass;
  std::string binding;  // rendered sampled terms
  std::string witness;  // rendered witness word on failure
  std::string note;     // which sub-identity failed, etc.
};

struct LemmaRunOptions {
  uint32_t samples = 50;
  uint64_t seed = 7;
  uint32_t goal_size = 10;
  uint32_t hyp_size = 8;
  std::vector<std::string> alphabet = {"b", "c", "d"};
  unsigned jobs = 0;  // 0 = hardware concurrency
};

// Names registered in the executable suite, in canonical order.
const std::vector<std::string>& lemma_names();

// Runs each named lemma at `samples` random bindings. Conditional lemmas use
// targeted generators so that a healthy share of samples satisfies their
// premises. Deterministic per seed: every (lemma, sample) task derives its
// own stream, so results are independent of scheduling.
std::vector<LemmaResult> check_lemmas(const std::vector<std::string>& names,
                                      const LemmaRunOptions& opts);

struct LemmaSummary {
  std::string lemma;
  uint32_t passed = 0;
  uint32_t failed = 0;
  uint32_t skipped = 0;
};

std::vector<LemmaSummary> summarize(const std::vector<LemmaResult>& results);

}  // namespace ksr

#endif  // KSR_CORE_LEMMAS_HPP_
