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

#ifndef KSR_CORE_SAMPLER_HPP_
#define KSR_CORE_SAMPLER_HPP_

#include <vector>

#include "core/rng.hpp"
#include "core/term.hpp"

namespace ksr {

// Random ground terms with a node budget and a star-nesting bound.
struct SamplerOptions {
  uint32_t max_size = 10;
  uint32_t max_star_depth = 2;
  bool allow_zero = true;
  bool allow_one = true;
};

class TermSampler {
 public:
  TermSampler(TermPool& pool, const Alphabet& alphabet);

  TermId sample(Rng& rng, const SamplerOptions& opts) const;

  // Rewrites the term with a few randomly placed provable identities
  // (distributivity both ways, star unfolding), yielding a term that is
  // provably equal but in general not syntactically equal after
  // normalization.
  TermId mutate_equal(Rng& rng, TermId t, int steps = 2) const;

  // Like mutate_equal, but may additionally splice the hypothesis term into
  // sums and swap it with 0, which preserves equality under a = 0.
  TermId mutate_equal_under_hypothesis(Rng& rng, TermId t, TermId a, int steps = 2) const;

  Problem sample_problem(Rng& rng, uint32_t goal_size, uint32_t hyp_size,
                         uint32_t num_hyps) const;

  TermPool& pool() const { return pool_; }
  const Alphabet& alphabet() const { return alphabet_; }

 private:
  TermId sample_rec(Rng& rng, uint32_t budget, uint32_t star_depth,
                    const SamplerOptions& opts) const;
  TermId mutate_at(Rng& rng, TermId t, uint64_t& site, TermId hyp) const;

  TermPool& pool_;
  Alphabet alphabet_;
  std::vector<TermId> letter_terms_;
};

}  // namespace ksr

#endif  // KSR_CORE_SAMPLER_HPP_
