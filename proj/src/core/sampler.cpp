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

#include "core/sampler.hpp"

namespace ksr {

TermSampler::TermSampler(TermPool& pool, const Alphabet& alphabet)
    : pool_(pool), alphabet_(alphabet) {
  for (const auto& name : alphabet_.letters()) letter_terms_.push_back(pool_.letter(name));
}

TermId TermSampler::sample(Rng& rng, const SamplerOptions& opts) const {
  uint32_t budget = 1 + static_cast<uint32_t>(rng.below(opts.max_size));
  return sample_rec(rng, budget, 0, opts);
}

TermId TermSampler::sample_rec(Rng& rng, uint32_t budget, uint32_t star_depth,
                               const SamplerOptions& opts) const {
  if (budget <= 1) {
    uint64_t roll = rng.below(10);
    if (opts.allow_zero && roll == 0) return pool_.zero();
    if (opts.allow_one && roll == 1) return pool_.one();
    return letter_terms_[rng.below(letter_terms_.size())];
  }
  bool star_ok = star_depth < opts.max_star_depth && budget >= 2;
  uint64_t roll = rng.below(100);
  if (star_ok && roll < 20) {
    return pool_.star(sample_rec(rng, budget - 1, star_depth + 1, opts));
  }
  if (roll < 55) {
    uint32_t left = 1 + static_cast<uint32_t>(rng.below(budget - 1));
    return pool_.prod(sample_rec(rng, left, star_depth, opts),
                      sample_rec(rng, budget - left, star_depth, opts));
  }
  if (roll < 90) {
    uint32_t left = 1 + static_cast<uint32_t>(rng.below(budget - 1));
    return pool_.sum2(sample_rec(rng, left, star_depth, opts),
                      sample_rec(rng, budget - left, star_depth, opts));
  }
  return sample_rec(rng, 1, star_depth, opts);
}

// Walks the tree counting rewrite sites; applies one rewrite when the
// decremented site counter hits zero.
TermId TermSampler::mutate_at(Rng& rng, TermId t, uint64_t& site, TermId hyp) const {
  TermPool& p = pool_;
  if (site == 0) {
    uint64_t kind = rng.below(hyp == kNoTerm ? 4 : 6);
    switch (kind) {
      case 0:  // distribute left: x;(y+z) -> x;y + x;z (or pad with unfold)
        if (p.op(t) == Op::Prod && p.op(p.kid(t, 1)) == Op::Sum) {
          TermId x = p.kid(t, 0);
          std::vector<TermId> ops;
          for (TermId k : p.kids(p.kid(t, 1))) ops.push_back(p.prod(x, k));
          site = UINT64_MAX;
          return p.sum(ops);
        }
        [[fallthrough]];
      case 1:  // distribute right: (x+y);z -> x;z + y;z
        if (p.op(t) == Op::Prod && p.op(p.kid(t, 0)) == Op::Sum) {
          TermId z = p.kid(t, 1);
          std::vector<TermId> ops;
          for (TermId k : p.kids(p.kid(t, 0))) ops.push_back(p.prod(k, z));
          site = UINT64_MAX;
          return p.sum(ops);
        }
        [[fallthrough]];
      case 2:  // star unfold: x* -> 1 + x + x*;x*
        if (p.op(t) == Op::Star) {
          TermId x = p.kid(t, 0);
          site = UINT64_MAX;
          return p.sum2(p.sum2(p.one(), x), p.prod(t, t));
        }
        [[fallthrough]];
      case 3:  // pad with a unit: t -> 1;t (disappears after normalization,
               // so combine with idempotent duplication t -> t+t)
        site = UINT64_MAX;
        return p.sum2(t, t);
      case 4:  // under a = 0: t -> t + a
        site = UINT64_MAX;
        return p.sum2(t, hyp);
      default:  // under a = 0: 0 -> a, elsewhere fall back to t + a
        site = UINT64_MAX;
        if (p.op(t) == Op::Zero) return hyp;
        return p.sum2(t, hyp);
    }
  }
  --site;
  switch (p.op(t)) {
    case Op::Zero:
    case Op::One:
    case Op::Letter:
      return t;
    case Op::Star: {
      TermId k = mutate_at(rng, p.kid(t, 0), site, hyp);
      return p.star(k);
    }
    case Op::Prod: {
      TermId l = mutate_at(rng, p.kid(t, 0), site, hyp);
      TermId r = site == UINT64_MAX ? p.kid(t, 1) : mutate_at(rng, p.kid(t, 1), site, hyp);
      return p.prod(l, r);
    }
    case Op::Sum: {
      std::vector<TermId> ops;
      bool done = false;
      for (TermId k : p.kids(t)) {
        if (done) {
          ops.push_back(k);
        } else {
          ops.push_back(mutate_at(rng, k, site, hyp));
          done = site == UINT64_MAX;
        }
      }
      return p.sum(ops);
    }
  }
  return t;
}

TermId TermSampler::mutate_equal(Rng& rng, TermId t, int steps) const {
  for (int i = 0; i < steps; ++i) {
    uint64_t nodes = pool_.tree_size(t);
    uint64_t site = rng.below(nodes);
    t = mutate_at(rng, t, site, kNoTerm);
  }
  return t;
}

TermId TermSampler::mutate_equal_under_hypothesis(Rng& rng, TermId t, TermId a, int steps) const {
  for (int i = 0; i < steps; ++i) {
    uint64_t nodes = pool_.tree_size(t);
    uint64_t site = rng.below(nodes);
    t = mutate_at(rng, t, site, a);
  }
  return t;
}

Problem TermSampler::sample_problem(Rng& rng, uint32_t goal_size, uint32_t hyp_size,
                                    uint32_t num_hyps) const {
  Problem prob;
  prob.alphabet = alphabet_;
  SamplerOptions hyp_opts{hyp_size, 1, true, true};
  for (uint32_t i = 0; i < num_hyps; ++i) {
    prob.hypotheses.push_back(HoareHypothesis{sample(rng, hyp_opts)});
  }
  SamplerOptions goal_opts{goal_size, 2, true, true};
  prob.goal.lhs = sample(rng, goal_opts);
  prob.goal.rhs = sample(rng, goal_opts);
  return prob;
}

}  // namespace ksr
