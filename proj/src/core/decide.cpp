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

#include "core/decide.hpp"

#include <chrono>
#include <sstream>

#include "core/closure.hpp"
#include "core/relational.hpp"

namespace ksr {

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

Verdict decide(TermPool& pool, Theory theory, TermId x, TermId y, EngineStats* stats) {
  Engine engine(pool, theory);
  size_t before = pool.num_nodes();
  Verdict v = engine.equivalence(x, y);
  if (stats) {
    *stats = engine.stats();
    stats->derivative_terms = pool.num_nodes() - before;
  }
  return v;
}

}  // namespace

Verdict decide_ks(TermPool& pool, TermId x, TermId y, EngineStats* stats) {
  return decide(pool, Theory::KS, x, y, stats);
}

Verdict decide_ka(TermPool& pool, TermId x, TermId y, EngineStats* stats) {
  return decide(pool, Theory::KA, x, y, stats);
}

Verdict decide_ks_leq(TermPool& pool, TermId x, TermId y) {
  Equation eq = leq(pool, x, y);
  return decide_ks(pool, eq.lhs, eq.rhs);
}

Verdict decide_ka_leq(TermPool& pool, TermId x, TermId y) {
  Equation eq = leq(pool, x, y);
  return decide_ka(pool, eq.lhs, eq.rhs);
}

namespace {

void fill_sizes(TermPool& pool, EliminationReport& r) {
  r.a_tree = pool.tree_size(r.hyp_term);
  if (r.m_term != kNoTerm) {
    r.m_tree = pool.tree_size(r.m_term);
    r.m_dag = pool.dag_size(r.m_term);
  }
  r.f_lhs_tree = pool.tree_size(r.transformed.lhs);
  r.f_lhs_dag = pool.dag_size(r.transformed.lhs);
  r.f_rhs_tree = pool.tree_size(r.transformed.rhs);
  r.f_rhs_dag = pool.dag_size(r.transformed.rhs);
}

}  // namespace

EliminationReport decide_under_hoare(TermPool& pool, const Problem& problem) {
  double t0 = now_ms();
  EliminationReport r;
  r.original = problem.goal;
  r.hyp_term = combine_hypotheses(pool, problem.hypotheses);
  EliminationContext ctx(pool, r.hyp_term);
  r.m_term = ctx.m();
  r.transformed = ctx.f(problem.goal);
  fill_sizes(pool, r);
  r.verdict = decide_ks(pool, r.transformed.lhs, r.transformed.rhs, &r.engine);
  r.millis = now_ms() - t0;
  return r;
}

EliminationReport decide_under_hoare_ka(TermPool& pool, const Problem& problem) {
  double t0 = now_ms();
  EliminationReport r;
  r.original = problem.goal;
  r.hyp_term = combine_hypotheses(pool, problem.hypotheses);
  r.transformed.lhs = ka_hoare_transform(pool, problem.alphabet, r.hyp_term, problem.goal.lhs);
  r.transformed.rhs = ka_hoare_transform(pool, problem.alphabet, r.hyp_term, problem.goal.rhs);
  fill_sizes(pool, r);
  r.verdict = decide_ka(pool, r.transformed.lhs, r.transformed.rhs, &r.engine);
  r.millis = now_ms() - t0;
  return r;
}

EliminationReport decide_under_hoare_staged(TermPool& pool, const Problem& problem) {
  double t0 = now_ms();
  if (problem.hypotheses.empty()) throw std::invalid_argument("no hypotheses");
  EliminationReport r;
  r.original = problem.goal;
  r.hyp_term = combine_hypotheses(pool, problem.hypotheses);

  // Staging composes the per-hypothesis transformers; the first hypothesis
  // is eliminated first.
  std::optional<Elimination> staged;
  for (const auto& h : problem.hypotheses) {
    Elimination stage = Elimination::ks_hoare(pool, h.a);
    if (!staged) {
      staged = std::move(stage);
    } else {
      staged = Elimination::composed(std::move(*staged), std::move(stage));
    }
  }
  r.transformed = staged->apply(pool, problem.goal);
  r.m_term = kNoTerm;
  fill_sizes(pool, r);
  r.verdict = decide_ks(pool, r.transformed.lhs, r.transformed.rhs, &r.engine);
  r.millis = now_ms() - t0;
  return r;
}

CrosscheckReport crosscheck(TermPool& pool, const Problem& problem,
                            const CrosscheckOptions& opts) {
  CrosscheckReport rep;
  rep.maxlen = opts.maxlen;
  std::ostringstream detail;

  const bool has_hyps = !problem.hypotheses.empty();
  Equation image = problem.goal;
  if (has_hyps) {
    EliminationReport er = decide_under_hoare(pool, problem);
    rep.decider = er.verdict;
    image = er.transformed;
  } else {
    rep.decider = decide_ks(pool, problem.goal.lhs, problem.goal.rhs);
  }

  // Bounded refinement oracle: exact on words of length <= maxlen, so the
  // word sets differ iff the hypotheses fail to identify the goal sides on
  // some short word.
  try {
    BoundedLanguage lw = bounded_closure(pool, problem.goal.lhs, problem.hypotheses,
                                         opts.maxlen, opts.word_budget);
    BoundedLanguage rw = bounded_closure(pool, problem.goal.rhs, problem.hypotheses,
                                         opts.maxlen, opts.word_budget);
    rep.oracle_ran = true;
    if (lw.words != rw.words) {
      rep.oracle_difference = true;
      bool found = false;
      for (const Word& w : lw.words) {
        if (!rw.words.count(w)) { rep.oracle_witness = w; found = true; break; }
      }
      if (!found) {
        for (const Word& w : rw.words) {
          if (!lw.words.count(w)) { rep.oracle_witness = w; break; }
        }
      }
    }
    if (rep.decider.equal() && rep.oracle_difference) {
      rep.consistent = false;
      detail << "decider says equal but the bounded oracle found the word '"
             << render_word(pool, rep.oracle_witness) << "' on one side only; ";
    }
    if (rep.decider.unequal() && rep.decider.witness.size() <= opts.maxlen &&
        !rep.oracle_difference) {
      rep.consistent = false;
      detail << "decider witness '" << render_word(pool, rep.decider.witness)
             << "' fits the bound but the bounded word sets coincide; ";
    }
  } catch (const ClosureBudgetExceeded&) {
    rep.oracle_ran = false;
    detail << "bounded oracle budget exhausted at maxlen " << opts.maxlen << "; ";
  }

  // Relational refutation: a model admitting all hypotheses must identify
  // the goal sides whenever the decider says equal; the transformed goal
  // must be identified unconditionally in that case.
  auto models = random_relational_models(pool.num_letters(), opts.carrier, opts.models,
                                         opts.seed);
  rep.models_total = models.size();
  for (const auto& model : models) {
    bool admits = true;
    for (const auto& h : problem.hypotheses) {
      if (eval_relational(pool, h.a, model) != RelationalModel::bottom_only()) {
        admits = false;
        break;
      }
    }
    Rel il = eval_relational(pool, image.lhs, model);
    Rel ir = eval_relational(pool, image.rhs, model);
    if (il != ir) ++rep.models_refuting_image;
    if (!admits) continue;
    ++rep.models_admitting;
    Rel gl = eval_relational(pool, problem.goal.lhs, model);
    Rel gr = eval_relational(pool, problem.goal.rhs, model);
    if (gl != gr) ++rep.models_refuting;
  }
  if (rep.decider.equal() && rep.models_refuting > 0) {
    rep.consistent = false;
    detail << rep.models_refuting
           << " hypothesis-admitting relational model(s) distinguish the goal; ";
  }
  if (rep.decider.equal() && rep.models_refuting_image > 0) {
    rep.consistent = false;
    detail << rep.models_refuting_image
           << " relational model(s) distinguish the transformed goal; ";
  }
  rep.detail = detail.str();
  return rep;
}

}  // namespace ksr
