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

#include "core/lemmas.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "core/decide.hpp"
#include "core/rng.hpp"
#include "core/sampler.hpp"
#include "core/transform.hpp"

namespace ksr {

namespace {

// Everything one lemma instance needs; one pool per task keeps the suite
// embarrassingly parallel.
struct Env {
  TermPool pool;
  Alphabet alphabet;
  TermSampler sampler;
  Rng rng;
  LemmaRunOptions opts;
  LemmaResult result;

  Env(const LemmaRunOptions& o, uint64_t stream, uint32_t sample_idx)
      : alphabet(o.alphabet),
        sampler(pool, alphabet),
        rng(derive_seed(o.seed, stream, sample_idx)),
        opts(o) {}

  TermId sample_goal() {
    return sampler.sample(rng, SamplerOptions{opts.goal_size, 2, true, true});
  }
  TermId sample_hyp() {
    return sampler.sample(rng, SamplerOptions{opts.hyp_size, 1, true, true});
  }

  void bind(const std::string& name, TermId t) {
    if (!result.binding.empty()) result.binding += ", ";
    result.binding += name + "=" + pool.render(pool.normalize(t));
  }

  // Checks one equality; on failure records the witness and sub-name.
  bool eq(TermId lhs, TermId rhs, const std::string& what) {
    Verdict v = decide_ks(pool, lhs, rhs);
    if (v.equal()) return true;
    result.status = LemmaStatus::Fail;
    result.witness = render_word(pool, v.witness);
    result.note = what;
    return false;
  }

  bool le(TermId x, TermId y, const std::string& what) {
    Equation e = leq(pool, x, y);
    return eq(e.lhs, e.rhs, what);
  }

  // Premise check for conditional lemmas.
  bool holds(TermId lhs, TermId rhs) { return decide_ks(pool, lhs, rhs).equal(); }
  bool holds_le(TermId x, TermId y) {
    Equation e = leq(pool, x, y);
    return holds(e.lhs, e.rhs);
  }

  void skip(const std::string& why) {
    result.status = LemmaStatus::HypothesisNotSampled;
    result.note = why;
  }
};

using LemmaFn = std::function<void(Env&)>;

// Random combination of atoms known to lie below m (0, a, l, m are all
// below m, and sums and products of such terms stay below m).
TermId sample_below_m(Env& env, EliminationContext& ctx) {
  TermPool& p = env.pool;
  std::vector<TermId> atoms{p.zero(), ctx.a(), ctx.l(), ctx.m()};
  std::function<TermId(int)> build = [&](int depth) -> TermId {
    if (depth == 0 || env.rng.chance(0.5)) return atoms[env.rng.below(atoms.size())];
    TermId x = build(depth - 1);
    TermId y = build(depth - 1);
    return env.rng.chance(0.5) ? p.sum2(x, y) : p.prod(x, y);
  };
  return build(2);
}

// Random term below p(s(m)): anything below m qualifies, and 1 and sums may
// be mixed in.
TermId sample_below_psm(Env& env, EliminationContext& ctx) {
  TermId x = sample_below_m(env, ctx);
  if (env.rng.chance(0.4)) x = env.pool.sum2(x, env.pool.one());
  return x;
}

void lemma_1xpx(Env& env) {
  TermId x = env.sample_goal();
  env.bind("x", x);
  TermPool& p = env.pool;
  if (!env.le(p.sum2(p.one(), x), prefixes(p, x), "1+x <= px")) return;
  env.le(p.sum2(p.one(), x), suffixes(p, x), "1+x <= sx");
}

void lemma_ppx(Env& env) {
  TermId x = env.sample_goal();
  env.bind("x", x);
  TermId px = prefixes(env.pool, x);
  env.eq(prefixes(env.pool, px), px, "ppx = px");
}

void lemma_pssp(Env& env) {
  TermId x = env.sample_goal();
  env.bind("x", x);
  env.eq(prefixes(env.pool, suffixes(env.pool, x)), suffixes(env.pool, prefixes(env.pool, x)),
         "psx = spx");
}

void lemma_pxz(Env& env) {
  TermId x = env.sample_goal();
  env.bind("x", x);
  TermPool& p = env.pool;
  env.eq(p.mk_prod_norm(prefixes(p, x), p.zero()), p.mk_prod_norm(p.normalize(x), p.zero()),
         "px;0 = x;0");
}

void lemma_pshort(Env& env) {
  TermPool& p = env.pool;
  TermId x = env.sample_goal();
  TermId y = env.sample_goal();
  env.bind("x", x);
  env.bind("y", y);
  TermId px = prefixes(p, x);
  TermId py = prefixes(p, y);
  TermId pxs = p.star(px);
  if (!env.eq(p.mk_prod_norm(pxs, px), pxs, "px*;px = px*")) return;
  TermId xs = p.star(p.normalize(x));
  if (!env.eq(prefixes(p, p.prod(xs, y)), p.mk_prod_norm(xs, p.mk_sum_norm({px, py})),
              "p(x*;y) = x*;(px+py)")) {
    return;
  }
  if (!env.eq(prefixes(p, p.prod(pxs, y)), p.mk_prod_norm(pxs, py), "p(px*;y) = px*;py")) return;
  env.eq(prefixes(p, p.prod(px, y)), p.mk_prod_norm(px, py), "p(px;y) = px;py");
}

void lemma_palg(Env& env) {
  TermId x = env.sample_goal();
  TermId y = env.sampler.mutate_equal(env.rng, x);
  env.bind("x", x);
  env.bind("y", y);
  if (!env.holds(env.pool.normalize(x), env.pool.normalize(y))) {
    env.skip("mutation was not provably equal");
    return;
  }
  env.eq(prefixes(env.pool, x), prefixes(env.pool, y), "x=y => px=py");
}

void lemma_mpsam(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId psa = prefixes(p, suffixes(p, ctx.a()));
  env.le(p.mk_prod_norm(ctx.m(), p.mk_prod_norm(psa, ctx.m())), ctx.m(), "m;psa;m <= m");
}

void lemma_pl(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId psa = prefixes(p, suffixes(p, ctx.a()));
  TermId rhs = p.mk_sum_norm(
      {p.star(prefixes(p, ctx.a())), p.mk_prod_norm(ctx.l(), psa)});
  env.eq(prefixes(p, ctx.l()), rhs, "pl = pa* + l;psa");
}

void lemma_plm(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  env.eq(p.mk_prod_norm(prefixes(p, ctx.l()), ctx.m()), ctx.m(), "pl;m = m");
}

void lemma_pmm(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  env.eq(p.mk_prod_norm(prefixes(p, ctx.m()), ctx.m()), ctx.m(), "pm;m = m");
}

void lemma_mpsm(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId psm = prefixes(p, suffixes(p, ctx.m()));
  env.le(p.mk_prod_norm(ctx.m(), p.mk_prod_norm(psm, ctx.m())), ctx.m(), "m;psm;m <= m");
}

void lemma_xmf(Env& env) {
  TermId a = env.sample_hyp();
  TermId x = env.sample_goal();
  env.bind("a", a);
  env.bind("x", x);
  EliminationContext ctx(env.pool, a);
  env.le(env.pool.mk_sum_norm({env.pool.normalize(x), ctx.m()}), ctx.f(x), "x+m <= fx");
}

void lemma_fact(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId x = sample_below_psm(env, ctx);
  env.bind("x", x);
  TermId psm = prefixes(p, suffixes(p, ctx.m()));
  if (!env.holds_le(p.normalize(x), psm)) {
    env.skip("x <= psm did not hold");
    return;
  }
  TermId fx = ctx.f(x);
  TermId px = prefixes(p, x);
  TermId sx = suffixes(p, x);
  TermId bound = p.mk_sum_norm(
      {p.normalize(x), p.mk_prod_norm(px, p.mk_prod_norm(ctx.m(), sx))});
  if (!env.holds_le(fx, bound)) {
    env.skip("fx <= x + px;m;sx did not hold");
    return;
  }
  env.le(p.mk_prod_norm(prefixes(p, fx), ctx.m()), p.mk_prod_norm(px, ctx.m()),
         "pfx;m <= px;m");
}

void lemma_main(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId x = sample_below_psm(env, ctx);
  env.bind("x", x);
  TermId psm = prefixes(p, suffixes(p, ctx.m()));
  if (!env.holds_le(p.normalize(x), psm)) {
    env.skip("x <= psm did not hold");
    return;
  }
  TermId fx = ctx.f(x);
  TermId rhs = p.mk_sum_norm(
      {p.normalize(x),
       p.mk_prod_norm(prefixes(p, x), p.mk_prod_norm(ctx.m(), suffixes(p, x)))});
  env.le(fx, rhs, "fx <= x + px;m;sx");
}

void lemma_l0(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermId x = sample_below_m(env, ctx);
  env.bind("x", x);
  if (!env.holds_le(env.pool.normalize(x), ctx.m())) {
    env.skip("x <= m did not hold");
    return;
  }
  env.eq(ctx.f(x), ctx.m(), "x<=m => fx = m");
}

void lemma_pg(Env& env) {
  TermId a = env.sample_hyp();
  TermId x = env.sample_goal();
  env.bind("a", a);
  env.bind("x", x);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId fx = ctx.f(x);
  TermId pfx = prefixes(p, fx);
  TermId psfx = prefixes(p, suffixes(p, fx));
  TermId rhs = p.mk_prod_norm(
      pfx, p.mk_sum_norm({prefixes(p, ctx.m()),
                          p.star(p.mk_prod_norm(ctx.m(), psfx))}));
  env.eq(prefixes(p, ctx.g(x)), rhs, "pgx = pfx;(pm + (m;psfx)*)");
}

void lemma_pgxmsgx(Env& env) {
  TermId a = env.sample_hyp();
  TermId x = env.sample_goal();
  env.bind("a", a);
  env.bind("x", x);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId gx = ctx.g(x);
  TermId lhs = p.mk_prod_norm(prefixes(p, gx), p.mk_prod_norm(ctx.m(), suffixes(p, gx)));
  env.le(lhs, gx, "pgx;m;sgx <= gx");
}

void lemma_pfxm(Env& env) {
  TermId a = env.sample_hyp();
  TermId x = env.sample_goal();
  env.bind("a", a);
  env.bind("x", x);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  TermId fx = ctx.f(x);
  env.le(p.mk_prod_norm(prefixes(p, fx), ctx.m()), fx, "pfx;m <= fx");
}

void lemma_hg_axioms(Env& env) {
  TermId a = env.sample_hyp();
  TermId x = env.sample_goal();
  TermId y = env.sample_goal();
  TermId z = env.sample_goal();
  env.bind("a", a);
  env.bind("x", x);
  env.bind("y", y);
  env.bind("z", z);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  auto P = [&](TermId u, TermId v) { return p.prod(u, v); };
  auto S = [&](TermId u, TermId v) { return p.sum2(u, v); };
  const std::pair<const char*, Equation> axioms[] = {
      {"sum-assoc", {S(S(x, y), z), S(x, S(y, z))}},
      {"sum-comm", {S(x, y), S(y, x)}},
      {"sum-idem", {S(x, x), x}},
      {"sum-zero", {S(p.zero(), x), x}},
      {"prod-assoc", {P(x, P(y, z)), P(P(x, y), z)}},
      {"prod-one-left", {P(p.one(), x), x}},
      {"prod-one-right", {P(x, p.one()), x}},
      {"distrib-left", {P(x, S(y, z)), S(P(x, y), P(x, z))}},
      {"distrib-right", {P(S(x, y), z), S(P(x, z), P(y, z))}},
      {"star-unfold", {p.star(x), S(S(p.one(), x), P(p.star(x), p.star(x)))}},
  };
  for (const auto& [name, eq] : axioms) {
    if (!env.eq(ctx.f(eq.lhs), ctx.f(eq.rhs), std::string("f preserves ") + name)) return;
  }
}

void lemma_hg_star_induction(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  SamplerOptions small{env.opts.goal_size / 2 + 1, 1, true, true};
  TermId u = env.sampler.sample(env.rng, small);
  TermId v = env.sampler.sample(env.rng, small);
  bool right_case = env.rng.chance(0.5);
  bool constructed = env.rng.chance(0.7);
  TermId x, y;
  if (right_case) {
    // x;y <= x  =>  x;y* = x, with x = v;u*, y = u satisfying the premise.
    x = constructed ? p.prod(v, p.star(u)) : env.sample_goal();
    y = constructed ? u : env.sample_goal();
    env.bind("x", x);
    env.bind("y", y);
    TermId fxy = ctx.f(p.prod(x, y));
    TermId fx = ctx.f(x);
    if (!env.holds_le(fxy, fx)) {
      env.skip("f(x;y) <= f(x) did not hold");
      return;
    }
    env.eq(ctx.f(p.prod(x, p.star(y))), fx, "f(x;y*) = f(x)");
  } else {
    // x;y <= y  =>  x*;y = y, with x = u, y = u*;v satisfying the premise.
    x = constructed ? u : env.sample_goal();
    y = constructed ? p.prod(p.star(u), v) : env.sample_goal();
    env.bind("x", x);
    env.bind("y", y);
    TermId fxy = ctx.f(p.prod(x, y));
    TermId fy = ctx.f(y);
    if (!env.holds_le(fxy, fy)) {
      env.skip("f(x;y) <= f(y) did not hold");
      return;
    }
    env.eq(ctx.f(p.prod(p.star(x), y)), fy, "f(x*;y) = f(y)");
  }
}

void lemma_fxx(Env& env) {
  TermId a = env.sample_hyp();
  TermId x = env.sample_goal();
  env.bind("a", a);
  env.bind("x", x);
  Problem prob;
  prob.alphabet = env.alphabet;
  prob.hypotheses.push_back(HoareHypothesis{a});
  EliminationContext ctx(env.pool, a);
  prob.goal = Equation{ctx.f(x), env.pool.normalize(x)};
  EliminationReport rep = decide_under_hoare(env.pool, prob);
  if (!rep.verdict.equal()) {
    env.result.status = LemmaStatus::Fail;
    env.result.witness = render_word(env.pool, rep.verdict.witness);
    env.result.note = "a=0 |- f(x) = x";
  }
}

void lemma_hg1(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  if (!env.eq(ctx.f(ctx.a()), ctx.f(env.pool.zero()), "f(a) = f(0)")) return;
  env.eq(ctx.f(env.pool.zero()), ctx.m(), "f(0) = m");
}

void lemma_mfproof(Env& env) {
  TermId a = env.sample_hyp();
  env.bind("a", a);
  EliminationContext ctx(env.pool, a);
  TermPool& p = env.pool;
  SamplerOptions small{env.opts.goal_size / 2 + 1, 1, true, true};
  TermId u0 = env.sampler.sample(env.rng, small);
  TermId u1 = env.sampler.sample(env.rng, small);
  TermId v0 = env.sampler.mutate_equal_under_hypothesis(env.rng, u0, ctx.a());
  TermId v1 = env.sampler.mutate_equal_under_hypothesis(env.rng, u1, ctx.a());
  env.bind("u0", u0);
  env.bind("v0", v0);
  env.bind("u1", u1);
  env.bind("v1", v1);
  if (!env.holds(ctx.f(u0), ctx.f(v0)) || !env.holds(ctx.f(u1), ctx.f(v1))) {
    env.skip("f(u)=f(v) premises did not hold");
    return;
  }
  if (!env.eq(ctx.f(p.sum2(u0, u1)), ctx.f(p.sum2(v0, v1)), "congruence of +")) return;
  if (!env.eq(ctx.f(p.prod(u0, u1)), ctx.f(p.prod(v0, v1)), "congruence of ;")) return;
  env.eq(ctx.f(p.star(u0)), ctx.f(p.star(v0)), "congruence of *");
}

struct LemmaDef {
  const char* name;
  LemmaFn fn;
};

const std::vector<LemmaDef>& registry() {
  static const std::vector<LemmaDef> defs = {
      {"1xpx", lemma_1xpx},
      {"ppx", lemma_ppx},
      {"pssp", lemma_pssp},
      {"pxz", lemma_pxz},
      {"pShort", lemma_pshort},
      {"pAlg-consequence", lemma_palg},
      {"mpsam", lemma_mpsam},
      {"pl", lemma_pl},
      {"plm", lemma_plm},
      {"pmm", lemma_pmm},
      {"mpsm", lemma_mpsm},
      {"xmf", lemma_xmf},
      {"fact", lemma_fact},
      {"main", lemma_main},
      {"l0", lemma_l0},
      {"pg", lemma_pg},
      {"pgxmsgx", lemma_pgxmsgx},
      {"pfxm", lemma_pfxm},
      {"hg-axiom-cases", lemma_hg_axioms},
      {"hg-star-induction-cases", lemma_hg_star_induction},
      {"fxx", lemma_fxx},
      {"hg1", lemma_hg1},
      {"mfproof-consequence", lemma_mfproof},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& def : registry()) out.push_back(def.name);
    return out;
  }();
  return names;
}

std::vector<LemmaResult> check_lemmas(const std::vector<std::string>& names,
                                      const LemmaRunOptions& opts) {
  std::vector<std::pair<size_t, const LemmaDef*>> selected;
  for (const auto& name : names) {
    const LemmaDef* found = nullptr;
    size_t index = 0;
    for (size_t i = 0; i < registry().size(); ++i) {
      if (registry()[i].name == name) {
        found = &registry()[i];
        index = i;
        break;
      }
    }
    if (!found) throw UnknownLemmaError("unknown lemma '" + name + "'");
    selected.emplace_back(index, found);
  }

  struct Task {
    size_t lemma_index;
    const LemmaDef* def;
    uint32_t sample;
  };
  std::vector<Task> tasks;
  for (auto& [index, def] : selected) {
    for (uint32_t s = 0; s < opts.samples; ++s) tasks.push_back({index, def, s});
  }
  std::vector<LemmaResult> results(tasks.size());

  auto run_task = [&](size_t i) {
    const Task& task = tasks[i];
    Env env(opts, task.lemma_index, task.sample);
    env.result.lemma = task.def->name;
    env.result.sample = task.sample;
    try {
      task.def->fn(env);
    } catch (const std::exception& e) {
      env.result.status = LemmaStatus::Fail;
      env.result.note = std::string("error: ") + e.what();
    }
    results[i] = std::move(env.result);
  };

  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, 16);
  if (jobs <= 1 || tasks.size() <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_task(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  return results;
}

std::vector<LemmaSummary> summarize(const std::vector<LemmaResult>& results) {
  std::vector<LemmaSummary> out;
  std::map<std::string, size_t> index;
  for (const auto& r : results) {
    auto [it, inserted] = index.try_emplace(r.lemma, out.size());
    if (inserted) out.push_back(LemmaSummary{r.lemma, 0, 0, 0});
    LemmaSummary& s = out[it->second];
    switch (r.status) {
      case LemmaStatus::Pass: ++s.passed; break;
      case LemmaStatus::Fail: ++s.failed; break;
      case LemmaStatus::HypothesisNotSampled: ++s.skipped; break;
    }
  }
  return out;
}

}  // namespace ksr
