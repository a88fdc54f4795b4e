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

#include "core/transform.hpp"

#include <unordered_map>

namespace ksr {

TermId prefixes(TermPool& pool, TermId x) { return pool.prefixes(x); }

TermId suffixes(TermPool& pool, TermId x) { return pool.suffixes(x); }

TermId build_l(TermPool& pool, TermId a) {
  a = pool.normalize(a);
  TermId pa = prefixes(pool, a);
  TermId sa = suffixes(pool, a);
  return pool.mk_prod_norm(pool.star(pa), pool.mk_prod_norm(a, pool.star(sa)));
}

TermId build_m(TermPool& pool, TermId a) {
  a = pool.normalize(a);
  TermId l = build_l(pool, a);
  TermId psa = prefixes(pool, suffixes(pool, a));
  return pool.mk_prod_norm(l, pool.star(pool.mk_prod_norm(psa, l)));
}

EliminationContext::EliminationContext(TermPool& pool, TermId a)
    : pool_(pool), a_(pool.normalize(a)) {
  l_ = build_l(pool_, a_);
  m_ = build_m(pool_, a_);
  one_plus_m_ = pool_.mk_sum_norm({pool_.one(), m_});
}

TermId EliminationContext::f(TermId x) {
  x = pool_.normalize(x);
  auto it = f_memo_.find(x);
  if (it != f_memo_.end()) return it->second;
  TermId result;
  switch (pool_.op(x)) {
    case Op::Zero:
    case Op::One:
    case Op::Letter: {
      TermId mid = pool_.mk_sum_norm({x, m_});
      result = pool_.mk_prod_norm(one_plus_m_, pool_.mk_prod_norm(mid, one_plus_m_));
      break;
    }
    case Op::Sum: {
      std::vector<TermId> ops;
      for (TermId k : pool_.kids(x)) ops.push_back(f(k));
      result = pool_.mk_sum_norm(std::move(ops));
      break;
    }
    case Op::Prod: {
      TermId fl = f(pool_.kid(x, 0));
      TermId fr = f(pool_.kid(x, 1));
      TermId bridge = pool_.mk_prod_norm(
          prefixes(pool_, fl), pool_.mk_prod_norm(m_, suffixes(pool_, fr)));
      result = pool_.mk_sum_norm({pool_.mk_prod_norm(fl, fr), bridge});
      break;
    }
    case Op::Star: {
      result = pool_.star(g(pool_.kid(x, 0)));
      break;
    }
  }
  f_memo_.emplace(x, result);
  return result;
}

TermId EliminationContext::g(TermId x) {
  x = pool_.normalize(x);
  auto it = g_memo_.find(x);
  if (it != g_memo_.end()) return it->second;
  TermId fx = f(x);
  TermId pfx = prefixes(pool_, fx);
  TermId sfx = suffixes(pool_, fx);
  TermId psfx = prefixes(pool_, sfx);
  TermId loop = pool_.star(pool_.mk_prod_norm(psfx, m_));
  TermId tail = pool_.mk_prod_norm(m_, pool_.mk_prod_norm(loop, sfx));
  TermId result = pool_.mk_sum_norm({fx, pool_.mk_prod_norm(pfx, tail)});
  g_memo_.emplace(x, result);
  return result;
}

TermId combine_hypotheses(TermPool& pool, const std::vector<HoareHypothesis>& hyps) {
  if (hyps.empty()) throw std::invalid_argument("no hypotheses to combine");
  std::vector<TermId> ops;
  ops.reserve(hyps.size());
  for (const auto& h : hyps) ops.push_back(pool.normalize(h.a));
  return pool.mk_sum_norm(std::move(ops));
}

TermId ka_hoare_transform(TermPool& pool, const Alphabet& alphabet, TermId a, TermId u) {
  std::vector<TermId> letters;
  for (const auto& name : alphabet.letters()) letters.push_back(pool.letter(name));
  TermId sigma = pool.mk_sum_norm(std::move(letters));
  TermId top = pool.star(sigma);
  TermId box = pool.mk_prod_norm(top, pool.mk_prod_norm(pool.normalize(a), top));
  return pool.mk_sum_norm({box, pool.normalize(u)});
}

Elimination Elimination::ks_hoare(TermPool& pool, TermId a) {
  return Elimination{KsHoareElimination{std::make_shared<EliminationContext>(pool, a)}};
}

Elimination Elimination::ka_hoare(TermId a, Alphabet alphabet) {
  return Elimination{KaHoareElimination{a, std::move(alphabet)}};
}

Elimination Elimination::composed(Elimination first, Elimination second) {
  return Elimination{ComposedElimination{std::make_shared<Elimination>(std::move(first)),
                                         std::make_shared<Elimination>(std::move(second))}};
}

TermId Elimination::apply(TermPool& pool, TermId t) const {
  if (const auto* ks = std::get_if<KsHoareElimination>(&kind)) {
    return ks->ctx->f(t);
  }
  if (const auto* ka = std::get_if<KaHoareElimination>(&kind)) {
    return ka_hoare_transform(pool, ka->alphabet, ka->a, t);
  }
  const auto& comp = std::get<ComposedElimination>(kind);
  return comp.second->apply(pool, comp.first->apply(pool, t));
}

Equation Elimination::apply(TermPool& pool, const Equation& eq) const {
  return Equation{apply(pool, eq.lhs), apply(pool, eq.rhs)};
}

Equation eliminate(TermPool& pool, const Elimination& e, const Equation& eq) {
  return e.apply(pool, eq);
}

namespace {

struct AxiomInstance {
  std::string name;
  Equation eq;
};

std::vector<AxiomInstance> equational_axioms(TermPool& p, TermId x, TermId y, TermId z) {
  auto P = [&](TermId a, TermId b) { return p.prod(a, b); };
  auto S = [&](TermId a, TermId b) { return p.sum2(a, b); };
  TermId zero = p.zero(), one = p.one();
  return {
      {"sum-assoc", {S(S(x, y), z), S(x, S(y, z))}},
      {"sum-comm", {S(x, y), S(y, x)}},
      {"sum-idem", {S(x, x), x}},
      {"sum-zero", {S(zero, x), x}},
      {"prod-assoc", {P(x, P(y, z)), P(P(x, y), z)}},
      {"prod-one-left", {P(one, x), x}},
      {"prod-one-right", {P(x, one), x}},
      {"distrib-left", {P(x, S(y, z)), S(P(x, y), P(x, z))}},
      {"distrib-right", {P(S(x, y), z), S(P(x, z), P(y, z))}},
      {"star-unfold", {p.star(x), S(S(one, x), P(p.star(x), p.star(x)))}},
  };
}

}  // namespace

ObligationSet obligation_instances(EliminationContext& ctx, const std::vector<TermId>& samples) {
  TermPool& p = ctx.pool();
  ObligationSet out;
  if (samples.empty()) return out;

  auto at = [&](size_t i) { return samples[i % samples.size()]; };
  for (size_t i = 0; i < samples.size(); ++i) {
    TermId x = at(i), y = at(i + 1), z = at(i + 2);
    std::string suffix = "@" + std::to_string(i);
    for (auto& ax : equational_axioms(p, x, y, z)) {
      out.equations.push_back({"axiom:" + ax.name + suffix, ctx.f(ax.eq)});
    }
    // Star induction: x;y <= x => x;y* = x  and  x;y <= y => x*;y = y.
    {
      TermId xy = p.prod(x, y);
      Equation hyp = leq(p, xy, x);
      Equation conc{p.prod(x, p.star(y)), x};
      out.conditionals.push_back({"axiom:star-induction-right" + suffix, ctx.f(hyp), ctx.f(conc)});
      Equation hyp2 = leq(p, xy, y);
      Equation conc2{p.prod(p.star(x), y), y};
      out.conditionals.push_back({"axiom:star-induction-left" + suffix, ctx.f(hyp2), ctx.f(conc2)});
    }
  }

  // The hypothesis itself must become provable: f(a) = f(0).
  out.equations.push_back({"hypothesis", {ctx.f(ctx.a()), ctx.f(p.zero())}});

  // Supporting identities instantiated at the samples.
  TermId a = ctx.a();
  TermId m = ctx.m();
  TermId l = ctx.l();
  TermId psa = prefixes(p, suffixes(p, a));
  out.equations.push_back({"pl", {prefixes(p, l),
                                  p.mk_sum_norm({p.star(prefixes(p, a)), p.mk_prod_norm(l, psa)})}});
  out.equations.push_back({"plm", {p.mk_prod_norm(prefixes(p, l), m), m}});
  out.equations.push_back({"pmm", {p.mk_prod_norm(prefixes(p, m), m), m}});
  auto leq_eq = [&](TermId u, TermId v) { return leq(p, u, v); };
  out.equations.push_back({"mpsam", leq_eq(p.mk_prod_norm(m, p.mk_prod_norm(psa, m)), m)});
  TermId psm = prefixes(p, suffixes(p, m));
  out.equations.push_back({"mpsm", leq_eq(p.mk_prod_norm(m, p.mk_prod_norm(psm, m)), m)});
  for (size_t i = 0; i < samples.size(); ++i) {
    TermId x = at(i);
    std::string suffix = "@" + std::to_string(i);
    TermId px = prefixes(p, x);
    TermId sx = suffixes(p, x);
    out.equations.push_back({"1xpx" + suffix, leq_eq(p.mk_sum_norm({p.one(), x}), px)});
    out.equations.push_back({"ppx" + suffix, {prefixes(p, px), px}});
    out.equations.push_back({"pssp" + suffix, {prefixes(p, sx), suffixes(p, px)}});
    out.equations.push_back(
        {"pxz" + suffix, {p.mk_prod_norm(px, p.zero()), p.mk_prod_norm(x, p.zero())}});
    TermId fx = ctx.f(x);
    out.equations.push_back({"xmf" + suffix, leq_eq(p.mk_sum_norm({x, m}), fx)});
    out.equations.push_back(
        {"pfxm" + suffix, leq_eq(p.mk_prod_norm(prefixes(p, fx), m), fx)});
    TermId gx = ctx.g(x);
    out.equations.push_back(
        {"pgxmsgx" + suffix,
         leq_eq(p.mk_prod_norm(prefixes(p, gx), p.mk_prod_norm(m, suffixes(p, gx))), gx)});
    out.conditionals.push_back(
        {"main" + suffix, leq_eq(x, psm),
         leq_eq(fx, p.mk_sum_norm({x, p.mk_prod_norm(px, p.mk_prod_norm(m, sx))}))});
    out.conditionals.push_back({"l0" + suffix, leq_eq(x, m), {fx, m}});
  }
  return out;
}

std::vector<std::pair<TermId, Equation>> composition_obligations(TermPool& pool,
                                                                 const Elimination& e) {
  std::vector<std::pair<TermId, Equation>> out;
  const auto* comp = std::get_if<ComposedElimination>(&e.kind);
  if (comp == nullptr) return out;
  // Hypotheses handled by the second stage must survive the first transform.
  std::vector<TermId> second_hyps;
  if (const auto* ks = std::get_if<KsHoareElimination>(&comp->second->kind)) {
    second_hyps.push_back(ks->ctx->a());
  } else if (const auto* ka = std::get_if<KaHoareElimination>(&comp->second->kind)) {
    second_hyps.push_back(ka->a);
  } else {
    auto nested = composition_obligations(pool, *comp->second);
    for (auto& [a, eq] : nested) second_hyps.push_back(a);
  }
  for (TermId a : second_hyps) {
    Equation image{comp->first->apply(pool, a), comp->first->apply(pool, pool.zero())};
    out.emplace_back(a, image);
  }
  auto nested_first = composition_obligations(pool, *comp->first);
  out.insert(out.end(), nested_first.begin(), nested_first.end());
  return out;
}

}  // namespace ksr
