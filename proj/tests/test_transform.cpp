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

#include "core/rng.hpp"
#include "core/sampler.hpp"
#include "core/transform.hpp"
#include "doctest.h"

using namespace ksr;

namespace {

struct Fix {
  TermPool p;
  Alphabet al{std::vector<std::string>{"b", "c"}};
  TermId b = p.letter("b");
  TermId c = p.letter("c");

  TermId norm(const char* text) { return p.normalize(p.parse(text, al)); }
};

}  // namespace

TEST_CASE("prefix transformer clauses") {
  Fix f;
  CHECK(prefixes(f.p, f.b) == f.norm("1+b"));
  CHECK(prefixes(f.p, f.p.prod(f.b, f.c)) == f.norm("(1+b) + b;(1+c)"));
  CHECK(prefixes(f.p, f.p.star(f.b)) == f.norm("b*;(1+b)"));
  CHECK(prefixes(f.p, f.p.zero()) == f.norm("1+0"));
  CHECK(prefixes(f.p, f.p.sum2(f.b, f.c)) == f.norm("(1+b)+(1+c)"));
}

TEST_CASE("suffix transformer clauses") {
  Fix f;
  CHECK(suffixes(f.p, f.c) == f.norm("1+c"));
  CHECK(suffixes(f.p, f.p.prod(f.b, f.c)) == f.norm("(1+c) + (1+b);c"));
  CHECK(suffixes(f.p, f.p.star(f.b)) == f.norm("(1+b);b*"));
  CHECK(suffixes(f.p, f.p.sum2(f.b, f.c)) == f.norm("(1+b)+(1+c)"));
}

TEST_CASE("mirror duality: s = reverse . p . reverse") {
  Fix f;
  TermSampler sampler(f.p, f.al);
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    TermId t = sampler.sample(rng, SamplerOptions{12, 2, true, true});
    TermId lhs = f.p.normalize(suffixes(f.p, t));
    TermId rhs = f.p.normalize(f.p.reverse(prefixes(f.p, f.p.reverse(t))));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("l and m construction") {
  Fix f;
  TermId l = build_l(f.p, f.b);
  CHECK(l == f.norm("(1+b)*;b;(1+b)*"));

  // m = l;(p(s(b));l)* with p(s(b)) = p(1+b) = (1+1)+(1+b)
  TermId psb = prefixes(f.p, suffixes(f.p, f.b));
  CHECK(psb == f.norm("(1+1)+(1+b)"));
  TermId m = build_m(f.p, f.b);
  CHECK(m == f.p.mk_prod_norm(l, f.p.star(f.p.mk_prod_norm(psb, l))));

  // definition unfolding also holds for a = 0
  TermId l0 = build_l(f.p, f.p.zero());
  TermId ps0 = prefixes(f.p, suffixes(f.p, f.p.zero()));
  CHECK(build_m(f.p, f.p.zero()) ==
        f.p.mk_prod_norm(l0, f.p.star(f.p.mk_prod_norm(ps0, l0))));
}

TEST_CASE("f transformer clauses") {
  Fix f;
  EliminationContext ctx(f.p, f.b);
  TermId m = ctx.m();
  TermId one_m = f.p.mk_sum_norm({f.p.one(), m});

  // constant clause: f(0) = (1+m);(0+m);(1+m)
  TermId zero_m = f.p.mk_sum_norm({f.p.zero(), m});
  CHECK(ctx.f(f.p.zero()) == f.p.mk_prod_norm(one_m, f.p.mk_prod_norm(zero_m, one_m)));

  // sums map through syntactically
  TermId y = f.p.prod(f.b, f.c);
  TermId z = f.p.star(f.c);
  CHECK(ctx.f(f.p.sum2(y, z)) == f.p.mk_sum_norm({ctx.f(y), ctx.f(z)}));

  // product clause
  TermId fy = ctx.f(f.b);
  TermId fz = ctx.f(f.c);
  TermId expected = f.p.mk_sum_norm(
      {f.p.mk_prod_norm(fy, fz),
       f.p.mk_prod_norm(prefixes(f.p, fy), f.p.mk_prod_norm(m, suffixes(f.p, fz)))});
  CHECK(ctx.f(f.p.prod(f.b, f.c)) == expected);

  // star goes through g
  TermId gx = ctx.g(f.c);
  CHECK(ctx.f(f.p.star(f.c)) == f.p.star(gx));
  TermId fc = ctx.f(f.c);
  TermId pfc = prefixes(f.p, fc);
  TermId sfc = suffixes(f.p, fc);
  TermId psfc = prefixes(f.p, sfc);
  TermId tail = f.p.mk_prod_norm(
      m, f.p.mk_prod_norm(f.p.star(f.p.mk_prod_norm(psfc, m)), sfc));
  CHECK(gx == f.p.mk_sum_norm({fc, f.p.mk_prod_norm(pfc, tail)}));
}

TEST_CASE("f is memoized across shared subterms") {
  Fix f;
  EliminationContext ctx(f.p, f.b);
  TermId big = f.p.prod(f.p.prod(f.b, f.c), f.p.prod(f.b, f.c));
  TermId image = ctx.f(big);
  // tree size explodes, dag size stays small
  CHECK(f.p.tree_size(image) > f.p.dag_size(image));
}

TEST_CASE("combine_hypotheses") {
  Fix f;
  CHECK(combine_hypotheses(f.p, {HoareHypothesis{f.b}}) == f.b);
  TermId cc = f.p.prod(f.c, f.c);
  CHECK(combine_hypotheses(f.p, {HoareHypothesis{f.b}, HoareHypothesis{cc}}) ==
        f.p.mk_sum_norm({f.b, cc}));
  CHECK_THROWS_AS(combine_hypotheses(f.p, {}), std::invalid_argument);
}

TEST_CASE("classical baseline transform") {
  Fix f;
  TermId y = f.p.letter("c");
  TermId image = ka_hoare_transform(f.p, f.al, f.b, y);
  CHECK(image == f.norm("(b+c)*;b;(b+c)* + c"));
}

TEST_CASE("eliminations apply and compose") {
  Fix f;
  Elimination ks = Elimination::ks_hoare(f.p, f.b);
  Equation goal{f.b, f.p.zero()};
  Equation image = eliminate(f.p, ks, goal);
  EliminationContext ctx(f.p, f.b);
  CHECK(image.lhs == ctx.f(f.b));
  CHECK(image.rhs == ctx.f(f.p.zero()));

  Elimination ka = Elimination::ka_hoare(f.b, f.al);
  Equation image2 = eliminate(f.p, ka, Equation{f.c, f.c});
  CHECK(image2.lhs == f.norm("(b+c)*;b;(b+c)* + c"));

  // composed elimination applies first then second
  Elimination comp = Elimination::composed(Elimination::ks_hoare(f.p, f.b),
                                           Elimination::ks_hoare(f.p, f.c));
  EliminationContext first(f.p, f.b);
  EliminationContext second(f.p, f.c);
  Equation manual{second.f(first.f(goal.lhs)), second.f(first.f(goal.rhs))};
  Equation composed = eliminate(f.p, comp, goal);
  CHECK(composed.lhs == manual.lhs);
  CHECK(composed.rhs == manual.rhs);

  auto obligations = composition_obligations(f.p, comp);
  REQUIRE(obligations.size() == 1);
  CHECK(obligations[0].first == f.c);
  CHECK(obligations[0].second.lhs == first.f(f.c));
  CHECK(obligations[0].second.rhs == first.f(f.p.zero()));
}

TEST_CASE("obligation instances cover the axioms and the hypothesis") {
  Fix f;
  EliminationContext ctx(f.p, f.b);
  ObligationSet obs = obligation_instances(ctx, {f.c, f.p.prod(f.b, f.c)});
  bool saw_hypothesis = false;
  bool saw_axiom = false;
  for (const auto& e : obs.equations) {
    if (e.name == "hypothesis") {
      saw_hypothesis = true;
      CHECK(e.eq.lhs == ctx.f(f.b));
      CHECK(e.eq.rhs == ctx.f(f.p.zero()));
    }
    if (e.name.rfind("axiom:", 0) == 0) saw_axiom = true;
  }
  CHECK(saw_hypothesis);
  CHECK(saw_axiom);
  CHECK(!obs.conditionals.empty());
}
