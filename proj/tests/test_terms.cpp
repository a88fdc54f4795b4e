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

#include <set>

#include "core/rng.hpp"
#include "core/sampler.hpp"
#include "core/term.hpp"
#include "doctest.h"

using namespace ksr;

namespace {

Alphabet abc() { return Alphabet({"b", "c"}); }

}  // namespace

TEST_CASE("parse basic grammar") {
  TermPool p;
  Alphabet al = abc();

  TermId t = p.parse("b;c", al);
  REQUIRE(p.op(t) == Op::Prod);
  CHECK(p.op(p.kid(t, 0)) == Op::Letter);
  CHECK(p.render(t) == "b;c");

  TermId u = p.parse("(b+0)*;1", al);
  REQUIRE(p.op(u) == Op::Prod);
  CHECK(p.op(p.kid(u, 0)) == Op::Star);
  CHECK(p.op(p.kid(p.kid(u, 0), 0)) == Op::Sum);
  CHECK(p.op(p.kid(u, 1)) == Op::One);

  // '.' is a synonym for ';'
  CHECK(p.parse("b.c", al) == t);

  // no implicit product
  CHECK_THROWS_AS(p.parse("b c", al), ParseError);
  CHECK_THROWS_AS(p.parse("b;(c", al), ParseError);
  CHECK_THROWS_AS(p.parse("", al), ParseError);
  // undeclared letter
  CHECK_THROWS_AS(p.parse("b;x", al), ParseError);
}

TEST_CASE("render round trips") {
  TermPool p;
  Alphabet al = abc();
  TermId b = p.letter("b");
  TermId c = p.letter("c");

  CHECK(p.render(p.prod(b, c)) == "b;c");
  CHECK(p.render(p.sum2(p.one(), p.star(b))) == "1+b*");
  CHECK(p.render(p.zero()) == "0");
  CHECK(p.render(p.star(p.sum2(b, c))) == "(b+c)*");
  CHECK(p.render(p.star(p.star(b))) == "b**");
  CHECK(p.render(p.prod(p.sum2(b, c), b)) == "(b+c);b");
}

TEST_CASE("normalize applies exactly the semiring-valid rewrites") {
  TermPool p;
  Alphabet al = abc();
  TermId b = p.letter("b");
  TermId c = p.letter("c");

  // 0 + b = b
  CHECK(p.normalize(p.sum2(p.zero(), b)) == b);
  // 0 ; b stays (no annihilation)
  TermId zb = p.prod(p.zero(), b);
  CHECK(p.normalize(zb) == zb);
  TermId bz = p.prod(b, p.zero());
  CHECK(p.normalize(bz) == bz);
  // (b+b)+c = b+c
  TermId lhs = p.sum2(p.sum2(b, b), c);
  CHECK(p.normalize(lhs) == p.normalize(p.sum2(b, c)));
  // unit laws and reassociation
  CHECK(p.normalize(p.prod(p.one(), b)) == b);
  CHECK(p.normalize(p.prod(b, p.one())) == b);
  CHECK(p.normalize(p.prod(p.prod(b, c), b)) == p.prod(b, p.prod(c, b)));
  // sums sort canonically
  CHECK(p.normalize(p.sum2(c, b)) == p.normalize(p.sum2(b, c)));
}

TEST_CASE("size and letters") {
  TermPool p;
  TermId b = p.letter("b");
  TermId c = p.letter("c");
  CHECK(term_size(p, p.prod(b, c)) == 3);
  CHECK(p.letter_names(p.sum2(p.star(b), p.one())) == std::vector<std::string>{"b"});
  CHECK(p.letter_names(p.zero()).empty());
}

TEST_CASE("leq encodes x <= y as x+y = y") {
  TermPool p;
  TermId b = p.letter("b");
  TermId c = p.letter("c");
  Equation e = leq(p, b, p.sum2(b, c));
  CHECK(p.normalize(e.lhs) == p.normalize(p.sum2(b, p.sum2(b, c))));
  CHECK(p.normalize(e.rhs) == p.normalize(p.sum2(b, c)));

  // 0 is least: 0+x = x normalizes both sides to x
  Equation zx = leq(p, p.zero(), c);
  CHECK(p.normalize(zx.lhs) == c);
  CHECK(p.normalize(zx.rhs) == c);

  Equation xx = leq(p, b, b);
  CHECK(p.normalize(xx.lhs) == b);
}

TEST_CASE("normalization is idempotent and parse/render agree on samples") {
  TermPool p;
  Alphabet al = abc();
  TermSampler sampler(p, al);
  Rng rng(20260809);
  for (int i = 0; i < 500; ++i) {
    TermId t = sampler.sample(rng, SamplerOptions{12, 2, true, true});
    TermId n = p.normalize(t);
    CHECK(p.normalize(n) == n);
    TermId reparsed = p.parse(p.render(t), al);
    CHECK(p.normalize(reparsed) == n);
    // rendering the normal form round-trips exactly
    CHECK(p.parse(p.render(n), al) == n);
  }
}

TEST_CASE("problem files parse") {
  TermPool p;
  Problem prob = parse_problem(p,
                               "# sample\n"
                               "alphabet b c\n"
                               "hyp b = 0\n"
                               "goal b;c = 0;c\n");
  CHECK(prob.alphabet.letters() == std::vector<std::string>{"b", "c"});
  REQUIRE(prob.hypotheses.size() == 1);
  CHECK(p.render(prob.hypotheses[0].a) == "b");
  CHECK(p.render(prob.goal.lhs) == "b;c");
  CHECK(p.render(prob.goal.rhs) == "0;c");

  CHECK_THROWS_AS(parse_problem(p, "alphabet b\n"), ParseError);          // no goal
  CHECK_THROWS_AS(parse_problem(p, "goal b = b\n"), ParseError);          // no alphabet
  CHECK_THROWS_AS(parse_problem(p, "alphabet b\nhyp b = 1\ngoal b = b\n"), ParseError);
  CHECK_THROWS_AS(parse_problem(p, "alphabet b\ngoal b = b\ngoal b = b\n"), ParseError);
  CHECK_THROWS_AS(parse_problem(p, "alphabet b\nbogus b\ngoal b = b\n"), ParseError);
}

TEST_CASE("alphabet rejects reserved and duplicate names") {
  CHECK_THROWS_AS(Alphabet({"b", "0"}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"b", "b"}), std::invalid_argument);
}
