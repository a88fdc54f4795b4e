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

#ifndef KSR_CORE_TRANSFORM_HPP_
#define KSR_CORE_TRANSFORM_HPP_

#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "core/term.hpp"

namespace ksr {

// Structural term transformers used by the Hoare-hypothesis elimination.
//
// prefixes/suffixes follow the defining clauses (c any constant or letter):
//   p c       = 1 + c                s c       = 1 + c
//   p (x + y) = p x + p y           s (x + y) = s x + s y
//   p (x ; y) = p x + x ; p y       s (x ; y) = s y + s x ; y
//   p (x*)    = x* ; p x            s (x*)    = s x ; x*
// Outputs are normalized but not otherwise simplified.
TermId prefixes(TermPool& pool, TermId x);
TermId suffixes(TermPool& pool, TermId x);

// l = (p a)* ; a ; (s a)*    and    m = l ; (p(s(a)) ; l)*
TermId build_l(TermPool& pool, TermId a);
TermId build_m(TermPool& pool, TermId a);

// Memoized f/g images for one combined hypothesis term. f is defined by
//   f c       = (1+m) ; (c+m) ; (1+m)
//   f (x + y) = f x + f y
//   f (x ; y) = f x ; f y + p(f x) ; m ; s(f y)
//   f (x*)    = (g x)*
//   g x       = f x + p(f x) ; m ; (p(s(f x)) ; m)* ; s(f x)
// Shared subterms are transformed once; the images are DAGs whose tree
// expansion grows exponentially, so they must never be tree-walked.
class EliminationContext {
 public:
  EliminationContext(TermPool& pool, TermId a);

  TermPool& pool() const { return pool_; }
  TermId a() const { return a_; }
  TermId m() const { return m_; }
  TermId l() const { return l_; }

  TermId f(TermId x);
  TermId g(TermId x);
  Equation f(const Equation& eq) { return Equation{f(eq.lhs), f(eq.rhs)}; }

 private:
  TermPool& pool_;
  TermId a_;
  TermId l_;
  TermId m_;
  TermId one_plus_m_;
  std::unordered_map<TermId, TermId> f_memo_;
  std::unordered_map<TermId, TermId> g_memo_;
};

// Reduces hypotheses a1=0, ..., ak=0 to the single hypothesis a1+...+ak = 0.
TermId combine_hypotheses(TermPool& pool, const std::vector<HoareHypothesis>& hyps);

// The classical regular-algebra elimination for a = 0: u -> S* ; a ; S* + u
// where S is the sum of all alphabet letters.
TermId ka_hoare_transform(TermPool& pool, const Alphabet& alphabet, TermId a, TermId u);

struct Elimination;

struct KsHoareElimination {
  std::shared_ptr<EliminationContext> ctx;
};

struct KaHoareElimination {
  TermId a;
  Alphabet alphabet;
};

// Staged composition: `first` is applied to terms before `second`.
struct ComposedElimination {
  std::shared_ptr<Elimination> first;
  std::shared_ptr<Elimination> second;
};

struct Elimination {
  std::variant<KsHoareElimination, KaHoareElimination, ComposedElimination> kind;

  static Elimination ks_hoare(TermPool& pool, TermId a);
  static Elimination ka_hoare(TermId a, Alphabet alphabet);
  static Elimination composed(Elimination first, Elimination second);

  TermId apply(TermPool& pool, TermId t) const;
  Equation apply(TermPool& pool, const Equation& eq) const;
};

Equation eliminate(TermPool& pool, const Elimination& e, const Equation& eq);

struct NamedEquation {
  std::string name;
  Equation eq;
};

struct NamedConditional {
  std::string name;
  Equation hypothesis;
  Equation conclusion;
};

struct ObligationSet {
  std::vector<NamedEquation> equations;
  std::vector<NamedConditional> conditionals;
};

// Ground proof obligations for one elimination context, instantiated at the
// given sample terms: every axiom with both sides f-transformed (the two
// star-induction axioms become conditionals), the hypothesis image
// f(a) = f(0), and the supporting identities of the p/s/l/m/f/g family.
ObligationSet obligation_instances(EliminationContext& ctx, const std::vector<TermId>& samples);

// Obligations introduced by staging: for every hypothesis a'=0 eliminated by
// `second`, the image under `first` must still be provable from a'=0.
// Returned as pairs (hypothesis term a', equation f_first(a') = f_first(0)).
std::vector<std::pair<TermId, Equation>> composition_obligations(TermPool& pool,
                                                                 const Elimination& e);

}  // namespace ksr

#endif  // KSR_CORE_TRANSFORM_HPP_
