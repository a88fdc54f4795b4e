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

#ifndef KSR_CORE_TERM_HPP_
#define KSR_CORE_TERM_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ksr {

// Terms are interned into a TermPool and referred to by index. Structurally
// identical terms always get the same id, so id equality is structural
// equality and heavily shared DAGs (e.g. the images of the elimination
// transformers) stay linear in memory even when their tree expansion is
// astronomically large.
using TermId = uint32_t;
inline constexpr TermId kNoTerm = 0xffffffffu;

enum class Op : uint8_t { Zero, One, Letter, Sum, Prod, Star };

// Index of a letter in the pool's symbol registry.
using LetterId = uint8_t;
inline constexpr int kMaxLetters = 64;

struct ParseError : std::runtime_error {
  ParseError(size_t position, const std::string& what)
      : std::runtime_error(what), pos(position) {}
  size_t pos;
};

// Ordered set of declared letter names. Problems validate that every letter
// of every term belongs to the declared alphabet.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  const std::vector<std::string>& letters() const { return letters_; }
  bool contains(std::string_view name) const;
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

 private:
  std::vector<std::string> letters_;
};

class TermPool;

struct Equation {
  TermId lhs = kNoTerm;
  TermId rhs = kNoTerm;
};

// A hypothesis `a = 0`. Only the left-hand term is stored.
struct HoareHypothesis {
  TermId a = kNoTerm;
};

struct Problem {
  Alphabet alphabet;
  std::vector<HoareHypothesis> hypotheses;
  Equation goal;
};

class TermPool {
 public:
  TermPool() = default;
  TermPool(const TermPool&) = delete;
  TermPool& operator=(const TermPool&) = delete;

  // Raw constructors: intern the node as written, no rewriting. normalize()
  // is a separate explicit step so that parse/render can round-trip the
  // surface syntax faithfully.
  TermId zero();
  TermId one();
  TermId letter(std::string_view name);
  TermId letter(LetterId id);
  TermId sum(std::span<const TermId> operands);  // arity >= 1; 1 => identity
  TermId sum2(TermId a, TermId b);
  TermId prod(TermId lhs, TermId rhs);
  TermId star(TermId body);

  // Node access.
  Op op(TermId t) const { return nodes_[t].op; }
  LetterId letter_id(TermId t) const { return nodes_[t].letter; }
  std::span<const TermId> kids(TermId t) const;
  TermId kid(TermId t, size_t i) const { return kids(t)[i]; }
  // Owning copy; required when interning new nodes while iterating (the kid
  // arena may reallocate under a live span).
  std::vector<TermId> kid_vec(TermId t) const {
    auto ks = kids(t);
    return {ks.begin(), ks.end()};
  }
  // True iff the empty word belongs to the term's word language (the
  // constant 0 denotes a one-symbol language, so it is not nullable).
  bool nullable(TermId t) const { return nodes_[t].nullable; }
  // Saturating tree node count.
  uint64_t tree_size(TermId t) const { return nodes_[t].tree_size; }
  // Number of distinct nodes reachable from t.
  uint64_t dag_size(TermId t) const;
  uint64_t letters_mask(TermId t) const { return nodes_[t].letters_mask; }
  std::vector<std::string> letter_names(TermId t) const;
  size_t num_nodes() const { return nodes_.size(); }

  size_t num_letters() const { return letter_names_.size(); }
  const std::string& letter_name(LetterId id) const { return letter_names_[id]; }
  // Registers (or finds) a letter name, returns its id.
  LetterId intern_letter(std::string_view name);
  bool has_letter(std::string_view name) const;

  // Total structural order: constants < letters (lexicographic) < Sum <
  // Prod < Star, then recursively on the children. Fixes the canonical form
  // of sums and makes rendering deterministic.
  int compare(TermId a, TermId b) const;

  // Canonical form under the semiring-valid rewrites: sum flattening,
  // commutativity/idempotence (sort + dedup), 0+x = x, 1.x = x.1 = x and
  // product reassociation to the right. Never applies 0.x = 0 or x.0 = 0.
  TermId normalize(TermId t);

  // Normalizing constructors (operands must already be normalized).
  TermId mk_sum_norm(std::vector<TermId> operands);
  TermId mk_prod_norm(TermId lhs, TermId rhs);
  TermId mk_star_norm(TermId body) { return star(body); }
  TermId mk_leq(TermId x, TermId y);  // x <= y encoded as x+y = y; returns lhs x+y

  // Mirror image: products reversed, everything else fixed.
  TermId reverse(TermId t);

  // Antimirov partial derivative of the word language by a letter. Terms in
  // the result are normalized and sorted by id. The constant 0 denotes the
  // one-word language over the distinguished zero symbol, so it has no
  // letter derivatives (same as in the classical reading).
  const std::vector<TermId>& partial_derivs(TermId t, LetterId by);

  // Prefix/suffix-language transformers (see transform.hpp for the defining
  // clauses). They live here because the decision engine uses the suffix
  // image as the derivative by the zero symbol, and both are memoized per
  // node. Results are normalized; suffix images are flagged suffix-closed,
  // making the transformer idempotent on its own images.
  TermId prefixes(TermId t);
  TermId suffixes(TermId t);
  bool suffix_closed(TermId t) const { return nodes_[t].suffix_closed; }

  // Parsing / printing. parse keeps the surface structure (no rewriting):
  // "b;c;d" => Prod(b, Prod(c, d)), "b+0" => Sum(b, 0).
  TermId parse(std::string_view text, const Alphabet& alphabet);
  std::string render(TermId t) const;

 private:
  struct Node {
    Op op;
    LetterId letter = 0;
    bool nullable = false;
    bool suffix_closed = false;
    uint32_t first_kid = 0;
    uint32_t num_kids = 0;
    uint64_t tree_size = 1;
    uint64_t letters_mask = 0;
    uint64_t hash = 0;
  };

  TermId intern(Node node, std::span<const TermId> kids);
  TermId norm_concat(TermId a, TermId b);
  void render_rec(TermId t, int parent_prec, std::string& out) const;

  std::vector<Node> nodes_;
  std::vector<TermId> kid_arena_;
  std::unordered_map<uint64_t, std::vector<TermId>> intern_table_;
  std::vector<std::string> letter_names_;
  std::unordered_map<std::string, LetterId> letter_ids_;
  std::vector<TermId> letter_terms_;

  TermId zero_ = kNoTerm;
  TermId one_ = kNoTerm;

  std::vector<TermId> norm_memo_;
  std::vector<TermId> prefix_memo_;
  std::vector<TermId> suffix_memo_;
  std::vector<TermId> reverse_memo_;
  std::unordered_map<uint64_t, std::vector<TermId>> pd_memo_;
};

// Node count of the AST (saturating).
uint64_t term_size(const TermPool& pool, TermId t);

// x <= y as the equation x+y = y.
Equation leq(TermPool& pool, TermId x, TermId y);

// Parses the line-oriented problem format:
//   alphabet <letter> <letter> ...
//   hyp <term> = 0
//   goal <term> = <term>
// '#' starts a comment; line order is irrelevant but the goal is unique.
Problem parse_problem(TermPool& pool, std::string_view text);

}  // namespace ksr

#endif  // KSR_CORE_TERM_HPP_
