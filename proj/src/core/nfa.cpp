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

#include "core/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ksr {

namespace {

bool contains(const std::vector<uint32_t>& sorted, uint32_t q) {
  return std::binary_search(sorted.begin(), sorted.end(), q);
}

void sort_unique(std::vector<uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void sort_unique_edges(std::vector<std::pair<char, uint32_t>>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Builder fragments share one edge arena through plain state offsets.
struct Builder {
  const TermPool& pool;
  NfaMode mode;
  bool saturate_each;  // per-operator saturation (KS semantics)
  uint32_t max_states;

  Nfa build(TermId t) {
    Nfa frag = go(t);
    for (auto& es : frag.edges) sort_unique_edges(es);
    return frag;
  }

  void check_size(size_t n) {
    if (n > max_states) {
      throw NfaTooLarge("term too large for an explicit automaton (" + std::to_string(n) +
                        " states)");
    }
  }

  Nfa leaf_word(std::initializer_list<char> symbols) {
    Nfa n;
    n.num_states = static_cast<uint32_t>(symbols.size()) + 1;
    n.edges.resize(n.num_states);
    uint32_t q = 0;
    for (char s : symbols) {
      n.edges[q].push_back({s, q + 1});
      ++q;
    }
    n.initial = {0};
    n.accepting = {q};
    return n;
  }

  Nfa go(TermId t) {
    Nfa result;
    switch (pool.op(t)) {
      case Op::Zero:
        if (mode == NfaMode::KA) {
          result.num_states = 1;
          result.edges.resize(1);
          result.initial = {0};
        } else {
          result = leaf_word({kZeroSymbol});
        }
        break;
      case Op::One:
        result = leaf_word({});
        break;
      case Op::Letter:
        result = leaf_word({letter_symbol(pool.letter_id(t))});
        break;
      case Op::Sum: {
        auto ks = pool.kids(t);
        result = go(ks[0]);
        for (size_t i = 1; i < ks.size(); ++i) merge_union(result, go(ks[i]));
        break;
      }
      case Op::Prod:
        result = go(pool.kid(t, 0));
        concat(result, go(pool.kid(t, 1)));
        break;
      case Op::Star:
        result = go(pool.kid(t, 0));
        star(result);
        break;
    }
    if (saturate_each) result = saturate_zero(result);
    check_size(result.num_states);
    return result;
  }

  static void offset_into(Nfa& dst, const Nfa& src) {
    uint32_t base = dst.num_states;
    dst.num_states += src.num_states;
    dst.edges.resize(dst.num_states);
    for (uint32_t q = 0; q < src.num_states; ++q) {
      for (auto [sym, to] : src.edges[q]) dst.edges[base + q].push_back({sym, base + to});
    }
  }

  void merge_union(Nfa& a, const Nfa& b) {
    uint32_t base = a.num_states;
    offset_into(a, b);
    for (uint32_t q : b.initial) a.initial.push_back(base + q);
    for (uint32_t q : b.accepting) a.accepting.push_back(base + q);
    sort_unique(a.initial);
    sort_unique(a.accepting);
  }

  void concat(Nfa& a, const Nfa& b) {
    bool a_nullable = false;
    for (uint32_t q : a.initial) a_nullable = a_nullable || contains(a.accepting, q);
    bool b_nullable = false;
    for (uint32_t q : b.initial) b_nullable = b_nullable || contains(b.accepting, q);

    uint32_t base = a.num_states;
    std::vector<uint32_t> a_accepting = a.accepting;
    offset_into(a, b);

    // Every edge entering an accepting state of `a` may instead enter `b`.
    std::vector<std::pair<uint32_t, std::pair<char, uint32_t>>> extra;
    for (uint32_t q = 0; q < base; ++q) {
      for (auto [sym, to] : a.edges[q]) {
        if (contains(a_accepting, to)) {
          for (uint32_t i : b.initial) extra.push_back({q, {sym, base + i}});
        }
      }
    }
    for (auto& [q, e] : extra) a.edges[q].push_back(e);

    std::vector<uint32_t> initial = a.initial;
    if (a_nullable) {
      for (uint32_t i : b.initial) initial.push_back(base + i);
    }
    std::vector<uint32_t> accepting;
    for (uint32_t q : b.accepting) accepting.push_back(base + q);
    if (b_nullable) {
      for (uint32_t q : a_accepting) accepting.push_back(q);
    }
    a.initial = std::move(initial);
    a.accepting = std::move(accepting);
    sort_unique(a.initial);
    sort_unique(a.accepting);
  }

  void star(Nfa& a) {
    // Loop back: edges entering an accepting state may re-enter the body.
    std::vector<std::pair<uint32_t, std::pair<char, uint32_t>>> extra;
    for (uint32_t q = 0; q < a.num_states; ++q) {
      for (auto [sym, to] : a.edges[q]) {
        if (contains(a.accepting, to)) {
          for (uint32_t i : a.initial) extra.push_back({q, {sym, i}});
        }
      }
    }
    for (auto& [q, e] : extra) a.edges[q].push_back(e);
    uint32_t fresh = a.num_states++;
    a.edges.resize(a.num_states);
    a.initial.push_back(fresh);
    a.accepting.push_back(fresh);
    sort_unique(a.initial);
    sort_unique(a.accepting);
  }
};

std::vector<uint32_t> reachable_from(const Nfa& n, uint32_t q) {
  std::vector<uint8_t> seen(n.num_states, 0);
  std::vector<uint32_t> stack{q}, out;
  seen[q] = 1;
  while (!stack.empty()) {
    uint32_t cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (auto [sym, to] : n.edges[cur]) {
      if (!seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool Nfa::is_accepting(uint32_t q) const { return contains(accepting, q); }

Nfa nfa_of_term(const TermPool& pool, TermId t, NfaMode mode, uint32_t max_states) {
  Builder b{pool, mode, mode == NfaMode::KS, max_states};
  Nfa n = b.build(t);
  n.has_zero_symbol = mode == NfaMode::KS;
  n.saturated = mode == NfaMode::KS;
  return n;
}

Nfa nfa_of_term_zero_as_symbol(const TermPool& pool, TermId t, uint32_t max_states) {
  Builder b{pool, NfaMode::KS, /*saturate_each=*/false, max_states};
  Nfa n = b.build(t);
  n.has_zero_symbol = true;
  n.saturated = false;
  return n;
}

Nfa saturate_zero(const Nfa& n) {
  Nfa out = n;
  for (uint32_t q = 0; q < n.num_states; ++q) {
    for (uint32_t to : reachable_from(n, q)) {
      out.edges[q].push_back({kZeroSymbol, to});
    }
  }
  for (auto& es : out.edges) sort_unique_edges(es);
  out.has_zero_symbol = true;
  out.saturated = true;
  return out;
}

namespace {

using StateSet = std::vector<uint32_t>;

StateSet step(const Nfa& n, const StateSet& from, char symbol) {
  StateSet out;
  for (uint32_t q : from) {
    for (auto [sym, to] : n.edges[q]) {
      if (sym == symbol) out.push_back(to);
    }
  }
  sort_unique(out);
  return out;
}

bool any_accepting(const Nfa& n, const StateSet& s) {
  for (uint32_t q : s) {
    if (n.is_accepting(q)) return true;
  }
  return false;
}

std::vector<char> nfa_symbols(const Nfa& a, const Nfa& b) {
  std::set<char> syms;
  for (const Nfa* n : {&a, &b}) {
    for (const auto& es : n->edges) {
      for (auto [sym, to] : es) syms.insert(sym);
    }
  }
  // Letters first, zero symbol last, so witness tie-breaks prefer letters.
  std::vector<char> out;
  for (char s : syms) {
    if (s != kZeroSymbol) out.push_back(s);
  }
  if (syms.count(kZeroSymbol)) out.push_back(kZeroSymbol);
  return out;
}

Verdict subset_product(const Nfa& x, const Nfa& y, bool inclusion_only) {
  std::vector<char> symbols = nfa_symbols(x, y);
  struct Rec {
    StateSet s, t;
    uint32_t parent;
    char symbol;
  };
  std::vector<Rec> recs;
  std::deque<uint32_t> queue;
  std::map<std::pair<StateSet, StateSet>, uint8_t> visited;

  auto push = [&](StateSet s, StateSet t, uint32_t parent, char sym) {
    recs.push_back({std::move(s), std::move(t), parent, sym});
    queue.push_back(static_cast<uint32_t>(recs.size() - 1));
  };
  push(x.initial, y.initial, UINT32_MAX, 0);

  while (!queue.empty()) {
    uint32_t idx = queue.front();
    queue.pop_front();
    const StateSet s = recs[idx].s;
    const StateSet t = recs[idx].t;
    auto [it, inserted] = visited.try_emplace({s, t}, 1);
    if (!inserted) continue;
    bool as = any_accepting(x, s);
    bool at = any_accepting(y, t);
    if (inclusion_only ? (as && !at) : (as != at)) {
      Word w;
      for (uint32_t cur = idx; recs[cur].parent != UINT32_MAX; cur = recs[cur].parent) {
        w.push_back(recs[cur].symbol);
      }
      std::reverse(w.begin(), w.end());
      return Verdict{Outcome::Unequal, w, 0};
    }
    for (char sym : symbols) {
      push(step(x, s, sym), step(y, t, sym), idx, sym);
    }
  }
  return Verdict{Outcome::Equal, {}, 0};
}

}  // namespace

Verdict nfa_equivalent(const Nfa& x, const Nfa& y) { return subset_product(x, y, false); }

Verdict nfa_included(const Nfa& x, const Nfa& y) { return subset_product(x, y, true); }

bool nfa_member(const Nfa& n, const Word& w) {
  StateSet s = n.initial;
  for (char sym : w) s = step(n, s, sym);
  return any_accepting(n, s);
}

std::set<Word> nfa_words_upto(const Nfa& n, uint32_t maxlen) {
  std::set<char> syms;
  for (const auto& es : n.edges) {
    for (auto [sym, to] : es) syms.insert(sym);
  }
  std::set<Word> out;
  struct Item {
    Word w;
    StateSet s;
  };
  std::deque<Item> queue{{Word{}, n.initial}};
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (any_accepting(n, item.s)) out.insert(item.w);
    if (item.w.size() == maxlen) continue;
    for (char sym : syms) {
      StateSet next = step(n, item.s, sym);
      if (next.empty()) continue;
      Word w2 = item.w;
      w2.push_back(sym);
      queue.push_back({std::move(w2), std::move(next)});
    }
  }
  return out;
}

std::string nfa_to_dot(const TermPool& pool, const Nfa& n) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (uint32_t q : n.initial) {
    os << "  start" << q << " [shape=point];\n  start" << q << " -> q" << q << ";\n";
  }
  for (uint32_t q : n.accepting) os << "  q" << q << " [shape=doublecircle];\n";
  for (uint32_t q = 0; q < n.num_states; ++q) {
    for (auto [sym, to] : n.edges[q]) {
      std::string label = sym == kZeroSymbol
                              ? "0"
                              : pool.letter_name(static_cast<LetterId>(sym - 1));
      os << "  q" << q << " -> q" << to << " [label=\"" << label << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace ksr
