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

#include "core/engine.hpp"

#include <algorithm>
#include <deque>

namespace ksr {

namespace {

uint64_t vec_hash(const std::vector<TermId>& v) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (TermId t : v) {
    h ^= t + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Union-find with path halving, grown on demand.
class UnionFind {
 public:
  uint32_t find(uint32_t x) {
    if (x >= parent_.size()) grow(x + 1);
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[a] = b;
  }

 private:
  void grow(size_t n) {
    size_t old = parent_.size();
    parent_.resize(n);
    for (size_t i = old; i < n; ++i) parent_[i] = static_cast<uint32_t>(i);
  }
  std::vector<uint32_t> parent_;
};

}  // namespace

Engine::Engine(TermPool& pool, Theory theory, EngineLimits limits)
    : pool_(pool), theory_(theory), limits_(limits) {}

Engine::StateId Engine::intern_state(std::vector<TermId> elems) {
  uint64_t h = vec_hash(elems);
  auto [it, inserted] = state_table_.try_emplace(h);
  for (StateId cand : it->second) {
    if (states_[cand] == elems) return cand;
  }
  if (states_.size() >= limits_.max_states) {
    throw DecisionBudgetExceeded("decision engine exceeded its state budget");
  }
  bool acc = false;
  for (TermId t : elems) acc = acc || pool_.nullable(t);
  StateId id = static_cast<StateId>(states_.size());
  states_.push_back(std::move(elems));
  state_accepting_.push_back(acc);
  it->second.push_back(id);
  stats_.distinct_states = states_.size();
  return id;
}

Engine::StateId Engine::state_of_term(TermId t) {
  return intern_state({pool_.normalize(t)});
}

bool Engine::accepting(StateId s) const { return state_accepting_[s] != 0; }

Engine::StateId Engine::successor(StateId s, char symbol) {
  uint64_t key = (static_cast<uint64_t>(s) << 8) | static_cast<uint8_t>(symbol);
  auto it = succ_memo_.find(key);
  if (it != succ_memo_.end()) return it->second;

  std::vector<TermId> next;
  const std::vector<TermId>& elems = states_[s];
  if (symbol == kZeroSymbol) {
    // Derivative by the zero symbol: closure of the suffix language.
    next.reserve(elems.size());
    for (TermId t : elems) {
      next.push_back(pool_.suffix_closed(t) ? t : pool_.suffixes(t));
    }
  } else {
    LetterId by = static_cast<LetterId>(symbol - 1);
    for (TermId t : elems) {
      const auto& pds = pool_.partial_derivs(t, by);
      next.insert(next.end(), pds.begin(), pds.end());
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  StateId id = intern_state(std::move(next));
  succ_memo_.emplace(key, id);
  return id;
}

std::vector<char> Engine::symbols_for(TermId x, TermId y) {
  uint64_t mask = pool_.letters_mask(x) | pool_.letters_mask(y);
  std::vector<char> symbols;
  for (int i = 0; i < kMaxLetters; ++i) {
    if (mask & (1ull << i)) symbols.push_back(letter_symbol(static_cast<LetterId>(i)));
  }
  if (theory_ == Theory::KS) symbols.push_back(kZeroSymbol);
  return symbols;
}

Verdict Engine::run(TermId x, TermId y, bool inclusion_only) {
  std::vector<char> symbols = symbols_for(x, y);

  struct PairRec {
    StateId s, t;
    uint32_t parent;
    char symbol;
  };
  std::vector<PairRec> pairs;
  std::deque<uint32_t> queue;
  UnionFind uf;
  // Inclusion cannot merge classes, so it falls back to a visited set.
  std::unordered_map<uint64_t, uint8_t> visited;

  auto push = [&](StateId s, StateId t, uint32_t parent, char symbol) {
    pairs.push_back({s, t, parent, symbol});
    queue.push_back(static_cast<uint32_t>(pairs.size() - 1));
  };

  auto witness_of = [&](uint32_t idx) {
    Word w;
    for (uint32_t cur = idx; pairs[cur].parent != UINT32_MAX; cur = pairs[cur].parent) {
      w.push_back(pairs[cur].symbol);
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  push(state_of_term(x), state_of_term(y), UINT32_MAX, 0);
  while (!queue.empty()) {
    uint32_t idx = queue.front();
    queue.pop_front();
    auto [s, t, parent, symbol] = pairs[idx];
    if (inclusion_only) {
      uint64_t key = (static_cast<uint64_t>(s) << 32) | t;
      if (visited.count(key)) continue;
      visited.emplace(key, 1);
    } else {
      if (uf.find(s) == uf.find(t)) continue;
    }
    if (++stats_.pairs_explored > limits_.max_pairs) {
      throw DecisionBudgetExceeded("decision engine exceeded its pair budget");
    }
    bool as = accepting(s), at = accepting(t);
    bool mismatch = inclusion_only ? (as && !at) : (as != at);
    if (mismatch) {
      return Verdict{Outcome::Unequal, witness_of(idx), 0};
    }
    if (!inclusion_only) uf.unite(s, t);
    for (char sym : symbols) {
      StateId ns = successor(s, sym);
      StateId nt = successor(t, sym);
      if (ns == nt) continue;
      push(ns, nt, idx, sym);
    }
  }
  return Verdict{Outcome::Equal, {}, 0};
}

Verdict Engine::equivalence(TermId x, TermId y) { return run(x, y, false); }

Verdict Engine::inclusion(TermId x, TermId y) { return run(x, y, true); }

bool Engine::member(TermId t, const Word& w) {
  StateId s = state_of_term(t);
  for (char sym : w) {
    if (sym == kZeroSymbol) {
      if (theory_ == Theory::KA) return false;
    } else if (static_cast<LetterId>(sym - 1) >= pool_.num_letters()) {
      return false;
    }
    s = successor(s, sym);
  }
  return accepting(s);
}

}  // namespace ksr
