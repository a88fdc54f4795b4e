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

#include "core/closure.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace ksr {

namespace {

using WordSet = std::set<Word>;

// Internal slack above the requested bound: a replacement straddling a
// product seam shows up as two adjacent zero symbols before the final merge
// step, so intermediate words may be one symbol longer than any surviving
// result. One extra symbol suffices; two gives margin at negligible cost.
constexpr uint32_t kSlack = 2;

struct Closer {
  uint32_t cap;  // internal working bound (maxlen + kSlack)
  size_t budget;
  size_t touched = 0;
  // Replacement words for a single zero symbol, indexed by length.
  std::vector<std::vector<Word>> expansions_by_len;

  void set_expansions(const WordSet& words) {
    expansions_by_len.assign(cap + 1, {});
    for (const Word& w : words) {
      if (w.size() >= 1 && w.size() <= cap) expansions_by_len[w.size()].push_back(w);
    }
  }

  void charge(size_t n = 1) {
    touched += n;
    if (touched > budget) {
      throw ClosureBudgetExceeded("bounded closure exceeded its word budget (" +
                                  std::to_string(budget) + ")");
    }
  }

  // Closes `s` under the refinement rewrite. Any replacement of a substring
  // factors through the zero symbol (collapse the substring to one zero
  // symbol, then expand that symbol), so those two step kinds generate the
  // full closure.
  void close(WordSet& s) {
    std::deque<Word> work(s.begin(), s.end());
    auto add = [&](Word w) {
      if (w.size() > cap) return;
      if (s.insert(w).second) {
        charge();
        work.push_back(std::move(w));
      }
    };
    while (!work.empty()) {
      Word w = std::move(work.front());
      work.pop_front();
      size_t len = w.size();
      // Collapse: replace any substring (including the empty one) with a
      // single zero symbol.
      for (size_t i = 0; i <= len; ++i) {
        for (size_t j = i; j <= len; ++j) {
          Word next;
          next.reserve(len - (j - i) + 1);
          next.append(w, 0, i);
          next.push_back(kZeroSymbol);
          next.append(w, j, len - j);
          add(std::move(next));
        }
      }
      // Expand: replace one zero symbol with a hypothesis word.
      if (!expansions_by_len.empty()) {
        for (size_t i = 0; i < len; ++i) {
          if (w[i] != kZeroSymbol) continue;
          size_t room = cap - len + 1;
          for (size_t rl = 1; rl <= room && rl < expansions_by_len.size(); ++rl) {
            for (const Word& r : expansions_by_len[rl]) {
              Word next;
              next.reserve(len - 1 + rl);
              next.append(w, 0, i);
              next.append(r);
              next.append(w, i + 1, len - i - 1);
              add(std::move(next));
            }
          }
        }
      }
    }
  }

  WordSet closed_singleton(Word w) {
    WordSet s;
    if (w.size() <= cap) s.insert(std::move(w));
    close(s);
    return s;
  }

  WordSet concat(const WordSet& a, const WordSet& b) {
    WordSet out;
    for (const Word& u : a) {
      for (const Word& v : b) {
        if (u.size() + v.size() > cap) continue;
        charge();
        out.insert(u + v);
      }
    }
    close(out);
    return out;
  }

  WordSet eval(TermPool& pool, TermId t, std::unordered_map<TermId, WordSet>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    WordSet out;
    switch (pool.op(t)) {
      case Op::Zero:
        out = closed_singleton(Word(1, kZeroSymbol));
        break;
      case Op::One:
        out = closed_singleton(Word{});
        break;
      case Op::Letter:
        out = closed_singleton(Word(1, letter_symbol(pool.letter_id(t))));
        break;
      case Op::Sum: {
        for (TermId k : pool.kids(t)) {
          WordSet sub = eval(pool, k, memo);
          out.insert(sub.begin(), sub.end());
        }
        break;
      }
      case Op::Prod:
        out = concat(eval(pool, pool.kid(t, 0), memo), eval(pool, pool.kid(t, 1), memo));
        break;
      case Op::Star: {
        WordSet body = eval(pool, pool.kid(t, 0), memo);
        out = closed_singleton(Word{});
        for (;;) {
          WordSet next = concat(out, body);
          size_t before = out.size();
          out.insert(next.begin(), next.end());
          if (out.size() == before) break;
          close(out);
        }
        break;
      }
    }
    memo.emplace(t, out);
    return out;
  }
};

}  // namespace

BoundedLanguage bounded_closure(TermPool& pool, TermId t,
                                const std::vector<HoareHypothesis>& hyps, uint32_t maxlen,
                                size_t budget) {
  if (maxlen < 1) throw std::invalid_argument("bounded_closure requires maxlen >= 1");
  Closer closer;
  closer.cap = maxlen + kSlack;
  closer.budget = budget;

  // Joint fixpoint: enumerate hypothesis words, close everything with those
  // words available as replacements, re-enumerate, until stable. Hypothesis
  // words refine too, so one round is not enough in general.
  WordSet replacements;
  if (!hyps.empty()) {
    for (;;) {
      closer.set_expansions(replacements);
      WordSet next;
      for (const auto& h : hyps) {
        std::unordered_map<TermId, WordSet> memo;
        WordSet words = closer.eval(pool, pool.normalize(h.a), memo);
        next.insert(words.begin(), words.end());
      }
      if (next == replacements) break;
      replacements = std::move(next);
    }
  }
  closer.set_expansions(replacements);

  std::unordered_map<TermId, WordSet> memo;
  WordSet all = closer.eval(pool, pool.normalize(t), memo);

  BoundedLanguage out;
  out.maxlen = maxlen;
  for (const Word& w : all) {
    if (w.size() <= maxlen) out.words.insert(w);
  }
  return out;
}

}  // namespace ksr
