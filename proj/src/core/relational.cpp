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

#include "core/relational.hpp"

#include <unordered_map>

#include "core/rng.hpp"

namespace ksr {

Rel RelationalModel::identity(uint8_t carrier) {
  Rel r = 0;
  for (uint8_t i = 0; i < carrier; ++i) r |= 1ull << (i * 8 + i);
  return r;
}

Rel RelationalModel::bottom_only() { return 1ull; }

Rel rel_compose(Rel a, Rel b, uint8_t carrier) {
  Rel out = 0;
  for (uint8_t r = 0; r < carrier; ++r) {
    uint64_t row = (a >> (r * 8)) & 0xff;
    uint64_t acc = 0;
    while (row) {
      uint8_t mid = static_cast<uint8_t>(__builtin_ctzll(row));
      row &= row - 1;
      acc |= (b >> (mid * 8)) & 0xff;
    }
    out |= acc << (r * 8);
  }
  return out;
}

Rel rel_star(Rel a, uint8_t carrier) {
  Rel acc = RelationalModel::identity(carrier) | a;
  for (;;) {
    Rel next = acc | rel_compose(acc, acc, carrier);
    if (next == acc) return acc;
    acc = next;
  }
}

Rel eval_relational(const TermPool& pool, TermId t, const RelationalModel& model) {
  std::unordered_map<TermId, Rel> memo;
  struct Eval {
    const TermPool& pool;
    const RelationalModel& model;
    std::unordered_map<TermId, Rel>& memo;
    Rel go(TermId t) {
      auto it = memo.find(t);
      if (it != memo.end()) return it->second;
      Rel out = 0;
      switch (pool.op(t)) {
        case Op::Zero: out = RelationalModel::bottom_only(); break;
        case Op::One: out = RelationalModel::identity(model.carrier); break;
        case Op::Letter: out = model.letter_rel.at(pool.letter_id(t)); break;
        case Op::Sum:
          for (TermId k : pool.kids(t)) out |= go(k);
          break;
        case Op::Prod:
          out = rel_compose(go(pool.kid(t, 0)), go(pool.kid(t, 1)), model.carrier);
          break;
        case Op::Star:
          out = rel_star(go(pool.kid(t, 0)), model.carrier);
          break;
      }
      memo.emplace(t, out);
      return out;
    }
  };
  return Eval{pool, model, memo}.go(t);
}

std::vector<RelationalModel> random_relational_models(size_t num_letters, uint8_t carrier_size,
                                                      size_t count, uint64_t seed) {
  if (carrier_size < 2 || carrier_size > 8) {
    throw std::invalid_argument("relational carrier size must be in [2, 8]");
  }
  std::vector<RelationalModel> out;
  out.reserve(count);
  Rng rng(seed);
  for (size_t i = 0; i < count; ++i) {
    RelationalModel m;
    m.carrier = carrier_size;
    m.letter_rel.resize(num_letters);
    for (size_t l = 0; l < num_letters; ++l) {
      Rel r = RelationalModel::bottom_only();  // bottom row is exactly {bottom}
      for (uint8_t row = 1; row < carrier_size; ++row) {
        for (uint8_t col = 0; col < carrier_size; ++col) {
          if (rng.chance(0.35)) r |= 1ull << (row * 8 + col);
        }
      }
      m.letter_rel[l] = r;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace ksr
