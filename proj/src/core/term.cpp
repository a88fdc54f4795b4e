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

#include "core/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ksr {

namespace {

uint64_t hash_combine(uint64_t h, uint64_t v) {
  // 64-bit FNV-ish mix; only used for intern bucketing.
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
  return h * 0x100000001b3ull;
}

uint64_t saturating_add(uint64_t a, uint64_t b) {
  uint64_t r = a + b;
  return r < a ? UINT64_MAX : r;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  for (const auto& name : letters_) {
    if (name == "0" || name == "1") {
      throw std::invalid_argument("alphabet may not contain the reserved name '" + name + "'");
    }
  }
  std::vector<std::string> sorted = letters_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("alphabet contains a duplicate letter");
  }
}

bool Alphabet::contains(std::string_view name) const {
  return std::find(letters_.begin(), letters_.end(), name) != letters_.end();
}

std::span<const TermId> TermPool::kids(TermId t) const {
  const Node& n = nodes_[t];
  return {kid_arena_.data() + n.first_kid, n.num_kids};
}

TermId TermPool::intern(Node node, std::span<const TermId> kids) {
  uint64_t h = hash_combine(0x9ae16a3b2f90404full, static_cast<uint64_t>(node.op));
  h = hash_combine(h, node.letter);
  for (TermId k : kids) h = hash_combine(h, nodes_[k].hash);
  node.hash = h;

  auto [it, inserted] = intern_table_.try_emplace(h);
  for (TermId cand : it->second) {
    const Node& c = nodes_[cand];
    if (c.op != node.op || c.letter != node.letter || c.num_kids != kids.size()) continue;
    bool same = true;
    for (size_t i = 0; i < kids.size(); ++i) {
      if (kid_arena_[c.first_kid + i] != kids[i]) { same = false; break; }
    }
    if (same) return cand;
  }

  node.first_kid = static_cast<uint32_t>(kid_arena_.size());
  node.num_kids = static_cast<uint32_t>(kids.size());
  kid_arena_.insert(kid_arena_.end(), kids.begin(), kids.end());

  node.tree_size = 1;
  node.letters_mask = 0;
  for (TermId k : kids) {
    node.tree_size = saturating_add(node.tree_size, nodes_[k].tree_size);
    node.letters_mask |= nodes_[k].letters_mask;
  }
  switch (node.op) {
    case Op::Zero: node.nullable = false; break;
    case Op::One: node.nullable = true; break;
    case Op::Letter:
      node.nullable = false;
      node.letters_mask = 1ull << node.letter;
      break;
    case Op::Sum: {
      node.nullable = false;
      for (TermId k : kids) node.nullable = node.nullable || nodes_[k].nullable;
      break;
    }
    case Op::Prod:
      node.nullable = nodes_[kids[0]].nullable && nodes_[kids[1]].nullable;
      break;
    case Op::Star: node.nullable = true; break;
  }

  TermId id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(node);
  it->second.push_back(id);
  return id;
}

TermId TermPool::zero() {
  if (zero_ == kNoTerm) zero_ = intern(Node{Op::Zero}, {});
  return zero_;
}

TermId TermPool::one() {
  if (one_ == kNoTerm) one_ = intern(Node{Op::One}, {});
  return one_;
}

LetterId TermPool::intern_letter(std::string_view name) {
  auto it = letter_ids_.find(std::string(name));
  if (it != letter_ids_.end()) return it->second;
  if (letter_names_.size() >= kMaxLetters) {
    throw std::invalid_argument("too many distinct letters (max 64)");
  }
  LetterId id = static_cast<LetterId>(letter_names_.size());
  letter_names_.emplace_back(name);
  letter_ids_.emplace(std::string(name), id);
  letter_terms_.push_back(kNoTerm);
  return id;
}

bool TermPool::has_letter(std::string_view name) const {
  return letter_ids_.count(std::string(name)) != 0;
}

TermId TermPool::letter(LetterId id) {
  if (letter_terms_[id] == kNoTerm) {
    Node n{Op::Letter};
    n.letter = id;
    letter_terms_[id] = intern(n, {});
  }
  return letter_terms_[id];
}

TermId TermPool::letter(std::string_view name) { return letter(intern_letter(name)); }

TermId TermPool::sum(std::span<const TermId> operands) {
  if (operands.empty()) throw std::invalid_argument("sum requires at least one operand");
  if (operands.size() == 1) return operands[0];
  return intern(Node{Op::Sum}, operands);
}

TermId TermPool::sum2(TermId a, TermId b) {
  TermId ops[2] = {a, b};
  return sum(ops);
}

TermId TermPool::prod(TermId lhs, TermId rhs) {
  TermId ops[2] = {lhs, rhs};
  return intern(Node{Op::Prod}, ops);
}

TermId TermPool::star(TermId body) {
  TermId ops[1] = {body};
  return intern(Node{Op::Star}, ops);
}

uint64_t TermPool::dag_size(TermId t) const {
  std::vector<uint8_t> seen(nodes_.size(), 0);
  std::vector<TermId> stack{t};
  uint64_t count = 0;
  while (!stack.empty()) {
    TermId cur = stack.back();
    stack.pop_back();
    if (seen[cur]) continue;
    seen[cur] = 1;
    ++count;
    for (TermId k : kids(cur)) stack.push_back(k);
  }
  return count;
}

std::vector<std::string> TermPool::letter_names(TermId t) const {
  std::vector<std::string> out;
  uint64_t mask = nodes_[t].letters_mask;
  for (size_t i = 0; i < letter_names_.size(); ++i) {
    if (mask & (1ull << i)) out.push_back(letter_names_[i]);
  }
  return out;
}

int TermPool::compare(TermId a, TermId b) const {
  if (a == b) return 0;
  const Node& na = nodes_[a];
  const Node& nb = nodes_[b];
  auto rank = [](const Node& n) {
    switch (n.op) {
      case Op::Zero: return 0;
      case Op::One: return 1;
      case Op::Letter: return 2;
      case Op::Sum: return 3;
      case Op::Prod: return 4;
      case Op::Star: return 5;
    }
    return 6;
  };
  if (rank(na) != rank(nb)) return rank(na) < rank(nb) ? -1 : 1;
  if (na.op == Op::Letter) {
    return letter_names_[na.letter].compare(letter_names_[nb.letter]) < 0 ? -1 : 1;
  }
  auto ka = kids(a), kb = kids(b);
  size_t n = std::min(ka.size(), kb.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(ka[i], kb[i]);
    if (c != 0) return c;
  }
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  return 0;
}

TermId TermPool::norm_concat(TermId a, TermId b) {
  // Right-nests products and removes unit factors. Inputs normalized.
  if (op(a) == Op::One) return b;
  if (op(b) == Op::One) return a;
  if (op(a) == Op::Prod) {
    return norm_concat(kid(a, 0), norm_concat(kid(a, 1), b));
  }
  return prod(a, b);
}

TermId TermPool::mk_prod_norm(TermId lhs, TermId rhs) { return norm_concat(lhs, rhs); }

TermId TermPool::mk_sum_norm(std::vector<TermId> operands) {
  std::vector<TermId> flat;
  flat.reserve(operands.size());
  for (TermId t : operands) {
    if (op(t) == Op::Sum) {
      auto ks = kids(t);
      flat.insert(flat.end(), ks.begin(), ks.end());
    } else if (op(t) != Op::Zero) {
      flat.push_back(t);
    }
  }
  if (flat.empty()) return zero();
  std::sort(flat.begin(), flat.end(),
            [this](TermId x, TermId y) { return compare(x, y) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.size() == 1) return flat[0];
  return sum(flat);
}

TermId TermPool::normalize(TermId t) {
  if (norm_memo_.size() < nodes_.size()) norm_memo_.resize(nodes_.size(), kNoTerm);
  if (norm_memo_[t] != kNoTerm) return norm_memo_[t];
  TermId result = t;
  switch (op(t)) {
    case Op::Zero:
    case Op::One:
    case Op::Letter:
      break;
    case Op::Star:
      result = star(normalize(kid(t, 0)));
      break;
    case Op::Prod:
      result = norm_concat(normalize(kid(t, 0)), normalize(kid(t, 1)));
      break;
    case Op::Sum: {
      std::vector<TermId> ops;
      for (TermId k : kids(t)) ops.push_back(normalize(k));
      result = mk_sum_norm(std::move(ops));
      break;
    }
  }
  if (norm_memo_.size() < nodes_.size()) norm_memo_.resize(nodes_.size(), kNoTerm);
  norm_memo_[t] = result;
  norm_memo_[result] = result;
  return result;
}

TermId TermPool::mk_leq(TermId x, TermId y) { return mk_sum_norm({x, y}); }

TermId TermPool::reverse(TermId t) {
  if (reverse_memo_.size() < nodes_.size()) reverse_memo_.resize(nodes_.size(), kNoTerm);
  if (reverse_memo_[t] != kNoTerm) return reverse_memo_[t];
  TermId result = t;
  switch (op(t)) {
    case Op::Zero:
    case Op::One:
    case Op::Letter:
      break;
    case Op::Star:
      result = star(reverse(kid(t, 0)));
      break;
    case Op::Prod:
      result = prod(reverse(kid(t, 1)), reverse(kid(t, 0)));
      break;
    case Op::Sum: {
      std::vector<TermId> ops;
      for (TermId k : kids(t)) ops.push_back(reverse(k));
      result = sum(ops);
      break;
    }
  }
  if (reverse_memo_.size() < nodes_.size()) reverse_memo_.resize(nodes_.size(), kNoTerm);
  reverse_memo_[t] = result;
  return result;
}

const std::vector<TermId>& TermPool::partial_derivs(TermId t, LetterId by) {
  uint64_t key = (static_cast<uint64_t>(t) << 8) | by;
  auto it = pd_memo_.find(key);
  if (it != pd_memo_.end()) return it->second;

  std::vector<TermId> out;
  switch (op(t)) {
    case Op::Zero:
    case Op::One:
      break;
    case Op::Letter:
      if (letter_id(t) == by) out.push_back(one());
      break;
    case Op::Sum:
      for (TermId k : kids(t)) {
        const auto& sub = partial_derivs(k, by);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
    case Op::Prod: {
      TermId l = kid(t, 0), r = kid(t, 1);
      for (TermId d : partial_derivs(l, by)) out.push_back(mk_prod_norm(d, r));
      if (nullable(l)) {
        const auto& sub = partial_derivs(r, by);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
    }
    case Op::Star: {
      for (TermId d : partial_derivs(kid(t, 0), by)) out.push_back(mk_prod_norm(d, t));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return pd_memo_.emplace(key, std::move(out)).first->second;
}

TermId TermPool::prefixes(TermId t) {
  if (prefix_memo_.size() < nodes_.size()) prefix_memo_.resize(nodes_.size(), kNoTerm);
  if (prefix_memo_[t] != kNoTerm) return prefix_memo_[t];
  TermId result = kNoTerm;
  switch (op(t)) {
    case Op::Zero:
    case Op::One:
    case Op::Letter:
      result = mk_sum_norm({one(), t});
      break;
    case Op::Sum: {
      std::vector<TermId> ops;
      for (TermId k : kids(t)) ops.push_back(prefixes(k));
      result = mk_sum_norm(std::move(ops));
      break;
    }
    case Op::Prod: {
      TermId l = kid(t, 0), r = kid(t, 1);
      result = mk_sum_norm({prefixes(l), mk_prod_norm(l, prefixes(r))});
      break;
    }
    case Op::Star: {
      result = mk_prod_norm(star(kid(t, 0)), prefixes(kid(t, 0)));
      break;
    }
  }
  if (prefix_memo_.size() < nodes_.size()) prefix_memo_.resize(nodes_.size(), kNoTerm);
  prefix_memo_[t] = result;
  return result;
}

TermId TermPool::suffixes(TermId t) {
  if (suffix_memo_.size() < nodes_.size()) suffix_memo_.resize(nodes_.size(), kNoTerm);
  if (suffix_memo_[t] != kNoTerm) return suffix_memo_[t];
  TermId result = kNoTerm;
  switch (op(t)) {
    case Op::Zero:
    case Op::One:
    case Op::Letter:
      result = mk_sum_norm({one(), t});
      break;
    case Op::Sum: {
      std::vector<TermId> ops;
      for (TermId k : kids(t)) ops.push_back(suffixes(k));
      result = mk_sum_norm(std::move(ops));
      break;
    }
    case Op::Prod: {
      TermId l = kid(t, 0), r = kid(t, 1);
      result = mk_sum_norm({suffixes(r), mk_prod_norm(suffixes(l), r)});
      break;
    }
    case Op::Star: {
      result = mk_prod_norm(suffixes(kid(t, 0)), star(kid(t, 0)));
      break;
    }
  }
  if (suffix_memo_.size() < nodes_.size()) suffix_memo_.resize(nodes_.size(), kNoTerm);
  suffix_memo_[t] = result;
  nodes_[result].suffix_closed = true;
  return result;
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Parser {
  TermPool& pool;
  const Alphabet& alphabet;
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    std::ostringstream os;
    os << msg << " at position " << pos;
    throw ParseError(pos, os.str());
  }

  TermId parse_term() {
    TermId first = parse_prod();
    std::vector<TermId> ops{first};
    while (peek() == '+') {
      ++pos;
      ops.push_back(parse_prod());
    }
    return pool.sum(ops);
  }

  TermId parse_prod() {
    std::vector<TermId> factors{parse_star()};
    while (peek() == ';' || peek() == '.') {
      ++pos;
      factors.push_back(parse_star());
    }
    TermId acc = factors.back();
    for (size_t i = factors.size() - 1; i-- > 0;) acc = pool.prod(factors[i], acc);
    return acc;
  }

  TermId parse_star() {
    TermId t = parse_atom();
    while (peek() == '*') {
      ++pos;
      t = pool.star(t);
    }
    return t;
  }

  TermId parse_atom() {
    char c = peek();
    if (c == '0') { ++pos; return pool.zero(); }
    if (c == '1') { ++pos; return pool.one(); }
    if (c == '(') {
      ++pos;
      TermId t = parse_term();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return t;
    }
    if (c >= 'a' && c <= 'z') {
      size_t start = pos;
      ++pos;
      while (pos < text.size()) {
        char d = text[pos];
        if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_') ++pos;
        else break;
      }
      std::string name(text.substr(start, pos - start));
      if (!alphabet.contains(name)) {
        pos = start;
        fail("undeclared letter '" + name + "'");
      }
      return pool.letter(name);
    }
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

TermId TermPool::parse(std::string_view text, const Alphabet& alphabet) {
  Parser p{*this, alphabet, text};
  TermId t = p.parse_term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

void TermPool::render_rec(TermId t, int parent_prec, std::string& out) const {
  // precedence: sum=0, prod=1, star=2, atom=3
  switch (op(t)) {
    case Op::Zero: out += '0'; return;
    case Op::One: out += '1'; return;
    case Op::Letter: out += letter_names_[letter_id(t)]; return;
    case Op::Sum: {
      bool parens = parent_prec > 0;
      if (parens) out += '(';
      auto ks = kids(t);
      for (size_t i = 0; i < ks.size(); ++i) {
        if (i) out += '+';
        render_rec(ks[i], 1, out);
      }
      if (parens) out += ')';
      return;
    }
    case Op::Prod: {
      bool parens = parent_prec > 1;
      if (parens) out += '(';
      render_rec(kid(t, 0), 2, out);
      out += ';';
      render_rec(kid(t, 1), 2, out);
      if (parens) out += ')';
      return;
    }
    case Op::Star: {
      render_rec(kid(t, 0), 3, out);
      out += '*';
      return;
    }
  }
}

std::string TermPool::render(TermId t) const {
  std::string out;
  render_rec(t, 0, out);
  return out;
}

uint64_t term_size(const TermPool& pool, TermId t) { return pool.tree_size(t); }

Equation leq(TermPool& pool, TermId x, TermId y) {
  return Equation{pool.sum2(x, y), y};
}

Problem parse_problem(TermPool& pool, std::string_view text) {
  Problem p;
  bool saw_alphabet = false;
  bool saw_goal = false;
  size_t line_no = 0;
  size_t start = 0;
  std::vector<std::pair<size_t, std::string>> hyp_lines;
  std::vector<std::pair<size_t, std::string>> goal_lines;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) { if (end == text.size()) break; else continue; }
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    std::istringstream is(line);
    std::string keyword;
    is >> keyword;
    std::string rest;
    std::getline(is, rest);
    if (keyword == "alphabet") {
      if (saw_alphabet) throw ParseError(line_no, "duplicate alphabet declaration (line " + std::to_string(line_no) + ")");
      std::istringstream ls(rest);
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) names.push_back(n);
      if (names.empty()) throw ParseError(line_no, "empty alphabet (line " + std::to_string(line_no) + ")");
      p.alphabet = Alphabet(names);
      saw_alphabet = true;
    } else if (keyword == "hyp") {
      hyp_lines.emplace_back(line_no, rest);
    } else if (keyword == "goal") {
      if (saw_goal) throw ParseError(line_no, "more than one goal (line " + std::to_string(line_no) + ")");
      saw_goal = true;
      goal_lines.emplace_back(line_no, rest);
    } else {
      throw ParseError(line_no, "unknown keyword '" + keyword + "' (line " + std::to_string(line_no) + ")");
    }
    if (end == text.size()) break;
  }
  if (!saw_alphabet) throw ParseError(0, "missing alphabet declaration");
  if (!saw_goal) throw ParseError(0, "missing goal");

  auto split_eq = [](const std::string& s, size_t line) {
    size_t depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      else if (s[i] == ')') --depth;
      else if (s[i] == '=' && depth == 0) return i;
    }
    throw ParseError(line, "expected '=' (line " + std::to_string(line) + ")");
  };

  for (auto& [line, body] : hyp_lines) {
    size_t eq = split_eq(body, line);
    TermId a = pool.parse(body.substr(0, eq), p.alphabet);
    std::string rhs = body.substr(eq + 1);
    size_t b2 = rhs.find_first_not_of(" \t");
    size_t e2 = rhs.find_last_not_of(" \t");
    if (b2 == std::string::npos || rhs.substr(b2, e2 - b2 + 1) != "0") {
      throw ParseError(line, "hypothesis must have the form '<term> = 0' (line " + std::to_string(line) + ")");
    }
    p.hypotheses.push_back(HoareHypothesis{a});
  }
  auto& [gline, gbody] = goal_lines.front();
  size_t eq = split_eq(gbody, gline);
  p.goal.lhs = pool.parse(gbody.substr(0, eq), p.alphabet);
  p.goal.rhs = pool.parse(gbody.substr(eq + 1), p.alphabet);
  return p;
}

}  // namespace ksr
