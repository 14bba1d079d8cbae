#include "gmes/words.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "gmes/fp.hpp"

namespace gmes {

namespace {

bool beta_zero(const std::vector<uint8_t>& beta) {
  return std::all_of(beta.begin(), beta.end(), [](uint8_t x) { return x == 0; });
}

// 1-based coordinate arithmetic mod p.
int cyc(int c, int p) { return mod_p(c - 1, p) + 1; }

}  // namespace

void ReducedWord::append_a(int exponent) {
  int e = mod_p(exponent, p_);
  if (e == 0) return;
  if (!syl_.empty() && std::holds_alternative<uint8_t>(syl_.back())) {
    int merged = mod_p(std::get<uint8_t>(syl_.back()) + e, p_);
    syl_.pop_back();
    if (merged != 0) syl_.emplace_back(static_cast<uint8_t>(merged));
    return;
  }
  syl_.emplace_back(static_cast<uint8_t>(e));
}

void ReducedWord::append_block(int family, std::vector<uint8_t> beta) {
  for (auto& x : beta) x = static_cast<uint8_t>(mod_p(x, p_));
  if (beta_zero(beta)) return;
  if (!syl_.empty() && std::holds_alternative<FamilyBlock>(syl_.back())) {
    const auto& back = std::get<FamilyBlock>(syl_.back());
    if (back.family == family) {
      std::vector<uint8_t> merged(beta.size());
      for (size_t i = 0; i < beta.size(); ++i)
        merged[i] = static_cast<uint8_t>(mod_p(back.beta[i] + beta[i], p_));
      syl_.pop_back();
      if (!beta_zero(merged)) syl_.emplace_back(FamilyBlock{family, std::move(merged)});
      return;
    }
  }
  syl_.emplace_back(FamilyBlock{family, std::move(beta)});
}

void ReducedWord::append(const Syllable& s) {
  if (std::holds_alternative<uint8_t>(s))
    append_a(std::get<uint8_t>(s));
  else {
    const auto& b = std::get<FamilyBlock>(s);
    append_block(b.family, b.beta);
  }
}

void ReducedWord::append_word(const ReducedWord& w) {
  if (w.p_ != p_) throw std::invalid_argument("append_word: mismatched p");
  for (const auto& s : w.syl_) append(s);
}

std::string ReducedWord::str(const GroupDatum& d) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : syl_) {
    if (!first) os << ' ';
    first = false;
    if (std::holds_alternative<uint8_t>(s)) {
      int e = std::get<uint8_t>(s);
      os << (e == 1 ? "a" : "a^" + std::to_string(e));
    } else {
      const auto& b = std::get<FamilyBlock>(s);
      bool inner_first = true;
      for (size_t i = 0; i < b.beta.size(); ++i) {
        if (b.beta[i] == 0) continue;
        if (!inner_first) os << ' ';
        inner_first = false;
        os << "b" << b.family << "_" << (i + 1);
        if (b.beta[i] != 1) os << "^" << int(b.beta[i]);
      }
    }
  }
  (void)d;
  return os.str();
}

std::string ReducedWord::key() const {
  std::ostringstream os;
  for (const auto& s : syl_) {
    if (std::holds_alternative<uint8_t>(s))
      os << 'a' << int(std::get<uint8_t>(s)) << ';';
    else {
      const auto& b = std::get<FamilyBlock>(s);
      os << 'B' << b.family << ':';
      for (uint8_t x : b.beta) os << int(x) << ',';
      os << ';';
    }
  }
  return os.str();
}

ReducedWord reduce(const GroupDatum& d, const std::vector<std::pair<Gen, int>>& raw) {
  ReducedWord w(d.p());
  for (const auto& [g, e] : raw) {
    if (!d.has_generator(g)) throw std::invalid_argument("reduce: unknown generator");
    w.append_word(gen_word(d, g, e));
  }
  return w;
}

ReducedWord gen_word(const GroupDatum& d, const Gen& g, int exponent) {
  ReducedWord w(d.p());
  if (g.is_a()) {
    w.append_a(exponent);
  } else {
    if (!d.has_generator(g)) throw std::invalid_argument("gen_word: unknown generator");
    std::vector<uint8_t> beta(d.r(g.family), 0);
    beta[g.index - 1] = static_cast<uint8_t>(mod_p(exponent, d.p()));
    w.append_block(g.family, std::move(beta));
  }
  return w;
}

ReducedWord word_mul(const ReducedWord& u, const ReducedWord& v) {
  ReducedWord out = u;
  out.append_word(v);
  return out;
}

ReducedWord word_inverse(const ReducedWord& w) {
  ReducedWord out(w.p());
  const auto& syl = w.syllables();
  for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
    if (std::holds_alternative<uint8_t>(*it))
      out.append_a(-int(std::get<uint8_t>(*it)));
    else {
      const auto& b = std::get<FamilyBlock>(*it);
      std::vector<uint8_t> beta(b.beta.size());
      for (size_t i = 0; i < beta.size(); ++i)
        beta[i] = static_cast<uint8_t>(mod_p(-int(b.beta[i]), w.p()));
      out.append_block(b.family, std::move(beta));
    }
  }
  return out;
}

ReducedWord word_pow(const ReducedWord& w, int k) {
  ReducedWord base = k < 0 ? word_inverse(w) : w;
  int reps = k < 0 ? -k : k;
  ReducedWord out(w.p());
  for (int i = 0; i < reps; ++i) out.append_word(base);
  return out;
}

ReducedWord word_conj(const ReducedWord& x, const ReducedWord& y) {
  ReducedWord out = word_inverse(y);
  out.append_word(x);
  out.append_word(y);
  return out;
}

ReducedWord word_comm(const ReducedWord& x, const ReducedWord& y) {
  ReducedWord out = word_inverse(x);
  out.append_word(word_inverse(y));
  out.append_word(x);
  out.append_word(y);
  return out;
}

int word_length(const ReducedWord& w) {
  int n = 0;
  for (const auto& s : w.syllables())
    if (std::holds_alternative<FamilyBlock>(s)) ++n;
  return n;
}

bool ExponentVector::all_zero() const {
  if (eps_a != 0) return false;
  for (const auto& fam : eps_b)
    for (int x : fam)
      if (x != 0) return false;
  return true;
}

ExponentVector exponents(const GroupDatum& d, const ReducedWord& w) {
  ExponentVector ev;
  ev.eps_b.resize(d.p());
  for (int j = 1; j <= d.p(); ++j) ev.eps_b[j - 1].assign(d.r(j), 0);
  for (const auto& s : w.syllables()) {
    if (std::holds_alternative<uint8_t>(s)) {
      ev.eps_a = mod_p(ev.eps_a + std::get<uint8_t>(s), d.p());
    } else {
      const auto& b = std::get<FamilyBlock>(s);
      for (size_t i = 0; i < b.beta.size(); ++i)
        ev.eps_b[b.family - 1][i] = mod_p(ev.eps_b[b.family - 1][i] + b.beta[i], d.p());
    }
  }
  return ev;
}

SectionSplit section_split(const GroupDatum& d, const ReducedWord& w) {
  const int p = d.p();
  SectionSplit out;
  out.sections.assign(p, ReducedWord(p));

  // Rewrite w a^{-eps} as a product of a-conjugated blocks: each block C with
  // the a-exponent sum `cum` read before it becomes C^{a^{-cum}}.
  int cum = 0;
  for (const auto& s : w.syllables()) {
    if (std::holds_alternative<uint8_t>(s)) {
      cum = mod_p(cum + std::get<uint8_t>(s), p);
      continue;
    }
    const auto& blk = std::get<FamilyBlock>(s);
    const int shift = mod_p(-cum, p);
    const int sigma = d.spine(blk.family);
    const int landing = cyc(sigma + shift, p);
    for (int c = 1; c <= p; ++c) {
      if (c == landing) {
        out.sections[c - 1].append_block(blk.family, blk.beta);
        continue;
      }
      // Coordinate c sees the off-spine entry of the block at c - shift.
      int t = mod_p((c - shift) - sigma, p);  // 1..p-1
      long long e = 0;
      for (size_t i = 0; i < blk.beta.size(); ++i)
        e += static_cast<long long>(blk.beta[i]) * d.vec(blk.family, static_cast<int>(i) + 1)[t - 1];
      out.sections[c - 1].append_a(static_cast<int>(e % p));
    }
  }
  out.root_exponent = cum;
  return out;
}

ReducedWord word_section(const GroupDatum& d, const ReducedWord& w, int c) {
  return section_split(d, w).sections[c - 1];
}

Portrait word_portrait(const GroupDatum& d, const ReducedWord& w, int depth) {
  Portrait out = Portrait::identity(d.p(), depth);
  for (const auto& s : w.syllables()) {
    if (std::holds_alternative<uint8_t>(s))
      out = compose(out, rooted_power_portrait(d.p(), depth, std::get<uint8_t>(s)));
    else {
      const auto& b = std::get<FamilyBlock>(s);
      out = compose(out, block_portrait(d, b.family, b.beta, depth));
    }
  }
  return out;
}

namespace {

struct IdentityMemo {
  std::mutex mu;
  std::unordered_map<std::string, bool> map;
};

IdentityMemo& identity_memo() {
  static IdentityMemo memo;
  return memo;
}

bool is_identity_impl(const GroupDatum& d, const ReducedWord& w, const std::string& datum_key) {
  if (w.empty()) return true;
  ExponentVector ev = exponents(d, w);
  if (ev.eps_a != 0) return false;
  int len = word_length(w);
  if (len == 0) return true;   // pure a-power with zero exponent sum reduces to empty
  if (len == 1) return false;  // conjugate of a nonzero block

  const std::string key = datum_key + '#' + w.key();
  {
    std::lock_guard<std::mutex> lock(identity_memo().mu);
    auto it = identity_memo().map.find(key);
    if (it != identity_memo().map.end()) return it->second;
  }
  bool result = true;
  SectionSplit split = section_split(d, w);
  for (const auto& g : split.sections)
    if (!is_identity_impl(d, g, datum_key)) {
      result = false;
      break;
    }
  {
    std::lock_guard<std::mutex> lock(identity_memo().mu);
    identity_memo().map.emplace(key, result);
  }
  return result;
}

std::optional<int> order_exp_impl(const GroupDatum& d, const ReducedWord& w,
                                  const std::string& datum_key, int& budget) {
  if (budget-- <= 0) return std::nullopt;
  if (is_identity_impl(d, w, datum_key)) return 0;
  ExponentVector ev = exponents(d, w);
  if (ev.eps_a != 0) {
    // ord(g) = p * ord(g^p); the sections of g^p are cyclic rotations of one
    // another, hence share a common order equal to ord(g^p).
    ReducedWord wp = word_pow(w, d.p());
    if (is_identity_impl(d, wp, datum_key)) return 1;
    ReducedWord s = section_split(d, wp).sections[0];
    auto sub = order_exp_impl(d, s, datum_key, budget);
    if (!sub) return std::nullopt;
    return 1 + *sub;
  }
  if (word_length(w) <= 1) return 1;  // nontrivial conjugate of a block, order p
  SectionSplit split = section_split(d, w);
  int worst = 0;
  for (const auto& g : split.sections) {
    auto sub = order_exp_impl(d, g, datum_key, budget);
    if (!sub) return std::nullopt;
    worst = std::max(worst, *sub);
  }
  return worst;
}

}  // namespace

bool is_identity(const GroupDatum& d, const ReducedWord& w) {
  return is_identity_impl(d, w, d.canonical_string());
}

std::optional<uint64_t> element_order(const GroupDatum& d, const ReducedWord& w, int cap) {
  if (cap <= 0) throw std::invalid_argument("element_order: cap must be positive");
  int budget = cap;
  auto e = order_exp_impl(d, w, d.canonical_string(), budget);
  if (!e) return std::nullopt;
  uint64_t order = 1;
  for (int i = 0; i < *e; ++i) order *= static_cast<uint64_t>(d.p());
  return order;
}

// --- word grammar ------------------------------------------------------------

namespace {

struct Parser {
  const GroupDatum& d;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("word parse error at offset " + std::to_string(pos) + ": " + why);
  }

  int parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stoi(text.substr(start, pos - start));
  }

  ReducedWord parse_expr(char stop1 = '\0', char stop2 = '\0') {
    ReducedWord out(d.p());
    while (!done()) {
      char c = peek();
      if (c == stop1 || c == stop2) break;
      out.append_word(parse_item());
    }
    return out;
  }

  ReducedWord parse_item() {
    ReducedWord base = parse_atom();
    while (true) {
      skip_ws();
      if (pos >= text.size() || text[pos] != '^') break;
      ++pos;
      skip_ws();
      if (pos < text.size() &&
          (isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-' || text[pos] == '+')) {
        base = word_pow(base, parse_int());
      } else {
        base = word_conj(base, parse_atom());
      }
    }
    return base;
  }

  ReducedWord parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("expected atom");
    char c = text[pos];
    if (c == '[') {
      ++pos;
      ReducedWord x = parse_expr(',');
      if (peek() != ',') fail("expected ',' in commutator");
      ++pos;
      ReducedWord y = parse_expr(']');
      if (peek() != ']') fail("expected ']'");
      ++pos;
      return word_comm(x, y);
    }
    if (c == '(') {
      ++pos;
      ReducedWord w = parse_expr(')');
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return w;
    }
    if (c == 'a') {
      ++pos;
      return gen_word(d, kGenA);
    }
    if (c == 'b' || c == 'c') {
      ++pos;
      if (c == 'b' && pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        int family = std::stoi(text.substr(start, pos - start));
        if (pos >= text.size() || text[pos] != '_') fail("expected '_' in generator token");
        ++pos;
        size_t istart = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (istart == pos) fail("expected generator index");
        int index = std::stoi(text.substr(istart, pos - istart));
        Gen g{family, index};
        if (!d.has_generator(g)) fail("unknown generator b" + std::to_string(family) + "_" +
                                      std::to_string(index));
        return gen_word(d, g);
      }
      int family = c == 'b' ? d.designated_family() : d.second_family();
      if (family == 0) fail("datum has no family for alias 'c'");
      return gen_word(d, Gen{family, 1});
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

ReducedWord parse_word(const GroupDatum& d, const std::string& text) {
  Parser parser{d, text};
  ReducedWord w = parser.parse_expr();
  if (!parser.done()) parser.fail("trailing input");
  return w;
}

}  // namespace gmes
