#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/portrait.hpp"

namespace gmes {

// One maximal run of commuting directed generators from a single family:
// b^(family)_1^{beta_1} ... b^(family)_r^{beta_r} with beta != 0.
struct FamilyBlock {
  int family = 0;
  std::vector<uint8_t> beta;

  bool operator==(const FamilyBlock& o) const { return family == o.family && beta == o.beta; }
};

// Syllable of a free-product normal form: a nonzero power of the rooted
// generator, or a nonzero family block.
using Syllable = std::variant<uint8_t, FamilyBlock>;  // uint8_t = a-exponent in 1..p-1

// The unique reduced form of a free-product word: alternating a-powers and
// family blocks, where no two a-powers are adjacent, stored a-powers are
// nonzero, blocks are nonzero, and adjacent blocks belong to distinct
// families.  Interior segments between two blocks therefore always carry a
// nonzero a-power or a family change.
class ReducedWord {
 public:
  explicit ReducedWord(int p) : p_(p) {}

  int p() const { return p_; }
  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }

  // Appends one syllable and restores the invariant (cascading merges).
  void append_a(int exponent);
  void append_block(int family, std::vector<uint8_t> beta);
  void append(const Syllable& s);
  void append_word(const ReducedWord& w);

  bool operator==(const ReducedWord& o) const { return p_ == o.p_ && syl_ == o.syl_; }
  bool operator!=(const ReducedWord& o) const { return !(*this == o); }

  std::string str(const GroupDatum& d) const;  // CLI token form
  std::string key() const;                     // canonical memo key

 private:
  int p_;
  std::vector<Syllable> syl_;
};

// --- construction -----------------------------------------------------------

ReducedWord reduce(const GroupDatum& d, const std::vector<std::pair<Gen, int>>& raw);

ReducedWord word_mul(const ReducedWord& u, const ReducedWord& v);
ReducedWord word_inverse(const ReducedWord& w);
ReducedWord word_pow(const ReducedWord& w, int k);
// y^-1 x y
ReducedWord word_conj(const ReducedWord& x, const ReducedWord& y);
// x^-1 y^-1 x y
ReducedWord word_comm(const ReducedWord& x, const ReducedWord& y);

ReducedWord gen_word(const GroupDatum& d, const Gen& g, int exponent = 1);

// Parses the CLI word grammar: whitespace-separated items, each a generator
// token `a` or `b<j>_<i>`, optionally raised via `^k` (integer) or `^g`
// (conjugation by another item), plus `[x,y]` for commutators and `(w)` for
// grouping.  `b` and `c` abbreviate the first generators of the two lowest
// nonempty families.
ReducedWord parse_word(const GroupDatum& d, const std::string& text);

// --- calculus ---------------------------------------------------------------

// Expression-level length: the number of family blocks of the reduced form.
int word_length(const ReducedWord& w);

struct ExponentVector {
  int eps_a = 0;
  std::vector<std::vector<int>> eps_b;  // eps_b[j-1][i-1] for b^(j)_i

  bool all_zero() const;
  bool operator==(const ExponentVector& o) const { return eps_a == o.eps_a && eps_b == o.eps_b; }
};

ExponentVector exponents(const GroupDatum& d, const ReducedWord& w);

// First-level decomposition g = psi_1^{-1}(g_1,...,g_p) a^{eps_a(g)}.  Each
// block of the word lands in exactly one coordinate; the sum of the section
// lengths never exceeds the length of the input.
struct SectionSplit {
  std::vector<ReducedWord> sections;  // size p, coordinate 1..p at index 0..p-1
  int root_exponent = 0;
};

SectionSplit section_split(const GroupDatum& d, const ReducedWord& w);

// Convenience: section at 1-based coordinate c.
ReducedWord word_section(const GroupDatum& d, const ReducedWord& w, int c);

// Depth-n truncated portrait of the word.
Portrait word_portrait(const GroupDatum& d, const ReducedWord& w, int depth);

// Word problem for the group defined by d.  Recursion over first-level
// sections; the length of depth-two sections strictly drops while it exceeds
// one, so the recursion bottoms out.  Results are memoized per datum.
bool is_identity(const GroupDatum& d, const ReducedWord& w);

// Exact order of the (torsion) element, computed by the order-reduction
// recursion: powers of the rooted part drop to sections of p-th powers.  The
// recursion is capped; std::nullopt means "unknown within cap", never a wrong
// value.
std::optional<uint64_t> element_order(const GroupDatum& d, const ReducedWord& w,
                                      int cap = 4096);

}  // namespace gmes
