#include "gmes/corpus.hpp"

#include <random>

namespace gmes {

namespace {

ReducedWord random_short_word(const GroupDatum& d, std::mt19937_64& rng, int syllables) {
  std::vector<Gen> gens = d.generators();
  ReducedWord w(d.p());
  for (int i = 0; i < syllables; ++i) {
    const Gen& g = gens[rng() % gens.size()];
    int e = 1 + static_cast<int>(rng() % static_cast<uint64_t>(d.p() - 1));
    w.append_word(gen_word(d, g, e));
  }
  return w;
}

}  // namespace

std::vector<ReducedWord> make_corpus(const GroupDatum& d, const CorpusOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<ReducedWord> out;
  int attempts = 0;
  const int max_attempts = opt.size * 200 + 1000;
  while (static_cast<int>(out.size()) < opt.size && attempts++ < max_attempts) {
    ReducedWord w(d.p());
    if (opt.in_derived) {
      // Product of up to four commutators of short words, optionally
      // conjugated: stays in the exponent kernel by construction.
      int parts = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < parts; ++i) {
        ReducedWord x = random_short_word(d, rng, 1 + static_cast<int>(rng() % 2));
        ReducedWord y = random_short_word(d, rng, 1 + static_cast<int>(rng() % 2));
        ReducedWord c = word_comm(x, y);
        if (rng() % 2) c = word_conj(c, random_short_word(d, rng, 1));
        w.append_word(c);
      }
    } else {
      int parts = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < parts; ++i) {
        switch (rng() % 3) {
          case 0:
            w.append_word(random_short_word(d, rng, 1 + static_cast<int>(rng() % 3)));
            break;
          case 1: {
            ReducedWord x = random_short_word(d, rng, 1 + static_cast<int>(rng() % 2));
            ReducedWord y = random_short_word(d, rng, 1 + static_cast<int>(rng() % 2));
            w.append_word(word_comm(x, y));
            break;
          }
          default: {
            ReducedWord x = random_short_word(d, rng, 1 + static_cast<int>(rng() % 2));
            w.append_word(word_conj(x, random_short_word(d, rng, 1)));
            break;
          }
        }
      }
      if (opt.with_identities && rng() % 4 == 0) {
        // Multiply by u u^{-1} for a nontrivial-looking identity component,
        // or replace the word entirely to guarantee identities in the corpus.
        ReducedWord u = random_short_word(d, rng, 2);
        if (rng() % 2) {
          w = word_mul(u, word_inverse(u));
        } else {
          w.append_word(u);
          w.append_word(word_inverse(u));
        }
      }
    }
    if (word_length(w) > opt.max_length) continue;
    if (opt.in_derived && !exponents(d, w).all_zero()) continue;  // invariant guard
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace gmes
