#pragma once

#include <cstdint>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/words.hpp"

namespace gmes {

struct CorpusOptions {
  uint64_t seed = 1;
  int size = 0;         // number of words
  int max_length = 8;   // expression-level length cap
  bool in_derived = false;  // only exponent-kernel words (commutator products)
  bool with_identities = false;  // sprinkle in w w^{-1} constructions
};

// Deterministic pseudo-random word corpus: products of generator commutators
// and conjugates.  The same options always produce the same corpus.
std::vector<ReducedWord> make_corpus(const GroupDatum& d, const CorpusOptions& opt);

}  // namespace gmes
