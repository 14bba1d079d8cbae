#pragma once

#include "gmes/datum.hpp"

namespace gmes::testing {

// Extended Gupta-Sidki datum of Pervova: p = 3, vector (1,2) in families 1
// and 3.
inline GroupDatum pervova() {
  return GroupDatum::validate(3, {{{1, 2}}, {}, {{1, 2}}});
}

// Gupta-Sidki 3-group: p = 3, single family with vector (1,2).
inline GroupDatum gs3() { return GroupDatum::validate(3, {{{1, 2}}, {}, {}}); }

// Generalised Gupta-Sidki group at p = 5 with vector (1,2,4,3).
inline GroupDatum gs5() { return GroupDatum::validate(5, {{{1, 2, 4, 3}}, {}, {}, {}, {}}); }

// Two-family p = 5 datum exercising the exceptional branch: family 1 holds
// (1,2,4,3), family 2 holds (1,0,0,0) and (1,0,0,1).
inline GroupDatum p5pair() {
  return GroupDatum::validate(5, {{{1, 2, 4, 3}}, {{1, 0, 0, 0}, {1, 0, 0, 1}}, {}, {}, {}});
}

// GGS p = 5 datum with a ratio break: (1,1,2,1).
inline GroupDatum ggs5_break() {
  return GroupDatum::validate(5, {{{1, 1, 2, 1}}, {}, {}, {}, {}});
}

}  // namespace gmes::testing
