#pragma once

#include <cstdint>

namespace gmes {

// Residue arithmetic mod a small odd prime p.  Values are kept in 0..p-1.

inline int mod_p(long long x, int p) {
  long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

// Multiplicative inverse of x mod p, x not divisible by p.
int inv_mod_p(int x, int p);

bool is_odd_prime(int p);

}  // namespace gmes
