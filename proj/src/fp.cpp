#include "gmes/fp.hpp"

#include <stdexcept>

namespace gmes {

int inv_mod_p(int x, int p) {
  x = mod_p(x, p);
  if (x == 0) throw std::invalid_argument("inv_mod_p: zero has no inverse");
  // Fermat: x^(p-2) mod p.
  long long acc = 1, base = x;
  int e = p - 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(acc);
}

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

}  // namespace gmes
