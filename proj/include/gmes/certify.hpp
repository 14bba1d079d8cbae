#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/portrait.hpp"
#include "gmes/vertex.hpp"
#include "gmes/words.hpp"

namespace gmes {

struct CertCheck {
  std::string description;
  std::vector<std::string> witnesses;  // words or vertices, re-checkable inputs
  int depth = 0;
  bool pass = false;
};

struct Certificate {
  std::string kind;  // gamma3-branch | derived-branch | csp-witness | dagger-witness
  std::vector<CertCheck> checks;
  bool overall = false;

  void add(CertCheck c) {
    overall = checks.empty() ? c.pass : (overall && c.pass);
    checks.push_back(std::move(c));
  }
};

// Finite-depth identity certificate behind "regular branch over gamma_3(G)":
// instantiates the commutator identities of the three proof cases applicable
// to the datum and verifies each as a portrait equality at the given depth.
Certificate gamma3_branch_certificate(const GroupDatum& d, int depth);

// Finite-depth identity certificate behind "regular branch over G'": the
// cross-family commutator identities; within-family cases reduce to the GGS
// sub-data, recorded as hypothesis checks.
Certificate derived_branch_certificate(const GroupDatum& d, int depth);

// The recursively built witness t_n with t_n = b mod G' and t_n = c mod
// Stab(n), refuting the congruence subgroup property.
struct CspWitness {
  int n = 0;
  Gen b, c;        // same defining vector, families of b and c differ
  Portrait t_n;    // depth-m portrait
  CspWitness() : t_n(3, 0) {}
};

std::pair<CspWitness, Certificate> csp_witness(const GroupDatum& d, int n, int quotient_level);

// Witness for condition (dagger) on a GGS sub-datum: an element fixing every
// prefix of uprime while moving v.  The sub-datum is the GGS group generated
// by `a` and one directed generator with defining vector e (all entries
// nonzero, nonconstant, p >= 5).
std::pair<ReducedWord, Certificate> dagger_witness(int p, const std::vector<int>& e,
                                                   const VertexAddress& u,
                                                   const VertexAddress& uprime,
                                                   const VertexAddress& v);

// Convenience: run dagger_witness on the defining vector of one generator of
// the datum (0 = designated family, first generator).
std::pair<ReducedWord, Certificate> dagger_witness(const GroupDatum& d, const VertexAddress& u,
                                                   const VertexAddress& uprime,
                                                   const VertexAddress& v, int family = 0,
                                                   int index = 1);

}  // namespace gmes
