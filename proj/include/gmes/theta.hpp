#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/words.hpp"

namespace gmes {

// Context for the length-reducing maps on the derived subgroup.  They are
// defined relative to a normalized directed generator b1 in family 1; data
// whose designated family sits elsewhere are relabelled by a family swap
// before use (the calculus is identical up to renaming).
class ThetaContext {
 public:
  // family = 0 picks the designated (lowest nonempty) family.
  ThetaContext(const GroupDatum& d, int family = 0);

  const GroupDatum& working_datum() const { return work_; }
  int n() const { return n_; }
  int theta_family() const { return family_; }

  // Translates words between the caller's family labelling and the working
  // (swapped) one.  An involution.
  ReducedWord to_working(const ReducedWord& w) const;
  ReducedWord from_working(const ReducedWord& w) const { return to_working(w); }

 private:
  GroupDatum work_;
  int family_;  // the caller's family that plays family 1
  int n_;
};

// Theta_1(z) = [a, z_1^{-1}]; requires z in the exponent kernel.
ReducedWord theta1(const GroupDatum& d, const ReducedWord& z, int family = 0);
// Theta_2(z) = [a, z_{n+1} ... z_p]; requires n >= 2.
ReducedWord theta2(const GroupDatum& d, const ReducedWord& z, int family = 0);

struct ThetaStep {
  std::string op;  // "theta1" or "theta2"
  ReducedWord input;
  ReducedWord output;
  int length_before = 0;
  int length_after = 0;
};

struct ThetaTrace {
  std::vector<ThetaStep> steps;
  std::optional<int> terminal_length;  // 0 or 2; nullopt = aborted
  std::string abort_reason;

  bool terminated() const { return terminal_length.has_value(); }
};

// Drives z down to length 0 or 2 by the proof schedule (theta1 when the first
// section is short, theta2 when the tail product is short, theta2 twice in
// the balanced case), with a depth-3 search over {theta1, theta2} compositions
// as fallback.  Never reports a wrong terminal: failure to shrink within
// max_steps yields an aborted trace.
ThetaTrace reduce_to_terminal(const GroupDatum& d, const ReducedWord& z, int max_steps,
                              int family = 0);

struct ThetaDerivationReport {
  bool theta1_identity = false;  // phi_p(b1^{(az)^{-1}}) = a^{z_1^{-1}}
  bool theta2_identity = false;  // phi_p((b1^k)^{(az)^{p-n}}) = a^{z_{n+1}...z_p}
  int depth = 0;

  bool all_pass() const { return theta1_identity && theta2_identity; }
};

// Verifies the two defining projection identities behind the theta maps as
// portrait equalities at the given depth.
ThetaDerivationReport check_theta_derivations(const GroupDatum& d, const ReducedWord& z,
                                              int depth, int family = 0);

}  // namespace gmes
