#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gmes {

// Identifies a generator of a group: the rooted generator `a` (family == 0)
// or the directed generator b^(family)_index with 1-based family and index.
struct Gen {
  int family = 0;
  int index = 0;

  bool is_a() const { return family == 0; }
  bool operator==(const Gen& o) const { return family == o.family && index == o.index; }
};

inline constexpr Gen kGenA{0, 0};

// The defining datum of a generalised multi-edge spinal group: an odd prime p
// and, for each of the p families, a list of defining vectors in (Z/pZ)^(p-1).
// Family j directs its generators along the path through vertex p-j+1; the
// vectors of one family are linearly independent over Z/pZ.
class GroupDatum {
 public:
  // Validates and normalises entries mod p.  Throws std::invalid_argument on
  // a bad prime, out-of-range family sizes, an empty datum or a dependent
  // family.
  static GroupDatum validate(int p, std::vector<std::vector<std::vector<int>>> families);

  int p() const { return p_; }
  // Number of vectors in family j (1-based).
  int r(int family) const { return static_cast<int>(fam_[family - 1].size()); }
  const std::vector<uint8_t>& vec(int family, int index) const {
    return fam_[family - 1][index - 1];
  }
  // Spine coordinate of family j: the directed path runs through p-j+1.
  int spine(int family) const { return p_ - family + 1; }

  // Lowest 1-based family index with r != 0.
  int designated_family() const;
  // Second lowest nonempty family, or 0 if there is only one.
  int second_family() const;

  // All generators: `a` first, then b^(j)_i in family-major order.
  std::vector<Gen> generators() const;
  bool has_generator(const Gen& g) const;

  // Stable text form, used for fingerprints and memo keys.
  std::string canonical_string() const;

  std::string gen_name(const Gen& g) const;

  bool operator==(const GroupDatum& o) const { return p_ == o.p_ && fam_ == o.fam_; }

  // Returns a copy with the contents of families j1 and j2 exchanged.
  GroupDatum with_families_swapped(int j1, int j2) const;
  // Returns a copy with family j replaced by the given vectors (must stay
  // independent).
  GroupDatum with_family(int family, std::vector<std::vector<int>> vectors) const;

 private:
  GroupDatum() = default;
  int p_ = 0;
  // fam_[j-1] holds the r_j defining vectors of family j, entries in 0..p-1.
  std::vector<std::vector<std::vector<uint8_t>>> fam_;
};

// Flags of Theorem-level hypotheses that are decidable from the datum alone.
struct Classification {
  bool standard_form_valid = false;
  bool in_c_reg = false;                  // every nonempty family has a non-constant vector
  bool torsion_criterion = false;         // every defining vector sums to 0 mod p
  bool condition_i_nonsymmetric = false;  // every nonempty family has a non-symmetric vector
  bool condition_ii_shared_vector = false;  // equal vectors in two distinct families
  bool contains_generalised_gs = false;   // some vector is a permutation of {1,...,p-1}
  int n = 0;  // max{ j : e_{1,j} != 0 } for the designated first vector
};

Classification classify(const GroupDatum& d);

// Replaces the designated generator of `family` (0 = designated family) by a
// power and reorders the family so that its first vector starts with 1.
// Throws if the family's first column is zero, which no basis change fixes.
GroupDatum normalize_first_generator(const GroupDatum& d, int family = 0);

}  // namespace gmes
