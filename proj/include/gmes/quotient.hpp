#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/portrait.hpp"
#include "gmes/words.hpp"

namespace gmes {

// Permutation of {0,...,n-1}; products read left to right, matching the word
// convention u^{fg} = (u^f)^g.
class Perm {
 public:
  Perm() = default;
  explicit Perm(size_t n);  // identity
  explicit Perm(std::vector<uint32_t> images) : img_(std::move(images)) {}

  size_t degree() const { return img_.size(); }
  uint32_t operator[](size_t i) const { return img_[i]; }
  bool is_identity() const;

  friend Perm perm_mul(const Perm& f, const Perm& g);  // apply f, then g
  friend Perm perm_inverse(const Perm& f);

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }

  const std::vector<uint32_t>& images() const { return img_; }

 private:
  std::vector<uint32_t> img_;
};

Perm perm_mul(const Perm& f, const Perm& g);
Perm perm_inverse(const Perm& f);

// Stabilizer chain (deterministic Schreier-Sims) for a p-subgroup of
// Sym(p^m).  Orders are powers of p and are stored as the exponent.
class StabChain {
 public:
  StabChain(size_t degree, int p);

  void extend(const Perm& g);  // add a generator and restore closure
  bool contains(const Perm& g) const;
  // Strips g through the chain; returns the remainder (identity iff member).
  Perm sift(const Perm& g) const;

  int order_exponent() const;  // group order = p^order_exponent
  size_t degree() const { return degree_; }
  const std::vector<Perm>& strong_generators() const { return strong_; }

  // Deterministic self-test: sifts pseudo-random products of strong
  // generators and transversal elements; returns false on any failure.
  bool self_test(uint64_t seed, int rounds) const;

 private:
  struct Level {
    uint32_t base;
    std::vector<Perm> gens;                 // generators of this stabilizer
    std::vector<int64_t> orbit_pos;         // point -> index in orbit, -1 if outside
    std::vector<uint32_t> orbit;            // orbit of base
    std::vector<Perm> transversal;          // u with base^u = orbit[k]
  };

  Perm strip(const Perm& g, size_t from, size_t* drop) const;
  void rebuild_orbit(size_t lv);
  void insert_generator(size_t lv, const Perm& h);
  void close(size_t lv);

  size_t degree_;
  int p_;
  std::vector<Level> levels_;
  std::vector<Perm> strong_;
};

// The finite congruence quotient G/Stab_G(m) as a permutation group on the
// p^m leaves of the truncated tree, in lexicographic order.
class PermQuotient {
 public:
  PermQuotient(GroupDatum d, int m, size_t max_points = 1u << 15);

  const GroupDatum& datum() const { return datum_; }
  int level() const { return m_; }
  size_t points() const { return npoints_; }
  int order_exponent() const { return chain_->order_exponent(); }

  const Perm& generator(size_t i) const { return gens_[i]; }
  size_t num_generators() const { return gens_.size(); }

  Perm image(const ReducedWord& w) const;
  Perm image(const Portrait& f) const;  // needs depth >= m
  bool contains(const Perm& g) const { return chain_->contains(g); }

  const StabChain& chain() const { return *chain_; }

 private:
  GroupDatum datum_;
  int m_;
  size_t npoints_;
  std::vector<Perm> gens_;  // parallel to datum_.generators()
  std::unique_ptr<StabChain> chain_;
};

// Permutation induced on the level-m leaves by a portrait of depth >= m.
Perm leaf_permutation(const Portrait& f, int m);

// Normal closure of the generator commutators: the derived subgroup of the
// finite quotient, with its own chain for membership queries.
class DerivedSubgroup {
 public:
  explicit DerivedSubgroup(const PermQuotient& q);

  int order_exponent() const { return chain_->order_exponent(); }
  bool contains(const Perm& g) const { return chain_->contains(g); }

 private:
  std::unique_ptr<StabChain> chain_;
};

// p-rank of the elementary abelian quotient q/q' (the abelianisation of the
// finite quotient; generators have order p, so q/q' is elementary abelian).
int abelian_rank(const PermQuotient& q);
int abelian_rank(const PermQuotient& q, const DerivedSubgroup& derived);

}  // namespace gmes
