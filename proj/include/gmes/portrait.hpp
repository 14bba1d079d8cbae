#pragma once

#include <cstdint>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/vertex.hpp"

namespace gmes {

// Depth-n truncation of a tree automorphism inside the Sylow pro-p subgroup:
// one label in Z/pZ per vertex of level < n, giving the power of the p-cycle
// the automorphism applies to that vertex's children.  The action follows the
// right-action convention (omega x)^f = omega^f x^{f(omega)}, and products
// read left to right: u^{fg} = (u^f)^g.
//
// Portraits are immutable values; all operations return fresh portraits and
// never deepen their inputs.
class Portrait {
 public:
  Portrait(int p, int depth);  // identity portrait
  static Portrait identity(int p, int depth) { return Portrait(p, depth); }

  int p() const { return p_; }
  int depth() const { return depth_; }

  uint8_t label(const VertexAddress& u) const;
  uint8_t label_at(int level, size_t index) const { return labels_[offset(level) + index]; }
  void set_label(const VertexAddress& u, int value);
  void set_label_at(int level, size_t index, int value) {
    labels_[offset(level) + index] = static_cast<uint8_t>(value);
  }

  size_t level_size(int level) const;  // p^level
  bool is_identity() const;

  bool operator==(const Portrait& o) const {
    return p_ == o.p_ && depth_ == o.depth_ && labels_ == o.labels_;
  }
  bool operator!=(const Portrait& o) const { return !(*this == o); }

 private:
  size_t offset(int level) const { return offsets_[level]; }
  int p_;
  int depth_;
  std::vector<size_t> offsets_;  // offsets_[l] = (p^l - 1)/(p - 1)
  std::vector<uint8_t> labels_;

  friend Portrait compose(const Portrait&, const Portrait&);
  friend Portrait invert(const Portrait&);
  friend Portrait section(const Portrait&, const VertexAddress&);
  friend Portrait truncate(const Portrait&, int);
};

// Depth-n truncation of a generator: `a` or b^(j)_i of the datum.
Portrait generator_portrait(const GroupDatum& d, const Gen& g, int depth);

// Portrait of a^k.
Portrait rooted_power_portrait(int p, int depth, int k);

// Portrait of b^(j)_1^{beta_1} ... b^(j)_{r_j}^{beta_r}, a single family block.
Portrait block_portrait(const GroupDatum& d, int family, const std::vector<uint8_t>& beta,
                        int depth);

// (fg)(omega) = f(omega) + g(omega^f); requires equal p and depth.
Portrait compose(const Portrait& f, const Portrait& g);

Portrait invert(const Portrait& f);

// Image of a vertex; requires |u| <= depth(f).
VertexAddress act(const Portrait& f, const VertexAddress& u);

// Restriction of f to the subtree at u; requires that f fixes u.
Portrait section(const Portrait& f, const VertexAddress& u);

Portrait truncate(const Portrait& f, int depth);

// psi_1-inverse followed by a root power: the portrait whose first-level
// sections are the given portraits (all of equal p and depth) and whose root
// label is root_exponent.
Portrait assemble(const std::vector<Portrait>& sections, int root_exponent);

}  // namespace gmes
