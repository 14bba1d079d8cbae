#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmes/datum.hpp"
#include "gmes/portrait.hpp"
#include "gmes/words.hpp"

namespace gmes {

// Dense square matrix over F_p.  The truncated tree enveloping algebra at
// level n acts on the free F_p-space spanned by the p^n level-n vertices in
// lexicographic order, so all sizes here are p^n x p^n.
class FpMat {
 public:
  FpMat() = default;
  FpMat(int p, size_t n) : p_(p), n_(n), a_(n * n, 0) {}
  static FpMat identity(int p, size_t n);

  int p() const { return p_; }
  size_t dim() const { return n_; }

  uint8_t at(size_t r, size_t c) const { return a_[r * n_ + c]; }
  void set(size_t r, size_t c, int v);
  void add_at(size_t r, size_t c, int v);

  bool is_zero() const;
  bool operator==(const FpMat& o) const { return p_ == o.p_ && n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const FpMat& o) const { return !(*this == o); }

  FpMat operator+(const FpMat& o) const;
  FpMat operator-(const FpMat& o) const;
  FpMat operator*(const FpMat& o) const;
  FpMat scaled(int c) const;
  FpMat pow(uint64_t k) const;

  // Block of size `bs` at block position (br, bc).
  FpMat block(size_t br, size_t bc, size_t bs) const;
  void set_block(size_t br, size_t bc, const FpMat& b);

 private:
  int p_ = 0;
  size_t n_ = 0;
  std::vector<uint8_t> a_;
};

// Element of the level-n truncation of the tree enveloping algebra.
struct AlgebraElement {
  int p = 0;
  int level = 0;
  FpMat m;
};

// chi: the linear action on the level-n vertex basis; group elements map to
// permutation matrices with entry(u, u^g) = 1, so chi(gh) = chi(g) chi(h).
AlgebraElement chi(const GroupDatum& d, const ReducedWord& w, int level);
AlgebraElement chi(const Portrait& f, int level);

// a_* = (a-1)^{p-1} = 1 + a + ... + a^{p-1}, and likewise for a directed
// generator; both square to zero.
AlgebraElement a_star(const GroupDatum& d, int level);
AlgebraElement b_star(const GroupDatum& d, const Gen& g, int level);

// v = D_0 + D_1 chi(a) + ... + D_{p-1} chi(a)^{p-1} with block-diagonal D_i;
// blocks[i][j] is the j-th diagonal block of D_i at level n-1.
struct WreathDecomposition {
  int p = 0;
  int level = 0;  // level of the decomposed element
  std::vector<std::vector<FpMat>> blocks;
};

WreathDecomposition wreath_decompose(const AlgebraElement& v);
AlgebraElement wreath_reassemble(const GroupDatum& d, const WreathDecomposition& w);

// Block-diagonal embedding (v, ..., v) of a level-(n-1) element, and its
// iterate v^{[k]}.
AlgebraElement diagonal_embed(const AlgebraElement& v, int copies_p);
AlgebraElement iterated_embed(const AlgebraElement& v, int copies_p, int k);

// The p x p grid of level-(n-1) blocks of v; matrix multiplication of grids
// matches multiplication of the embedded elements.
std::vector<std::vector<FpMat>> phi_embed(const AlgebraElement& v);

// Recursive depth function: 0 iff every D_i of the wreath decomposition lies
// in the span of a single family's block images; otherwise one more than the
// deepest recursing block.
int depth(const GroupDatum& d, const AlgebraElement& v, int max_family_rank = 3);

// Least k <= bound with v^k = 0, or nullopt.  For a nilpotent matrix the
// index never exceeds the dimension, so bound = dim + 1 decides exactly.
std::optional<int> nilpotency_index(const AlgebraElement& v, int bound = -1);

struct CheckLine {
  std::string name;
  bool pass = false;
  bool skipped = false;
};

struct AlgebraReport {
  std::vector<CheckLine> lines;
  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.skipped && !l.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, bool skipped = false) {
    lines.push_back(CheckLine{std::move(name), pass, skipped});
  }
};

// Verifies the closed form of the powers of X = b_* a_* for j = 1..J at the
// given level: X^{2j-1} and X^{2j} against the block assemblies with
// Y = a_* b_* and N = #{nonzero defining entries}.  Reports Skipped when
// N = 0 mod p.
AlgebraReport x_power_check(const GroupDatum& d, const Gen& g, int level, int max_j);

// Verifies the inverse structure of eta = 1 + b a_* at the truncation: the
// Neumann series inverse, the block-diagonal rho with eta^{-1} = 1 - rho a_*,
// the defining identity rho (b + a_*)^{[1]} = b, the sigma substitutions, the
// recursive rho equation, and the corner entries of the embedded matrix
// display.  Requires a generalised Gupta-Sidki generator.
AlgebraReport rho_identity_check(const GroupDatum& d, int level);

// Diagnostic series depth(rho) per level in 2..max_level.
std::vector<int> rho_depth_series(const GroupDatum& d, int max_level);

}  // namespace gmes
