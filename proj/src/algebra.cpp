#include "gmes/algebra.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "gmes/fp.hpp"

namespace gmes {

FpMat FpMat::identity(int p, size_t n) {
  FpMat m(p, n);
  for (size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

void FpMat::set(size_t r, size_t c, int v) { a_[r * n_ + c] = static_cast<uint8_t>(mod_p(v, p_)); }

void FpMat::add_at(size_t r, size_t c, int v) {
  a_[r * n_ + c] = static_cast<uint8_t>(mod_p(a_[r * n_ + c] + v, p_));
}

bool FpMat::is_zero() const {
  for (uint8_t x : a_)
    if (x != 0) return false;
  return true;
}

FpMat FpMat::operator+(const FpMat& o) const {
  if (n_ != o.n_ || p_ != o.p_) throw std::invalid_argument("FpMat: size mismatch");
  FpMat out(p_, n_);
  for (size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = static_cast<uint8_t>((a_[i] + o.a_[i]) % p_);
  return out;
}

FpMat FpMat::operator-(const FpMat& o) const {
  if (n_ != o.n_ || p_ != o.p_) throw std::invalid_argument("FpMat: size mismatch");
  FpMat out(p_, n_);
  for (size_t i = 0; i < a_.size(); ++i)
    out.a_[i] = static_cast<uint8_t>(mod_p(a_[i] - o.a_[i], p_));
  return out;
}

FpMat FpMat::operator*(const FpMat& o) const {
  if (n_ != o.n_ || p_ != o.p_) throw std::invalid_argument("FpMat: size mismatch");
  FpMat out(p_, n_);
  for (size_t r = 0; r < n_; ++r) {
    for (size_t k = 0; k < n_; ++k) {
      uint8_t f = a_[r * n_ + k];
      if (f == 0) continue;
      const uint8_t* orow = &o.a_[k * n_];
      uint8_t* dst = &out.a_[r * n_];
      for (size_t c = 0; c < n_; ++c) dst[c] = static_cast<uint8_t>((dst[c] + f * orow[c]) % p_);
    }
  }
  return out;
}

FpMat FpMat::scaled(int c) const {
  FpMat out(p_, n_);
  int cc = mod_p(c, p_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = static_cast<uint8_t>(a_[i] * cc % p_);
  return out;
}

FpMat FpMat::pow(uint64_t k) const {
  FpMat acc = identity(p_, n_);
  FpMat base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

FpMat FpMat::block(size_t br, size_t bc, size_t bs) const {
  FpMat out(p_, bs);
  for (size_t r = 0; r < bs; ++r)
    for (size_t c = 0; c < bs; ++c) out.a_[r * bs + c] = a_[(br * bs + r) * n_ + (bc * bs + c)];
  return out;
}

void FpMat::set_block(size_t br, size_t bc, const FpMat& b) {
  size_t bs = b.dim();
  for (size_t r = 0; r < bs; ++r)
    for (size_t c = 0; c < bs; ++c) a_[(br * bs + r) * n_ + (bc * bs + c)] = b.at(r, c);
}

// --- chi and the star elements -------------------------------------------------

AlgebraElement chi(const Portrait& f, int level) {
  if (f.depth() < level) throw std::invalid_argument("chi: portrait too shallow");
  const int p = f.p();
  size_t n = 1;
  for (int l = 0; l < level; ++l) n *= static_cast<size_t>(p);
  FpMat m(p, n);
  struct Frame {
    size_t iw, iwf;
  };
  std::vector<Frame> cur{{0, 0}}, next;
  for (int l = 0; l < level; ++l) {
    next.clear();
    for (const auto& fr : cur) {
      int lab = f.label_at(l, fr.iw);
      for (int x = 1; x <= p; ++x) {
        int ximg = mod_p(x - 1 + lab, p) + 1;
        next.push_back({fr.iw * p + (x - 1), fr.iwf * p + (ximg - 1)});
      }
    }
    std::swap(cur, next);
  }
  for (const auto& fr : cur) m.set(fr.iw, fr.iwf, 1);
  return AlgebraElement{p, level, std::move(m)};
}

AlgebraElement chi(const GroupDatum& d, const ReducedWord& w, int level) {
  return chi(word_portrait(d, w, level), level);
}

AlgebraElement a_star(const GroupDatum& d, int level) {
  const int p = d.p();
  AlgebraElement a = chi(d, gen_word(d, kGenA), level);
  FpMat acc = FpMat::identity(p, a.m.dim());
  FpMat sum(p, a.m.dim());
  for (int k = 0; k < p; ++k) {
    sum = sum + acc;
    acc = acc * a.m;
  }
  return AlgebraElement{p, level, std::move(sum)};
}

AlgebraElement b_star(const GroupDatum& d, const Gen& g, int level) {
  if (g.is_a()) throw std::invalid_argument("b_star: needs a directed generator");
  const int p = d.p();
  AlgebraElement b = chi(d, gen_word(d, g), level);
  FpMat acc = FpMat::identity(p, b.m.dim());
  FpMat sum(p, b.m.dim());
  for (int k = 0; k < p; ++k) {
    sum = sum + acc;
    acc = acc * b.m;
  }
  return AlgebraElement{p, level, std::move(sum)};
}

// --- wreath structure -----------------------------------------------------------

WreathDecomposition wreath_decompose(const AlgebraElement& v) {
  if (v.level < 1) throw std::invalid_argument("wreath_decompose: level must be >= 1");
  const int p = v.p;
  const size_t bs = v.m.dim() / static_cast<size_t>(p);
  WreathDecomposition w;
  w.p = p;
  w.level = v.level;
  w.blocks.assign(p, std::vector<FpMat>());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      w.blocks[i].push_back(v.m.block(j, (j + i) % p, bs));
  return w;
}

AlgebraElement wreath_reassemble(const GroupDatum& d, const WreathDecomposition& w) {
  const int p = w.p;
  size_t bs = w.blocks[0][0].dim();
  FpMat m(p, bs * static_cast<size_t>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      FpMat cur = m.block(j, (j + i) % p, bs) + w.blocks[i][j];
      m.set_block(j, (j + i) % p, cur);
    }
  (void)d;
  return AlgebraElement{p, w.level, std::move(m)};
}

AlgebraElement diagonal_embed(const AlgebraElement& v, int copies_p) {
  FpMat m(v.p, v.m.dim() * static_cast<size_t>(copies_p));
  for (int j = 0; j < copies_p; ++j) m.set_block(j, j, v.m);
  return AlgebraElement{v.p, v.level + 1, std::move(m)};
}

AlgebraElement iterated_embed(const AlgebraElement& v, int copies_p, int k) {
  AlgebraElement out = v;
  for (int i = 0; i < k; ++i) out = diagonal_embed(out, copies_p);
  return out;
}

std::vector<std::vector<FpMat>> phi_embed(const AlgebraElement& v) {
  if (v.level < 1) throw std::invalid_argument("phi_embed: level must be >= 1");
  const int p = v.p;
  const size_t bs = v.m.dim() / static_cast<size_t>(p);
  std::vector<std::vector<FpMat>> grid(p);
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < p; ++c) grid[r].push_back(v.m.block(r, c, bs));
  return grid;
}

// --- depth function --------------------------------------------------------------

namespace {

// Row-echelon span basis with incremental membership testing.
struct FpSpan {
  int p = 0;
  std::vector<std::vector<uint8_t>> rows;  // echelonized, each with leading 1
  std::vector<size_t> lead;

  // Reduces v against the basis; returns true if v reduces to zero.
  bool reduce(std::vector<uint8_t>& v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      uint8_t f = v[lead[r]];
      if (f == 0) continue;
      for (size_t c = lead[r]; c < v.size(); ++c)
        v[c] = static_cast<uint8_t>(mod_p(v[c] - f * rows[r][c], p));
    }
    for (uint8_t x : v)
      if (x != 0) return false;
    return true;
  }

  void insert(std::vector<uint8_t> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      uint8_t f = v[lead[r]];
      if (f == 0) continue;
      for (size_t c = lead[r]; c < v.size(); ++c)
        v[c] = static_cast<uint8_t>(mod_p(v[c] - f * rows[r][c], p));
    }
    size_t l = 0;
    while (l < v.size() && v[l] == 0) ++l;
    if (l == v.size()) return;
    int inv = inv_mod_p(v[l], p);
    for (size_t c = l; c < v.size(); ++c) v[c] = static_cast<uint8_t>(v[c] * inv % p);
    rows.push_back(std::move(v));
    lead.push_back(l);
  }
};

std::vector<uint8_t> tuple_vector(const std::vector<FpMat>& tuple) {
  std::vector<uint8_t> out;
  for (const auto& m : tuple)
    for (size_t r = 0; r < m.dim(); ++r)
      for (size_t c = 0; c < m.dim(); ++c) out.push_back(m.at(r, c));
  return out;
}

// Span of the section tuples of <b^(j)> at the given inner level.
FpSpan family_span(const GroupDatum& d, int family, int inner_level) {
  const int p = d.p();
  const int r = d.r(family);
  FpSpan span;
  span.p = p;
  std::vector<uint8_t> beta(r, 0);
  while (true) {
    ReducedWord w(p);
    w.append_block(family, beta);  // empty block = identity
    SectionSplit sp = section_split(d, w);
    std::vector<FpMat> tuple;
    for (int c = 1; c <= p; ++c)
      tuple.push_back(chi(d, sp.sections[c - 1], inner_level).m);
    span.insert(tuple_vector(tuple));
    // Next beta in lexicographic order.
    int pos = 0;
    while (pos < r) {
      beta[pos] = static_cast<uint8_t>((beta[pos] + 1) % p);
      if (beta[pos] != 0) break;
      ++pos;
    }
    if (pos == r) break;
  }
  return span;
}

struct SpanCache {
  std::mutex mu;
  std::map<std::string, FpSpan> map;
};

SpanCache& span_cache() {
  static SpanCache cache;
  return cache;
}

const FpSpan& cached_family_span(const GroupDatum& d, int family, int inner_level) {
  std::string key =
      d.canonical_string() + "#f" + std::to_string(family) + "#L" + std::to_string(inner_level);
  std::lock_guard<std::mutex> lock(span_cache().mu);
  auto it = span_cache().map.find(key);
  if (it == span_cache().map.end())
    it = span_cache().map.emplace(key, family_span(d, family, inner_level)).first;
  return it->second;
}

}  // namespace

int depth(const GroupDatum& d, const AlgebraElement& v, int max_family_rank) {
  if (v.level == 0) return 0;
  const int p = d.p();
  for (int j = 1; j <= p; ++j)
    if (d.r(j) > max_family_rank)
      throw std::invalid_argument("depth: family rank exceeds the span enumeration guard");

  WreathDecomposition w = wreath_decompose(v);
  int worst = 0;
  for (int i = 0; i < p; ++i) {
    std::vector<uint8_t> tup = tuple_vector(w.blocks[i]);
    bool in_circ = false;
    for (int j = 1; j <= p && !in_circ; ++j) {
      if (d.r(j) == 0) continue;
      std::vector<uint8_t> probe = tup;
      if (cached_family_span(d, j, v.level - 1).reduce(probe)) in_circ = true;
    }
    if (in_circ) continue;
    for (int j = 0; j < p; ++j) {
      AlgebraElement sub{p, v.level - 1, w.blocks[i][j]};
      worst = std::max(worst, 1 + depth(d, sub, max_family_rank));
    }
  }
  return worst;
}

// --- nilpotency -------------------------------------------------------------------

std::optional<int> nilpotency_index(const AlgebraElement& v, int bound) {
  if (bound < 0) bound = static_cast<int>(v.m.dim()) + 1;
  FpMat acc = v.m;
  for (int k = 1; k <= bound; ++k) {
    if (acc.is_zero()) return k;
    acc = acc * v.m;
  }
  return std::nullopt;
}

// --- X-power identities ------------------------------------------------------------

namespace {

GroupDatum family_one_datum(const GroupDatum& d, const Gen& g, Gen* out_gen) {
  if (g.family == 1) {
    *out_gen = g;
    return d;
  }
  *out_gen = Gen{1, g.index};
  return d.with_families_swapped(1, g.family);
}

}  // namespace

AlgebraReport x_power_check(const GroupDatum& d, const Gen& g, int level, int max_j) {
  AlgebraReport rep;
  if (g.is_a()) throw std::invalid_argument("x_power_check: needs a directed generator");
  if (level < 2) throw std::invalid_argument("x_power_check: level must be >= 2");
  Gen gw{};
  GroupDatum w = family_one_datum(d, g, &gw);
  const int p = w.p();
  const auto& e = w.vec(gw.family, gw.index);

  int count_nonzero = 0;
  for (int c = 0; c < p - 1; ++c)
    if (e[c] != 0) ++count_nonzero;
  const int bigN = mod_p(count_nonzero, p);
  if (bigN == 0) {
    rep.add("N = 0 in F_p: powers of X", false, /*skipped=*/true);
    return rep;
  }

  AlgebraElement as = a_star(w, level), bs = b_star(w, gw, level);
  AlgebraElement as1 = a_star(w, level - 1), bs1 = b_star(w, gw, level - 1);
  FpMat X = bs.m * as.m;
  FpMat X1 = bs1.m * as1.m;
  FpMat Y1 = as1.m * bs1.m;
  const size_t bsz = as1.m.dim();

  long long npow = 1;
  for (int j = 1; j <= max_j; ++j) {
    // npow = N^{j-1}
    FpMat lhs_odd = X.pow(static_cast<uint64_t>(2 * j - 1));
    FpMat lhs_even = X.pow(static_cast<uint64_t>(2 * j));

    FpMat diag_odd(p, bsz * static_cast<size_t>(p));
    FpMat diag_even(p, bsz * static_cast<size_t>(p));
    FpMat yj1 = Y1.pow(static_cast<uint64_t>(j - 1));
    FpMat yj = Y1.pow(static_cast<uint64_t>(j));
    FpMat xj1 = X1.pow(static_cast<uint64_t>(j - 1));
    FpMat xj = X1.pow(static_cast<uint64_t>(j));
    for (int c = 1; c <= p - 1; ++c) {
      int eps = e[c - 1] != 0 ? 1 : 0;
      if (eps) {
        diag_odd.set_block(c - 1, c - 1, yj1 * as1.m);
        diag_even.set_block(c - 1, c - 1, yj);
      }
    }
    diag_odd.set_block(p - 1, p - 1, xj1 * bs1.m);
    diag_even.set_block(p - 1, p - 1, xj.scaled(bigN));

    FpMat rhs_odd = (diag_odd * as.m).scaled(static_cast<int>(npow));
    FpMat rhs_even = (diag_even * as.m).scaled(static_cast<int>(npow));

    rep.add("X^{2j-1} block identity, j=" + std::to_string(j), lhs_odd == rhs_odd);
    rep.add("X^{2j} block identity, j=" + std::to_string(j), lhs_even == rhs_even);
    npow = npow * bigN % p;
  }
  return rep;
}

// --- rho identities -----------------------------------------------------------------

namespace {

struct RhoLevel {
  FpMat b, binv, astar, eta_inv, rho, sigma;
};

// Assembles the level data: eta = 1 + b a_* inverted by the finite Neumann
// series, rho the block-row-sum diagonal representative with
// eta^{-1} = 1 - rho a_*, and sigma the mirror for mu = 1 + b^{-1} a_*.
RhoLevel rho_level(const GroupDatum& w, const Gen& g, int level) {
  const int p = w.p();
  RhoLevel L;
  L.b = chi(w, gen_word(w, g), level).m;
  L.binv = chi(w, word_inverse(gen_word(w, g)), level).m;
  L.astar = a_star(w, level).m;

  FpMat step = (L.b * L.astar).scaled(-1);
  FpMat acc = FpMat::identity(p, L.b.dim());
  FpMat sum(p, L.b.dim());
  int guard = static_cast<int>(L.b.dim()) + 2;
  while (!acc.is_zero() && guard-- > 0) {
    sum = sum + acc;
    acc = acc * step;
  }
  if (guard <= 0) throw std::logic_error("rho_level: Neumann series did not terminate");
  L.eta_inv = sum;

  auto rowsum_diag = [&](const FpMat& m) {
    size_t bs = m.dim() / static_cast<size_t>(p);
    FpMat out(p, m.dim());
    for (int j = 0; j < p; ++j) {
      FpMat d(p, bs);
      for (int c = 0; c < p; ++c) d = d + m.block(j, c, bs);
      out.set_block(j, j, d);
    }
    return out;
  };
  L.rho = rowsum_diag(L.eta_inv * L.b);

  FpMat mstep = (L.binv * L.astar).scaled(-1);
  FpMat macc = FpMat::identity(p, L.b.dim());
  FpMat msum(p, L.b.dim());
  guard = static_cast<int>(L.b.dim()) + 2;
  while (!macc.is_zero() && guard-- > 0) {
    msum = msum + macc;
    macc = macc * mstep;
  }
  L.sigma = rowsum_diag(msum * L.binv);
  return L;
}

FpMat embed_diag(const FpMat& m, int p, int copies_level) {
  FpMat out = m;
  for (int k = 0; k < copies_level; ++k) {
    FpMat next(p, out.dim() * static_cast<size_t>(p));
    for (int j = 0; j < p; ++j) next.set_block(j, j, out);
    out = next;
  }
  return out;
}

}  // namespace

AlgebraReport rho_identity_check(const GroupDatum& d, int level) {
  AlgebraReport rep;
  if (level < 2) throw std::invalid_argument("rho_identity_check: level must be >= 2");
  Gen gw{};
  GroupDatum w = family_one_datum(d, Gen{d.designated_family(), 1}, &gw);
  const int p = w.p();
  {
    const auto& e = w.vec(1, gw.index);
    std::vector<bool> seen(p, false);
    bool perm = true;
    for (int c = 0; c < p - 1; ++c) {
      if (e[c] == 0 || seen[e[c]]) perm = false;
      if (e[c] < p) seen[e[c]] = true;
    }
    if (!perm)
      throw std::invalid_argument(
          "rho_identity_check: designated generator is not generalised Gupta-Sidki "
          "(vector must be a permutation of 1..p-1)");
  }

  RhoLevel L = rho_level(w, gw, level);
  RhoLevel L1 = rho_level(w, gw, level - 1);

  FpMat id = FpMat::identity(p, L.b.dim());
  FpMat eta = id + L.b * L.astar;
  rep.add("eta eta^{-1} = 1", (eta * L.eta_inv) == id && (L.eta_inv * eta) == id);
  rep.add("eta^{-1} = 1 - rho a_*", L.eta_inv == id - L.rho * L.astar);

  // (eq:1) and its mirror.
  FpMat b_plus_astar1 = embed_diag(L1.b + L1.astar, p, 1);
  rep.add("rho (b + a_*)^{[1]} = b", (L.rho * b_plus_astar1) == L.b);
  FpMat binv_plus_astar1 = embed_diag(L1.binv + L1.astar, p, 1);
  rep.add("sigma (b^{-1} + a_*)^{[1]} = b^{-1}", (L.sigma * binv_plus_astar1) == L.binv);

  // (eq:3) and (eq:4).
  FpMat id1 = FpMat::identity(p, L1.b.dim());
  rep.add("rho = b (1 - sigma a_*)^{[1]} (b^{-1})^{[1]}",
          L.rho == L.b * embed_diag(id1 - L1.sigma * L1.astar, p, 1) * embed_diag(L1.binv, p, 1));
  rep.add("sigma = b^{-1} (1 - rho a_*)^{[1]} b^{[1]}",
          L.sigma == L.binv * embed_diag(id1 - L1.rho * L1.astar, p, 1) * embed_diag(L1.b, p, 1));

  // (equ:rho-equation), two levels down.
  {
    RhoLevel L2 = rho_level(w, gw, level - 2);
    FpMat id2 = FpMat::identity(p, L2.b.dim());
    FpMat lead = L.b * embed_diag(L1.binv, p, 1);
    FpMat rhs = lead - lead * embed_diag(id2 - L2.rho * L2.astar, p, 2) *
                           embed_diag(L2.b, p, 2) * embed_diag(L1.astar, p, 1) *
                           embed_diag(L1.binv, p, 1);
    rep.add("rho = b(b^{-1})^{[1]} - b(b^{-1})^{[1]}(1-rho a_*)^{[2]} b^{[2]} a_*^{[1]} (b^{-1})^{[1]}",
            L.rho == rhs);
  }

  // Embedded matrix display: the blocks of
  //   E = a^{e_t} b^{-1} (1 - (eta^{-1} b)^{[1]} a_* b^{-1})
  // are level-(n-1) expressions in eta^{-1}; compare row-1 corner entries.
  {
    const auto& e = w.vec(1, gw.index);
    auto apow1 = [&](int k) { return chi(w, gen_word(w, kGenA, k), level - 1).m; };
    FpMat inner = FpMat::identity(p, L.b.dim()) -
                  embed_diag(L1.eta_inv * L1.b, p, 1) * L.astar * L.binv;
    bool corner11 = true, corner1p = true, corner1p_nonzero = true;
    for (int t = 1; t <= p - 1; ++t) {
      FpMat E = chi(w, gen_word(w, kGenA, e[t - 1]), level).m * L.binv * inner;
      const size_t bs = L1.b.dim();
      int rprime = mod_p(1 + e[t - 1] - 1, p) + 1;  // row 1 reads row 1+e_t of b^{-1}(1-A)
      FpMat dr = rprime == p ? L1.binv : apow1(-static_cast<int>(e[rprime - 1]));
      // block (1,1): d_{r'} (delta_{r',1} - eta^{-1} b a^{-e_1})
      FpMat exp11 = dr.scaled(rprime == 1 ? 1 : 0) - dr * L1.eta_inv * L1.b * apow1(-int(e[0]));
      // block (1,p): d_{r'} (delta_{r',p} - eta^{-1})
      FpMat exp1p = dr.scaled(rprime == p ? 1 : 0) - dr * L1.eta_inv;
      if (E.block(0, 0, bs) != exp11) corner11 = false;
      if (E.block(0, static_cast<size_t>(p - 1), bs) != exp1p) corner1p = false;
      if (E.block(0, static_cast<size_t>(p - 1), bs).is_zero()) corner1p_nonzero = false;
    }
    rep.add("matrix display corner (1,1)", corner11);
    rep.add("matrix display corner (1,p)", corner1p);
    rep.add("corner (1,p) nonzero (forces lambda = 0)", corner1p_nonzero);
  }
  return rep;
}

std::vector<int> rho_depth_series(const GroupDatum& d, int max_level) {
  std::vector<int> out;
  Gen gw{};
  GroupDatum w = family_one_datum(d, Gen{d.designated_family(), 1}, &gw);
  for (int level = 2; level <= max_level; ++level) {
    RhoLevel L = rho_level(w, gw, level);
    out.push_back(depth(w, AlgebraElement{w.p(), level, L.rho}));
  }
  return out;
}

}  // namespace gmes
