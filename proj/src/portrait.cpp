#include "gmes/portrait.hpp"

#include <stdexcept>

#include "gmes/fp.hpp"

namespace gmes {

Portrait::Portrait(int p, int depth) : p_(p), depth_(depth) {
  if (p < 2) throw std::invalid_argument("portrait: p too small");
  if (depth < 0) throw std::invalid_argument("portrait: negative depth");
  offsets_.resize(depth + 1);
  size_t total = 0, level = 1;
  for (int l = 0; l <= depth; ++l) {
    offsets_[l] = total;
    if (l < depth) total += level;
    level *= p;
  }
  labels_.assign(total, 0);
}

size_t Portrait::level_size(int level) const {
  size_t s = 1;
  for (int l = 0; l < level; ++l) s *= p_;
  return s;
}

uint8_t Portrait::label(const VertexAddress& u) const {
  if (static_cast<int>(u.level()) >= depth_)
    throw std::invalid_argument("portrait label: vertex at or below truncation depth");
  size_t idx = 0;
  for (size_t i = 0; i < u.level(); ++i) idx = idx * p_ + (u.letter(i) - 1);
  return labels_[offset(static_cast<int>(u.level())) + idx];
}

void Portrait::set_label(const VertexAddress& u, int value) {
  size_t idx = 0;
  for (size_t i = 0; i < u.level(); ++i) idx = idx * p_ + (u.letter(i) - 1);
  set_label_at(static_cast<int>(u.level()), idx, mod_p(value, p_));
}

bool Portrait::is_identity() const {
  for (uint8_t x : labels_)
    if (x != 0) return false;
  return true;
}

Portrait generator_portrait(const GroupDatum& d, const Gen& g, int depth) {
  if (!d.has_generator(g)) throw std::invalid_argument("unknown generator id");
  if (g.is_a()) return rooted_power_portrait(d.p(), depth, 1);
  std::vector<uint8_t> beta(d.r(g.family), 0);
  beta[g.index - 1] = 1;
  return block_portrait(d, g.family, beta, depth);
}

Portrait rooted_power_portrait(int p, int depth, int k) {
  Portrait f(p, depth);
  if (depth > 0) f.set_label_at(0, 0, mod_p(k, p));
  return f;
}

Portrait block_portrait(const GroupDatum& d, int family, const std::vector<uint8_t>& beta,
                        int depth) {
  const int p = d.p();
  if (family < 1 || family > p || static_cast<int>(beta.size()) != d.r(family))
    throw std::invalid_argument("block_portrait: bad family block");
  Portrait f(p, depth);
  const int sigma = d.spine(family);
  // Off-spine exponent at coordinate c of the spine vertex: entry (c - sigma)
  // mod p of the block's combined defining vector.
  std::vector<int> slot(p + 1, 0);  // slot[c] for coordinates 1..p, slot[sigma] unused
  for (int c = 1; c <= p; ++c) {
    if (c == sigma) continue;
    int t = mod_p(c - sigma, p);  // 1..p-1
    long long e = 0;
    for (int i = 0; i < d.r(family); ++i) e += static_cast<long long>(beta[i]) * d.vec(family, i + 1)[t - 1];
    slot[c] = mod_p(e, p);
  }
  // Walk the spine; at depth l the spine vertex has index idx.
  size_t idx = 0;
  for (int l = 0; l + 1 < depth; ++l) {
    size_t child_base = idx * p;
    for (int c = 1; c <= p; ++c) {
      if (c == sigma) continue;
      f.set_label_at(l + 1, child_base + (c - 1), slot[c]);
    }
    idx = child_base + (sigma - 1);
  }
  return f;
}

namespace {

void compose_walk(const Portrait& f, const Portrait& g, Portrait& out, int level, size_t iw,
                  size_t iwf) {
  const int p = f.p();
  int lf = f.label_at(level, iw);
  out.set_label_at(level, iw, mod_p(lf + g.label_at(level, iwf), p));
  if (level + 1 >= f.depth()) return;
  for (int x = 1; x <= p; ++x) {
    int ximg = mod_p(x - 1 + lf, p) + 1;
    compose_walk(f, g, out, level + 1, iw * p + (x - 1), iwf * p + (ximg - 1));
  }
}

void invert_walk(const Portrait& f, Portrait& out, int level, size_t iw, size_t iwf) {
  const int p = f.p();
  int lf = f.label_at(level, iw);
  out.set_label_at(level, iwf, mod_p(-lf, p));
  if (level + 1 >= f.depth()) return;
  for (int x = 1; x <= p; ++x) {
    int ximg = mod_p(x - 1 + lf, p) + 1;
    invert_walk(f, out, level + 1, iw * p + (x - 1), iwf * p + (ximg - 1));
  }
}

}  // namespace

Portrait compose(const Portrait& f, const Portrait& g) {
  if (f.p() != g.p() || f.depth() != g.depth())
    throw std::invalid_argument("compose: mismatched p or depth");
  Portrait out(f.p(), f.depth());
  if (f.depth() > 0) compose_walk(f, g, out, 0, 0, 0);
  return out;
}

Portrait invert(const Portrait& f) {
  Portrait out(f.p(), f.depth());
  if (f.depth() > 0) invert_walk(f, out, 0, 0, 0);
  return out;
}

VertexAddress act(const Portrait& f, const VertexAddress& u) {
  if (static_cast<int>(u.level()) > f.depth())
    throw std::invalid_argument("act: address deeper than portrait");
  const int p = f.p();
  VertexAddress out;
  size_t idx = 0;
  for (size_t i = 0; i < u.level(); ++i) {
    int lab = f.label_at(static_cast<int>(i), idx);
    int x = u.letter(i);
    out.push_back(static_cast<uint8_t>(mod_p(x - 1 + lab, p) + 1));
    idx = idx * p + (x - 1);  // recursion descends along the original address
  }
  return out;
}

Portrait section(const Portrait& f, const VertexAddress& u) {
  if (static_cast<int>(u.level()) > f.depth())
    throw std::invalid_argument("section: address deeper than portrait");
  if (act(f, u) != u) throw std::invalid_argument("section: portrait does not fix the vertex");
  const int p = f.p();
  Portrait out(p, f.depth() - static_cast<int>(u.level()));
  size_t idx = 0;
  for (size_t i = 0; i < u.level(); ++i) idx = idx * p + (u.letter(i) - 1);
  size_t width = 1;
  for (int l = 0; l < out.depth(); ++l) {
    size_t base = idx * width;
    for (size_t k = 0; k < width; ++k)
      out.set_label_at(l, k, f.label_at(l + static_cast<int>(u.level()), base + k));
    width *= p;
  }
  return out;
}

Portrait truncate(const Portrait& f, int depth) {
  if (depth > f.depth()) throw std::invalid_argument("truncate: cannot deepen a portrait");
  Portrait out(f.p(), depth);
  size_t width = 1;
  for (int l = 0; l < depth; ++l) {
    for (size_t k = 0; k < width; ++k) out.set_label_at(l, k, f.label_at(l, k));
    width *= f.p();
  }
  return out;
}

Portrait assemble(const std::vector<Portrait>& sections, int root_exponent) {
  if (sections.empty()) throw std::invalid_argument("assemble: no sections");
  const int p = sections[0].p();
  const int sub = sections[0].depth();
  if (static_cast<int>(sections.size()) != p)
    throw std::invalid_argument("assemble: expected p sections");
  for (const auto& s : sections)
    if (s.p() != p || s.depth() != sub) throw std::invalid_argument("assemble: ragged sections");
  Portrait out(p, sub + 1);
  out.set_label_at(0, 0, mod_p(root_exponent, p));
  for (int c = 0; c < p; ++c) {
    size_t width = 1;
    for (int l = 0; l < sub; ++l) {
      for (size_t k = 0; k < width; ++k)
        out.set_label_at(l + 1, c * width + k, sections[c].label_at(l, k));
      width *= p;
    }
  }
  return out;
}

}  // namespace gmes
