#include "gmes/quotient.hpp"

#include <random>
#include <stdexcept>

#include "gmes/fp.hpp"

namespace gmes {

Perm::Perm(size_t n) : img_(n) {
  for (size_t i = 0; i < n; ++i) img_[i] = static_cast<uint32_t>(i);
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm perm_mul(const Perm& f, const Perm& g) {
  if (f.degree() != g.degree()) throw std::invalid_argument("perm_mul: degree mismatch");
  std::vector<uint32_t> out(f.degree());
  for (size_t i = 0; i < out.size(); ++i) out[i] = g.img_[f.img_[i]];
  return Perm(std::move(out));
}

Perm perm_inverse(const Perm& f) {
  std::vector<uint32_t> out(f.degree());
  for (size_t i = 0; i < out.size(); ++i) out[f.img_[i]] = static_cast<uint32_t>(i);
  return Perm(std::move(out));
}

// --- stabilizer chain --------------------------------------------------------

StabChain::StabChain(size_t degree, int p) : degree_(degree), p_(p) {}

// Strips g through levels from `from` on; *drop receives the level at which
// stripping stopped (levels_.size() when the whole chain was traversed).
Perm StabChain::strip(const Perm& g, size_t from, size_t* drop) const {
  Perm h = g;
  size_t lv = from;
  for (; lv < levels_.size(); ++lv) {
    const Level& L = levels_[lv];
    uint32_t img = h[L.base];
    int64_t k = L.orbit_pos[img];
    if (k < 0) break;
    h = perm_mul(h, perm_inverse(L.transversal[static_cast<size_t>(k)]));
  }
  if (drop) *drop = lv;
  return h;
}

Perm StabChain::sift(const Perm& g) const { return strip(g, 0, nullptr); }

bool StabChain::contains(const Perm& g) const { return sift(g).is_identity(); }

void StabChain::rebuild_orbit(size_t lv) {
  Level& L = levels_[lv];
  L.orbit_pos.assign(degree_, -1);
  L.orbit.clear();
  L.transversal.clear();
  L.orbit.push_back(L.base);
  L.orbit_pos[L.base] = 0;
  L.transversal.push_back(Perm(degree_));
  for (size_t q = 0; q < L.orbit.size(); ++q) {
    for (const auto& s : L.gens) {
      uint32_t img = s[L.orbit[q]];
      if (L.orbit_pos[img] < 0) {
        L.orbit_pos[img] = static_cast<int64_t>(L.orbit.size());
        L.orbit.push_back(img);
        L.transversal.push_back(perm_mul(L.transversal[q], s));
      }
    }
  }
}

void StabChain::insert_generator(size_t lv, const Perm& h) {
  if (lv == levels_.size()) {
    uint32_t base = 0;
    while (h[base] == base) ++base;
    levels_.push_back(Level{base, {}, {}, {}, {}});
  }
  levels_[lv].gens.push_back(h);
  strong_.push_back(h);
  close(lv);
}

// Verifies Schreier's condition at level lv, pushing failed Schreier
// generators further down.  Generators and orbit of level lv are fixed for
// the duration of the scan; only deeper levels grow.
void StabChain::close(size_t lv) {
  rebuild_orbit(lv);
  for (size_t q = 0; q < levels_[lv].orbit.size(); ++q) {
    for (size_t si = 0; si < levels_[lv].gens.size(); ++si) {
      Perm schreier;
      {
        const Level& L = levels_[lv];
        const Perm& s = L.gens[si];
        uint32_t img = s[L.orbit[q]];
        schreier = perm_mul(perm_mul(L.transversal[q], s),
                            perm_inverse(L.transversal[static_cast<size_t>(L.orbit_pos[img])]));
      }
      if (schreier.is_identity()) continue;
      size_t drop = 0;
      Perm h = strip(schreier, lv + 1, &drop);
      if (h.is_identity()) continue;
      insert_generator(drop, h);
    }
  }
}

void StabChain::extend(const Perm& g) {
  if (g.degree() != degree_) throw std::invalid_argument("extend: degree mismatch");
  size_t drop = 0;
  Perm h = strip(g, 0, &drop);
  if (h.is_identity()) return;
  insert_generator(drop, h);
}

int StabChain::order_exponent() const {
  int e = 0;
  for (const auto& L : levels_) {
    size_t n = L.orbit.size();
    while (n > 1) {
      if (n % static_cast<size_t>(p_) != 0)
        throw std::logic_error("orbit size is not a power of p");
      n /= static_cast<size_t>(p_);
      ++e;
    }
  }
  return e;
}

bool StabChain::self_test(uint64_t seed, int rounds) const {
  std::mt19937_64 rng(seed);
  if (strong_.empty()) return true;
  for (int r = 0; r < rounds; ++r) {
    Perm w(degree_);
    int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      const Perm& s = strong_[rng() % strong_.size()];
      w = rng() % 2 ? perm_mul(w, s) : perm_mul(w, perm_inverse(s));
    }
    if (!contains(w)) return false;
  }
  return true;
}

// --- finite quotients ---------------------------------------------------------

Perm leaf_permutation(const Portrait& f, int m) {
  if (f.depth() < m) throw std::invalid_argument("leaf_permutation: portrait too shallow");
  const int p = f.p();
  size_t n = 1;
  for (int l = 0; l < m; ++l) n *= static_cast<size_t>(p);
  std::vector<uint32_t> img(n);
  struct Frame {
    size_t iw, iwf;
  };
  std::vector<Frame> cur{{0, 0}}, next;
  for (int l = 0; l < m; ++l) {
    next.clear();
    next.reserve(cur.size() * p);
    for (const auto& fr : cur) {
      int lab = f.label_at(l, fr.iw);
      for (int x = 1; x <= p; ++x) {
        int ximg = mod_p(x - 1 + lab, p) + 1;
        next.push_back({fr.iw * p + (x - 1), fr.iwf * p + (ximg - 1)});
      }
    }
    std::swap(cur, next);
  }
  for (const auto& fr : cur) img[fr.iw] = static_cast<uint32_t>(fr.iwf);
  return Perm(std::move(img));
}

PermQuotient::PermQuotient(GroupDatum d, int m, size_t max_points)
    : datum_(std::move(d)), m_(m) {
  if (m < 1) throw std::invalid_argument("quotient level must be >= 1");
  npoints_ = 1;
  for (int l = 0; l < m; ++l) {
    npoints_ *= static_cast<size_t>(datum_.p());
    if (npoints_ > max_points)
      throw std::invalid_argument("quotient size bound exceeded (p^m > max points)");
  }
  chain_ = std::make_unique<StabChain>(npoints_, datum_.p());
  for (const Gen& g : datum_.generators()) {
    Perm perm = leaf_permutation(generator_portrait(datum_, g, m_), m_);
    gens_.push_back(perm);
    chain_->extend(perm);
  }
  if (!chain_->self_test(0x5eed, 64)) throw std::logic_error("stabilizer chain self-test failed");
}

Perm PermQuotient::image(const ReducedWord& w) const {
  Perm out(npoints_);
  const auto gens = datum_.generators();
  auto gen_perm = [&](const Gen& g) -> const Perm& {
    for (size_t i = 0; i < gens.size(); ++i)
      if (gens[i] == g) return gens_[i];
    throw std::invalid_argument("image: unknown generator");
  };
  for (const auto& s : w.syllables()) {
    if (std::holds_alternative<uint8_t>(s)) {
      int e = std::get<uint8_t>(s);
      for (int i = 0; i < e; ++i) out = perm_mul(out, gens_[0]);
    } else {
      const auto& b = std::get<FamilyBlock>(s);
      for (size_t i = 0; i < b.beta.size(); ++i) {
        const Perm& bp = gen_perm(Gen{b.family, static_cast<int>(i) + 1});
        for (int k = 0; k < b.beta[i]; ++k) out = perm_mul(out, bp);
      }
    }
  }
  return out;
}

Perm PermQuotient::image(const Portrait& f) const { return leaf_permutation(f, m_); }

DerivedSubgroup::DerivedSubgroup(const PermQuotient& q) {
  chain_ = std::make_unique<StabChain>(q.points(), q.datum().p());
  std::vector<Perm> seeds;
  for (size_t i = 0; i < q.num_generators(); ++i)
    for (size_t j = i + 1; j < q.num_generators(); ++j) {
      const Perm &x = q.generator(i), &y = q.generator(j);
      seeds.push_back(perm_mul(perm_mul(perm_inverse(x), perm_inverse(y)), perm_mul(x, y)));
    }
  std::vector<Perm> queue = seeds;
  for (const auto& s : seeds) chain_->extend(s);
  while (!queue.empty()) {
    Perm s = queue.back();
    queue.pop_back();
    for (size_t i = 0; i < q.num_generators(); ++i) {
      const Perm& g = q.generator(i);
      Perm conj = perm_mul(perm_mul(perm_inverse(g), s), g);
      if (!chain_->contains(conj)) {
        chain_->extend(conj);
        queue.push_back(conj);
      }
    }
  }
}

int abelian_rank(const PermQuotient& q) {
  DerivedSubgroup der(q);
  return abelian_rank(q, der);
}

int abelian_rank(const PermQuotient& q, const DerivedSubgroup& derived) {
  return q.order_exponent() - derived.order_exponent();
}

}  // namespace gmes
