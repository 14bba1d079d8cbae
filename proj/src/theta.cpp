#include "gmes/theta.hpp"

#include <stdexcept>

#include "gmes/fp.hpp"

namespace gmes {

namespace {

GroupDatum make_working_datum(const GroupDatum& d, int family) {
  int f = family == 0 ? d.designated_family() : family;
  if (f < 1 || f > d.p() || d.r(f) == 0)
    throw std::invalid_argument("theta: chosen family is empty");
  return f == 1 ? d : d.with_families_swapped(1, f);
}

}  // namespace

ThetaContext::ThetaContext(const GroupDatum& d, int family)
    : work_(make_working_datum(d, family)),
      family_(family == 0 ? d.designated_family() : family) {
  if (work_.vec(1, 1)[0] != 1)
    throw std::invalid_argument("theta: datum not normalized (e_{1,1} must be 1)");
  const auto& e1 = work_.vec(1, 1);
  n_ = 0;
  for (int c = work_.p() - 2; c >= 0; --c)
    if (e1[c] != 0) {
      n_ = c + 1;
      break;
    }
}

ReducedWord ThetaContext::to_working(const ReducedWord& w) const {
  if (family_ == 1) return w;
  ReducedWord out(w.p());
  for (const auto& s : w.syllables()) {
    if (std::holds_alternative<uint8_t>(s)) {
      out.append_a(std::get<uint8_t>(s));
    } else {
      auto b = std::get<FamilyBlock>(s);
      if (b.family == 1)
        b.family = family_;
      else if (b.family == family_)
        b.family = 1;
      out.append_block(b.family, b.beta);
    }
  }
  return out;
}

namespace {

void require_kernel(const GroupDatum& d, const ReducedWord& z) {
  if (!exponents(d, z).all_zero())
    throw std::invalid_argument("theta: word has nonzero exponent maps (not in G')");
}

ReducedWord theta1_work(const GroupDatum& w, const ReducedWord& z) {
  require_kernel(w, z);
  ReducedWord z1 = word_section(w, z, 1);
  return word_comm(gen_word(w, kGenA), word_inverse(z1));
}

ReducedWord theta2_work(const GroupDatum& w, const ReducedWord& z, int n) {
  require_kernel(w, z);
  if (n < 2) throw std::invalid_argument("theta2: requires n >= 2");
  SectionSplit split = section_split(w, z);
  ReducedWord tail(w.p());
  for (int c = n + 1; c <= w.p(); ++c) tail.append_word(split.sections[c - 1]);
  return word_comm(gen_word(w, kGenA), tail);
}

}  // namespace

ReducedWord theta1(const GroupDatum& d, const ReducedWord& z, int family) {
  ThetaContext ctx(d, family);
  return ctx.from_working(theta1_work(ctx.working_datum(), ctx.to_working(z)));
}

ReducedWord theta2(const GroupDatum& d, const ReducedWord& z, int family) {
  ThetaContext ctx(d, family);
  return ctx.from_working(theta2_work(ctx.working_datum(), ctx.to_working(z), ctx.n()));
}

ThetaTrace reduce_to_terminal(const GroupDatum& d, const ReducedWord& z, int max_steps,
                              int family) {
  ThetaContext ctx(d, family);
  const GroupDatum& w = ctx.working_datum();
  const int n = ctx.n();
  if (n < 2)
    throw std::invalid_argument("reduce_to_terminal: n >= 2 required (torsion hypothesis)");
  require_kernel(w, ctx.to_working(z));

  ThetaTrace trace;
  ReducedWord cur = ctx.to_working(z);

  auto push_step = [&](const char* op, const ReducedWord& in, const ReducedWord& out) {
    trace.steps.push_back(ThetaStep{op, ctx.from_working(in), ctx.from_working(out),
                                    word_length(in), word_length(out)});
  };

  auto apply_op = [&](int op, const ReducedWord& x) {
    return op == 1 ? theta1_work(w, x) : theta2_work(w, x, n);
  };

  // Commits a sequence of operators only when the end length strictly
  // decreases and the step budget allows it.
  auto try_commit = [&](const std::vector<int>& ops, int m) -> bool {
    if (static_cast<int>(trace.steps.size() + ops.size()) > max_steps) return false;
    ReducedWord probe = cur;
    std::vector<std::pair<ReducedWord, ReducedWord>> moves;
    for (int op : ops) {
      ReducedWord next = apply_op(op, probe);
      moves.emplace_back(probe, next);
      probe = next;
    }
    if (word_length(probe) >= m) return false;
    for (size_t i = 0; i < ops.size(); ++i)
      push_step(ops[i] == 1 ? "theta1" : "theta2", moves[i].first, moves[i].second);
    cur = probe;
    return true;
  };

  while (true) {
    int m = word_length(cur);
    if (m == 0 || m == 2) {
      trace.terminal_length = m;
      return trace;
    }
    if (static_cast<int>(trace.steps.size()) >= max_steps) {
      trace.abort_reason = "step limit reached";
      return trace;
    }

    // Proof schedule: theta1 when the first section is short, theta2 when the
    // tail product is short, otherwise theta2 twice.
    SectionSplit split = section_split(w, cur);
    ReducedWord tail(w.p());
    for (int c = n + 1; c <= w.p(); ++c) tail.append_word(split.sections[c - 1]);
    int len1 = word_length(split.sections[0]);
    int len2 = word_length(tail);

    if (2 * len1 < m && try_commit({1}, m)) continue;
    if (2 * len2 < m && try_commit({2}, m)) continue;
    if (try_commit({2, 2}, m)) continue;

    // Fallback: first strictly decreasing composition of depth <= 3.
    bool found = false;
    std::vector<std::vector<int>> candidates = {{1}, {2}};
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b) candidates.push_back({a, b});
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int c = 1; c <= 2; ++c) candidates.push_back({a, b, c});
    for (const auto& combo : candidates)
      if (try_commit(combo, m)) {
        found = true;
        break;
      }
    if (!found) {
      trace.abort_reason = "no length-decreasing theta combination of depth <= 3 within budget";
      return trace;
    }
  }
}

ThetaDerivationReport check_theta_derivations(const GroupDatum& d, const ReducedWord& z,
                                              int depth, int family) {
  ThetaContext ctx(d, family);
  const GroupDatum& w = ctx.working_datum();
  const int p = w.p();
  const int n = ctx.n();
  ReducedWord zz = ctx.to_working(z);
  require_kernel(w, zz);

  ThetaDerivationReport rep;
  rep.depth = depth;

  ReducedWord b1 = gen_word(w, Gen{1, 1});
  ReducedWord az = word_mul(gen_word(w, kGenA), zz);
  SectionSplit split = section_split(w, zz);

  // phi_p(b1^{(az)^{-1}}) = a^{z_1^{-1}}
  {
    ReducedWord lhs_word = word_conj(b1, word_inverse(az));
    ReducedWord lhs = word_section(w, lhs_word, p);
    ReducedWord rhs = word_conj(gen_word(w, kGenA), word_inverse(split.sections[0]));
    rep.theta1_identity =
        word_portrait(w, lhs, depth) == word_portrait(w, rhs, depth);
  }

  // phi_p((b1^k)^{(az)^{p-n}}) = a^{z_{n+1} ... z_p}, where k e_{1,n} = 1.
  {
    int k = inv_mod_p(w.vec(1, 1)[n - 1], p);
    ReducedWord lhs_word = word_conj(word_pow(b1, k), word_pow(az, p - n));
    ReducedWord lhs = word_section(w, lhs_word, p);
    ReducedWord tail(p);
    for (int c = n + 1; c <= p; ++c) tail.append_word(split.sections[c - 1]);
    ReducedWord rhs = word_conj(gen_word(w, kGenA), tail);
    rep.theta2_identity =
        word_portrait(w, lhs, depth) == word_portrait(w, rhs, depth);
  }
  return rep;
}

}  // namespace gmes
