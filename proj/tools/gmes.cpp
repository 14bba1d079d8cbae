// Command-line front end: every subcommand reads a datum file, runs one
// operation, and emits a single JSON report on stdout.
// Exit codes: 0 = pass, 1 = a check failed / aborted, 2 = usage or validation
// error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmes/algebra.hpp"
#include "gmes/certify.hpp"
#include "gmes/corpus.hpp"
#include "gmes/datum.hpp"
#include "gmes/json_io.hpp"
#include "gmes/portrait.hpp"
#include "gmes/quotient.hpp"
#include "gmes/theta.hpp"
#include "gmes/words.hpp"

using nlohmann::json;
using namespace gmes;

namespace {

size_t max_points_guard() {
  if (const char* env = std::getenv("GMES_MAX_POINTS")) return std::stoull(env);
  return 1u << 15;
}

struct Report {
  json j;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Report(const std::string& command, const GroupDatum& d, uint64_t seed) {
    j["command"] = command;
    j["datum_fingerprint"] = datum_fingerprint(d);
    j["seed"] = seed;
    j["parameters"] = json::object();
  }
  int finish(bool pass) {
    auto dt = std::chrono::steady_clock::now() - t0;
    j["timings_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    j["pass"] = pass;
    std::cout << j.dump(2) << std::endl;
    return pass ? 0 : 1;
  }
};

json exponents_json(const GroupDatum& d, const ExponentVector& ev) {
  json out;
  out["eps_a"] = ev.eps_a;
  json blocks = json::object();
  for (int jj = 1; jj <= d.p(); ++jj)
    for (int i = 1; i <= d.r(jj); ++i)
      blocks[d.gen_name(Gen{jj, i})] = ev.eps_b[jj - 1][i - 1];
  out["eps_b"] = blocks;
  return out;
}

json report_json(const AlgebraReport& rep) {
  json lines = json::array();
  for (const auto& l : rep.lines)
    lines.push_back(json{{"name", l.name}, {"pass", l.pass}, {"skipped", l.skipped}});
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalised multi-edge spinal group toolkit"};
  app.require_subcommand(1);

  std::string datum_path;
  uint64_t seed = 1;

  // validate
  auto* sc_validate = app.add_subcommand("validate", "validate a datum file");
  sc_validate->add_option("datum", datum_path)->required();

  // classify
  auto* sc_classify = app.add_subcommand("classify", "classification flags of a datum");
  sc_classify->add_option("datum", datum_path)->required();

  // portrait
  std::string gen_name, word_text, vertex_text;
  int depth_arg = 3;
  auto* sc_portrait = app.add_subcommand("portrait", "depth-n portrait of a generator or word");
  sc_portrait->add_option("--datum", datum_path)->required();
  sc_portrait->add_option("--gen", gen_name);
  sc_portrait->add_option("--word", word_text);
  sc_portrait->add_option("--depth", depth_arg);

  // act
  auto* sc_act = app.add_subcommand("act", "image of a vertex under a word");
  sc_act->add_option("--datum", datum_path)->required();
  sc_act->add_option("--word", word_text)->required();
  sc_act->add_option("--vertex", vertex_text)->required();

  // order
  int cap = 4096;
  auto* sc_order = app.add_subcommand("order", "element order of a word");
  sc_order->add_option("--datum", datum_path)->required();
  sc_order->add_option("--word", word_text)->required();
  sc_order->add_option("--cap", cap);

  // theta-trace
  int max_steps = 64, theta_family = 0;
  auto* sc_theta = app.add_subcommand("theta-trace", "length reduction trace of a kernel word");
  sc_theta->add_option("--datum", datum_path)->required();
  sc_theta->add_option("--word", word_text)->required();
  sc_theta->add_option("--max-steps", max_steps);
  sc_theta->add_option("--family", theta_family);

  // certify
  std::string cert_kind;
  int cert_depth = 4, csp_n = 2, csp_m = 3, dg_family = 0, dg_index = 1;
  std::string u_text, uprime_text, v_text;
  auto* sc_certify = app.add_subcommand("certify", "finite-depth certificates");
  sc_certify->add_option("kind", cert_kind, "gamma3|derived|csp|dagger")->required();
  sc_certify->add_option("--datum", datum_path)->required();
  sc_certify->add_option("--depth", cert_depth);
  sc_certify->add_option("--n", csp_n);
  sc_certify->add_option("--quotient-level", csp_m);
  sc_certify->add_option("--u", u_text);
  sc_certify->add_option("--uprime", uprime_text);
  sc_certify->add_option("--v", v_text);
  sc_certify->add_option("--family", dg_family);
  sc_certify->add_option("--index", dg_index);

  // quotient
  std::string quotient_query, contains_word;
  int qlevel = 2;
  auto* sc_quotient = app.add_subcommand("quotient", "finite congruence quotient queries");
  sc_quotient->add_option("--datum", datum_path)->required();
  sc_quotient->add_option("--level", qlevel)->required();
  sc_quotient->add_option("query", quotient_query, "order|abelian-rank|contains|derived-index")
      ->required();
  sc_quotient->add_option("--word", contains_word);

  // algebra
  std::string algebra_query;
  int alevel = 2, max_j = 3, pairs = 50;
  auto* sc_algebra = app.add_subcommand("algebra", "tree enveloping algebra truncation checks");
  sc_algebra->add_option("--datum", datum_path)->required();
  sc_algebra->add_option("--level", alevel)->required();
  sc_algebra->add_option("query", algebra_query, "astar-check|xpowers|nilindex|phi-check|rho-check")
      ->required();
  sc_algebra->add_option("--max-j", max_j);
  sc_algebra->add_option("--pairs", pairs);

  // corpus
  int corpus_size = 10, corpus_maxlen = 8;
  bool in_derived = false;
  auto* sc_corpus = app.add_subcommand("corpus", "reproducible pseudo-random word corpus");
  sc_corpus->add_option("--datum", datum_path)->required();
  sc_corpus->add_option("--seed", seed);
  sc_corpus->add_option("--size", corpus_size)->required();
  sc_corpus->add_option("--max-len", corpus_maxlen);
  sc_corpus->add_flag("--in-derived", in_derived);

  CLI11_PARSE(app, argc, argv);

  try {
    GroupDatum d = load_datum_file(datum_path);

    if (sc_validate->parsed()) {
      Report rep("validate", d, seed);
      rep.j["results"] = {{"valid", true}, {"p", d.p()}, {"datum", datum_to_json(d)}};
      return rep.finish(true);
    }

    if (sc_classify->parsed()) {
      Report rep("classify", d, seed);
      Classification cl = classify(d);
      rep.j["results"] = {{"standard_form_valid", cl.standard_form_valid},
                          {"in_C_reg", cl.in_c_reg},
                          {"torsion_criterion", cl.torsion_criterion},
                          {"condition_i_nonsymmetric", cl.condition_i_nonsymmetric},
                          {"condition_ii_shared_vector", cl.condition_ii_shared_vector},
                          {"contains_generalised_GS", cl.contains_generalised_gs},
                          {"n", cl.n}};
      return rep.finish(true);
    }

    if (sc_portrait->parsed()) {
      Report rep("portrait", d, seed);
      rep.j["parameters"] = {{"depth", depth_arg}, {"gen", gen_name}, {"word", word_text}};
      Portrait f = Portrait::identity(d.p(), depth_arg);
      if (!gen_name.empty()) {
        ReducedWord w = parse_word(d, gen_name);
        f = word_portrait(d, w, depth_arg);
      } else if (!word_text.empty()) {
        f = word_portrait(d, parse_word(d, word_text), depth_arg);
      } else {
        throw std::invalid_argument("portrait: need --gen or --word");
      }
      rep.j["results"] = portrait_to_json(f);
      return rep.finish(true);
    }

    if (sc_act->parsed()) {
      Report rep("act", d, seed);
      ReducedWord w = parse_word(d, word_text);
      VertexAddress u = VertexAddress::parse(vertex_text, d.p());
      Portrait f = word_portrait(d, w, static_cast<int>(u.level()));
      rep.j["parameters"] = {{"word", word_text}, {"vertex", vertex_text}};
      rep.j["results"] = {{"image", act(f, u).str()}};
      return rep.finish(true);
    }

    if (sc_order->parsed()) {
      Report rep("order", d, seed);
      ReducedWord w = parse_word(d, word_text);
      rep.j["parameters"] = {{"word", word_text}, {"cap", cap}};
      auto ord = element_order(d, w, cap);
      if (ord)
        rep.j["results"] = {{"order", *ord}};
      else
        rep.j["results"] = {{"order", "unknown within cap"}};
      return rep.finish(ord.has_value());
    }

    if (sc_theta->parsed()) {
      Report rep("theta-trace", d, seed);
      ReducedWord z = parse_word(d, word_text);
      rep.j["parameters"] = {{"word", word_text}, {"max_steps", max_steps}};
      ThetaTrace trace = reduce_to_terminal(d, z, max_steps, theta_family);
      json steps = json::array();
      for (const auto& st : trace.steps)
        steps.push_back(json{{"op", st.op},
                             {"input", st.input.str(d)},
                             {"output", st.output.str(d)},
                             {"length_before", st.length_before},
                             {"length_after", st.length_after}});
      rep.j["results"] = {{"steps", steps}};
      if (trace.terminal_length)
        rep.j["results"]["terminal_length"] = *trace.terminal_length;
      else
        rep.j["results"]["aborted"] = trace.abort_reason;
      return rep.finish(trace.terminated());
    }

    if (sc_certify->parsed()) {
      Report rep("certify " + cert_kind, d, seed);
      Certificate cert;
      if (cert_kind == "gamma3") {
        cert = gamma3_branch_certificate(d, cert_depth);
      } else if (cert_kind == "derived") {
        cert = derived_branch_certificate(d, cert_depth);
      } else if (cert_kind == "csp") {
        auto [wit, c] = csp_witness(d, csp_n, csp_m);
        cert = c;
        rep.j["witness"] = {{"n", wit.n},
                            {"b", d.gen_name(wit.b)},
                            {"c", d.gen_name(wit.c)},
                            {"t_n", portrait_to_json(wit.t_n)}};
      } else if (cert_kind == "dagger") {
        auto [g, c] = dagger_witness(d, VertexAddress::parse(u_text, d.p()),
                                     VertexAddress::parse(uprime_text, d.p()),
                                     VertexAddress::parse(v_text, d.p()), dg_family, dg_index);
        cert = c;
        rep.j["witness"] = g.str(d);
      } else {
        throw std::invalid_argument("unknown certificate kind: " + cert_kind);
      }
      rep.j["results"] = certificate_to_json(cert);
      return rep.finish(cert.overall);
    }

    if (sc_quotient->parsed()) {
      Report rep("quotient " + quotient_query, d, seed);
      rep.j["parameters"] = {{"level", qlevel}};
      PermQuotient q(d, qlevel, max_points_guard());
      if (quotient_query == "order") {
        rep.j["results"] = {{"order_exponent", q.order_exponent()},
                            {"order", "p^" + std::to_string(q.order_exponent())}};
        return rep.finish(true);
      }
      if (quotient_query == "abelian-rank") {
        rep.j["results"] = {{"rank", abelian_rank(q)}};
        return rep.finish(true);
      }
      if (quotient_query == "contains") {
        ReducedWord w = parse_word(d, contains_word);
        rep.j["parameters"]["word"] = contains_word;
        rep.j["results"] = {{"contains", q.contains(q.image(w))},
                            {"exponents", exponents_json(d, exponents(d, w))}};
        return rep.finish(true);
      }
      if (quotient_query == "derived-index") {
        DerivedSubgroup der(q);
        rep.j["results"] = {{"index_exponent", q.order_exponent() - der.order_exponent()}};
        return rep.finish(true);
      }
      throw std::invalid_argument("unknown quotient query: " + quotient_query);
    }

    if (sc_algebra->parsed()) {
      Report rep("algebra " + algebra_query, d, seed);
      rep.j["parameters"] = {{"level", alevel}};
      Gen g{d.designated_family(), 1};
      if (algebra_query == "astar-check") {
        AlgebraReport r;
        AlgebraElement as = a_star(d, alevel);
        r.add("a_*^2 = 0", (as.m * as.m).is_zero());
        for (const Gen& gen : d.generators()) {
          if (gen.is_a()) continue;
          AlgebraElement bs = b_star(d, gen, alevel);
          r.add(d.gen_name(gen) + "_*^2 = 0", (bs.m * bs.m).is_zero());
        }
        rep.j["results"] = report_json(r);
        return rep.finish(r.all_pass());
      }
      if (algebra_query == "xpowers") {
        AlgebraReport r = x_power_check(d, g, alevel, max_j);
        rep.j["results"] = report_json(r);
        return rep.finish(r.all_pass());
      }
      if (algebra_query == "nilindex") {
        AlgebraElement bs = b_star(d, g, alevel);
        AlgebraElement as = a_star(d, alevel);
        AlgebraElement x{d.p(), alevel, bs.m * as.m};
        auto k = nilpotency_index(x);
        rep.j["results"] = {{"element", "b_* a_*"},
                            {"nilpotency_index", k ? json(*k) : json("not nilpotent within bound")}};
        return rep.finish(k.has_value());
      }
      if (algebra_query == "phi-check") {
        std::mt19937_64 rng(seed);
        bool ok = true;
        for (int t = 0; t < pairs && ok; ++t) {
          CorpusOptions opt;
          opt.seed = rng();
          opt.size = 2;
          opt.max_length = 6;
          auto ws = make_corpus(d, opt);
          if (ws.size() < 2) continue;
          AlgebraElement u = chi(d, ws[0], alevel), v = chi(d, ws[1], alevel);
          AlgebraElement uv{d.p(), alevel, u.m * v.m};
          auto gu = phi_embed(u), gv = phi_embed(v), guv = phi_embed(uv);
          // Block-product oracle.
          for (int rr = 0; rr < d.p() && ok; ++rr)
            for (int cc = 0; cc < d.p() && ok; ++cc) {
              FpMat sum(d.p(), gu[0][0].dim());
              for (int kk = 0; kk < d.p(); ++kk) sum = sum + gu[rr][kk] * gv[kk][cc];
              ok = sum == guv[rr][cc];
            }
        }
        rep.j["results"] = {{"phi_multiplicative", ok}, {"pairs", pairs}};
        return rep.finish(ok);
      }
      if (algebra_query == "rho-check") {
        AlgebraReport r = rho_identity_check(d, alevel);
        rep.j["results"] = report_json(r);
        rep.j["results"].push_back(
            json{{"name", "depth(rho) series (diagnostic)"},
                 {"series", rho_depth_series(d, alevel)},
                 {"pass", true},
                 {"skipped", true}});
        return rep.finish(r.all_pass());
      }
      throw std::invalid_argument("unknown algebra query: " + algebra_query);
    }

    if (sc_corpus->parsed()) {
      Report rep("corpus", d, seed);
      CorpusOptions opt;
      opt.seed = seed;
      opt.size = corpus_size;
      opt.max_length = corpus_maxlen;
      opt.in_derived = in_derived;
      rep.j["parameters"] = {{"size", corpus_size},
                             {"max_len", corpus_maxlen},
                             {"in_derived", in_derived}};
      auto words = make_corpus(d, opt);
      json list = json::array();
      for (const auto& w : words) list.push_back(w.str(d));
      rep.j["results"] = {{"words", list}};
      return rep.finish(true);
    }
  } catch (const std::invalid_argument& ex) {
    std::cout << json{{"error", ex.what()}}.dump(2) << std::endl;
    return 2;
  } catch (const std::exception& ex) {
    std::cout << json{{"error", ex.what()}}.dump(2) << std::endl;
    return 2;
  }
  return 2;
}
