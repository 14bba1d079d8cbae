#include <doctest.h>

#include <random>

#include "common.hpp"
#include "gmes/portrait.hpp"

using namespace gmes;

namespace {

Portrait random_portrait(int p, int depth, std::mt19937_64& rng) {
  Portrait f = Portrait::identity(p, depth);
  for (int l = 0; l < depth; ++l)
    for (size_t k = 0; k < f.level_size(l); ++k)
      f.set_label_at(l, k, static_cast<int>(rng() % static_cast<uint64_t>(p)));
  return f;
}

VertexAddress va(const std::string& s, int p) { return VertexAddress::parse(s, p); }

}  // namespace

TEST_CASE("generator portraits of the Pervova EGS datum") {
  GroupDatum d = testing::pervova();

  SUBCASE("b = b^(1)_1 at depth 2") {
    Portrait b = generator_portrait(d, Gen{1, 1}, 2);
    CHECK(b.label(va("", 3)) == 0);
    CHECK(b.label(va("1", 3)) == 1);
    CHECK(b.label(va("2", 3)) == 2);
    CHECK(b.label(va("3", 3)) == 0);
  }
  SUBCASE("a at depth 1") {
    Portrait a = generator_portrait(d, kGenA, 1);
    CHECK(a.label(va("", 3)) == 1);
  }
  SUBCASE("c = b^(3)_1 at depth 2") {
    Portrait c = generator_portrait(d, Gen{3, 1}, 2);
    CHECK(c.label(va("1", 3)) == 0);
    CHECK(c.label(va("2", 3)) == 1);
    CHECK(c.label(va("3", 3)) == 2);
  }
  SUBCASE("unknown generator and negative depth are rejected") {
    CHECK_THROWS_AS(generator_portrait(d, Gen{2, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(generator_portrait(d, Gen{1, 1}, -1), std::invalid_argument);
  }
}

TEST_CASE("compose on generator portraits") {
  GroupDatum d = testing::pervova();
  Portrait a = generator_portrait(d, kGenA, 2);
  Portrait b = generator_portrait(d, Gen{1, 1}, 2);

  SUBCASE("a a has root label 2") {
    Portrait aa = compose(a, a);
    CHECK(aa.label(va("", 3)) == 2);
    CHECK(aa.label(va("1", 3)) == 0);
  }
  SUBCASE("a^3 = 1") { CHECK(compose(a, compose(a, a)).is_identity()); }
  SUBCASE("b b doubles the labels") {
    Portrait bb = compose(b, b);
    CHECK(bb.label(va("1", 3)) == 2);
    CHECK(bb.label(va("2", 3)) == 1);
    CHECK(bb.label(va("3", 3)) == 0);
  }
  SUBCASE("mismatched depth is rejected") {
    CHECK_THROWS_AS(compose(a, generator_portrait(d, kGenA, 3)), std::invalid_argument);
  }
}

TEST_CASE("invert") {
  GroupDatum d = testing::pervova();
  SUBCASE("identity") { CHECK(invert(Portrait::identity(3, 2)).is_identity()); }
  SUBCASE("a inverse has root 2") {
    Portrait a = generator_portrait(d, kGenA, 2);
    CHECK(invert(a).label(va("", 3)) == 2);
  }
  SUBCASE("b inverse labels, checked against compose") {
    Portrait b = generator_portrait(d, Gen{1, 1}, 2);
    Portrait binv = invert(b);
    CHECK(binv.label(va("1", 3)) == 2);
    CHECK(binv.label(va("2", 3)) == 1);
    CHECK(compose(b, binv).is_identity());
  }
}

TEST_CASE("act") {
  GroupDatum d = testing::pervova();
  Portrait a = generator_portrait(d, kGenA, 2);
  Portrait b = generator_portrait(d, Gen{1, 1}, 2);
  CHECK(act(a, va("1", 3)) == va("2", 3));
  CHECK(act(b, va("12", 3)) == va("13", 3));
  CHECK(act(Portrait::identity(3, 3), va("231", 3)) == va("231", 3));
  CHECK_THROWS_AS(act(a, va("111", 3)), std::invalid_argument);
}

TEST_CASE("section") {
  GroupDatum d = testing::pervova();
  SUBCASE("b is its own section along the spine") {
    Portrait b3 = generator_portrait(d, Gen{1, 1}, 3);
    CHECK(section(b3, va("3", 3)) == generator_portrait(d, Gen{1, 1}, 2));
  }
  SUBCASE("sections of the identity are the identity") {
    CHECK(section(Portrait::identity(3, 3), va("21", 3)).is_identity());
  }
  SUBCASE("section of b c at vertex 2: the label arithmetic gives a^2 a = 1") {
    Portrait b = generator_portrait(d, Gen{1, 1}, 3);
    Portrait c = generator_portrait(d, Gen{3, 1}, 3);
    Portrait s = section(compose(b, c), va("2", 3));
    CHECK(s.is_identity());
  }
  SUBCASE("unfixed vertex is rejected") {
    Portrait a = generator_portrait(d, kGenA, 2);
    CHECK_THROWS_AS(section(a, va("1", 3)), std::invalid_argument);
  }
}

TEST_CASE("portrait algebra properties") {
  std::mt19937_64 rng(7);
  GroupDatum d = testing::pervova();
  const int depth = 3;

  SUBCASE("associativity and inverse laws on random portraits") {
    for (int t = 0; t < 50; ++t) {
      Portrait f = random_portrait(3, depth, rng);
      Portrait g = random_portrait(3, depth, rng);
      Portrait h = random_portrait(3, depth, rng);
      CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
      CHECK(compose(f, invert(f)).is_identity());
      VertexAddress u = va(t % 2 ? "12" : "313", 3);
      CHECK(act(compose(f, g), u) == act(g, act(f, u)));
    }
  }

  SUBCASE("every generator has order p") {
    for (const Gen& g : d.generators()) {
      Portrait gp = generator_portrait(d, g, 4);
      Portrait acc = gp;
      for (int i = 1; i < 3; ++i) acc = compose(acc, gp);
      CHECK(acc.is_identity());
    }
  }

  SUBCASE("section compatibility for level-1-fixing portraits") {
    for (int t = 0; t < 30; ++t) {
      Portrait f = random_portrait(3, depth, rng);
      Portrait g = random_portrait(3, depth, rng);
      f.set_label_at(0, 0, 0);  // both fix level 1
      g.set_label_at(0, 0, 0);
      for (int i = 1; i <= 3; ++i) {
        VertexAddress u = va(std::to_string(i), 3);
        CHECK(section(compose(f, g), u) ==
              compose(section(f, u), section(g, act(f, u))));
      }
    }
  }

  SUBCASE("truncation coherence for generators") {
    for (const Gen& g : d.generators())
      CHECK(truncate(generator_portrait(d, g, 5), 4) == generator_portrait(d, g, 4));
  }
}

TEST_CASE("assemble is inverse to sections") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Portrait f = random_portrait(3, 3, rng);
    f.set_label_at(0, 0, 0);
    std::vector<Portrait> secs;
    for (int i = 1; i <= 3; ++i) secs.push_back(section(f, va(std::to_string(i), 3)));
    CHECK(assemble(secs, 0) == f);
  }
}
