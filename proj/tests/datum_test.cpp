#include <doctest.h>

#include "common.hpp"
#include "gmes/datum.hpp"

using namespace gmes;

TEST_CASE("validate accepts the Pervova datum") {
  GroupDatum d = testing::pervova();
  CHECK(d.p() == 3);
  CHECK(d.r(1) == 1);
  CHECK(d.r(2) == 0);
  CHECK(d.r(3) == 1);
  CHECK(d.designated_family() == 1);
  CHECK(d.second_family() == 3);
  CHECK(d.spine(1) == 3);
  CHECK(d.spine(3) == 1);
}

TEST_CASE("validate rejects bad data") {
  CHECK_THROWS_WITH_AS(GroupDatum::validate(4, {{}, {}, {}, {}}), "p must be an odd prime",
                       std::invalid_argument);
  CHECK_THROWS_AS(GroupDatum::validate(9, {{}, {}, {}, {}, {}, {}, {}, {}, {}}),
                  std::invalid_argument);
  // (2,1) = 2*(1,2) mod 3: dependent family.
  CHECK_THROWS_AS(GroupDatum::validate(3, {{{1, 2}, {2, 1}}, {}, {}}), std::invalid_argument);
  // All families empty.
  CHECK_THROWS_AS(GroupDatum::validate(3, {{}, {}, {}}), std::invalid_argument);
  // Too many vectors in one family.
  CHECK_THROWS_AS(GroupDatum::validate(3, {{{1, 0}, {0, 1}, {1, 1}}, {}, {}}),
                  std::invalid_argument);
  // Wrong vector length.
  CHECK_THROWS_AS(GroupDatum::validate(3, {{{1, 2, 0}}, {}, {}}), std::invalid_argument);
}

TEST_CASE("validate accepts the exceptional p=5 family") {
  GroupDatum d = GroupDatum::validate(5, {{}, {{1, 0, 0, 0}, {1, 0, 0, 1}}, {}, {}, {}});
  CHECK(d.r(2) == 2);
}

TEST_CASE("entries are reduced mod p") {
  GroupDatum d = GroupDatum::validate(3, {{{4, -1}}, {}, {}});
  CHECK(d.vec(1, 1) == std::vector<uint8_t>{1, 2});
}

TEST_CASE("classify the Pervova EGS datum") {
  Classification cl = classify(testing::pervova());
  CHECK(cl.standard_form_valid);
  CHECK(cl.torsion_criterion);  // 1 + 2 = 0 mod 3
  CHECK(cl.condition_ii_shared_vector);
  CHECK(cl.condition_i_nonsymmetric);  // e_1 != e_2
  CHECK(cl.in_c_reg);
  CHECK(cl.contains_generalised_gs);  // {1,2} = {1,...,p-1}
  CHECK(cl.n == 2);
}

TEST_CASE("classify flags constant vectors") {
  Classification cl = classify(GroupDatum::validate(3, {{{1, 1}}, {}, {}}));
  CHECK_FALSE(cl.in_c_reg);
  CHECK_FALSE(cl.condition_i_nonsymmetric);
  CHECK_FALSE(cl.contains_generalised_gs);
}

TEST_CASE("classify a p=5 generalised Gupta-Sidki vector") {
  Classification cl = classify(GroupDatum::validate(5, {{{1, 2, 4, 3}}, {}, {}, {}, {}}));
  CHECK(cl.contains_generalised_gs);
  CHECK(cl.torsion_criterion);  // 1+2+4+3 = 10 = 0 mod 5
  CHECK_FALSE(cl.condition_ii_shared_vector);
  CHECK(cl.n == 4);
}

TEST_CASE("classify is invariant under family basis change") {
  GroupDatum d = GroupDatum::validate(5, {{{1, 0, 0, 0}, {1, 0, 0, 1}}, {}, {}, {}, {}});
  GroupDatum e = GroupDatum::validate(5, {{{2, 0, 0, 1}, {3, 0, 0, 1}}, {}, {}, {}, {}});
  // Same row span over F_5: {(1,0,0,0),(1,0,0,1)} vs {(2,0,0,1),(3,0,0,1)}.
  Classification cd = classify(d), ce = classify(e);
  CHECK(cd.in_c_reg == ce.in_c_reg);
  CHECK(cd.condition_i_nonsymmetric == ce.condition_i_nonsymmetric);
  CHECK(cd.condition_ii_shared_vector == ce.condition_ii_shared_vector);
}

TEST_CASE("normalize_first_generator") {
  SUBCASE("scales by the inverse of the leading entry") {
    GroupDatum d = GroupDatum::validate(3, {{{2, 1}}, {}, {}});
    GroupDatum n = normalize_first_generator(d);
    CHECK(n.vec(1, 1) == std::vector<uint8_t>{1, 2});  // (2,1)^2 direction
  }
  SUBCASE("already normalized stays put") {
    GroupDatum d = testing::pervova();
    CHECK(normalize_first_generator(d).vec(1, 1) == std::vector<uint8_t>{1, 2});
  }
  SUBCASE("reorders to find a nonzero first entry") {
    GroupDatum d = GroupDatum::validate(3, {{{0, 1}, {1, 0}}, {}, {}});
    GroupDatum n = normalize_first_generator(d);
    CHECK(n.vec(1, 1) == std::vector<uint8_t>{1, 0});
  }
  SUBCASE("fails when the first column is zero") {
    GroupDatum d = GroupDatum::validate(5, {{{0, 1, 0, 0}, {0, 0, 1, 0}}, {}, {}, {}, {}});
    CHECK_THROWS_AS(normalize_first_generator(d), std::invalid_argument);
  }
}
