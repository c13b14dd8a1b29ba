#include <gtest/gtest.h>

#include "gpd/error.hpp"
#include "gpd/groupoid.hpp"
#include "support.hpp"

using namespace gpd;

namespace {

// Independent composition for pair x Z/m: (i>j:a)(j>k:b) = i>k:(a+b mod m).
std::string pair_cyclic_product(const std::string& g, const std::string& h, unsigned m) {
  auto parse = [](const std::string& s) {
    auto gt = s.find('>'), colon = s.find(':');
    return std::tuple<int, int, int>{std::stoi(s.substr(0, gt)), std::stoi(s.substr(gt + 1, colon - gt - 1)),
                                     std::stoi(s.substr(colon + 1))};
  };
  auto [i, j, a] = parse(g);
  auto [j2, k, b] = parse(h);
  EXPECT_EQ(j, j2);
  return std::to_string(i) + ">" + std::to_string(k) + ":" + std::to_string((a + b) % m);
}

}  // namespace

TEST(FiniteGroupoid, CompositionContract) {
  FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(3, 2);
  EXPECT_EQ(g.arrow_count(), 18u);
  EXPECT_FALSE(g.audit());
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    for (ArrowId b = 0; b < g.arrow_count(); ++b) {
      if (!g.composable(a, b)) {
        EXPECT_THROW(g.compose(a, b), Error);
        continue;
      }
      ArrowId ab = g.compose(a, b);
      EXPECT_EQ(g.src(ab), g.src(a));
      EXPECT_EQ(g.tgt(ab), g.tgt(b));
      EXPECT_EQ(g.name(ab), pair_cyclic_product(g.name(a), g.name(b), 2));
    }
}

TEST(FiniteGroupoid, IdentityAndInverseLaws) {
  FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(2, 3);
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    EXPECT_EQ(g.compose(g.identity(g.src(a)), a), a);
    EXPECT_EQ(g.compose(a, g.identity(g.tgt(a))), a);
    EXPECT_EQ(g.compose(a, g.inverse(a)), g.identity(g.src(a)));
  }
}

TEST(FiniteGroupoid, StarsAndVertexGroups) {
  FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(3, 2);
  ObjectId x = g.object("1");
  EXPECT_EQ(g.star(x).size(), 6u);
  EXPECT_EQ(g.vertex_group(x).size(), 2u);
  EXPECT_FALSE(g.is_equivalence_relation());
  EXPECT_TRUE(FiniteGroupoid::pair_groupoid({"a", "b"}).is_equivalence_relation());
}

TEST(FiniteGroupoid, RejectsBrokenTables) {
  std::vector<FiniteGroupoid::ArrowSpec> arrows = {{"e", "x", "x", true}, {"a", "x", "x", false}};
  std::vector<FiniteGroupoid::Composite> comp = {{"e", "e", "e"}, {"e", "a", "a"}, {"a", "e", "a"}};
  EXPECT_THROW(FiniteGroupoid({"x"}, arrows, comp, {{"e", "e"}, {"a", "a"}}), Error);  // a a missing
  comp.push_back({"a", "a", "e"});
  EXPECT_NO_THROW(FiniteGroupoid({"x"}, arrows, comp, {{"e", "e"}, {"a", "a"}}));
}

TEST(FiniteGroupoid, UnknownNames) {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(3);
  try {
    g.arrow_id("7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownArrow);
  }
}

TEST(Quotient, CyclicBySubgroupMatchesResidueOracle) {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(6);
  NormalSubgroupoid n(g, {g.arrow_id("0"), g.arrow_id("3")});
  Quotient q = quotient(g, n);
  EXPECT_EQ(q.groupoid.arrow_count(), 3u);
  EXPECT_FALSE(q.groupoid.audit());
  EXPECT_FALSE(morphism_defect(g, q.groupoid, q.projection));
  for (ArrowId a = 0; a < 6; ++a)
    for (ArrowId b = 0; b < 6; ++b) {
      bool same_class = (a + 6 - b) % 3 == 0;
      EXPECT_EQ(q.projection(a) == q.projection(b), same_class);
    }
}

TEST(NormalSubgroupoid, DetectsEscapingConjugate) {
  FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(2, 2);
  std::vector<ArrowId> members = {g.identity(0), g.identity(1), g.arrow_id("0>0:1")};
  try {
    NormalSubgroupoid n(g, members);
    FAIL() << "expected NotNormal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormal);
    EXPECT_FALSE(e.witness().is_null());
  }
  members.push_back(g.arrow_id("1>1:1"));
  EXPECT_NO_THROW(NormalSubgroupoid(g, members));
}

TEST(Morphism, DefectNamesFirstViolation) {
  FiniteGroupoid z4 = FiniteGroupoid::cyclic_group(4), z2 = FiniteGroupoid::cyclic_group(2);
  GroupoidMorphism mod2{{0}, {0, 1, 0, 1}};
  EXPECT_FALSE(morphism_defect(z4, z2, mod2));
  GroupoidMorphism bad{{0}, {0, 1, 1, 1}};
  EXPECT_TRUE(morphism_defect(z4, z2, bad));
}

TEST(GroupoidJson, RoundTrip) {
  FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(2, 2);
  FiniteGroupoid h = finite_groupoid_from_json(to_json(g));
  EXPECT_EQ(to_json(h), to_json(g));
}

// Random sub-pregroupoid tables stay associative after a round trip.
TEST(GroupoidProperty, AuditOnRandomProducts) {
  test::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    unsigned k = static_cast<unsigned>(test::pick(rng, 1, 3)), m = static_cast<unsigned>(test::pick(rng, 1, 4));
    FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(k, m);
    EXPECT_FALSE(g.audit()) << k << "x" << m;
    EXPECT_EQ(g.arrow_count(), k * k * m);
  }
}
