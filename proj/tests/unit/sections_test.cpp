#include <gtest/gtest.h>

#include "gpd/error.hpp"
#include "gpd/sections.hpp"
#include "support.hpp"

using namespace gpd;

namespace {

SectionWord constant(const Model& m, Rational c) { return SectionWord::bundle_section(m, PLFunction::constant(c)); }

OpenSet1D iv(Rational a, Rational b) { return OpenSet1D::interval(Bound(a), Bound(b)); }

// Pointwise oracle: evaluate letters one by one along the word.
ModelArrow evaluate_letters(const Model& m, const SectionWord& w, const Rational& x) {
  if (is_bundle(m)) {
    Rational t(0);
    for (const auto& e : w.entries()) t += e.data(x);
    return {{"", x}, {"", x}, t};
  }
  Point p{w.src_chart(), x};
  for (const auto& e : w.entries()) p = {e.tgt, e.data(p.y)};
  return {{w.src_chart(), x}, p, Rational(0)};
}

}  // namespace

TEST(Sections, BundleProductAddsValues) {
  Model m = build_pradines_1();
  SectionWord a = SectionWord::bundle_section(m, PLFunction::affine({Rational(1), Rational(0)}, iv(-1, 2)));
  SectionWord b = SectionWord::bundle_section(m, PLFunction::constant(Rational(1, 8), iv(0, 3)));
  SectionWord ab = ehresmann_product(m, a, b);
  EXPECT_EQ(ab.domain(), iv(0, 2));
  EXPECT_EQ(ab.entries().size(), 2u);
  EXPECT_EQ(ab.values()(Rational(1)), Rational(9, 8));
  EXPECT_THROW(ehresmann_product(m, a, SectionWord::bundle_section(m, PLFunction::constant(0, iv(5, 6)))), Error);
}

TEST(Sections, ChartProductComposesTargetMaps) {
  Model m = build_mobius();
  SectionWord e1 = SectionWord::edge_section(m, "e1");
  SectionWord e2 = SectionWord::edge_section(m, "e2");
  SectionWord loop = ehresmann_product(m, e1, e2);
  EXPECT_EQ(loop.src_chart(), "A");
  EXPECT_EQ(loop.tgt_chart(), "A");
  EXPECT_EQ(loop.target_map()(Rational(1, 3)), Rational(-1, 3));
  EXPECT_THROW(ehresmann_product(m, e1, e1), Error);
}

TEST(Sections, EvaluateOutsideDomainThrows) {
  Model m = build_pradines_1();
  SectionWord s = SectionWord::bundle_section(m, PLFunction::constant(Rational(0), iv(0, 1)));
  try {
    s.evaluate(m, Rational(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInDomain);
  }
}

TEST(SectionsProperty, ProductsMatchLetterwiseEvaluation) {
  test::Rng rng(23);
  Model b = build_pradines_2({0});
  Model c = build_mobius();
  const std::vector<std::string> edges = {"idA", "idB", "e1", "e2", "e1~", "e2~"};
  for (int i = 0; i < 300; ++i) {
    SectionWord w = SectionWord::bundle_section(b, test::random_pl(rng, Rational(-3), Rational(3), i % 2 == 0));
    for (int k = 0; k < 2; ++k) {
      try {
        w = ehresmann_product(b, w, SectionWord::bundle_section(b, test::random_pl(rng, Rational(-2), Rational(4), true)));
      } catch (const Error&) {
      }
    }
    for (const auto& x : test::samples(w.values(), rng))
      EXPECT_TRUE(arrow_equal(b, w.evaluate(b, x), evaluate_letters(b, w, x)));

    SectionWord v = SectionWord::edge_section(c, edges[test::pick(rng, 0, 5)],
                                              iv(test::frac(rng, -8, -1, 8), test::frac(rng, 1, 8, 8)));
    for (int k = 0; k < 3; ++k) {
      std::vector<std::string> next;
      for (const auto& e : edges)
        if (build_mobius().edge(e).src == v.tgt_chart()) next.push_back(e);
      try {
        v = ehresmann_product(c, v, SectionWord::edge_section(c, next[test::pick(rng, 0, (int)next.size() - 1)]));
      } catch (const Error&) {
      }
    }
    for (const auto& x : test::samples(v.target_map(), rng)) {
      ModelArrow got = v.evaluate(c, x), want = evaluate_letters(c, v, x);
      EXPECT_EQ(got.tgt, want.tgt);
    }
  }
}

TEST(SectionsProperty, GeneralisedInverseLaws) {
  test::Rng rng(29);
  Model m = build_pradines_1();
  for (int i = 0; i < 200; ++i) {
    SectionWord s = SectionWord::bundle_section(m, test::random_pl(rng, Rational(-2), Rational(2), i % 2 == 0));
    SectionWord t = section_inverse(m, s);
    SectionWord sts = ehresmann_product(m, ehresmann_product(m, s, t), s);
    SectionWord tst = ehresmann_product(m, ehresmann_product(m, t, s), t);
    EXPECT_EQ(sts.values(), s.values());
    EXPECT_EQ(tst.values(), t.values());
  }
  Model c = build_mobius();
  SectionWord e = SectionWord::edge_section(c, "e2", iv(Rational(-1, 2), Rational(3, 4)));
  SectionWord ei = section_inverse(c, e);
  EXPECT_EQ(ei.entries().front().edge, "e2~");
  EXPECT_EQ(ehresmann_product(c, ehresmann_product(c, e, ei), e).target_map(), e.target_map());
}

TEST(Sections, PowerOfS) {
  Model m = build_pradines_1();
  SectionWord nine = section_power(m, constant(m, Rational(1, 8)), 9);
  EXPECT_EQ(nine.entries().size(), 9u);
  EXPECT_EQ(nine.values()(Rational(3)), Rational(9, 8));
  EXPECT_EQ(section_power(m, constant(m, Rational(1, 8)), -2).values()(Rational(0)), Rational(-1, 4));
  EXPECT_TRUE(section_power(m, constant(m, Rational(1, 8)), 0).entries().empty());
}

TEST(Admissible, ChartClauses) {
  Model m = build_mobius();
  auto clause = [&](SectionEntry e) { return is_admissible(m, e).witness.value("clause", ""); };
  PLFunction id = PLFunction::identity(iv(Rational(-1, 2), Rational(1, 2)));
  EXPECT_TRUE(is_admissible(m, {"", "A", "B", id, false}).holds);
  EXPECT_EQ(clause({"", "A", "B", PLFunction::identity(OpenSet1D()), false}), "empty_domain");
  EXPECT_EQ(clause({"", "A", "B", PLFunction::identity(iv(0, 2)), false}), "source_outside_transversal");
  PLFunction fold = test::pl({{Bound(Rational(-1, 2)), Bound(0), Rational(-1), Rational(0)}, {Bound(0), Bound(Rational(1, 2)), Rational(1), Rational(0)}});
  EXPECT_EQ(clause({"", "A", "B", fold, false}), "not_homeomorphism");
  EXPECT_EQ(clause({"", "A", "B", PLFunction::affine({Rational(4), Rational(0)}, iv(Rational(-1, 2), Rational(1, 2))), false}),
            "target_outside_transversal");
  EXPECT_EQ(clause({"", "A", "B", PLFunction::affine({Rational(1), Rational(1, 8)}, iv(Rational(-1, 2), Rational(1, 2))), false}),
            "not_in_G");
}

TEST(Procedure, NineSFailsOnlyAtTheJump) {
  Model m = build_pradines_1();
  SectionWord s = constant(m, Rational(1, 8));
  EXPECT_TRUE(is_local_procedure(m, s).holds);
  SectionWord nine = section_power(m, s, 9);
  Verdict at0 = is_local_procedure(m, nine, Rational(0));
  EXPECT_FALSE(at0.holds);
  EXPECT_EQ(at0.witness.value("reason", ""), "forced_branch");
  EXPECT_TRUE(is_local_procedure(m, nine, Rational(1, 2)).holds);
  // q(x, 9/8) is outside W where the fiber is R.
  EXPECT_FALSE(is_local_procedure(m, nine, Rational(-1, 2)).holds);
  EXPECT_FALSE(is_local_procedure(m, nine).holds);
}

TEST(Procedure, SmoothnessMatters) {
  Model m1 = build_pradines_2({1}), m0 = build_pradines_2({0});
  SectionWord nine1 = section_power(m1, constant(m1, Rational(1, 8)), 9);
  SectionWord nine0 = section_power(m0, constant(m0, Rational(1, 8)), 9);
  EXPECT_FALSE(is_local_procedure(m1, nine1, Rational(0)).holds);
  EXPECT_TRUE(is_local_procedure(m0, nine0, Rational(0)).holds);
}

TEST(Procedure, ChartGermMustBeASheet) {
  Model m = build_mobius();
  SectionWord loop = ehresmann_product(m, SectionWord::edge_section(m, "e1"), SectionWord::edge_section(m, "e2"));
  Verdict v = is_local_procedure(m, loop, Rational(1, 2));
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.witness.value("reason", ""), "germ_not_in_W");
  EXPECT_TRUE(is_local_procedure(m, SectionWord::edge_section(m, "e2~")).holds);
}

TEST(SectionThrough, BundleVariantsPassThroughW) {
  Model m = build_pradines_1();
  ModelArrow w{{"", Rational(0)}, {"", Rational(0)}, Rational(7, 8)};
  for (int v = 0; v < 3; ++v) {
    SectionWord s = local_section_through(m, w, v);
    EXPECT_TRUE(arrow_equal(m, s.evaluate(m, Rational(0)), w)) << v;
    EXPECT_TRUE(is_local_procedure(m, s).holds) << v;
  }
  ModelArrow outside{{"", Rational(-1)}, {"", Rational(-1)}, Rational(1, 2)};
  EXPECT_THROW(local_section_through(m, outside), Error);
}

TEST(SectionThrough, ChartSheet) {
  Model m = build_mobius();
  ModelArrow w{{"B", Rational(1, 2)}, {"A", Rational(-1, 2)}, Rational(0)};
  SectionWord s = local_section_through(m, w, 1);
  EXPECT_EQ(s.entries().front().edge, "e2");
  EXPECT_EQ(s.domain(), iv(Rational(1, 4), Rational(3, 4)));
}

TEST(PositiveSet, JumpsAndZeros) {
  PLFunction f = test::pl({{Bound::neg_inf(), Bound(0), Rational(1), Rational(1)},
                           {Bound(0), Bound::pos_inf(), Rational(0), Rational(-1)}});
  EXPECT_EQ(positive_set(f), iv(-1, 0));
}
