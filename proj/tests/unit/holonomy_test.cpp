#include <gtest/gtest.h>

#include <set>

#include "gpd/error.hpp"
#include "gpd/holonomy.hpp"
#include "support.hpp"

using namespace gpd;

namespace {

SectionWord constant(const Model& m, Rational c) { return SectionWord::bundle_section(m, PLFunction::constant(c)); }

GermClass germ(const Model& m, const SectionWord& w, Rational x, std::string chart = "") {
  return germ_of(m, w, {std::move(chart), x});
}

// Loop germs at a point: every word over the W edges of length <= depth that
// returns to the point, composed as slopes of the affine edge maps. Mobius
// edges are affine, so the loop group is the set of slopes.
std::set<Rational> loop_slopes(const ChartComplex& c, const Point& p, int depth) {
  std::set<Rational> out;
  std::function<void(const std::string&, Rational, Rational, int)> walk = [&](const std::string& chart, Rational y,
                                                                              Rational slope, int d) {
    if (d > 0 && chart == p.chart && y == p.y) out.insert(slope);
    if (d == depth) return;
    for (const auto& e : c.edges) {
      if (e.src != chart || !e.map.defined_at(y)) continue;
      walk(e.tgt, e.map(y), slope * e.map.piece_at(y).f.slope, d + 1);
    }
  };
  walk(p.chart, p.y, Rational(1), 0);
  return out;
}

GroupoidMorphism mod(unsigned from, unsigned to) {
  GroupoidMorphism f{{0}, {}};
  for (unsigned a = 0; a < from; ++a) f.on_arrows.push_back(a % to);
  return f;
}

}  // namespace

TEST(Germs, EqualityIsLocal) {
  Model m = build_pradines_1();
  SectionWord a = SectionWord::bundle_section(m, PLFunction::constant(Rational(1, 8), OpenSet1D::interval(Bound(-1), Bound(1))));
  SectionWord b = SectionWord::bundle_section(
      m, test::pl({{Bound(-1), Bound(Rational(1, 2)), Rational(0), Rational(1, 8)},
                   {Bound(Rational(1, 2)), Bound(2), Rational(1), Rational(0)}}));
  EXPECT_TRUE(germ_equal(m, germ(m, a, Rational(0)), germ(m, b, Rational(0))));
  EXPECT_FALSE(germ_equal(m, germ(m, a, Rational(3, 4)), germ(m, b, Rational(3, 4))));
  // Values agreeing modulo n on both sides give equal germs at x > 0.
  EXPECT_TRUE(germ_equal(m, germ(m, constant(m, Rational(1, 8)), Rational(1)), germ(m, constant(m, Rational(9, 8)), Rational(1))));
  // ... but not at 0, where the left side sees R.
  EXPECT_FALSE(germ_equal(m, germ(m, constant(m, Rational(1, 8)), Rational(0)), germ(m, constant(m, Rational(9, 8)), Rational(0))));
  EXPECT_THROW(germ(m, a, Rational(5)), Error);
}

TEST(Germs, ProductNeedsMatchingBase) {
  Model m = build_mobius();
  GermClass e1 = germ(m, SectionWord::edge_section(m, "e1"), Rational(1, 2), "A");
  GermClass e2 = germ(m, SectionWord::edge_section(m, "e2"), Rational(1, 2), "B");
  GermClass p = germ_product(m, e1, e2);
  EXPECT_EQ(final_map(m, p).tgt, (Point{"A", Rational(-1, 2)}));
  EXPECT_THROW(germ_product(m, e2, e2), Error);
  GermClass back = germ_product(m, p, germ_class_inverse(m, p));
  EXPECT_TRUE(in_j0(m, back).holds);
}

TEST(J0, GermLevelMembership) {
  Model m = build_pradines_1();
  EXPECT_TRUE(in_j0(m, germ(m, constant(m, Rational(0)), Rational(2))).holds);
  // Eight letters of 1/8 have identity value but the germ at 0 is forced off W.
  GermClass eight = germ(m, section_power(m, constant(m, Rational(1, 8)), 8), Rational(0));
  EXPECT_TRUE(is_identity(m, final_map(m, eight)));
  EXPECT_FALSE(in_j0(m, eight).holds);
  // Away from 0 the same word is in J0.
  EXPECT_TRUE(in_j0(m, germ(m, section_power(m, constant(m, Rational(1, 8)), 8), Rational(1, 2))).holds);
  EXPECT_FALSE(in_j0(m, germ(m, constant(m, Rational(1, 8)), Rational(1))).holds);
}

TEST(HolEqual, SourceMismatchThrows) {
  Model m = build_pradines_1();
  EXPECT_THROW(hol_equal(m, germ(m, constant(m, 0), Rational(0)), germ(m, constant(m, 0), Rational(1))), Error);
  EXPECT_TRUE(hol_equal(m, germ(m, constant(m, Rational(1, 8)), Rational(1)), germ(m, constant(m, Rational(9, 8)), Rational(1))));
}

TEST(Kernel, StepProfileModel) {
  Model m = build_pradines_1();
  KernelDescriptor k = kernel_at(m, {"", Rational(0)});
  EXPECT_EQ(k.label(), "Z");
  EXPECT_EQ(k.order, 0);
  ASSERT_TRUE(k.generator);
  EXPECT_EQ(k.generator->word.entries().size(), 8u);
  EXPECT_TRUE(is_identity(m, final_map(m, *k.generator)));
  for (auto x : {Rational(-2), Rational(-1, 2), Rational(1, 3), Rational(5), Rational(7)})
    EXPECT_EQ(kernel_at(m, {"", x}).kind, "trivial") << x;
}

TEST(Kernel, WidthChangesGeneratorLength) {
  QuotientBundleModel b = build_pradines_1();
  b.upper = PLFunction::constant(Rational(1, 2));
  b.lower = -b.upper;
  KernelDescriptor k = kernel_at(Model(b), {"", Rational(0)});
  EXPECT_EQ(k.kind, "Z");
  EXPECT_EQ(k.generator->word.entries().size(), 4u);
}

TEST(KernelProperty, ClassOfPowersRecovered) {
  Model m = build_pradines_1();
  KernelDescriptor k = kernel_at(m, {"", Rational(0)});
  for (int j = -3; j <= 3; ++j) {
    GermClass g = germ(m, section_power(m, k.generator->word, j), Rational(0));
    EXPECT_EQ(kernel_class(m, g), j);
  }
  // Sixteen letters of 1/16 wind once.
  GermClass other = germ(m, section_power(m, constant(m, Rational(1, 16)), 16), Rational(0));
  EXPECT_EQ(std::abs(kernel_class(m, other)), 1);
}

TEST(Kernel, AbsProfileDependsOnSmoothness) {
  EXPECT_EQ(kernel_at(build_pradines_2({0}), {"", Rational(0)}).kind, "trivial");
  KernelDescriptor k = kernel_at(build_pradines_2({1}), {"", Rational(0)});
  EXPECT_EQ(k.kind, "Z");
  EXPECT_EQ(k.certificate.value("obstruction", ""), "slope_kink");
  EXPECT_EQ(kernel_at(build_pradines_2({1}), {"", Rational(1)}).kind, "trivial");
}

TEST(Kernel, MobiusAgreesWithLoopOracle) {
  Model m = build_mobius();
  ChartComplex c = build_mobius();
  for (auto y : {Rational(0), Rational(1, 2), Rational(-3, 4)}) {
    Point p{"A", y};
    KernelDescriptor k = kernel_at(m, p, 4);
    // The only W-sheet loop germ at a point of A is idA (slope 1), so the
    // kernel order is the number of distinct loop slopes.
    std::set<Rational> slopes = loop_slopes(c, p, 4);
    long oracle_order = static_cast<long>(slopes.size());
    EXPECT_EQ(k.kind == "trivial" ? 1 : k.order, oracle_order) << y;
  }
  KernelDescriptor k0 = kernel_at(m, {"A", Rational(0)}, 4);
  EXPECT_EQ(k0.label(), "Z/2");
  GermClass sq = germ_product(m, *k0.generator, *k0.generator);
  EXPECT_TRUE(in_j0(m, sq).holds);
}

TEST(Kernel, DepthBoundIsReported) {
  try {
    kernel_at(build_mobius(), {"A", Rational(0)}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DepthExceeded);
  }
}

TEST(Extendible, Dichotomies) {
  Verdict p1 = is_extendible(build_pradines_1());
  EXPECT_FALSE(p1.holds);
  EXPECT_EQ(p1.witness.value("point", ""), "0");
  EXPECT_TRUE(is_extendible(build_pradines_2({0})).holds);
  Verdict p2 = is_extendible(build_pradines_2({1}));
  EXPECT_FALSE(p2.holds);
  EXPECT_EQ(p2.witness.value("reason", ""), "slope_kink");
  EXPECT_FALSE(is_extendible(build_mobius()).holds);
}

TEST(ChartMap, IndependentOfSectionChoice) {
  test::Rng rng(31);
  Model m = build_pradines_1();
  for (int i = 0; i < 60; ++i) {
    Rational x = test::frac(rng, -8, 8, 4), t = test::frac(rng, -7, 7, 32);
    ModelArrow w{{"", x}, {"", x}, t};
    SectionWord f = SectionWord::bundle_section(m, PLFunction::affine({test::frac(rng, -1, 1, 64), test::frac(rng, -3, 3, 32)}));
    HolClass h0 = chart_map(m, f, w, 0);
    for (int v = 1; v < 3; ++v) EXPECT_TRUE(hol_equal(m, h0, chart_map(m, f, w, v))) << x << " " << t;
  }
  Model c = build_mobius();
  ModelArrow w{{"B", Rational(1, 4)}, {"A", Rational(-1, 4)}, Rational(0)};
  SectionWord f = SectionWord::edge_section(c, "e1");
  EXPECT_TRUE(hol_equal(c, chart_map(c, f, w, 0), chart_map(c, f, w, 1)));
}

TEST(Transition, AgreesWithLeftTranslation) {
  Model m = build_pradines_2({0});
  SectionWord f = SectionWord::bundle_section(m, PLFunction::affine({Rational(1, 64), Rational(1, 32)}));
  SectionWord g = SectionWord::bundle_section(m, PLFunction::constant(Rational(-1, 16)));
  for (auto x : {Rational(-2), Rational(0), Rational(1, 2), Rational(3)}) {
    ModelArrow w{{"", x}, {"", x}, Rational(1, 16)};
    EXPECT_TRUE(arrow_equal(m, chart_transition(m, f, g, w), left_translate(m, f, g, w))) << x;
  }
  Model c = build_mobius();
  SectionWord e1 = SectionWord::edge_section(c, "e1");
  ModelArrow w{{"B", Rational(1, 2)}, {"B", Rational(1, 2)}, Rational(0)};
  EXPECT_TRUE(arrow_equal(c, chart_transition(c, e1, e1, w), w));
}

TEST(Transition, OutsideOverlapThrows) {
  Model c = build_mobius();
  SectionWord f = SectionWord::edge_section(c, "e1");
  SectionWord g = SectionWord::edge_section(c, "e2~");
  ModelArrow w{{"B", Rational(0)}, {"B", Rational(0)}, Rational(0)};
  try {
    chart_transition(c, f, g, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfOverlap);
  }
}

TEST(Generation, BundleAndChart) {
  EXPECT_TRUE(generates(build_pradines_1()).holds);
  EXPECT_TRUE(generates(build_mobius()).holds);
  Model m = build_pradines_1();
  auto word = generation_word(m, {{"", Rational(0)}, {"", Rational(0)}, Rational(1)});
  EXPECT_EQ(word.size(), 5u);
  auto path = generation_word(build_mobius(), {{"A", Rational(1, 2)}, {"A", Rational(-1, 2)}, Rational(0)});
  EXPECT_EQ(path.size(), 2u);
}

TEST(Normality, DeterministicPerSeed) {
  for (const Model& m : {Model(build_pradines_1()), Model(build_mobius())}) {
    NormalityReport a = normality_audit(m, 40, 5), b = normality_audit(m, 40, 5);
    EXPECT_EQ(a.to_json(), b.to_json());
    EXPECT_EQ(a.failures, 0);
    EXPECT_EQ(normality_audit(m, 40, 6).failures, 0);
  }
}

TEST(Lift, CyclicCover) {
  LiftProblem p;
  p.a = FiniteGroupoid::cyclic_group(8);
  p.g = FiniteGroupoid::cyclic_group(4);
  p.h = FiniteGroupoid::cyclic_group(8);
  p.phi = mod(8, 4);
  p.xi = mod(8, 4);
  p.w = {p.g.arrow_id("0"), p.g.arrow_id("1"), p.g.arrow_id("3")};
  p.i = {{p.g.arrow_id("0"), p.h.arrow_id("0")}, {p.g.arrow_id("1"), p.h.arrow_id("1")}, {p.g.arrow_id("3"), p.h.arrow_id("7")}};
  p.v = {p.a.arrow_id("1")};
  GroupoidMorphism lift = lift_morphism(p);
  for (ArrowId a = 0; a < 8; ++a) {
    EXPECT_EQ(lift(a), a);
    EXPECT_EQ(p.phi(lift(a)), p.xi(a));
  }
}

TEST(Lift, RelationViolationAndNonGenerating) {
  LiftProblem p;
  p.a = FiniteGroupoid::cyclic_group(4);
  p.g = FiniteGroupoid::cyclic_group(4);
  p.h = FiniteGroupoid::cyclic_group(8);
  p.phi = mod(8, 4);
  p.xi = mod(4, 4);
  p.w = {p.g.arrow_id("0"), p.g.arrow_id("1"), p.g.arrow_id("3")};
  p.i = {{p.g.arrow_id("0"), p.h.arrow_id("0")}, {p.g.arrow_id("1"), p.h.arrow_id("1")}, {p.g.arrow_id("3"), p.h.arrow_id("7")}};
  p.v = {p.a.arrow_id("1")};
  try {
    lift_morphism(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RelationViolation);
  }
  p.v = {p.a.arrow_id("2")};
  try {
    lift_morphism(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotGenerating);
  }
}
