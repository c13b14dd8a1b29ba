#include <gtest/gtest.h>

#include "gpd/error.hpp"
#include "gpd/json_io.hpp"
#include "gpd/models.hpp"
#include "gpd/suite.hpp"
#include "support.hpp"

using namespace gpd;

namespace {

// Brute force over integer shifts: some t - k n inside (lower, upper).
std::optional<Rational> window_oracle(const QuotientBundleModel& m, const Rational& x, const Rational& t) {
  Rational n = m.profile(x);
  for (int k = -200; k <= 200; ++k) {
    if (n.is_zero() && k != 0) continue;
    Rational u = t - Rational(k) * n;
    if (m.lower(x) < u && u < m.upper(x)) return u;
  }
  return std::nullopt;
}

}  // namespace

TEST(Builders, StepProfile) {
  QuotientBundleModel m = build_pradines_1();
  EXPECT_EQ(m.profile(Rational(-1, 100)), Rational(0));
  EXPECT_EQ(m.profile(Rational(0)), Rational(1));
  EXPECT_EQ(m.upper(Rational(5)), Rational(1, 4));
  EXPECT_TRUE(m.symmetric());
}

TEST(Builders, AbsProfile) {
  QuotientBundleModel m = build_pradines_2({1});
  EXPECT_EQ(m.profile(Rational(-3)), Rational(4));
  EXPECT_EQ(m.profile(Rational(1, 2)), Rational(3, 2));
  EXPECT_EQ(m.smoothness.r, 1);
}

TEST(Fibers, StarsOfStepProfile) {
  QuotientBundleModel m = build_pradines_1();
  EXPECT_FALSE(fiber_equal(m, Rational(-1), Rational(0), Rational(1)));
  EXPECT_TRUE(fiber_equal(m, Rational(-1), Rational(1, 3), Rational(1, 3)));
  EXPECT_TRUE(fiber_equal(m, Rational(1), Rational(1, 3), Rational(4, 3)));
  EXPECT_TRUE(fiber_equal(m, Rational(0), Rational(0), Rational(-5)));
  EXPECT_FALSE(fiber_equal(m, Rational(1), Rational(0), Rational(1, 2)));
}

TEST(WindowProperty, RepresentativeMatchesBruteForce) {
  test::Rng rng(11);
  for (const auto& m : {build_pradines_1(), build_pradines_2({0})}) {
    for (int i = 0; i < 400; ++i) {
      Rational x = test::frac(rng, -16, 16, 4), t = test::frac(rng, -80, 80, 16);
      auto got = window_rep(m, x, t);
      auto want = window_oracle(m, x, t);
      ASSERT_EQ(got.has_value(), want.has_value()) << x << " " << t;
      if (got) {
        EXPECT_EQ(*got, *want);
      }
      EXPECT_EQ(in_w(Model(m), {{"", x}, {"", x}, t}), want.has_value());
    }
  }
}

TEST(Arrows, ComposeInBundle) {
  Model m = build_pradines_1();
  ModelArrow a{{"", Rational(1)}, {"", Rational(1)}, Rational(3, 4)};
  ModelArrow b{{"", Rational(1)}, {"", Rational(1)}, Rational(1, 2)};
  ModelArrow ab = compose_arrows(m, a, b);
  EXPECT_TRUE(arrow_equal(m, ab, {{"", Rational(1)}, {"", Rational(1)}, Rational(1, 4)}));
  EXPECT_TRUE(is_identity(m, compose_arrows(m, a, inverse_arrow(a))));
  ModelArrow c{{"", Rational(2)}, {"", Rational(2)}, Rational(0)};
  EXPECT_THROW(compose_arrows(m, a, c), Error);
}

TEST(Arrows, MobiusSheets) {
  ChartComplex c = build_mobius();
  ModelArrow flip{{"B", Rational(1, 2)}, {"A", Rational(-1, 2)}, Rational(0)};
  EXPECT_EQ(sheet_of(c, flip).value_or(""), "e2");
  ModelArrow none{{"B", Rational(1, 2)}, {"A", Rational(1, 3)}, Rational(0)};
  EXPECT_FALSE(sheet_of(c, none));
}

TEST(WRepresentative, Reasons) {
  QuotientBundleModel p1 = build_pradines_1();
  auto r = w_representative(p1, PLFunction::constant(Rational(1)), Rational(0));
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.reason, "forced_branch");
  auto ok = w_representative(p1, PLFunction::constant(Rational(1)), Rational(1));
  EXPECT_TRUE(ok.found);
  EXPECT_EQ(ok.k, 1);

  auto kink = w_representative(build_pradines_2({1}), PLFunction::constant(Rational(1)), Rational(0));
  EXPECT_FALSE(kink.found);
  EXPECT_EQ(kink.reason, "slope_kink");
  EXPECT_TRUE(w_representative(build_pradines_2({0}), PLFunction::constant(Rational(1)), Rational(0)).found);
}

TEST(Axioms, BuiltinModelsPass) {
  for (const Model& m : {Model(build_pradines_1()), Model(build_pradines_2({0})), Model(build_pradines_2({1})),
                         Model(build_mobius())}) {
    AxiomReport rep = check_axioms(m);
    EXPECT_TRUE(rep.all()) << rep.to_json().dump();
  }
}

TEST(Axioms, ZeroWidthOnRightFailsIdentities) {
  QuotientBundleModel m = build_pradines_1();
  m.upper = test::pl({{Bound::neg_inf(), Bound(0), Rational(0), Rational(1, 4)},
                      {Bound(0), Bound::pos_inf(), Rational(0), Rational(0)}});
  m.lower = -m.upper;
  AxiomReport rep = check_axioms(m);
  EXPECT_FALSE(rep.g[0].holds);
  EXPECT_TRUE(rep.g[1].holds);
}

TEST(Axioms, AsymmetricWindowFailsSymmetry) {
  QuotientBundleModel m = build_pradines_1();
  m.lower = PLFunction::constant(Rational(-1, 8));
  AxiomReport rep = check_axioms(m);
  EXPECT_FALSE(rep.g[1].holds);
  EXPECT_TRUE(rep.g[0].holds && rep.g[2].holds && rep.g[3].holds && rep.g[4].holds);
}

TEST(Axioms, LongWindowFailsOpenness) {
  QuotientBundleModel m = build_pradines_1();
  m.upper = PLFunction::constant(Rational(3, 4));
  m.lower = -m.upper;
  EXPECT_FALSE(check_axioms(m).g[2].holds);
}

TEST(Axioms, EachMutationBreaksOneAxiom) {
  auto muts = suite::axiom_mutations();
  ASSERT_EQ(muts.size(), 5u);
  for (const auto& mu : muts) {
    AxiomReport rep = check_axioms(mu.model);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(rep.g[i].holds, i != mu.axiom) << mu.name << " G" << i + 1;
    EXPECT_FALSE(rep.g[mu.axiom].witness.is_null()) << mu.name;
  }
}

TEST(GenerationProperty, CertificateMultipliesBack) {
  test::Rng rng(5);
  for (const auto& m : {build_pradines_1(), build_pradines_2({0})}) {
    for (int i = 0; i < 200; ++i) {
      Rational x = test::frac(rng, -12, 12, 4), t = test::frac(rng, -40, 40, 8);
      Rational sum(0);
      for (const auto& l : generation_certificate(m, x, t)) {
        ASSERT_TRUE(window_rep(m, x, l.t)) << "letter outside W";
        sum = l.inverse ? sum - l.t : sum + l.t;
      }
      EXPECT_TRUE(fiber_equal(m, x, sum, t));
    }
  }
}

TEST(Orbits, MobiusLeaves) {
  ChartComplex c = build_mobius();
  auto orbit = w_orbit(c, {"A", Rational(1, 3)}, 4);
  EXPECT_TRUE(orbit.contains(Point{"B", Rational(1, 3)}));
  EXPECT_TRUE(orbit.contains(Point{"A", Rational(-1, 3)}));
  EXPECT_FALSE(orbit.contains(Point{"A", Rational(1, 5)}));
  EXPECT_EQ(leaf_through(c, {"A", Rational(0)}, 4).size(), 2u);
}

TEST(ModelJson, RoundTripPreservesFingerprint) {
  for (const Model& m : {Model(build_pradines_1()), Model(build_pradines_2({1})), Model(build_mobius())}) {
    nlohmann::json j = to_json(m);
    Model back = model_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(fingerprint(to_json(back)), fingerprint(j));
    EXPECT_EQ(j.dump().find('.'), std::string::npos) << "decimal output";
  }
}

TEST(ModelJson, RejectsBadDocuments) {
  EXPECT_THROW(model_from_json({{"family", "torus"}}), Error);
  nlohmann::json j = to_json(Model(build_pradines_1()));
  j["smoothness"] = 3;
  EXPECT_THROW(model_from_json(j), Error);
  j["smoothness"] = 0;
  j["profile"]["domain"] = {"0", "1"};
  EXPECT_THROW(model_from_json(j), Error);
}
