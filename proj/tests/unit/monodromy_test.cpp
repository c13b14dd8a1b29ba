#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "gpd/error.hpp"
#include "gpd/monodromy.hpp"
#include "support.hpp"

using namespace gpd;

namespace {

MonodromyWord word(std::string base, std::vector<std::string> letters) { return {std::move(base), std::move(letters)}; }

Pregroupoid z6_partial() {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(6);
  return Pregroupoid::finite(g, {g.arrow_id("0"), g.arrow_id("1"), g.arrow_id("5")});
}

// Equality in M(W) restricted to words of length <= len: classes of the
// equivalence generated by replacing a defined adjacent pair with its
// product (identities dropped).
class TruncatedM {
 public:
  TruncatedM(const Pregroupoid& p, int len) : p_(p) {
    const FiniteGroupoid& g = p.ambient();
    for (ArrowId a : p.carrier())
      if (!g.arrow(a).identity) letters_.push_back(a);
    for (ObjectId x = 0; x < g.object_count(); ++x) grow({x, {}}, len);
    parent_.resize(words_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const auto& w = words_[i].second;
      for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        auto ab = p.product(w[k], w[k + 1]);
        if (!ab) continue;
        auto v = w;
        v.erase(v.begin() + k, v.begin() + k + 2);
        if (!g.arrow(*ab).identity) v.insert(v.begin() + k, *ab);
        unite(i, index_.at({words_[i].first, v}));
      }
    }
  }

  std::size_t size() const { return words_.size(); }
  MonodromyWord word_at(std::size_t i) const {
    MonodromyWord w{p_.ambient().object_name(words_[i].first), {}};
    for (ArrowId a : words_[i].second) w.letters.push_back(p_.ambient().name(a));
    return w;
  }
  ObjectId base(std::size_t i) const { return words_[i].first; }
  bool same(std::size_t i, std::size_t j) { return find(i) == find(j); }

 private:
  using Key = std::pair<ObjectId, std::vector<ArrowId>>;

  void grow(Key w, int len) {
    index_[w] = words_.size();
    words_.push_back(w);
    if (static_cast<int>(w.second.size()) == len) return;
    const FiniteGroupoid& g = p_.ambient();
    ObjectId end = w.second.empty() ? w.first : g.tgt(w.second.back());
    for (ArrowId a : letters_)
      if (g.src(a) == end) {
        Key n = w;
        n.second.push_back(a);
        grow(n, len);
      }
  }
  std::size_t find(std::size_t i) { return parent_[i] == i ? i : parent_[i] = find(parent_[i]); }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  const Pregroupoid& p_;
  std::vector<ArrowId> letters_;
  std::vector<Key> words_;
  std::map<Key, std::size_t> index_;
  std::vector<std::size_t> parent_;
};

}  // namespace

TEST(Pregroupoid, RejectsNonInverseClosedCarrier) {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(6);
  EXPECT_THROW(Pregroupoid::finite(g, {g.arrow_id("0"), g.arrow_id("1")}), Error);
  EXPECT_THROW(Pregroupoid::finite(g, {g.arrow_id("1"), g.arrow_id("5")}), Error);
}

TEST(Pregroupoid, ProductOnlyInsideW) {
  Pregroupoid p = z6_partial();
  const auto& g = p.ambient();
  EXPECT_FALSE(p.product(g.arrow_id("1"), g.arrow_id("1")));
  EXPECT_EQ(p.product(g.arrow_id("1"), g.arrow_id("5")), g.arrow_id("0"));
}

TEST(Reduce, FiniteWords) {
  Pregroupoid p = z6_partial();
  EXPECT_EQ(mon_reduce(p, word("*", {"1", "5", "0", "1"})).letters, std::vector<std::string>{"1"});
  EXPECT_EQ(mon_reduce(p, word("*", {"1", "1"})).letters.size(), 2u);
  EXPECT_EQ(ambient_product(p, word("*", {"1", "1", "1"})), "3");
  EXPECT_THROW(mon_normalize(p, word("*", {"2"})), Error);
}

TEST(Reduce, BundleWords) {
  Pregroupoid p = Pregroupoid::bundle_piece(build_pradines_1());
  EXPECT_EQ(mon_reduce(p, word("1", {"1/8", "1/8"})).letters.size(), 2u);
  EXPECT_EQ(mon_reduce(p, word("1", {"1/8", "1/16"})).letters, std::vector<std::string>{"3/16"});
  EXPECT_EQ(mon_normalize(p, word("1", {"9/8"})).letters, std::vector<std::string>{"1/8"});
  EXPECT_THROW(mon_normalize(p, word("-1", {"9/8"})), Error);
  EXPECT_EQ(germ_sum(p, word("1", {"1/8", "-1/16"})), Rational(1, 16));
}

TEST(Equal, BundleWinding) {
  Pregroupoid p = Pregroupoid::bundle_piece(build_pradines_1());
  MonodromyWord eight = word("0", std::vector<std::string>(8, "1/8"));
  EXPECT_EQ(mon_equal(p, eight, word("0", {}), 4).verdict, MonVerdict::Distinct);
  EXPECT_EQ(mon_equal(p, word("0", {"1/8", "-1/16"}), word("0", {"1/16"}), 4).verdict, MonVerdict::Equal);
  EXPECT_EQ(mon_equal(p, word("-1", std::vector<std::string>(8, "1/8")), word("-1", {}), 4).verdict, MonVerdict::Distinct);
  EXPECT_THROW(mon_equal(p, eight, word("1", {}), 4), Error);
}

TEST(Equal, HonestUnknown) {
  Pregroupoid p = z6_partial();
  MonEquality e = mon_equal(p, word("*", std::vector<std::string>(6, "1")), word("*", {}), 6);
  EXPECT_EQ(e.verdict, MonVerdict::Unknown);
  EXPECT_EQ(mon_equal(p, word("*", {"1", "5"}), word("*", {}), 4).verdict, MonVerdict::Equal);
  EXPECT_EQ(mon_equal(p, word("*", {"1"}), word("*", {"5"}), 4).verdict, MonVerdict::Distinct);
}

// Words identified by the truncated congruence are equal; distinct verdicts
// only separate words the congruence keeps apart.
TEST(EqualProperty, AgreesWithTruncatedCongruence) {
  test::Rng rng(41);
  std::vector<Pregroupoid> cases;
  cases.push_back(z6_partial());
  for (unsigned m : {4u, 5u, 8u}) {
    FiniteGroupoid g = FiniteGroupoid::cyclic_group(m);
    std::vector<ArrowId> c = {g.arrow_id("0"), g.arrow_id("1"), g.arrow_id(std::to_string(m - 1))};
    cases.push_back(Pregroupoid::finite(g, c));
  }
  {
    FiniteGroupoid g = FiniteGroupoid::pair_times_cyclic(2, 2);
    std::vector<ArrowId> c;
    for (auto n : {"0>0:0", "1>1:0", "0>1:0", "1>0:0", "0>1:1", "1>0:1"}) c.push_back(g.arrow_id(n));
    cases.push_back(Pregroupoid::finite(g, c));
  }
  for (const auto& p : cases) {
    TruncatedM oracle(p, 4);
    int equal = 0;
    for (int t = 0; t < 150; ++t) {
      std::size_t i = static_cast<std::size_t>(test::pick(rng, 0, static_cast<int>(oracle.size()) - 1));
      std::size_t j = static_cast<std::size_t>(test::pick(rng, 0, static_cast<int>(oracle.size()) - 1));
      if (oracle.base(i) != oracle.base(j)) continue;
      MonodromyWord a = oracle.word_at(i), b = oracle.word_at(j);
      MonEquality e = mon_equal(p, a, b, 6);
      if (oracle.same(i, j)) {
        EXPECT_EQ(e.verdict, MonVerdict::Equal) << to_json(a).dump() << " " << to_json(b).dump();
        ++equal;
      }
      if (e.verdict == MonVerdict::Distinct) {
        EXPECT_FALSE(oracle.same(i, j));
        EXPECT_NE(ambient_product(p, a), ambient_product(p, b));
      }
    }
  }
}

TEST(Extend, UniqueExtensionToQuotient) {
  Pregroupoid p = z6_partial();
  FiniteGroupoid k = FiniteGroupoid::cyclic_group(3);
  const auto& g = p.ambient();
  std::map<ArrowId, ArrowId> f = {{g.arrow_id("0"), k.arrow_id("0")}, {g.arrow_id("1"), k.arrow_id("1")},
                                  {g.arrow_id("5"), k.arrow_id("2")}};
  MonExtension ext = mon_extend(p, k, f);
  EXPECT_EQ(k.name(ext.apply(word("*", {"1", "1", "1", "1"}))), "1");
  EXPECT_EQ(k.name(ext.apply(word("*", {}))), "0");
  EXPECT_EQ(k.name(ext.apply(word("*", {"5", "5"}))), "1");
}

TEST(Extend, RejectsNonMorphism) {
  Pregroupoid p = z6_partial();
  FiniteGroupoid k = FiniteGroupoid::cyclic_group(2);
  const auto& g = p.ambient();
  std::map<ArrowId, ArrowId> f = {{g.arrow_id("0"), k.arrow_id("0")}, {g.arrow_id("1"), k.arrow_id("1")},
                                  {g.arrow_id("5"), k.arrow_id("0")}};
  try {
    mon_extend(p, k, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPregroupoidMorphism);
    EXPECT_TRUE(e.witness().contains("uv"));
  }
}

TEST(Extend, CoverLiftIsTheGermSum) {
  Pregroupoid p = Pregroupoid::bundle_piece(build_pradines_1());
  EXPECT_EQ(mon_extend_cover(p, word("1", std::vector<std::string>(8, "1/8"))), Rational(1));
  EXPECT_EQ(mon_extend_cover(p, word("0", {"1/8", "-1/16"})), Rational(1, 16));

  QuotientBundleModel wide = build_pradines_1();
  wide.upper = PLFunction::constant(Rational(1, 2));
  wide.lower = -wide.upper;
  Pregroupoid q = Pregroupoid::bundle_piece(wide);
  EXPECT_FALSE(q.sum_invariant_complete(Rational(1)));
  EXPECT_THROW(mon_extend_cover(q, word("1", {"3/8"})), Error);
}

TEST(Star, FiniteAndBundle) {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(6);
  std::vector<ArrowId> all(6);
  std::iota(all.begin(), all.end(), 0);
  auto full = star_projection_check(Pregroupoid::finite(g, all), "*", 4);
  EXPECT_TRUE(full.value("bijective", false));

  Pregroupoid p = Pregroupoid::bundle_piece(build_pradines_1());
  auto at1 = star_projection_check(p, "1", 6);
  EXPECT_TRUE(at1.value("surjective", false));
  EXPECT_EQ(at1.value("fiber_over_identity", ""), "Z");
  auto atm1 = star_projection_check(p, "-1", 6);
  EXPECT_TRUE(atm1.value("bijective", false));
}

TEST(MonJson, WordRoundTrip) {
  MonodromyWord w = word("1/2", {"1/8", "-1/16"});
  EXPECT_EQ(word_from_json(to_json(w)), w);
  EXPECT_THROW(word_from_json(nlohmann::json::parse(R"({"letters": []})")), Error);
}
