#include "gpd/suite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "gpd/error.hpp"
#include "gpd/holonomy.hpp"
#include "gpd/monodromy.hpp"
#include "gpd/sections.hpp"

namespace gpd::suite {
namespace {

using json = nlohmann::json;
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
Rational rnd(Rng& rng, int lo, int hi, int den) { return Rational(uniform(rng, lo, hi), den); }

QuotientBundleModel p1(const Config& cfg) { return cfg.pradines_1.value_or(build_pradines_1()); }

// Points to test a section on: breakpoints, cell samples, and a few random
// points of the domain.
std::vector<Rational> probe_points(const PLFunction& f, Rng& rng) {
  std::vector<Rational> pts = f.breakpoints();
  for (const auto& p : f.pieces()) pts.push_back(sample_point(p.from, p.to));
  for (const auto& iv : f.domain().parts()) {
    Rational lo = iv.lo.finite() ? iv.lo.value() : Rational(-4);
    Rational hi = iv.hi.finite() ? iv.hi.value() : Rational(4);
    for (int i = 0; i < 3; ++i) {
      Rational x = lo + (hi - lo) * Rational(uniform(rng, 1, 63), 64);
      if (f.defined_at(x)) pts.push_back(x);
    }
  }
  std::vector<Rational> in;
  for (auto& x : pts)
    if (f.defined_at(x)) in.push_back(x);
  return in;
}

// Random PL function with 1-3 pieces on a random open interval (or the line).
PLFunction random_pl(Rng& rng, const Interval& within, int value_num, int den) {
  Bound lo = within.lo, hi = within.hi;
  if (uniform(rng, 0, 3) != 0) {
    Rational a = rnd(rng, -24, 20, 8), b = a + rnd(rng, 1, 24, 8);
    if (within.lo.finite()) {
      Rational w = within.hi.value() - within.lo.value();
      a = within.lo.value() + w * Rational(uniform(rng, 0, 10), 16);
      b = a + w * Rational(uniform(rng, 1, 5), 16);
    }
    lo = Bound(a);
    hi = Bound(b);
  }
  Rational mid_lo = lo.finite() ? lo.value() : Rational(-3);
  Rational mid_hi = hi.finite() ? hi.value() : Rational(3);
  std::vector<Rational> cuts;
  int ncuts = uniform(rng, 0, 2);
  for (int i = 0; i < ncuts; ++i) cuts.push_back(mid_lo + (mid_hi - mid_lo) * Rational(uniform(rng, 1, 15), 16));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return PLFunction::tabulate(OpenSet1D::interval(lo, hi), cuts, [&](const Rational&) {
    return Affine{rnd(rng, -2, 2, 16), rnd(rng, -value_num, value_num, den)};
  });
}

SectionWord random_bundle_letter(const Model& m, Rng& rng) {
  return SectionWord::bundle_section(m, random_pl(rng, {Bound::neg_inf(), Bound::pos_inf()}, 12, 8));
}

SectionWord random_chart_letter(const Model& m, Rng& rng) {
  const ChartComplex& c = complex(m);
  const auto& e = c.edges[uniform(rng, 0, static_cast<int>(c.edges.size()) - 1)];
  const Interval& t = c.chart(e.src).transversal;
  Rational a = t.lo.value() + (t.hi.value() - t.lo.value()) * Rational(uniform(rng, 0, 12), 16);
  Rational b = a + (t.hi.value() - a) * Rational(uniform(rng, 4, 16), 16);
  return SectionWord::edge_section(m, e.id, OpenSet1D::interval(Bound(a), Bound(b)));
}

// Product of 1-3 random letters, retried until the domain is nonempty.
SectionWord random_word(const Model& m, Rng& rng) {
  for (;;) {
    auto letter = [&] { return is_bundle(m) ? random_bundle_letter(m, rng) : random_chart_letter(m, rng); };
    SectionWord w = letter();
    int extra = uniform(rng, 0, 2);
    try {
      for (int i = 0; i < extra; ++i) w = ehresmann_product(m, w, letter());
      return w;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyDomain) throw;
    }
  }
}

// Pointwise equality of two section words, exactly.
std::optional<json> section_mismatch(const Model& m, const SectionWord& a, const SectionWord& b, Rng& rng) {
  if (!(a.domain() == b.domain())) return json{{"reason", "domains differ"}};
  if (!(a.target_map() == b.target_map())) return json{{"reason", "target maps differ"}};
  for (const auto& x : probe_points(a.target_map(), rng)) {
    ModelArrow u = a.evaluate(m, x), v = b.evaluate(m, x);
    if (!arrow_equal(m, u, v)) return json{{"point", x.str()}, {"lhs", to_string(u)}, {"rhs", to_string(v)}};
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, Model>> reference_models(const Config& cfg) {
  return {{"pradines-1", p1(cfg)}, {"pradines-2", build_pradines_2({0})}, {"mobius", build_mobius()}};
}

Result make(int id, std::string title) { return {id, std::move(title), true, json::object()}; }

void require(Result& r, bool ok, const std::string& what, json detail = nullptr) {
  if (ok) return;
  r.pass = false;
  if (!r.detail.contains("failures")) r.detail["failures"] = json::array();
  r.detail["failures"].push_back({{"check", what}, {"detail", detail}});
}

// ------------------------------------------------------------- criteria

Result c1_kernel(const Config& cfg) {
  Result r = make(1, "pradines-1 kernel is Z at 0 (8-fold s generator), trivial elsewhere");
  Model m = p1(cfg);
  KernelDescriptor k = kernel_at(m, {"", Rational(0)});
  require(r, k.kind == "Z", "kernel at 0 is Z", k.label());
  r.detail["kernel_at_0"] = k.label();
  if (k.generator) {
    SectionWord s = SectionWord::bundle_section(m, PLFunction::constant(Rational(1, 8)));
    GermClass eight = germ_of(m, section_power(m, s, 8), {"", Rational(0)});
    std::size_t letters = k.generator->word.entries().size();
    r.detail["generator_letters"] = letters;
    require(r, letters == 8, "generator has 8 letters", letters);
    long cls = 0;
    try {
      cls = kernel_class(m, eight);
    } catch (const Error& e) {
      require(r, false, "8s lies in the kernel", e.what());
    }
    r.detail["class_of_8s"] = cls;
    require(r, cls == 1 || cls == -1, "8s is a generator", cls);
  } else {
    require(r, false, "generator present");
  }
  for (const auto& x : {Rational(-2), Rational(-1, 2), Rational(1, 3), Rational(5)}) {
    KernelDescriptor t = kernel_at(m, {"", x});
    require(r, t.kind == "trivial", "kernel trivial at " + x.str(), t.label());
  }
  return r;
}

Result c2_nonextendible(const Config& cfg) {
  Result r = make(2, "pradines-1 not extendible; 9s is not a local procedure at 0 but is where the fiber is compact");
  Model m = p1(cfg);
  Verdict e = is_extendible(m);
  r.detail["extendible"] = e.holds;
  require(r, !e.holds, "not extendible", e.witness);
  require(r, !e.holds && e.witness.value("point", "") == "0", "witness at 0", e.witness);
  SectionWord s = SectionWord::bundle_section(m, PLFunction::constant(Rational(1, 8)));
  SectionWord nine = section_power(m, s, 9);
  Verdict at0 = is_local_procedure(m, nine, Rational(0));
  require(r, !at0.holds, "9s not a procedure at 0", at0.witness);
  r.detail["at_0"] = at0.witness;
  // Where n = 0 the class q(x, 9/8) is not in W at all, so only points
  // where the fiber is compact are sampled.
  for (const auto& x : {Rational(1, 64), Rational(1, 8), Rational(1, 3), Rational(1), Rational(5, 2), Rational(7)}) {
    Verdict v = is_local_procedure(m, nine, x);
    require(r, v.holds, "9s a procedure at " + x.str(), v.witness);
  }
  Verdict s_all = is_local_procedure(m, s);
  require(r, s_all.holds, "s is a procedure everywhere", s_all.witness);
  return r;
}

Result c3_dichotomy(const Config&) {
  Result r = make(3, "pradines-2 extendible for r=0, slope-kink obstruction and kernel Z for r=1");
  Model m0 = build_pradines_2({0}), m1 = build_pradines_2({1});
  Verdict e0 = is_extendible(m0), e1 = is_extendible(m1);
  require(r, e0.holds, "r=0 extendible", e0.witness);
  require(r, !e1.holds, "r=1 not extendible", e1.witness);
  require(r, !e1.holds && e1.witness.value("point", "") == "0", "r=1 witness at 0", e1.witness);
  require(r, e1.witness.dump().find("slope_kink") != std::string::npos, "r=1 witness is a slope kink", e1.witness);
  KernelDescriptor k = kernel_at(m1, {"", Rational(0)});
  require(r, k.kind == "Z", "r=1 kernel at 0 is Z", k.label());
  r.detail["r1_witness"] = e1.witness;
  return r;
}

Result c4_stars(const Config& cfg) {
  Result r = make(4, "pradines-1 stars: R at -1, R/Z at 1");
  QuotientBundleModel m = p1(cfg);
  std::vector<Rational> ts = {Rational(0), Rational(1, 8), Rational(1), Rational(-1), Rational(9, 8), Rational(2)};
  for (const auto& a : ts)
    for (const auto& b : ts) {
      bool eq = fiber_equal(m, Rational(-1), a, b);
      require(r, eq == (a == b), "star at -1 separates " + a.str() + "," + b.str());
    }
  for (const auto& t : ts) {
    require(r, fiber_equal(m, Rational(1), t, t + Rational(1)), "q(1,t)=q(1,t+1) for t=" + t.str());
    require(r, fiber_equal(m, Rational(1), t, t - Rational(3)), "q(1,t)=q(1,t-3) for t=" + t.str());
    require(r, !fiber_equal(m, Rational(1), t, t + Rational(1, 2)), "q(1,t)!=q(1,t+1/2) for t=" + t.str());
  }
  return r;
}

// Loop germs at A:0 over W edges, composed directly from the edge maps.
std::set<std::string> loop_germ_oracle(const ChartComplex& c, const Point& base, int depth) {
  struct State {
    std::string chart;
    Germ1D g;
  };
  std::vector<State> frontier = {{base.chart, germ_at(PLFunction::identity(OpenSet1D({c.chart(base.chart).transversal})), base.y)}};
  std::set<std::string> loops;
  for (int d = 0; d < depth; ++d) {
    std::vector<State> next;
    for (const auto& s : frontier)
      for (const auto& e : c.edges) {
        if (e.src != s.chart || !e.map.defined_at(*s.g.value)) continue;
        State n{e.tgt, germ_compose(germ_at(e.map, *s.g.value), s.g)};
        if (n.chart == base.chart && *n.g.value == base.y)
          loops.insert(n.g.left->slope.str() + "," + n.g.right->slope.str());
        next.push_back(n);
      }
    frontier = std::move(next);
  }
  return loops;
}

Result c5_mobius(const Config&) {
  Result r = make(5, "mobius kernel at A:0 is Z/2 within depth 4, generator squared in J0");
  Model m = build_mobius();
  Point a0{"A", Rational(0)};
  KernelDescriptor k = kernel_at(m, a0, 4);
  r.detail["kernel"] = k.label();
  require(r, k.kind == "Z/m" && k.order == 2, "kernel is Z/2", k.label());
  if (k.generator) {
    require(r, !in_j0(m, *k.generator).holds, "generator not in J0");
    Verdict sq = in_j0(m, germ_product(m, *k.generator, *k.generator));
    require(r, sq.holds, "generator squared in J0", sq.witness);
  } else {
    require(r, false, "generator present");
  }
  auto loops = loop_germ_oracle(complex(m), a0, 4);
  r.detail["oracle_loop_germs"] = loops;
  require(r, loops == std::set<std::string>{"1,1", "-1,-1"}, "oracle sees exactly two loop germs", loops);
  return r;
}

Result c6_inverse_monoid(const Config& cfg) {
  Result r = make(6, "500 random section words per model satisfy the inverse-monoid laws");
  Rng rng(cfg.seed);
  for (const auto& [name, m] : reference_models(cfg)) {
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
      SectionWord s = random_word(m, rng);
      SectionWord t = section_inverse(m, s);
      auto bad = section_mismatch(m, ehresmann_product(m, ehresmann_product(m, s, t), s), s, rng);
      if (!bad) bad = section_mismatch(m, ehresmann_product(m, ehresmann_product(m, t, s), t), t, rng);
      if (bad) {
        if (failures == 0) r.detail[name + "_first_failure"] = *bad;
        ++failures;
      }
    }
    r.detail[name + "_failures"] = failures;
    require(r, failures == 0, name + " laws hold", failures);
  }
  return r;
}

Result c7_normality(const Config& cfg) {
  Result r = make(7, "200 normality samples per model, no J0 closure failures");
  for (const auto& [name, m] : reference_models(cfg)) {
    NormalityReport rep = normality_audit(m, 200, cfg.seed);
    r.detail[name] = rep.to_json();
    require(r, rep.failures == 0 && rep.checked == 200, name + " audit clean", rep.first_failure);
  }
  return r;
}

Result c8_transitions(const Config& cfg) {
  Result r = make(8, "chart transitions equal left translation by f^-1 g (50 pairs x 10 points)");
  Rng rng(cfg.seed + 8);
  for (const auto& [name, model] : reference_models(cfg)) {
    if (!is_bundle(model)) continue;
    const Model& m = model;
    int checked = 0, failures = 0;
    for (int pair = 0; pair < 50; ++pair) {
      auto section = [&] {
        // Continuous: a kink at c through the value v.
        Rational c = rnd(rng, -8, 8, 4), v = rnd(rng, -7, 7, 128);
        Rational sl = rnd(rng, -1, 1, 256), sr = rnd(rng, -1, 1, 256);
        PLFunction f = PLFunction::tabulate(OpenSet1D::real_line(), {c}, [&](const Rational& x) {
          Rational k = x < c ? sl : sr;
          return Affine{k, v - k * c};
        });
        return SectionWord::bundle_section(m, f);
      };
      SectionWord f = section(), g = section();
      for (int i = 0; i < 10; ++i) {
        Rational x = i == 0 ? Rational(0) : rnd(rng, -16, 16, 4);
        ModelArrow w{{"", x}, {"", x}, rnd(rng, -7, 7, 128)};
        ++checked;
        try {
          ModelArrow t = chart_transition(m, f, g, w);
          ModelArrow d = left_translate(m, f, g, w);
          if (!arrow_equal(m, t, d)) {
            if (failures++ == 0) r.detail[name + "_first_failure"] = {{"transition", to_string(t)}, {"direct", to_string(d)}};
          }
        } catch (const Error& e) {
          if (failures++ == 0) r.detail[name + "_first_failure"] = {{"error", e.what()}, {"witness", e.witness()}};
        }
      }
    }
    r.detail[name] = {{"checked", checked}, {"failures", failures}};
    require(r, failures == 0 && checked == 500, name + " transitions agree", failures);
  }
  return r;
}

// ------------------------------------------------ finite pregroupoid oracle

struct FiniteCase {
  FiniteGroupoid g;
  std::vector<ArrowId> carrier;
  std::optional<unsigned> cyclic;  // order when g is a cyclic group
};

FiniteCase random_pregroupoid(Rng& rng) {
  FiniteCase c;
  switch (uniform(rng, 0, 3)) {
    case 0:
    case 1: {
      unsigned m = static_cast<unsigned>(uniform(rng, 2, 12));
      c.g = FiniteGroupoid::cyclic_group(m);
      c.cyclic = m;
      break;
    }
    case 2:
      c.g = FiniteGroupoid::pair_groupoid({"a", "b", "c"});
      break;
    default:
      c.g = FiniteGroupoid::pair_times_cyclic(2, static_cast<unsigned>(uniform(rng, 1, 3)));
      break;
  }
  std::vector<bool> in(c.g.arrow_count(), false);
  for (ObjectId x = 0; x < c.g.object_count(); ++x) in[c.g.identity(x)] = true;
  for (ArrowId a = 0; a < c.g.arrow_count(); ++a)
    if (!in[a] && uniform(rng, 0, 2) != 0) in[a] = in[c.g.inverse(a)] = true;
  for (ArrowId a = 0; a < c.g.arrow_count(); ++a)
    if (in[a]) c.carrier.push_back(a);
  return c;
}

// Words of non-identity carrier letters up to length `len`, and the
// congruence generated by contracting defined products, computed by
// union-find over that truncated word set.
struct Congruence {
  std::vector<std::pair<ObjectId, std::vector<ArrowId>>> words;
  std::vector<std::size_t> parent;

  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
};

Congruence congruence_closure(const Pregroupoid& p, int len) {
  const FiniteGroupoid& g = p.ambient();
  std::vector<ArrowId> letters;
  for (ArrowId a : p.carrier())
    if (!g.arrow(a).identity) letters.push_back(a);
  Congruence c;
  std::map<std::pair<ObjectId, std::vector<ArrowId>>, std::size_t> index;
  std::vector<std::pair<ObjectId, std::vector<ArrowId>>> layer;
  for (ObjectId x = 0; x < g.object_count(); ++x) layer.push_back({x, {}});
  for (int l = 0; l <= len; ++l) {
    std::vector<std::pair<ObjectId, std::vector<ArrowId>>> next;
    for (auto& w : layer) {
      index[w] = c.words.size();
      c.words.push_back(w);
      if (l == len) continue;
      ObjectId end = w.second.empty() ? w.first : g.tgt(w.second.back());
      for (ArrowId a : letters)
        if (g.src(a) == end) {
          auto n = w;
          n.second.push_back(a);
          next.push_back(std::move(n));
        }
    }
    layer = std::move(next);
  }
  c.parent.resize(c.words.size());
  for (std::size_t i = 0; i < c.parent.size(); ++i) c.parent[i] = i;
  for (std::size_t i = 0; i < c.words.size(); ++i) {
    const auto& [base, w] = c.words[i];
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      auto ab = p.product(w[k], w[k + 1]);
      if (!ab) continue;
      std::vector<ArrowId> shorter(w.begin(), w.begin() + k);
      if (!g.arrow(*ab).identity) shorter.push_back(*ab);
      shorter.insert(shorter.end(), w.begin() + k + 2, w.end());
      std::size_t j = index.at({base, shorter});
      c.parent[c.find(i)] = c.find(j);
    }
  }
  return c;
}

MonodromyWord as_word(const FiniteGroupoid& g, ObjectId base, const std::vector<ArrowId>& w) {
  MonodromyWord m{g.object_name(base), {}};
  for (ArrowId a : w) m.letters.push_back(g.name(a));
  return m;
}

// Checks one pregroupoid; returns a failure description or null.
json check_finite_case(const FiniteCase& fc, Rng& rng, json& stats) {
  Pregroupoid p = Pregroupoid::finite(fc.g, fc.carrier);
  const FiniteGroupoid& g = p.ambient();
  Congruence cc = congruence_closure(p, 3);

  std::vector<std::pair<FiniteGroupoid, std::map<ArrowId, ArrowId>>> targets;
  std::map<ArrowId, ArrowId> inclusion;
  for (ArrowId a : p.carrier()) inclusion[a] = a;
  targets.push_back({g, inclusion});
  if (fc.cyclic && *fc.cyclic % 2 == 0) {
    FiniteGroupoid k = FiniteGroupoid::cyclic_group(2);
    std::map<ArrowId, ArrowId> f;
    for (ArrowId a : p.carrier()) f[a] = k.arrow_id(std::to_string(std::stoul(g.name(a)) % 2));
    targets.push_back({k, f});
  }

  for (const auto& [k, f] : targets) {
    MonExtension ext = mon_extend(p, k, f);
    std::map<std::size_t, ArrowId> image_of_class;
    for (std::size_t i = 0; i < cc.words.size(); ++i) {
      const auto& [base, w] = cc.words[i];
      ArrowId img = ext.apply(as_word(g, base, w));
      // Forced value: the product of the letter images.
      ArrowId forced = k.identity(k.src(f.at(g.identity(base))));
      for (ArrowId a : w) forced = k.compose(forced, f.at(a));
      if (img != forced) return {{"check", "extension agrees with letters"}, {"word", to_json(as_word(g, base, w))}};
      auto [it, fresh] = image_of_class.try_emplace(cc.find(i), img);
      if (!fresh && it->second != img)
        return {{"check", "extension constant on congruence classes"}, {"word", to_json(as_word(g, base, w))}};
    }
  }

  int equal = 0, distinct = 0, unknown = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cc.words.size()) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cc.words.size()) - 1));
    if (trial % 2 == 0) {
      // Bias towards congruent pairs.
      for (std::size_t t = 0; t < cc.words.size(); ++t)
        if (t != i && cc.find(t) == cc.find(i)) {
          j = t;
          break;
        }
    }
    const auto& [bi, wi] = cc.words[i];
    const auto& [bj, wj] = cc.words[j];
    if (bi != bj) continue;
    MonEquality e = mon_equal(p, as_word(g, bi, wi), as_word(g, bj, wj), 6);
    bool same = cc.find(i) == cc.find(j);
    if (same && e.verdict != MonVerdict::Equal)
      return {{"check", "congruent words are equal"}, {"lhs", to_json(as_word(g, bi, wi))}, {"rhs", to_json(as_word(g, bj, wj))}};
    if (e.verdict == MonVerdict::Distinct && same)
      return {{"check", "distinct only across classes"}, {"lhs", to_json(as_word(g, bi, wi))}};
    (e.verdict == MonVerdict::Equal ? equal : e.verdict == MonVerdict::Distinct ? distinct : unknown)++;
  }
  stats["equal"] = stats.value("equal", 0) + equal;
  stats["distinct"] = stats.value("distinct", 0) + distinct;
  stats["unknown"] = stats.value("unknown", 0) + unknown;
  return nullptr;
}

Result c9_monodromy(const Config& cfg) {
  Result r = make(9, "monodromy extension on 20 finite pregroupoids; winding words at 1 pairwise distinct");
  Rng rng(cfg.seed + 9);
  json stats = json::object();
  for (int i = 0; i < 20; ++i) {
    FiniteCase fc = random_pregroupoid(rng);
    require(r, fc.g.arrow_count() <= 12, "at most 12 elements", fc.g.arrow_count());
    json bad = check_finite_case(fc, rng, stats);
    require(r, bad.is_null(), "finite case " + std::to_string(i), bad);
  }
  r.detail["finite"] = stats;

  Pregroupoid p = Pregroupoid::bundle_piece(p1(cfg));
  json star = star_projection_check(p, "1", 6);
  r.detail["star_at_1"] = star;
  require(r, star.value("fiber_over_identity", "") == "Z", "star at 1 has fiber Z over the identity", star);
  std::vector<MonodromyWord> winding;
  for (int k = -3; k <= 3; ++k) {
    MonodromyWord w{"1", {}};
    for (int i = 0; i < 8 * std::abs(k); ++i) w.letters.push_back(k < 0 ? "-1/8" : "1/8");
    winding.push_back(w);
  }
  for (std::size_t a = 0; a < winding.size(); ++a)
    for (std::size_t b = a + 1; b < winding.size(); ++b) {
      MonEquality e = mon_equal(p, winding[a], winding[b], 4);
      require(r, e.verdict == MonVerdict::Distinct,
               "winding " + std::to_string(int(a) - 3) + " vs " + std::to_string(int(b) - 3), to_string(e.verdict));
    }
  return r;
}

Result c10_axioms(const Config& cfg) {
  Result r = make(10, "axiom checker: models pass G1-G5, each mutation fails exactly its axiom");
  for (const auto& [name, m] : reference_models(cfg)) {
    AxiomReport rep = check_axioms(m);
    require(r, rep.all(), name + " passes G1-G5", rep.to_json());
  }
  for (const auto& mu : axiom_mutations()) {
    AxiomReport rep = check_axioms(mu.model);
    std::vector<int> failed;
    for (int i = 0; i < 5; ++i)
      if (!rep.g[i].holds) failed.push_back(i + 1);
    r.detail[mu.name] = {{"failed", failed}, {"witness", rep.g[mu.axiom].witness}};
    require(r, failed == std::vector<int>{mu.axiom + 1} && !rep.g[mu.axiom].witness.is_null(),
            mu.name + " fails only G" + std::to_string(mu.axiom + 1), failed);
  }
  return r;
}

}  // namespace

std::vector<Mutation> axiom_mutations() {
  std::vector<Mutation> out;
  {
    QuotientBundleModel m = build_pradines_1();
    m.name = "pradines-1/asymmetric";
    m.lower = PLFunction::constant(Rational(-1, 8));
    out.push_back({"broken symmetry", m, 1});
  }
  {
    ChartComplex c = build_mobius();
    c.name = "mobius/no-idA";
    std::erase_if(c.edges, [](const ChartEdge& e) { return e.id == "idA"; });
    out.push_back({"missing identities", c, 0});
  }
  {
    ChartComplex c = build_mobius();
    c.name = "mobius/zero-width";
    c.edges.push_back({"z", "A", "B", PLFunction::identity(OpenSet1D()), false});
    out.push_back({"zero width", c, 2});
  }
  {
    ChartComplex c = build_mobius();
    c.name = "mobius/isolated-chart";
    Interval t{Bound(-1), Bound(1)};
    c.charts.push_back({"C", t, Rational(0)});
    c.edges.push_back({"idC", "C", "C", PLFunction::identity(OpenSet1D({t})), true});
    c.leaf_maps.push_back({"l", "A", "C", PLFunction::identity(OpenSet1D({t})), false});
    out.push_back({"isolated chart", c, 4});
  }
  {
    ChartComplex c = build_mobius();
    c.name = "mobius/non-generating";
    std::erase_if(c.edges, [](const ChartEdge& e) { return e.id == "e2" || e.id == "e2~"; });
    c.leaf_maps.push_back({"twist", "B", "A",
                           PLFunction::affine({Rational(-1), Rational(0)}, OpenSet1D::interval(Bound(0), Bound(1))),
                           false});
    out.push_back({"non-generating W", c, 4});
  }
  return out;
}

Result run_criterion(int id, const Config& cfg) {
  static const std::vector<std::function<Result(const Config&)>> table = {
      c1_kernel, c2_nonextendible, c3_dichotomy,  c4_stars,    c5_mobius,
      c6_inverse_monoid, c7_normality, c8_transitions, c9_monodromy, c10_axioms};
  if (id < 1 || id > kCriteria) throw Error(ErrorCode::Parse, "no criterion " + std::to_string(id));
  try {
    return table[id - 1](cfg);
  } catch (const Error& e) {
    Result r{id, "criterion " + std::to_string(id), false, json::object()};
    r.detail["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"witness", e.witness()}};
    return r;
  }
}

std::vector<Result> run_all(const Config& cfg) {
  std::vector<Result> out;
  for (int i = 1; i <= kCriteria; ++i) out.push_back(run_criterion(i, cfg));
  return out;
}

nlohmann::json to_json(const Result& r) {
  return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}};
}

}  // namespace gpd::suite
