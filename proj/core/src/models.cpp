#include "gpd/models.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "gpd/error.hpp"

namespace gpd {

const Chart& ChartComplex::chart(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw Error(ErrorCode::UnknownObject, "unknown chart '" + id + "'");
}

const ChartEdge& ChartComplex::edge(const std::string& id) const {
  for (const auto& e : edges)
    if (e.id == id) return e;
  throw Error(ErrorCode::UnknownArrow, "unknown edge '" + id + "'");
}

void ChartComplex::close_under_inverse() {
  std::vector<ChartEdge> added;
  for (const auto& e : edges) {
    PLFunction inv = pl_inverse(e.map);
    bool present = std::any_of(edges.begin(), edges.end(), [&](const ChartEdge& f) {
      return f.src == e.tgt && f.tgt == e.src && f.map == inv;
    });
    bool queued = std::any_of(added.begin(), added.end(), [&](const ChartEdge& f) {
      return f.src == e.tgt && f.tgt == e.src && f.map == inv;
    });
    if (!present && !queued) added.push_back({e.id + "~", e.tgt, e.src, inv, e.identity});
  }
  edges.insert(edges.end(), added.begin(), added.end());
}

const QuotientBundleModel& bundle(const Model& m) {
  if (const auto* b = std::get_if<QuotientBundleModel>(&m)) return *b;
  throw Error(ErrorCode::InvalidModel, "operation needs a quotient_bundle model");
}

const ChartComplex& complex(const Model& m) {
  if (const auto* c = std::get_if<ChartComplex>(&m)) return *c;
  throw Error(ErrorCode::InvalidModel, "operation needs a chart_complex model");
}

const std::string& model_name(const Model& m) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, m);
}

Model with_smoothness(Model m, SmoothnessClass r) {
  std::visit([&](auto& v) { v.smoothness = r; }, m);
  return m;
}

// ----------------------------------------------------------------- builders

QuotientBundleModel build_pradines_1() {
  std::vector<Piece> step = {{Bound::neg_inf(), Bound(0), Affine::constant(0)},
                             {Bound(0), Bound::pos_inf(), Affine::constant(1)}};
  PLFunction width = PLFunction::constant(Rational(1, 4));
  return {"pradines-1", PLFunction(OpenSet1D::real_line(), step), width, -width, {0}};
}

QuotientBundleModel build_pradines_2(SmoothnessClass r) {
  std::vector<Piece> abs1 = {{Bound::neg_inf(), Bound(0), {Rational(-1), Rational(1)}},
                             {Bound(0), Bound::pos_inf(), {Rational(1), Rational(1)}}};
  PLFunction width = PLFunction::constant(Rational(1, 4));
  return {"pradines-2", PLFunction(OpenSet1D::real_line(), abs1), width, -width, r};
}

ChartComplex build_mobius() {
  Interval t{Bound(-1), Bound(1)};
  OpenSet1D dom({t});
  ChartComplex c;
  c.name = "mobius";
  c.charts = {{"A", t, Rational(0)}, {"B", t, Rational(0)}};
  c.edges = {
      {"idA", "A", "A", PLFunction::identity(dom), true},
      {"idB", "B", "B", PLFunction::identity(dom), true},
      {"e1", "A", "B", PLFunction::identity(dom), false},
      {"e2", "B", "A", PLFunction::affine({Rational(-1), Rational(0)}, dom), false},
  };
  c.close_under_inverse();
  return c;
}

// ------------------------------------------------------------------- arrows

std::string to_string(const Point& p) { return p.chart.empty() ? p.y.str() : p.chart + ":" + p.y.str(); }

std::string to_string(const ModelArrow& a) {
  if (a.src.chart.empty()) return "q(" + a.src.y.str() + "," + a.t.str() + ")";
  return "(" + to_string(a.src) + " -> " + to_string(a.tgt) + ")";
}

ModelArrow identity_arrow(const Point& x) { return {x, x, Rational(0)}; }

bool fiber_equal(const QuotientBundleModel& m, const Rational& x, const Rational& t, const Rational& t2) {
  Rational n = m.profile(x);
  if (n.is_zero()) return t == t2;
  return ((t - t2) / n).is_integer();
}

std::optional<Rational> window_rep(const QuotientBundleModel& m, const Rational& x, const Rational& t) {
  Rational n = m.profile(x), lo = m.lower(x), hi = m.upper(x);
  if (n.is_zero()) return (lo < t && t < hi) ? std::optional<Rational>(t) : std::nullopt;
  // t - k n in (lo, hi)  <=>  (t - hi)/n < k < (t - lo)/n
  mpz_class k = ((t - hi) / n).floor() + 1;
  Rational u = t - from_integer(k) * n;
  if (lo < u && u < hi) return u;
  return std::nullopt;
}

bool arrow_equal(const Model& m, const ModelArrow& a, const ModelArrow& b) {
  if (!(a.src == b.src) || !(a.tgt == b.tgt)) return false;
  if (const auto* q = std::get_if<QuotientBundleModel>(&m)) return fiber_equal(*q, a.src.y, a.t, b.t);
  return true;
}

ModelArrow compose_arrows(const Model& m, const ModelArrow& a, const ModelArrow& b) {
  if (!(a.tgt == b.src))
    throw Error(ErrorCode::NotComposable, "cannot compose " + to_string(a) + " with " + to_string(b));
  if (is_bundle(m)) return {a.src, a.src, a.t + b.t};
  return {a.src, b.tgt, Rational(0)};
}

ModelArrow inverse_arrow(const ModelArrow& a) { return {a.tgt, a.src, -a.t}; }

bool is_identity(const Model& m, const ModelArrow& a) { return arrow_equal(m, a, identity_arrow(a.src)); }

std::optional<std::string> sheet_of(const ChartComplex& c, const ModelArrow& a) {
  for (const auto& e : c.edges)
    if (e.src == a.src.chart && e.tgt == a.tgt.chart && e.map.defined_at(a.src.y) && e.map(a.src.y) == a.tgt.y)
      return e.id;
  return std::nullopt;
}

bool in_w(const Model& m, const ModelArrow& a) {
  if (const auto* q = std::get_if<QuotientBundleModel>(&m)) return window_rep(*q, a.src.y, a.t).has_value();
  return sheet_of(std::get<ChartComplex>(m), a).has_value();
}

// ---------------------------------------------------------- representatives

namespace {

struct SideData {
  Affine t, n, lo, hi;
};

// Shifts k with lo < t - k n < hi at the limit point x0.
std::vector<mpz_class> shift_candidates(const Rational& t, const Rational& n, const Rational& lo,
                                        const Rational& hi) {
  std::vector<mpz_class> out;
  if (n.sign() < 0) return shift_candidates(-t, -n, -hi, -lo);
  if (n.is_zero()) {
    if (lo < t && t < hi) out.emplace_back(0);
    return out;
  }
  mpz_class k = ((t - hi) / n).floor() + 1;
  for (;; ++k) {
    Rational u = t - from_integer(k) * n;
    if (!(lo < u)) break;
    if (u < hi) out.push_back(k);
  }
  return out;
}

std::optional<SideData> side(const QuotientBundleModel& m, const std::optional<Affine>& t, bool left,
                             const Rational& x0) {
  if (!t) return std::nullopt;
  auto pick = [&](const PLFunction& f) { return *(left ? f.left_line(x0) : f.right_line(x0)); };
  return SideData{*t, pick(m.profile), pick(m.lower), pick(m.upper)};
}

}  // namespace

WRepresentative w_representative(const QuotientBundleModel& m, const PLFunction& t, const Rational& x0) {
  Germ1D gt = germ_at(t, x0);
  if (!gt.value) throw Error(ErrorCode::NotInDomain, "section not defined at " + x0.str());
  WRepresentative out;
  out.u.base = x0;

  auto sl = side(m, gt.left, true, x0);
  auto sr = side(m, gt.right, false, x0);
  Rational n0 = m.profile(x0);
  auto k0s = shift_candidates(*gt.value, n0, m.lower(x0), m.upper(x0));
  auto side_ks = [&](const std::optional<SideData>& s) {
    if (!s) return std::vector<mpz_class>{0};
    return shift_candidates(s->t.at(x0), s->n.at(x0), s->lo.at(x0), s->hi.at(x0));
  };
  auto kls = side_ks(sl);
  auto krs = side_ks(sr);

  auto empty_reason = [&](const std::optional<SideData>& s) {
    return (s && s->n.at(x0).is_zero()) ? "forced_branch" : "out_of_window";
  };
  if (kls.empty() || krs.empty() || k0s.empty()) {
    out.reason = kls.empty() ? empty_reason(sl) : (krs.empty() ? empty_reason(sr) : "out_of_window");
    return out;
  }
  std::sort(k0s.begin(), k0s.end(), [](const mpz_class& a, const mpz_class& b) {
    return cmp(abs(a), abs(b)) < 0 || (cmp(abs(a), abs(b)) == 0 && a < b);
  });

  bool continuous_seen = false;
  for (const auto& k0 : k0s) {
    Rational u0 = *gt.value - from_integer(k0) * n0;
    for (const auto& kl : kls)
      for (const auto& kr : krs) {
        std::optional<Affine> ul, ur;
        if (sl) ul = sl->t + (-from_integer(kl)) * sl->n;
        if (sr) ur = sr->t + (-from_integer(kr)) * sr->n;
        Germ1D u{x0, u0, ul, ur};
        if (!is_cr_at(u, {0}).holds) continue;
        continuous_seen = true;
        if (!is_cr_at(u, m.smoothness).holds) continue;
        out.found = true;
        out.k = k0;
        out.k_left = sl ? kl : k0;
        out.k_right = sr ? kr : k0;
        out.u = u;
        return out;
      }
  }
  out.reason = continuous_seen ? "slope_kink" : "discontinuous";
  return out;
}

// ------------------------------------------------------------------- axioms

bool AxiomReport::all() const {
  return std::all_of(g.begin(), g.end(), [](const AxiomVerdict& v) { return v.holds; });
}

nlohmann::json AxiomReport::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (size_t i = 0; i < g.size(); ++i) {
    nlohmann::json v = {{"holds", g[i].holds}};
    if (!g[i].holds) v["witness"] = g[i].witness;
    j["G" + std::to_string(i + 1)] = v;
  }
  return j;
}

namespace {

// Some x with f(x) <= 0, if any.
std::optional<Rational> find_nonpositive(const PLFunction& f) {
  for (const auto& b : f.breakpoints())
    if (f(b).sign() <= 0) return b;
  for (const auto& p : f.pieces()) {
    Rational s = sample_point(p.from, p.to);
    if (p.f.at(s).sign() <= 0) return s;
    if (!p.f.slope.is_zero()) {
      Rational r = -p.f.intercept / p.f.slope;
      if (p.from < r && r < p.to) return r;
    }
  }
  return std::nullopt;
}

// Some x with f(x) != 0; f must not be identically zero.
Rational find_nonzero(const PLFunction& f) {
  for (const auto& b : f.breakpoints())
    if (!f(b).is_zero()) return b;
  for (const auto& p : f.pieces()) {
    Rational s = sample_point(p.from, p.to);
    if (!p.f.at(s).is_zero()) return s;
    if (!p.f.slope.is_zero()) return sample_point(p.from, Bound(s));
  }
  throw Error(ErrorCode::InvalidModel, "function vanishes identically");
}

void for_each_cell(const std::vector<Rational>& sorted_cuts, const std::function<void(const Bound&, const Bound&)>& fn) {
  Bound lo = Bound::neg_inf();
  for (const auto& c : sorted_cuts) {
    if (Bound(c) == lo) continue;
    fn(lo, Bound(c));
    lo = Bound(c);
  }
  fn(lo, Bound::pos_inf());
}

// Sub-interval of (lo, hi) where f > 0.
Interval positive_region(const Affine& f, const Bound& lo, const Bound& hi) {
  if (f.slope.is_zero()) return f.intercept.sign() > 0 ? Interval{lo, hi} : Interval{hi, lo};
  Rational r = -f.intercept / f.slope;
  if (f.slope.sign() > 0) return {std::max(lo, Bound(r)), hi};
  return {lo, std::min(hi, Bound(r))};
}

AxiomReport check_bundle(const QuotientBundleModel& m) {
  AxiomReport rep;
  // G1: 0 strictly inside every window.
  auto bad_hi = find_nonpositive(m.upper);
  auto bad_lo = find_nonpositive(-m.lower);
  if (bad_hi || bad_lo) {
    Rational x = bad_hi ? *bad_hi : *bad_lo;
    rep.g[0] = {false, {{"point", x.str()}, {"missing", to_string(identity_arrow({"", x}))}}};
  }
  // G2: symmetric window.
  if (!m.symmetric()) {
    Rational x = find_nonzero(pl_add(m.upper, m.lower));
    Rational lo = m.lower(x), hi = m.upper(x);
    // An element of the window whose negative lies outside it.
    Rational t = hi > -lo ? (-lo + hi) / Rational(2) : (lo - hi) / Rational(2);
    rep.g[1] = {false, {{"point", x.str()}, {"element", to_string(ModelArrow{{"", x}, {"", x}, t})}}};
  }
  // G3: representatives unique where the fiber is compact, so the topology of
  // W' transfers and the difference map is representative arithmetic.
  PLFunction len = pl_sub(m.upper, m.lower);
  PLFunction gap = pl_sub(m.profile, len);
  std::vector<Rational> cuts = m.profile.breakpoints();
  for (const auto& b : len.breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  std::optional<Rational> g3;
  for (const auto& b : cuts)
    if (!g3 && m.profile(b).sign() > 0 && gap(b).sign() < 0) g3 = b;
  for_each_cell(cuts, [&](const Bound& lo, const Bound& hi) {
    if (g3) return;
    Rational s = sample_point(lo, hi);
    Interval a = positive_region(m.profile.piece_at(s).f, lo, hi);
    Interval both = positive_region(-gap.piece_at(s).f, a.lo, a.hi);
    if (!both.empty()) g3 = sample_point(both.lo, both.hi);
  });
  if (g3) rep.g[2] = {false, {{"point", g3->str()}, {"reason", "window longer than fiber period"}}};
  // G4: constant-representative sections through every element stay in W,
  // which needs upper lower-semicontinuous and lower upper-semicontinuous.
  for (const auto& b : m.upper.breakpoints()) {
    Rational lim = min(m.upper.left_line(b)->at(b), m.upper.right_line(b)->at(b));
    if (lim < m.upper(b) && rep.g[3].holds) {
      Rational t = (max(lim, m.lower(b)) + m.upper(b)) / Rational(2);
      rep.g[3] = {false, {{"point", b.str()}, {"element", to_string(ModelArrow{{"", b}, {"", b}, t})}}};
    }
  }
  for (const auto& b : m.lower.breakpoints()) {
    Rational lim = max(m.lower.left_line(b)->at(b), m.lower.right_line(b)->at(b));
    if (m.lower(b) < lim && rep.g[3].holds) {
      Rational t = (min(lim, m.upper(b)) + m.lower(b)) / Rational(2);
      rep.g[3] = {false, {{"point", b.str()}, {"element", to_string(ModelArrow{{"", b}, {"", b}, t})}}};
    }
  }
  // G5: an open interval generates R and every R/nZ.
  if (auto x = find_nonpositive(len)) rep.g[4] = {false, {{"point", x->str()}, {"reason", "empty window"}}};
  return rep;
}

AxiomReport check_complex(const ChartComplex& c, int depth) {
  AxiomReport rep;
  for (const auto& ch : c.charts) {
    PLFunction id = PLFunction::identity(OpenSet1D({ch.transversal}));
    bool has = std::any_of(c.edges.begin(), c.edges.end(), [&](const ChartEdge& e) {
      return e.src == ch.id && e.tgt == ch.id && e.map == id;
    });
    if (!has) {
      rep.g[0] = {false, {{"chart", ch.id}, {"point", ch.base.str()}}};
      break;
    }
  }
  for (const auto& e : c.edges) {
    if (e.map.domain().empty() || homeomorphism_defect(e.map)) continue;
    PLFunction inv = pl_inverse(e.map);
    bool has = std::any_of(c.edges.begin(), c.edges.end(), [&](const ChartEdge& f) {
      return f.src == e.tgt && f.tgt == e.src && f.map == inv;
    });
    if (!has) {
      rep.g[1] = {false, {{"edge", e.id}, {"reason", "no inverse sheet"}}};
      break;
    }
  }
  for (const auto& e : c.edges) {
    nlohmann::json w;
    if (e.map.domain().empty()) {
      w = {{"edge", e.id}, {"reason", "zero-width domain"}};
    } else if (auto d = homeomorphism_defect(e.map)) {
      w = {{"edge", e.id}, {"reason", d->reason}, {"point", d->point.str()}};
    } else if (!OpenSet1D({c.chart(e.src).transversal}).contains(e.map.domain())) {
      w = {{"edge", e.id}, {"reason", "domain leaves the source transversal"}};
    } else if (!OpenSet1D({c.chart(e.tgt).transversal}).contains(pl_image(e.map))) {
      w = {{"edge", e.id}, {"reason", "image leaves the target transversal"}};
    }
    if (!w.is_null()) {
      rep.g[2] = {false, w};
      break;
    }
  }
  for (const auto& e : c.edges) {
    if (e.map.domain().empty()) continue;
    if (auto d = homeomorphism_defect(e.map)) {
      rep.g[3] = {false, {{"edge", e.id}, {"reason", "no admissible section: " + d->reason}, {"point", d->point.str()}}};
      break;
    }
  }
  for (const auto& l : c.leaf_maps) {
    std::vector<Rational> samples = l.map.breakpoints();
    for (const auto& p : l.map.pieces()) samples.push_back(sample_point(p.from, p.to));
    for (const auto& y : samples) {
      auto orbit = w_orbit(c, {l.src, y}, depth);
      if (!orbit.contains(Point{l.tgt, l.map(y)})) {
        rep.g[4] = {false, {{"leaf_map", l.id}, {"point", to_string(Point{l.src, y})}, {"depth", depth}}};
        break;
      }
    }
    if (!rep.g[4].holds) break;
  }
  return rep;
}

}  // namespace

AxiomReport check_axioms(const Model& m, int depth) {
  if (const auto* q = std::get_if<QuotientBundleModel>(&m)) return check_bundle(*q);
  return check_complex(std::get<ChartComplex>(m), depth);
}

std::vector<GenerationLetter> generation_certificate(const QuotientBundleModel& m, const Rational& x,
                                                     const Rational& t) {
  Rational lo = m.lower(x), hi = m.upper(x);
  if (!(lo < hi)) throw Error(ErrorCode::NotGenerating, "empty window at " + x.str());
  std::vector<GenerationLetter> out;
  if (t.is_zero()) return out;
  if (lo.sign() < 0 && hi.sign() > 0) {
    Rational radius = min(hi, -lo);
    mpz_class count = (t.abs() / radius).floor() + 1;
    Rational step = t / from_integer(count);
    for (mpz_class i = 0; i < count; ++i) out.push_back({step, false});
    return out;
  }
  // Window misses 0: use differences c1 c2^-1 of two window elements.
  Rational len = hi - lo, mid = (hi + lo) / Rational(2);
  mpz_class count = (t.abs() / len).floor() + 1;
  Rational d = t / from_integer(count);
  for (mpz_class i = 0; i < count; ++i) {
    out.push_back({mid + d / Rational(2), false});
    out.push_back({mid - d / Rational(2), true});
  }
  return out;
}

namespace {

std::set<Point> orbit(const std::vector<const ChartEdge*>& gens, const std::vector<PLFunction>& maps,
                      const Point& p, int depth) {
  std::set<Point> seen{p};
  std::vector<Point> frontier{p};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Point> next;
    for (const auto& q : frontier)
      for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i]->src != q.chart || !maps[i].defined_at(q.y)) continue;
        Point r{gens[i]->tgt, maps[i](q.y)};
        if (seen.insert(r).second) next.push_back(r);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

std::set<Point> w_orbit(const ChartComplex& c, const Point& p, int depth) {
  std::vector<const ChartEdge*> gens;
  std::vector<PLFunction> maps;
  for (const auto& e : c.edges) {
    gens.push_back(&e);
    maps.push_back(e.map);
  }
  return orbit(gens, maps, p, depth);
}

std::set<Point> leaf_through(const ChartComplex& c, const Point& p, int depth) {
  std::vector<ChartEdge> inverses;
  for (const auto& l : c.leaf_maps) inverses.push_back({l.id + "~", l.tgt, l.src, pl_inverse(l.map), false});
  std::vector<const ChartEdge*> gens;
  std::vector<PLFunction> maps;
  for (const auto* list : std::array<const std::vector<ChartEdge>*, 3>{&c.edges, &c.leaf_maps, &inverses})
    for (const auto& e : *list) {
      gens.push_back(&e);
      maps.push_back(e.map);
    }
  return orbit(gens, maps, p, depth);
}

}  // namespace gpd
