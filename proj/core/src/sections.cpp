#include "gpd/sections.hpp"

#include <algorithm>

#include "gpd/error.hpp"

namespace gpd {

namespace {

nlohmann::json set_json(const OpenSet1D& u) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : u.parts()) j.push_back({p.lo.str(), p.hi.str()});
  return j;
}

Interval positive_region(const Affine& f, const Bound& lo, const Bound& hi) {
  if (f.slope.is_zero()) return f.intercept.sign() > 0 ? Interval{lo, hi} : Interval{hi, lo};
  Rational r = -f.intercept / f.slope;
  if (f.slope.sign() > 0) return {std::max(lo, Bound(r)), hi};
  return {lo, std::min(hi, Bound(r))};
}

// Sorted breakpoints of the given functions lying in the domain.
std::vector<Rational> cuts_in(const OpenSet1D& dom, const std::vector<const PLFunction*>& fs) {
  std::vector<Rational> cuts;
  for (const auto* f : fs)
    for (const auto& b : f->breakpoints())
      if (dom.contains(b)) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Open cells of dom cut at `cuts`.
std::vector<Interval> cells_of(const OpenSet1D& dom, const std::vector<Rational>& cuts) {
  std::vector<Interval> out;
  for (const auto& part : dom.parts()) {
    Bound lo = part.lo;
    for (const auto& c : cuts) {
      if (!part.contains(c)) continue;
      out.push_back({lo, Bound(c)});
      lo = Bound(c);
    }
    out.push_back({lo, part.hi});
  }
  return out;
}

Verdict bundle_procedure_at(const QuotientBundleModel& b, const SectionWord& s, const Rational& x) {
  if (!s.domain().contains(x)) return {false, {{"point", x.str()}, {"reason", "not_in_domain"}}};
  auto rep = w_representative(b, s.values(), x);
  if (!rep.found) return {false, {{"point", x.str()}, {"reason", rep.reason}}};
  return {true, {{"point", x.str()}, {"k", rep.k.get_str()}}};
}

// Every point of the cell has a shift keeping t - k n strictly in the window.
Verdict bundle_procedure_on_cell(const QuotientBundleModel& b, const PLFunction& t, const Interval& cell) {
  std::vector<Interval> covered;
  Rational s = sample_point(cell.lo, cell.hi);
  Affine tf = t.piece_at(s).f, nf = b.profile.piece_at(s).f;
  Affine lo = b.lower.piece_at(s).f, hi = b.upper.piece_at(s).f;
  auto uncovered = [&]() -> std::optional<Rational> {
    std::sort(covered.begin(), covered.end(), [](const Interval& a, const Interval& c) { return a.lo < c.lo; });
    Bound reach = cell.lo;
    for (const auto& iv : covered) {
      if (reach < iv.lo) {
        if (reach == cell.lo) return sample_point(reach, iv.lo);
        return reach.value();
      }
      if (!(reach < iv.lo) && reach < iv.hi) reach = iv.hi;
    }
    if (reach < cell.hi) return reach == cell.lo ? sample_point(cell.lo, cell.hi) : reach.value();
    return std::nullopt;
  };
  for (int round = 0; round < 64; ++round) {
    auto p = uncovered();
    if (!p) return {true, nullptr};
    Rational tp = tf.at(*p), np = nf.at(*p);
    auto u = window_rep(b, *p, tp);
    // window_rep evaluates at *p, which is interior to the cell here
    if (!u) return {false, {{"point", p->str()}, {"reason", "out_of_window"}}};
    Rational k = np.is_zero() ? Rational(0) : (tp - *u) / np;
    Affine uf = tf + (-k) * nf;
    Interval r1 = positive_region(hi + (-uf), cell.lo, cell.hi);
    Interval r2 = positive_region(uf + (-lo), cell.lo, cell.hi);
    Interval r{std::max(r1.lo, r2.lo), std::min(r1.hi, r2.hi)};
    if (r.empty() || !r.contains(*p)) return {false, {{"point", p->str()}, {"reason", "out_of_window"}}};
    covered.push_back(r);
  }
  return {false, {{"reason", "cell_not_covered"}, {"cell", {cell.lo.str(), cell.hi.str()}}}};
}

std::vector<const ChartEdge*> parallel_edges(const ChartComplex& c, const std::string& src, const std::string& tgt) {
  std::vector<const ChartEdge*> out;
  for (const auto& e : c.edges)
    if (e.src == src && e.tgt == tgt) out.push_back(&e);
  return out;
}

Verdict chart_procedure_at(const ChartComplex& c, const SectionWord& s, const Rational& y) {
  if (!s.domain().contains(y)) return {false, {{"point", y.str()}, {"reason", "not_in_domain"}}};
  Germ1D g = germ_at(s.target_map(), y);
  for (const auto* e : parallel_edges(c, s.src_chart(), s.tgt_chart()))
    if (e->map.defined_at(y) && germ_at(e->map, y) == g) return {true, {{"point", y.str()}, {"edge", e->id}}};
  return {false, {{"point", y.str()}, {"reason", "germ_not_in_W"}}};
}

}  // namespace

OpenSet1D positive_set(const PLFunction& f) {
  std::vector<Interval> regions;
  for (const auto& p : f.pieces()) {
    Interval r = positive_region(p.f, p.from, p.to);
    if (r.empty()) continue;
    if (!regions.empty() && regions.back().hi == r.lo && r.lo.finite() && f.defined_at(r.lo.value()) &&
        f(r.lo.value()).sign() > 0)
      regions.back().hi = r.hi;
    else
      regions.push_back(r);
  }
  return OpenSet1D(regions);
}

// -------------------------------------------------------------- SectionWord

SectionWord SectionWord::identity(const Model& m, const std::string& chart) {
  SectionWord w;
  if (is_bundle(m)) {
    w.target_ = PLFunction::identity();
    w.values_ = PLFunction::constant(0);
    return w;
  }
  const auto& ch = complex(m).chart(chart);
  OpenSet1D dom({ch.transversal});
  w.src_ = w.tgt_ = chart;
  w.target_ = PLFunction::identity(dom);
  w.values_ = PLFunction::constant(0, dom);
  return w;
}

SectionWord SectionWord::single(const Model& m, SectionEntry e) {
  if (e.data.domain().empty()) throw Error(ErrorCode::EmptyDomain, "section has empty domain");
  SectionWord w;
  if (is_bundle(m)) {
    w.target_ = PLFunction::identity(e.data.domain());
    w.values_ = e.data;
  } else {
    w.src_ = e.src;
    w.tgt_ = e.tgt;
    w.target_ = e.data;
    w.values_ = PLFunction::constant(0, e.data.domain());
  }
  w.entries_.push_back(std::move(e));
  w.entries_.back().procedure = is_local_procedure(m, w).holds;
  return w;
}

SectionWord SectionWord::bundle_section(const Model& m, const PLFunction& f) {
  bundle(m);
  return single(m, {"", "", "", f, false});
}

SectionWord SectionWord::edge_section(const Model& m, const std::string& edge,
                                      const std::optional<OpenSet1D>& u) {
  const auto& e = complex(m).edge(edge);
  PLFunction data = u ? e.map.restrict(*u) : e.map;
  return single(m, {e.id, e.src, e.tgt, data, false});
}

bool SectionWord::all_procedures() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const SectionEntry& e) { return e.procedure; });
}

ModelArrow SectionWord::evaluate(const Model& m, const Rational& x) const {
  if (!domain().contains(x))
    throw Error(ErrorCode::NotInDomain, "section not defined at " + x.str(), {{"point", x.str()}});
  if (is_bundle(m)) return {{"", x}, {"", x}, values_(x)};
  return {{src_, x}, {tgt_, target_(x)}, Rational(0)};
}

SectionWord ehresmann_product(const Model& m, const SectionWord& sigma, const SectionWord& tau) {
  SectionWord w;
  if (is_bundle(m)) {
    try {
      w.values_ = pl_add(sigma.values_, tau.values_);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyIntersection) throw;
      throw Error(ErrorCode::EmptyDomain, "product has empty domain",
                  {{"left", set_json(sigma.domain())}, {"right", set_json(tau.domain())}});
    }
    w.target_ = PLFunction::identity(w.values_.domain());
  } else {
    if (sigma.tgt_ != tau.src_)
      throw Error(ErrorCode::EmptyDomain, "product has empty domain: chart " + sigma.tgt_ + " != " + tau.src_,
                  {{"left_target", sigma.tgt_}, {"right_source", tau.src_}});
    w.target_ = pl_compose(tau.target_, sigma.target_);
    if (w.target_.domain().empty())
      throw Error(ErrorCode::EmptyDomain, "product has empty domain",
                  {{"left", set_json(sigma.domain())}, {"right", set_json(tau.domain())}});
    w.src_ = sigma.src_;
    w.tgt_ = tau.tgt_;
    w.values_ = PLFunction::constant(0, w.target_.domain());
  }
  w.entries_ = sigma.entries_;
  w.entries_.insert(w.entries_.end(), tau.entries_.begin(), tau.entries_.end());
  return w;
}

SectionWord section_inverse(const Model& m, const SectionWord& sigma) {
  SectionWord w;
  if (is_bundle(m)) {
    w.values_ = -sigma.values_;
    w.target_ = sigma.target_;
    for (auto it = sigma.entries_.rbegin(); it != sigma.entries_.rend(); ++it)
      w.entries_.push_back(SectionWord::single(m, {"", "", "", -it->data, false}).entries_.front());
    return w;
  }
  const auto& c = complex(m);
  w.src_ = sigma.tgt_;
  w.tgt_ = sigma.src_;
  w.target_ = pl_inverse(sigma.target_);
  w.values_ = PLFunction::constant(0, w.target_.domain());
  for (auto it = sigma.entries_.rbegin(); it != sigma.entries_.rend(); ++it) {
    PLFunction inv = pl_inverse(it->data);
    std::string id;
    for (const auto* e : parallel_edges(c, it->tgt, it->src))
      if (e->map.domain().contains(inv.domain()) && e->map.restrict(inv.domain()) == inv) {
        id = e->id;
        break;
      }
    w.entries_.push_back(SectionWord::single(m, {id, it->tgt, it->src, inv, false}).entries_.front());
  }
  return w;
}

SectionWord section_power(const Model& m, const SectionWord& sigma, int k) {
  SectionWord base = k < 0 ? section_inverse(m, sigma) : sigma;
  if (k == 0) return SectionWord::identity(m, sigma.src_chart());
  SectionWord out = base;
  for (int i = 1; i < std::abs(k); ++i) out = ehresmann_product(m, out, base);
  return out;
}

// ------------------------------------------------------------- predicates

Verdict is_admissible(const Model& m, const SectionEntry& raw) {
  const OpenSet1D& dom = raw.data.domain();
  if (dom.empty()) return {false, {{"clause", "empty_domain"}}};
  if (is_bundle(m)) return {true, {{"domain", set_json(dom)}}};

  const auto& c = complex(m);
  const auto& src = c.chart(raw.src);
  const auto& tgt = c.chart(raw.tgt);
  if (!OpenSet1D({src.transversal}).contains(dom)) return {false, {{"clause", "source_outside_transversal"}}};
  if (auto d = homeomorphism_defect(raw.data))
    return {false, {{"clause", "not_homeomorphism"}, {"reason", d->reason}, {"point", d->point.str()}}};
  OpenSet1D image = pl_image(raw.data);
  if (!OpenSet1D({tgt.transversal}).contains(image)) return {false, {{"clause", "target_outside_transversal"}}};

  // Every value must be an arrow of G: the endpoints share a leaf.
  std::vector<Rational> probes = raw.data.breakpoints();
  for (const auto& p : raw.data.pieces()) probes.push_back(sample_point(p.from, p.to));
  for (const auto& y : probes) {
    if (!dom.contains(y)) continue;
    auto leaf = leaf_through(c, {raw.src, y}, 8);
    Point end{raw.tgt, raw.data(y)};
    if (!leaf.count(end))
      return {false, {{"clause", "not_in_G"}, {"point", y.str()}, {"target", to_string(end)}}};
  }
  return {true, {{"domain", set_json(dom)}, {"image", set_json(image)}}};
}

Verdict is_local_procedure(const Model& m, const SectionWord& sigma, const std::optional<Rational>& at) {
  if (is_bundle(m)) {
    const auto& b = bundle(m);
    if (at) return bundle_procedure_at(b, sigma, *at);
    std::vector<const PLFunction*> fs = {&sigma.values(), &b.profile, &b.upper, &b.lower};
    auto cuts = cuts_in(sigma.domain(), fs);
    for (const auto& x : cuts) {
      auto v = bundle_procedure_at(b, sigma, x);
      if (!v.holds) return v;
    }
    for (const auto& cell : cells_of(sigma.domain(), cuts)) {
      auto v = bundle_procedure_on_cell(b, sigma.values(), cell);
      if (!v.holds) return v;
    }
    return {true, nullptr};
  }

  const auto& c = complex(m);
  if (at) return chart_procedure_at(c, sigma, *at);
  auto edges = parallel_edges(c, sigma.src_chart(), sigma.tgt_chart());
  std::vector<const PLFunction*> fs = {&sigma.target_map()};
  for (const auto* e : edges) fs.push_back(&e->map);
  auto cuts = cuts_in(sigma.domain(), fs);
  for (const auto* e : edges)
    for (const auto& part : e->map.domain().parts())
      for (const auto& end : {part.lo, part.hi})
        if (end.finite() && sigma.domain().contains(end.value())) cuts.push_back(end.value());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (const auto& y : cuts) {
    auto v = chart_procedure_at(c, sigma, y);
    if (!v.holds) return v;
  }
  for (const auto& cell : cells_of(sigma.domain(), cuts)) {
    Rational s = sample_point(cell.lo, cell.hi);
    auto v = chart_procedure_at(c, sigma, s);
    if (!v.holds) return v;
  }
  return {true, nullptr};
}

SectionWord local_section_through(const Model& m, const ModelArrow& w, int variant) {
  if (is_bundle(m)) {
    const auto& b = bundle(m);
    const Rational& x = w.src.y;
    auto u = window_rep(b, x, w.t);
    if (!u) throw Error(ErrorCode::NoSectionThroughW, to_string(w) + " is not in W", {{"arrow", to_string(w)}});
    Affine f = variant == 1 ? Affine{Rational(1, 16), *u - Rational(1, 16) * x} : Affine::constant(*u);
    PLFunction fn = PLFunction::affine(f);
    OpenSet1D ok = positive_set(pl_sub(b.upper, fn)).intersect(positive_set(pl_sub(fn, b.lower)));
    auto comp = ok.component(x);
    if (!comp) throw Error(ErrorCode::NoSectionThroughW, "window collapses at " + x.str(), {{"point", x.str()}});
    OpenSet1D dom({*comp});
    if (variant == 2) dom = dom.intersect(OpenSet1D::interval(Bound(x - Rational(1, 8)), Bound(x + Rational(1, 8))));
    return SectionWord::bundle_section(m, fn.restrict(dom));
  }
  const auto& c = complex(m);
  auto sheet = sheet_of(c, w);
  if (!sheet) throw Error(ErrorCode::NoSectionThroughW, to_string(w) + " is not in W", {{"arrow", to_string(w)}});
  if (variant == 0) return SectionWord::edge_section(m, *sheet);
  const auto& e = c.edge(*sheet);
  auto comp = e.map.domain().component(w.src.y);
  OpenSet1D dom = OpenSet1D({*comp}).intersect(
      OpenSet1D::interval(Bound(w.src.y - Rational(1, 4)), Bound(w.src.y + Rational(1, 4))));
  return SectionWord::edge_section(m, *sheet, dom);
}

}  // namespace gpd
