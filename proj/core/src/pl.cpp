#include "gpd/pl.hpp"

#include <algorithm>

#include "gpd/error.hpp"

namespace gpd {

namespace {

bool le(const Bound& b, const Rational& x) {
  return b.kind() == Bound::Kind::NegInf || (b.finite() && b.value() <= x);
}

bool ge(const Bound& b, const Rational& x) {
  return b.kind() == Bound::Kind::PosInf || (b.finite() && b.value() >= x);
}

// Limit of an affine map as x tends to a bound from inside an interval.
Bound limit(const Affine& f, const Bound& b) {
  if (b.finite()) return Bound(f.at(b.value()));
  int s = f.slope.sign();
  if (s == 0) return Bound(f.intercept);
  bool pos = (b.kind() == Bound::Kind::PosInf) == (s > 0);
  return pos ? Bound::pos_inf() : Bound::neg_inf();
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Rational sample_point(const Bound& lo, const Bound& hi) {
  if (lo.finite() && hi.finite()) return (lo.value() + hi.value()) / Rational(2);
  if (lo.finite()) return lo.value() + Rational(1);
  if (hi.finite()) return hi.value() - Rational(1);
  return Rational(0);
}

// ---------------------------------------------------------------- OpenSet1D

OpenSet1D::OpenSet1D(std::vector<Interval> parts) {
  std::erase_if(parts, [](const Interval& i) { return i.empty(); });
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo < parts_.back().hi) {
      if (parts_.back().hi < p.hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(p);
    }
  }
}

bool OpenSet1D::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(x); });
}

bool OpenSet1D::contains(const OpenSet1D& other) const {
  for (const auto& o : other.parts_) {
    bool inside = std::any_of(parts_.begin(), parts_.end(),
                              [&](const Interval& i) { return !(o.lo < i.lo) && !(i.hi < o.hi); });
    if (!inside) return false;
  }
  return true;
}

std::optional<Interval> OpenSet1D::component(const Rational& x) const {
  for (const auto& i : parts_)
    if (i.contains(x)) return i;
  return std::nullopt;
}

bool OpenSet1D::covers_left_of(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Interval& i) { return i.lo < x && ge(i.hi, x); });
}

bool OpenSet1D::covers_right_of(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Interval& i) { return le(i.lo, x) && x < i.hi; });
}

OpenSet1D OpenSet1D::intersect(const OpenSet1D& other) const {
  std::vector<Interval> out;
  for (const auto& a : parts_)
    for (const auto& b : other.parts_) {
      Interval c{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
      if (!c.empty()) out.push_back(c);
    }
  return OpenSet1D(std::move(out));
}

OpenSet1D OpenSet1D::unite(const OpenSet1D& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return OpenSet1D(std::move(all));
}

// ------------------------------------------------------------------- Affine

Affine operator+(const Affine& a, const Affine& b) { return {a.slope + b.slope, a.intercept + b.intercept}; }
Affine operator-(const Affine& a) { return {-a.slope, -a.intercept}; }
Affine operator*(const Rational& k, const Affine& a) { return {k * a.slope, k * a.intercept}; }
Affine compose(const Affine& outer, const Affine& inner) {
  return {outer.slope * inner.slope, outer.slope * inner.intercept + outer.intercept};
}
Affine invert(const Affine& a) {
  if (a.slope.is_zero()) throw Error(ErrorCode::InvalidModel, "constant affine map has no inverse");
  Rational inv = Rational(1) / a.slope;
  return {inv, -a.intercept * inv};
}

// --------------------------------------------------------------- PLFunction

PLFunction::PLFunction(OpenSet1D domain, std::vector<Piece> pieces)
    : domain_(std::move(domain)), pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.from < b.from; });
  size_t k = 0;
  for (const auto& comp : domain_.parts()) {
    Bound cursor = comp.lo;
    while (k < pieces_.size() && pieces_[k].from < comp.hi) {
      const Piece& p = pieces_[k];
      if (!(p.from == cursor) || !(p.from < p.to) || comp.hi < p.to)
        throw Error(ErrorCode::InvalidModel, "pieces do not tile the domain near " + p.from.str());
      cursor = p.to;
      ++k;
    }
    if (!(cursor == comp.hi))
      throw Error(ErrorCode::InvalidModel, "pieces do not cover domain component ending at " + comp.hi.str());
  }
  if (k != pieces_.size()) throw Error(ErrorCode::InvalidModel, "piece outside the domain");
  canonicalize();
}

void PLFunction::canonicalize() {
  std::vector<Piece> out;
  for (auto& p : pieces_) {
    if (!out.empty() && out.back().to == p.from && p.from.finite() && domain_.contains(p.from.value()) &&
        out.back().f == p.f) {
      out.back().to = p.to;
    } else {
      out.push_back(p);
    }
  }
  pieces_ = std::move(out);
}

PLFunction PLFunction::constant(const Rational& c, OpenSet1D domain) {
  return affine(Affine::constant(c), std::move(domain));
}

PLFunction PLFunction::affine(const Affine& f, OpenSet1D domain) {
  std::vector<Piece> pieces;
  for (const auto& i : domain.parts()) pieces.push_back({i.lo, i.hi, f});
  return PLFunction(std::move(domain), std::move(pieces));
}

PLFunction PLFunction::identity(OpenSet1D domain) { return affine(Affine::identity(), std::move(domain)); }

PLFunction PLFunction::tabulate(const OpenSet1D& domain, std::vector<Rational> cuts,
                                const std::function<Affine(const Rational&)>& piece_at) {
  sort_unique(cuts);
  std::vector<Piece> pieces;
  for (const auto& comp : domain.parts()) {
    Bound lo = comp.lo;
    for (const auto& c : cuts) {
      if (!comp.contains(c)) continue;
      pieces.push_back({lo, Bound(c), piece_at(sample_point(lo, Bound(c)))});
      lo = Bound(c);
    }
    pieces.push_back({lo, comp.hi, piece_at(sample_point(lo, comp.hi))});
  }
  return PLFunction(domain, std::move(pieces));
}

const Piece& PLFunction::piece_at(const Rational& x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::NotInDomain, x.str() + " is not in the domain");
  for (const auto& p : pieces_)
    if (le(p.from, x) && x < p.to) return p;
  throw Error(ErrorCode::NotInDomain, x.str() + " is not covered by a piece");
}

Rational PLFunction::operator()(const Rational& x) const { return piece_at(x).f.at(x); }

std::optional<Affine> PLFunction::left_line(const Rational& x) const {
  if (!domain_.covers_left_of(x)) return std::nullopt;
  for (const auto& p : pieces_)
    if (p.from < x && ge(p.to, x)) return p.f;
  return std::nullopt;
}

std::optional<Affine> PLFunction::right_line(const Rational& x) const {
  if (!domain_.covers_right_of(x)) return std::nullopt;
  for (const auto& p : pieces_)
    if (le(p.from, x) && x < p.to) return p.f;
  return std::nullopt;
}

std::vector<Rational> PLFunction::breakpoints() const {
  std::vector<Rational> out;
  for (const auto& p : pieces_)
    if (p.from.finite() && domain_.contains(p.from.value())) out.push_back(p.from.value());
  return out;
}

bool PLFunction::continuous_at(const Rational& x) const {
  auto l = left_line(x);
  return !l || !domain_.contains(x) || l->at(x) == (*this)(x);
}

bool PLFunction::continuous() const {
  auto bps = breakpoints();
  return std::all_of(bps.begin(), bps.end(), [&](const Rational& b) { return continuous_at(b); });
}

PLFunction PLFunction::restrict(const OpenSet1D& u) const {
  OpenSet1D d = domain_.intersect(u);
  return tabulate(d, breakpoints(), [&](const Rational& s) { return piece_at(s).f; });
}

// --------------------------------------------------------------- arithmetic

PLFunction operator-(const PLFunction& f) { return pl_scale(Rational(-1), f); }

PLFunction pl_scale(const Rational& k, const PLFunction& f) {
  std::vector<Piece> pieces = f.pieces();
  for (auto& p : pieces) p.f = k * p.f;
  return PLFunction(f.domain(), std::move(pieces));
}

PLFunction pl_add(const PLFunction& f, const PLFunction& g) {
  OpenSet1D d = f.domain().intersect(g.domain());
  if (d.empty()) throw Error(ErrorCode::EmptyIntersection, "summands have disjoint domains");
  auto cuts = f.breakpoints();
  auto gb = g.breakpoints();
  cuts.insert(cuts.end(), gb.begin(), gb.end());
  return PLFunction::tabulate(d, std::move(cuts),
                              [&](const Rational& s) { return f.piece_at(s).f + g.piece_at(s).f; });
}

PLFunction pl_sub(const PLFunction& f, const PLFunction& g) { return pl_add(f, -g); }

PLFunction pl_compose(const PLFunction& outer, const PLFunction& inner) {
  std::vector<Rational> special = outer.breakpoints();
  for (const auto& i : outer.domain().parts()) {
    if (i.lo.finite()) special.push_back(i.lo.value());
    if (i.hi.finite()) special.push_back(i.hi.value());
  }
  sort_unique(special);

  std::vector<Rational> cuts = inner.breakpoints();
  for (const auto& p : inner.pieces()) {
    if (p.f.slope.is_zero()) continue;
    for (const auto& v : special) {
      Rational x = (v - p.f.intercept) / p.f.slope;
      if (le(p.from, x) && x < p.to && inner.defined_at(x)) cuts.push_back(x);
    }
  }
  sort_unique(cuts);

  const OpenSet1D& target = outer.domain();
  std::vector<Interval> parts;
  for (const auto& comp : inner.domain().parts()) {
    std::vector<Rational> local;
    for (const auto& c : cuts)
      if (comp.contains(c)) local.push_back(c);
    std::optional<Bound> run_start;
    Bound lo = comp.lo;
    for (size_t k = 0; k <= local.size(); ++k) {
      Bound hi = k < local.size() ? Bound(local[k]) : comp.hi;
      bool cell_ok = target.contains(inner(sample_point(lo, hi)));
      if (cell_ok && !run_start) run_start = lo;
      if (!cell_ok && run_start) {
        parts.push_back({*run_start, lo});
        run_start.reset();
      }
      if (k < local.size() && run_start && !target.contains(inner(local[k]))) {
        parts.push_back({*run_start, hi});
        run_start.reset();
      }
      lo = hi;
    }
    if (run_start) parts.push_back({*run_start, comp.hi});
  }
  OpenSet1D domain(std::move(parts));
  return PLFunction::tabulate(domain, std::move(cuts), [&](const Rational& s) {
    return compose(outer.piece_at(inner(s)).f, inner.piece_at(s).f);
  });
}

OpenSet1D pl_image(const PLFunction& f) {
  std::vector<Interval> parts;
  for (const auto& comp : f.domain().parts()) {
    const Piece* first = nullptr;
    const Piece* last = nullptr;
    for (const auto& p : f.pieces()) {
      if (!(p.from < comp.lo) && !(comp.hi < p.to)) {
        if (!first) first = &p;
        last = &p;
      }
    }
    if (!first) continue;
    Bound a = limit(first->f, comp.lo);
    Bound b = limit(last->f, comp.hi);
    parts.push_back(a < b ? Interval{a, b} : Interval{b, a});
  }
  return OpenSet1D(std::move(parts));
}

std::optional<FoldWitness> homeomorphism_defect(const PLFunction& f) {
  for (const auto& p : f.pieces())
    if (p.f.slope.is_zero()) return FoldWitness{"constant_piece", sample_point(p.from, p.to)};
  for (const auto& b : f.breakpoints()) {
    if (!f.continuous_at(b)) return FoldWitness{"discontinuous", b};
    if (f.left_line(b)->slope.sign() != f.right_line(b)->slope.sign()) return FoldWitness{"fold", b};
  }
  // Components map to open intervals; they must not overlap.
  std::vector<std::pair<Interval, Rational>> images;
  for (const auto& comp : f.domain().parts()) {
    OpenSet1D img = pl_image(f.restrict(OpenSet1D({comp})));
    for (const auto& [other, where] : images) {
      OpenSet1D both = img.intersect(OpenSet1D({other}));
      if (!both.empty()) {
        Rational y = sample_point(both.parts()[0].lo, both.parts()[0].hi);
        // Report the preimage of y inside the current component.
        for (const auto& p : f.pieces()) {
          if (!comp.contains(sample_point(p.from, p.to))) continue;
          Rational x = (y - p.f.intercept) / p.f.slope;
          if (le(p.from, x) && x < p.to && comp.contains(x)) return FoldWitness{"overlap", x};
        }
        return FoldWitness{"overlap", where};
      }
    }
    images.emplace_back(img.parts().at(0), sample_point(comp.lo, comp.hi));
  }
  return std::nullopt;
}

PLFunction pl_inverse(const PLFunction& f) {
  if (auto w = homeomorphism_defect(f))
    throw Error(ErrorCode::InvalidModel, "not a PL homeomorphism (" + w->reason + " at " + w->point.str() + ")",
                {{"reason", w->reason}, {"point", w->point.str()}});
  OpenSet1D img = pl_image(f);
  std::vector<Rational> cuts;
  for (const auto& b : f.breakpoints()) cuts.push_back(f(b));
  return PLFunction::tabulate(img, std::move(cuts), [&](const Rational& y) {
    for (const auto& p : f.pieces()) {
      Bound a = limit(p.f, p.from);
      Bound b = limit(p.f, p.to);
      Interval range = a < b ? Interval{a, b} : Interval{b, a};
      if (range.contains(y)) return invert(p.f);
    }
    throw Error(ErrorCode::NotInDomain, "no preimage for " + y.str());
  });
}

// -------------------------------------------------------------------- germs

Germ1D Germ1D::identity_at(const Rational& x) { return of_affine(x, Affine::identity()); }

Germ1D Germ1D::of_affine(const Rational& x, const Affine& f) { return {x, f.at(x), f, f}; }

Germ1D germ_at(const PLFunction& f, const Rational& x0) {
  Germ1D g{x0, std::nullopt, f.left_line(x0), f.right_line(x0)};
  if (!g.left && !g.right) throw Error(ErrorCode::NotInDomain, "no neighbourhood of " + x0.str() + " in the domain");
  if (f.defined_at(x0)) g.value = f(x0);
  return g;
}

Germ1D germ_add(const Germ1D& a, const Germ1D& b) {
  if (a.base != b.base) throw Error(ErrorCode::BaseMismatch, "germs at different points");
  Germ1D out{a.base, std::nullopt, std::nullopt, std::nullopt};
  if (a.value && b.value) out.value = *a.value + *b.value;
  if (a.left && b.left) out.left = *a.left + *b.left;
  if (a.right && b.right) out.right = *a.right + *b.right;
  return out;
}

Germ1D germ_neg(const Germ1D& a) {
  Germ1D out = a;
  if (out.value) out.value = -*out.value;
  if (out.left) out.left = -*out.left;
  if (out.right) out.right = -*out.right;
  return out;
}

namespace {

// Side of the outer germ that a one-sided inner line lands on.
std::optional<Affine> through(const Germ1D& outer, const std::optional<Affine>& inner) {
  if (!inner) return std::nullopt;
  int s = inner->slope.sign();
  if (s == 0) throw Error(ErrorCode::InvalidModel, "germ is not locally injective");
  const auto& side = s > 0 ? outer.left : outer.right;
  if (!side) return std::nullopt;
  return compose(*side, *inner);
}

}  // namespace

Germ1D germ_compose(const Germ1D& outer, const Germ1D& inner) {
  if (!inner.value || *inner.value != outer.base)
    throw Error(ErrorCode::NotComposable, "inner germ does not land on the outer base point");
  Germ1D out{inner.base, outer.value, through(outer, inner.left), through(outer, inner.right)};
  if (!out.left && !out.right) throw Error(ErrorCode::EmptyDomain, "composite germ has empty domain");
  return out;
}

Germ1D germ_inverse(const Germ1D& g) {
  if (!g.value) throw Error(ErrorCode::NotInDomain, "germ has no value at its base point");
  Germ1D out{*g.value, g.base, std::nullopt, std::nullopt};
  for (const auto* side : {&g.left, &g.right}) {
    if (!*side) continue;
    int s = (*side)->slope.sign();
    if (s == 0) throw Error(ErrorCode::InvalidModel, "germ is not locally injective");
    bool left_of_image = (side == &g.left) == (s > 0);
    (left_of_image ? out.left : out.right) = invert(**side);
  }
  return out;
}

CrVerdict is_cr_at(const Germ1D& g, SmoothnessClass r) {
  CrVerdict v;
  v.one_sided = !(g.left && g.right);
  std::optional<Rational> anchor = g.value;
  bool ok = true;
  for (const auto* side : {&g.left, &g.right}) {
    if (!*side) continue;
    Rational lim = (*side)->at(g.base);
    if (!anchor) anchor = lim;
    ok = ok && lim == *anchor;
  }
  if (r.r >= 1 && g.left && g.right) ok = ok && g.left->slope == g.right->slope;
  v.holds = ok;
  return v;
}

}  // namespace gpd
