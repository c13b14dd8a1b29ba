#include "gpd/holonomy.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "gpd/error.hpp"

namespace gpd {

namespace {

std::string germ_str(const Germ1D& g) {
  auto line = [](const std::optional<Affine>& a) {
    return a ? a->slope.str() + "*y+" + a->intercept.str() : std::string("-");
  };
  return "[" + g.base.str() + "->" + (g.value ? g.value->str() : "-") + " L:" + line(g.left) +
         " R:" + line(g.right) + "]";
}

bool lattice_multiple(const Affine& d, const Affine& n) {
  Affine zero{Rational(0), Rational(0)};
  if (n == zero) return d == zero;
  Rational k = n.slope.is_zero() ? d.intercept / n.intercept : d.slope / n.slope;
  return k.is_integer() && k * n == d;
}

SectionWord word_of_edges(const Model& m, const std::string& chart, const std::vector<std::string>& edges) {
  SectionWord w = SectionWord::identity(m, chart);
  for (const auto& e : edges) w = ehresmann_product(m, w, SectionWord::edge_section(m, e));
  return w;
}

std::vector<const ChartEdge*> loops_at(const ChartComplex& c, const Point& x) {
  std::vector<const ChartEdge*> out;
  for (const auto& e : c.edges)
    if (e.src == x.chart && e.tgt == x.chart && e.map.defined_at(x.y)) out.push_back(&e);
  return out;
}

bool germ_in_w(const ChartComplex& c, const Point& x, const Germ1D& g) {
  for (const auto* e : loops_at(c, x))
    if (germ_at(e->map, x.y) == g) return true;
  return false;
}

}  // namespace

// -------------------------------------------------------------------- germs

GermClass germ_of(const Model& m, SectionWord word, const Point& base) {
  if (!word.domain().contains(base.y) || (!is_bundle(m) && word.src_chart() != base.chart))
    throw Error(ErrorCode::NotInDomain, "section not defined at " + to_string(base), {{"point", to_string(base)}});
  return {std::move(word), base};
}

bool germ_equal(const Model& m, const GermClass& a, const GermClass& b) {
  if (!(a.base == b.base)) return false;
  const Rational& x0 = a.base.y;
  if (is_bundle(m)) {
    const auto& q = bundle(m);
    Germ1D d = germ_add(germ_at(a.word.values(), x0), germ_neg(germ_at(b.word.values(), x0)));
    if (!fiber_equal(q, x0, *d.value, Rational(0))) return false;
    return lattice_multiple(*d.left, *q.profile.left_line(x0)) &&
           lattice_multiple(*d.right, *q.profile.right_line(x0));
  }
  return a.word.tgt_chart() == b.word.tgt_chart() &&
         germ_at(a.word.target_map(), x0) == germ_at(b.word.target_map(), x0);
}

ModelArrow final_map(const Model& m, const GermClass& a) { return a.word.evaluate(m, a.base.y); }

GermClass germ_product(const Model& m, const GermClass& a, const GermClass& b) {
  Point y = final_map(m, a).tgt;
  if (!(y == b.base))
    throw Error(ErrorCode::NotComposable, "germ at " + to_string(b.base) + " does not start at " + to_string(y),
                {{"expected", to_string(y)}, {"got", to_string(b.base)}});
  return {ehresmann_product(m, a.word, b.word), a.base};
}

GermClass germ_class_inverse(const Model& m, const GermClass& a) {
  return {section_inverse(m, a.word), final_map(m, a).tgt};
}

Verdict in_j0(const Model& m, const GermClass& a) {
  ModelArrow v = final_map(m, a);
  if (!is_identity(m, v)) return {false, {{"reason", "not_identity"}, {"value", to_string(v)}}};
  return is_local_procedure(m, a.word, a.base.y);
}

bool hol_equal(const Model& m, const HolClass& a, const HolClass& b) {
  if (!(a.base == b.base))
    throw Error(ErrorCode::SourceMismatch, "holonomy classes at " + to_string(a.base) + " and " + to_string(b.base),
                {{"left", to_string(a.base)}, {"right", to_string(b.base)}});
  if (!(final_map(m, a).tgt == final_map(m, b).tgt)) return false;
  return in_j0(m, germ_product(m, a, germ_class_inverse(m, b))).holds;
}

// ------------------------------------------------------------------ kernels

std::string KernelDescriptor::label() const {
  if (kind == "Z/m") return "Z/" + std::to_string(order);
  if (kind == "finite") return "finite(" + std::to_string(order) + ")";
  return kind;
}

namespace {

KernelDescriptor bundle_kernel(const Model& m, const Rational& x0) {
  const auto& b = bundle(m);
  KernelDescriptor k;
  k.point = {"", x0};
  Rational n0 = b.profile(x0);
  Affine nl = *b.profile.left_line(x0), nr = *b.profile.right_line(x0);
  k.certificate = {{"n", n0.str()}, {"n_left", nl.at(x0).str()}, {"n_right", nr.at(x0).str()}};
  if (n0.is_zero()) {
    k.kind = "trivial";
    k.certificate["reason"] = "fiber_is_line";
    return k;
  }

  bool free = false;
  mpz_class d = 1;
  Rational rho_l(0), rho_r(0);
  for (auto [line, rho] : {std::pair{&nl, &rho_l}, std::pair{&nr, &rho_r}}) {
    Rational ns = line->at(x0);
    if (ns.is_zero()) {
      free = true;
      continue;
    }
    *rho = n0 / ns;
    d = lcm(d, rho->den());
  }
  if (!free && b.smoothness.r >= 1 && !(rho_l * nl.slope == rho_r * nr.slope)) free = true;

  Rational w0 = min(b.upper(x0), -b.lower(x0));
  mpz_class count = (n0 / (w0 / Rational(2))).ceil();
  Rational step = n0 / from_integer(count);
  SectionWord letter = local_section_through(m, {{"", x0}, {"", x0}, step});
  GermClass gen = germ_of(m, section_power(m, letter, static_cast<int>(count.get_si())), {"", x0});
  k.certificate["letters"] = count.get_si();
  k.certificate["step"] = step.str();

  if (free) {
    k.kind = "Z";
    k.order = 0;
  } else if (d == 1) {
    k.kind = "trivial";
    return k;
  } else {
    k.kind = "Z/m";
    k.order = d.get_si();
  }
  auto rep = w_representative(b, gen.word.values(), x0);
  k.certificate["obstruction"] = rep.found ? "none" : rep.reason;
  k.generator = std::move(gen);
  return k;
}

struct GermState {
  std::string chart;
  Germ1D germ;
  std::vector<std::string> word;
};

KernelDescriptor chart_kernel(const Model& m, const Point& x, int depth) {
  const auto& c = complex(m);
  c.chart(x.chart);
  std::vector<GermState> states{{x.chart, Germ1D::identity_at(x.y), {}}};
  std::set<std::string> seen{x.chart + germ_str(states[0].germ)};
  std::vector<size_t> frontier{0};
  for (int level = 0; !frontier.empty(); ++level) {
    if (level == depth)
      throw Error(ErrorCode::DepthExceeded, "germ states not closed within depth " + std::to_string(depth),
                  {{"depth", depth}, {"states", states.size()}, {"frontier", frontier.size()}});
    std::vector<size_t> next;
    for (size_t i : frontier) {
      GermState st = states[i];
      Rational y = *st.germ.value;
      for (const auto& e : c.edges) {
        if (e.src != st.chart || !e.map.defined_at(y)) continue;
        Germ1D g = germ_compose(germ_at(e.map, y), st.germ);
        if (!seen.insert(e.tgt + germ_str(g)).second) continue;
        auto word = st.word;
        word.push_back(e.id);
        states.push_back({e.tgt, g, word});
        next.push_back(states.size() - 1);
      }
    }
    frontier = std::move(next);
  }

  std::vector<const GermState*> loops;
  for (const auto& s : states)
    if (s.chart == x.chart && *s.germ.value == x.y) loops.push_back(&s);
  auto in_w = [&](const Germ1D& g) { return germ_in_w(c, x, g); };
  auto same_class = [&](const Germ1D& g, const Germ1D& h) { return in_w(germ_compose(g, germ_inverse(h))); };

  std::vector<const GermState*> reps;
  for (const auto* l : loops)
    if (std::none_of(reps.begin(), reps.end(), [&](const GermState* r) { return same_class(l->germ, r->germ); }))
      reps.push_back(l);

  KernelDescriptor k;
  k.point = x;
  k.order = static_cast<long>(reps.size());
  nlohmann::json ls = nlohmann::json::array();
  for (const auto* l : loops) ls.push_back({{"word", l->word}, {"germ", germ_str(l->germ)}, {"in_W", in_w(l->germ)}});
  k.certificate = {{"states", states.size()}, {"loops", ls}, {"classes", reps.size()}};
  if (reps.size() == 1) {
    k.kind = "trivial";
    return k;
  }
  for (const auto* r : reps) {
    Germ1D p = r->germ;
    long ord = 1;
    while (!in_w(p) && ord <= k.order) {
      p = germ_compose(r->germ, p);
      ++ord;
    }
    if (ord == k.order) {
      k.kind = "Z/m";
      k.generator = germ_of(m, word_of_edges(m, x.chart, r->word), x);
      k.certificate["generator_word"] = r->word;
      return k;
    }
  }
  k.kind = "finite";
  return k;
}

}  // namespace

KernelDescriptor kernel_at(const Model& m, const Point& x, int depth) {
  if (is_bundle(m)) return bundle_kernel(m, x.y);
  return chart_kernel(m, x, depth);
}

long kernel_class(const Model& m, const GermClass& a, long bound) {
  if (!is_identity(m, final_map(m, a)))
    throw Error(ErrorCode::InvalidModel, "germ is not in the kernel of psi", {{"value", to_string(final_map(m, a))}});
  KernelDescriptor k = kernel_at(m, a.base);
  if (!k.generator) return 0;
  for (long j = 0; j <= bound; ++j) {
    std::vector<long> signs = j == 0 ? std::vector<long>{0} : std::vector<long>{j, -j};
    for (long s : signs) {
      GermClass cand = a;
      if (s != 0) cand = germ_product(m, a, {section_power(m, k.generator->word, -static_cast<int>(s)), a.base});
      if (in_j0(m, cand).holds) return s;
    }
  }
  throw Error(ErrorCode::NotGenerating, "no kernel class within bound", {{"bound", bound}});
}

// ------------------------------------------------------------ extendibility

namespace {

Verdict bundle_extendible(const Model& m) {
  const auto& b = bundle(m);
  std::vector<Rational> pts;
  for (const auto* f : {&b.profile, &b.upper, &b.lower})
    for (const auto& x : f->breakpoints()) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) pts.push_back(Rational(0));
  nlohmann::json checked = nlohmann::json::array();
  for (const auto& x : pts) {
    auto k = kernel_at(m, {"", x});
    checked.push_back({{"point", x.str()}, {"kernel", k.label()}});
    if (k.kind != "trivial")
      return {false,
              {{"point", x.str()}, {"kernel", k.label()}, {"letters", k.certificate["letters"]},
               {"step", k.certificate["step"]}, {"reason", k.certificate["obstruction"]}}};
  }
  return {true, {{"checked", checked}}};
}

struct Walk {
  std::string start, end;
  PLFunction f;
  std::vector<std::string> word;
};

std::vector<Rational> fixed_points(const PLFunction& f) {
  std::vector<Rational> out;
  for (const auto& p : f.pieces()) {
    if (p.f.slope == Rational(1)) {
      if (!p.f.intercept.is_zero()) continue;
      out.push_back(sample_point(p.from, p.to));
      if (p.from.finite()) out.push_back(p.from.value());
      continue;
    }
    Rational x = p.f.intercept / (Rational(1) - p.f.slope);
    if (!(x < p.from) && x < p.to) out.push_back(x);
  }
  std::vector<Rational> fixed;
  for (const auto& x : out)
    if (f.defined_at(x) && f(x) == x) fixed.push_back(x);
  return fixed;
}

Verdict chart_extendible(const Model& m, int depth) {
  const auto& c = complex(m);
  std::vector<Walk> walks;
  std::vector<size_t> frontier;
  for (const auto& ch : c.charts) {
    walks.push_back({ch.id, ch.id, PLFunction::identity(OpenSet1D({ch.transversal})), {}});
    frontier.push_back(walks.size() - 1);
  }
  auto known = [&](const Walk& w) {
    return std::any_of(walks.begin(), walks.end(), [&](const Walk& v) {
      return v.start == w.start && v.end == w.end && v.f == w.f;
    });
  };
  for (int level = 0; !frontier.empty(); ++level) {
    if (level == depth)
      throw Error(ErrorCode::DepthExceeded, "loop words not closed within depth " + std::to_string(depth),
                  {{"depth", depth}, {"walks", walks.size()}});
    std::vector<size_t> next;
    for (size_t i : frontier) {
      Walk w = walks[i];
      for (const auto& e : c.edges) {
        if (e.src != w.end) continue;
        PLFunction f = pl_compose(e.map, w.f);
        if (f.domain().empty()) continue;
        Walk v{w.start, e.tgt, f, w.word};
        v.word.push_back(e.id);
        if (known(v)) continue;
        if (v.start == v.end)
          for (const auto& y : fixed_points(v.f)) {
            Point x{v.start, y};
            Germ1D g = germ_at(v.f, y);
            if (!germ_in_w(c, x, g))
              return {false, {{"point", to_string(x)}, {"word", v.word}, {"germ", germ_str(g)}, {"reason", "loop_germ_not_in_W"}}};
          }
        walks.push_back(std::move(v));
        next.push_back(walks.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  return {true, {{"walks", walks.size()}}};
}

}  // namespace

Verdict is_extendible(const Model& m, int depth) {
  return is_bundle(m) ? bundle_extendible(m) : chart_extendible(m, depth);
}

// ------------------------------------------------------------ chart maps

namespace {

// Point x with beta f(x) = p.
Point preimage(const Model& m, const SectionWord& f, const Point& p) {
  nlohmann::json wit = {{"point", to_string(p)}};
  if (is_bundle(m)) {
    if (!f.domain().contains(p.y)) throw Error(ErrorCode::OutOfOverlap, to_string(p) + " outside the chart", wit);
    return p;
  }
  if (f.tgt_chart() != p.chart || !pl_image(f.target_map()).contains(p.y))
    throw Error(ErrorCode::OutOfOverlap, to_string(p) + " outside the chart image", wit);
  return {f.src_chart(), pl_inverse(f.target_map())(p.y)};
}

}  // namespace

HolClass chart_map(const Model& m, const SectionWord& f, const ModelArrow& w, int variant) {
  Point x = preimage(m, f, w.src);
  SectionWord sw = local_section_through(m, w, variant);
  return germ_product(m, germ_of(m, f, x), germ_of(m, sw, w.src));
}

ModelArrow chart_transition(const Model& m, const SectionWord& f, const SectionWord& g, const ModelArrow& w) {
  HolClass h = chart_map(m, g, w);
  if (!f.domain().contains(h.base.y) || (!is_bundle(m) && f.src_chart() != h.base.chart))
    throw Error(ErrorCode::OutOfOverlap, to_string(h.base) + " outside the domain of f", {{"point", to_string(h.base)}});
  GermClass k = germ_product(m, germ_class_inverse(m, germ_of(m, f, h.base)), h);
  ModelArrow w2 = final_map(m, k);
  if (!in_w(m, w2))
    throw Error(ErrorCode::OutOfOverlap, to_string(w2) + " is not in W", {{"candidate", to_string(w2)}});
  if (!hol_equal(m, chart_map(m, f, w2), h))
    throw Error(ErrorCode::OutOfOverlap, "chart images differ", {{"candidate", to_string(w2)}});
  return w2;
}

ModelArrow left_translate(const Model& m, const SectionWord& f, const SectionWord& g, const ModelArrow& w) {
  SectionWord h = ehresmann_product(m, section_inverse(m, f), g);
  Point z = preimage(m, h, w.src);
  return compose_arrows(m, h.evaluate(m, z.y), w);
}

Verdict generates(const Model& m, int depth) {
  AxiomReport rep = check_axioms(m, depth);
  if (!is_bundle(m)) return {rep.g[4].holds, rep.g[4].holds ? nlohmann::json{{"depth", depth}} : rep.g[4].witness};
  if (!rep.g[0].holds) return {false, rep.g[0].witness};
  // every fiber value is a finite sum of values inside the window
  const auto& b = bundle(m);
  Rational x(0), t(1);
  auto cert = generation_certificate(b, x, t);
  return {true, {{"rule", "ceil(|t|/w)+1 letters of t/count"}, {"example", {{"at", x.str()}, {"t", t.str()}, {"letters", cert.size()}}}}};
}

nlohmann::json generation_word(const Model& m, const ModelArrow& a, int depth) {
  nlohmann::json letters = nlohmann::json::array();
  if (is_bundle(m)) {
    for (const auto& l : generation_certificate(bundle(m), a.src.y, a.t))
      letters.push_back({{"t", l.t.str()}, {"inverse", l.inverse}});
    return letters;
  }
  const auto& c = complex(m);
  std::map<Point, std::pair<Point, std::string>> parent;
  std::deque<std::pair<Point, int>> queue{{a.src, 0}};
  parent.emplace(a.src, std::pair{a.src, std::string()});
  while (!queue.empty()) {
    auto [p, d] = queue.front();
    queue.pop_front();
    if (p == a.tgt) {
      std::vector<std::string> path;
      for (Point q = p; !(q == a.src); q = parent.at(q).first) path.push_back(parent.at(q).second);
      std::reverse(path.begin(), path.end());
      for (const auto& e : path) letters.push_back(e);
      return letters;
    }
    if (d == depth) continue;
    for (const auto& e : c.edges) {
      if (e.src != p.chart || !e.map.defined_at(p.y)) continue;
      Point q{e.tgt, e.map(p.y)};
      if (parent.emplace(q, std::pair{p, e.id}).second) queue.push_back({q, d + 1});
    }
  }
  throw Error(ErrorCode::NotGenerating, "no W-word reaches " + to_string(a.tgt),
              {{"arrow", to_string(a)}, {"depth", depth}});
}

// ---------------------------------------------------------------- normality

nlohmann::json NormalityReport::to_json() const {
  return {{"seed", seed}, {"checked", checked}, {"failures", failures}, {"first_failure", first_failure}};
}

namespace {

class Sampler {
 public:
  Sampler(const Model& m, std::uint64_t seed) : m_(m), rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rational between(const Rational& lo, const Rational& hi) { return lo + (hi - lo) * Rational(uniform(1, 15), 16); }

  Point point() {
    if (is_bundle(m_)) {
      const auto& b = bundle(m_);
      std::vector<Rational> bps = b.profile.breakpoints();
      if (!bps.empty() && uniform(0, 2) == 0) return {"", bps[uniform(0, static_cast<long>(bps.size()) - 1)]};
      return {"", Rational(uniform(-24, 24), 8)};
    }
    const auto& c = complex(m_);
    const auto& ch = c.charts[uniform(0, static_cast<long>(c.charts.size()) - 1)];
    if (uniform(0, 2) == 0) return {ch.id, ch.base};
    const auto& t = ch.transversal;
    if (t.lo.finite() && t.hi.finite()) return {ch.id, between(t.lo.value(), t.hi.value())};
    return {ch.id, sample_point(t.lo, t.hi)};
  }

  // Element of J_0 at x.
  GermClass j0(const Point& x) {
    if (!is_bundle(m_)) {
      const auto& c = complex(m_);
      std::vector<std::string> path;
      Point p = x;
      for (long n = uniform(0, 3); n > 0; --n) {
        std::vector<const ChartEdge*> out;
        for (const auto& e : c.edges)
          if (e.src == p.chart && e.map.defined_at(p.y)) out.push_back(&e);
        if (out.empty()) break;
        const auto* e = out[uniform(0, static_cast<long>(out.size()) - 1)];
        path.push_back(e->id);
        p = {e->tgt, e->map(p.y)};
      }
      GermClass g = germ_of(m_, word_of_edges(m_, x.chart, path), x);
      return germ_product(m_, g, germ_class_inverse(m_, g));
    }
    const auto& b = bundle(m_);
    Rational w0 = min(b.upper(x.y), -b.lower(x.y));
    Rational sl(uniform(-8, 8), 4);
    Rational sr = b.smoothness.r >= 1 ? sl : Rational(uniform(-8, 8), 4);
    Rational delta = w0 / Rational(4) / (max(sl.abs(), sr.abs()) + Rational(1));
    SectionWord u = SectionWord::identity(m_);
    for (int tries = 0; tries < 12; ++tries, delta = delta / Rational(2)) {
      OpenSet1D dom = OpenSet1D::interval(Bound(x.y - delta), Bound(x.y + delta));
      std::vector<Piece> ps = {{Bound(x.y - delta), Bound(x.y), {sl, -sl * x.y}},
                               {Bound(x.y), Bound(x.y + delta), {sr, -sr * x.y}}};
      u = SectionWord::bundle_section(m_, PLFunction(dom, ps));
      if (u.entries().front().procedure) break;
    }
    GermClass g = germ_of(m_, u, x);
    KernelDescriptor k = kernel_at(m_, x);
    if (!k.certificate.contains("letters")) return g;
    long j = k.kind == "Z" ? 0 : (k.kind == "trivial" ? uniform(-1, 1) : k.order * uniform(-1, 1));
    if (j == 0) return g;
    Rational step = Rational::parse(k.certificate["step"].get<std::string>());
    int count = k.certificate["letters"].get<int>();
    SectionWord letter = local_section_through(m_, {x, x, step});
    return germ_product(m_, g, germ_of(m_, section_power(m_, letter, static_cast<int>(j) * count), x));
  }

  // Germ of a local procedure at x.
  GermClass procedure(const Point& x) {
    if (!is_bundle(m_)) {
      const auto& c = complex(m_);
      std::vector<const ChartEdge*> out;
      for (const auto& e : c.edges)
        if (e.src == x.chart && e.map.defined_at(x.y)) out.push_back(&e);
      const auto* e = out[uniform(0, static_cast<long>(out.size()) - 1)];
      return germ_of(m_, SectionWord::edge_section(m_, e->id), x);
    }
    const auto& b = bundle(m_);
    Rational t = between(b.lower(x.y), b.upper(x.y));
    return germ_of(m_, local_section_through(m_, {x, x, t}, static_cast<int>(uniform(0, 1))), x);
  }

 private:
  const Model& m_;
  std::mt19937_64 rng_;
};

}  // namespace

NormalityReport normality_audit(const Model& m, int samples, std::uint64_t seed) {
  NormalityReport rep;
  rep.seed = seed;
  Sampler s(m, seed);
  auto fail = [&](const std::string& stage, const Point& x, const Verdict& v) {
    ++rep.failures;
    if (rep.first_failure.is_null())
      rep.first_failure = {{"stage", stage}, {"point", to_string(x)}, {"witness", v.witness}};
  };
  for (int i = 0; i < samples; ++i) {
    Point x = s.point();
    GermClass rho = s.j0(x), sigma = s.j0(x), tau = s.procedure(x);
    GermClass sigma2 = s.j0(final_map(m, tau).tgt);
    ++rep.checked;
    for (const auto* g : {&rho, &sigma}) {
      auto v = in_j0(m, *g);
      if (!v.holds) fail("sample", x, v);
    }
    auto v1 = in_j0(m, germ_product(m, rho, germ_class_inverse(m, sigma)));
    if (!v1.holds) fail("product", x, v1);
    auto v2 = in_j0(m, germ_product(m, germ_product(m, tau, sigma2), germ_class_inverse(m, tau)));
    if (!v2.holds) fail("conjugate", x, v2);
  }
  return rep;
}

// --------------------------------------------------------------------- lift

GroupoidMorphism lift_morphism(const LiftProblem& p) {
  const auto& A = p.a;
  const auto& H = p.h;
  auto inW = [&](ArrowId g) { return std::find(p.w.begin(), p.w.end(), g) != p.w.end(); };
  // Letters: generators and their inverses, each with its image in H.
  std::vector<std::pair<ArrowId, ArrowId>> letters;
  for (ArrowId v : p.v) {
    ArrowId g = p.xi(v);
    if (!inW(g) || !p.i.count(g))
      throw Error(ErrorCode::NotGenerating, "generator " + A.name(v) + " does not land in W", {{"generator", A.name(v)}});
    ArrowId img = p.i.at(g);
    letters.push_back({v, img});
    letters.push_back({A.inverse(v), H.inverse(img)});
  }

  GroupoidMorphism out;
  out.on_objects.assign(A.object_count(), static_cast<ObjectId>(-1));
  out.on_arrows.assign(A.arrow_count(), static_cast<ArrowId>(-1));
  for (const auto& [a, h] : letters) {
    out.on_objects[A.src(a)] = H.src(h);
    out.on_objects[A.tgt(a)] = H.tgt(h);
  }
  for (ObjectId x = 0; x < A.object_count(); ++x) {
    if (out.on_objects[x] != static_cast<ObjectId>(-1)) continue;
    for (ObjectId y = 0; y < H.object_count(); ++y)
      if (p.phi.on_objects[y] == p.xi.on_objects[x]) {
        out.on_objects[x] = y;
        break;
      }
    if (out.on_objects[x] == static_cast<ObjectId>(-1))
      throw Error(ErrorCode::NotGenerating, "no object over " + A.object_name(x), {{"object", A.object_name(x)}});
  }

  std::deque<ArrowId> queue;
  for (ObjectId x = 0; x < A.object_count(); ++x) {
    out.on_arrows[A.identity(x)] = H.identity(out.on_objects[x]);
    queue.push_back(A.identity(x));
  }
  while (!queue.empty()) {
    ArrowId g = queue.front();
    queue.pop_front();
    for (const auto& [a, h] : letters) {
      if (!A.composable(g, a)) continue;
      ArrowId ga = A.compose(g, a);
      ArrowId gh_src = out.on_arrows[g];
      if (!H.composable(gh_src, h))
        throw Error(ErrorCode::RelationViolation, "images of " + A.name(g) + " and " + A.name(a) + " not composable",
                    {{"arrow", A.name(g)}, {"letter", A.name(a)}});
      ArrowId img = H.compose(gh_src, h);
      if (out.on_arrows[ga] == static_cast<ArrowId>(-1)) {
        out.on_arrows[ga] = img;
        queue.push_back(ga);
      } else if (out.on_arrows[ga] != img) {
        throw Error(ErrorCode::RelationViolation, "two values forced on " + A.name(ga),
                    {{"arrow", A.name(ga)}, {"first", H.name(out.on_arrows[ga])}, {"second", H.name(img)}});
      }
    }
  }
  for (ArrowId a = 0; a < A.arrow_count(); ++a) {
    if (out.on_arrows[a] == static_cast<ArrowId>(-1))
      throw Error(ErrorCode::NotGenerating, "generators do not reach " + A.name(a), {{"arrow", A.name(a)}});
    if (p.phi(out.on_arrows[a]) != p.xi(a))
      throw Error(ErrorCode::RelationViolation, "lift does not cover " + A.name(a), {{"arrow", A.name(a)}});
  }
  if (auto d = morphism_defect(A, H, out))
    throw Error(ErrorCode::RelationViolation, "lift is not a morphism: " + *d, {{"defect", *d}});
  return out;
}

}  // namespace gpd
