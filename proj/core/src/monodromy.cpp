#include "gpd/monodromy.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "gpd/error.hpp"

namespace gpd {

// -------------------------------------------------------------- Pregroupoid

Pregroupoid Pregroupoid::finite(FiniteGroupoid g, const std::vector<ArrowId>& carrier) {
  Pregroupoid p;
  p.in_.assign(g.arrow_count(), false);
  for (ArrowId a : carrier) p.in_.at(a) = true;
  for (ObjectId x = 0; x < g.object_count(); ++x)
    if (!p.in_[g.identity(x)])
      throw Error(ErrorCode::InvalidModel, "carrier misses identity of " + g.object_name(x),
                  {{"object", g.object_name(x)}});
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    if (p.in_[a] && !p.in_[g.inverse(a)])
      throw Error(ErrorCode::InvalidModel, "carrier not closed under inverse at " + g.name(a), {{"arrow", g.name(a)}});
  p.finite_ = std::move(g);
  return p;
}

Pregroupoid Pregroupoid::bundle_piece(QuotientBundleModel m) {
  Pregroupoid p;
  p.bundle_ = std::move(m);
  return p;
}

std::vector<ArrowId> Pregroupoid::carrier() const {
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < in_.size(); ++a)
    if (in_[a]) out.push_back(a);
  return out;
}

std::optional<ArrowId> Pregroupoid::product(ArrowId a, ArrowId b) const {
  const auto& g = *finite_;
  if (!g.composable(a, b)) return std::nullopt;
  ArrowId ab = g.compose(a, b);
  if (!in_[ab]) return std::nullopt;
  return ab;
}

std::optional<Rational> Pregroupoid::product(const Rational& x, const Rational& a, const Rational& b) const {
  return window_rep(*bundle_, x, a + b);
}

bool Pregroupoid::sum_invariant_complete(const Rational& x) const {
  Rational n = bundle_->profile(x), l = bundle_->lower(x), h = bundle_->upper(x);
  if (n.is_zero()) return true;
  return !(n < Rational(2) * h - l) && !(n < h - Rational(2) * l);
}

// ------------------------------------------------------------------- words

namespace {

std::vector<ArrowId> letters_of(const Pregroupoid& p, const MonodromyWord& w) {
  const auto& g = p.ambient();
  ObjectId at = g.object(w.base);
  std::vector<ArrowId> out;
  for (const auto& name : w.letters) {
    ArrowId a = g.arrow_id(name);
    if (!p.contains(a)) throw Error(ErrorCode::InvalidModel, "letter " + name + " is not in W", {{"letter", name}});
    if (g.src(a) != at)
      throw Error(ErrorCode::NotComposable, "letter " + name + " does not start at " + g.object_name(at),
                  {{"letter", name}, {"expected", g.object_name(at)}});
    at = g.tgt(a);
    out.push_back(a);
  }
  return out;
}

MonodromyWord named(const Pregroupoid& p, const std::string& base, const std::vector<ArrowId>& ls) {
  MonodromyWord w{base, {}};
  for (ArrowId a : ls) w.letters.push_back(p.ambient().name(a));
  return w;
}

std::vector<Rational> values_of(const Pregroupoid& p, const MonodromyWord& w) {
  Rational x = Rational::parse(w.base);
  std::vector<Rational> out;
  for (const auto& s : w.letters) {
    auto u = window_rep(p.model(), x, Rational::parse(s));
    if (!u) throw Error(ErrorCode::InvalidModel, "letter q(" + w.base + "," + s + ") is not in W", {{"letter", s}});
    out.push_back(*u);
  }
  return out;
}

MonodromyWord named(const std::string& base, const std::vector<Rational>& vs) {
  MonodromyWord w{base, {}};
  for (const auto& v : vs) w.letters.push_back(v.str());
  return w;
}

std::vector<ArrowId> reduce_ids(const Pregroupoid& p, std::vector<ArrowId> ls) {
  const auto& g = p.ambient();
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < ls.size(); ++i)
      if (g.arrow(ls[i]).identity) {
        ls.erase(ls.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    if (changed) continue;
    for (size_t i = 0; i + 1 < ls.size(); ++i)
      if (auto ab = p.product(ls[i], ls[i + 1])) {
        ls[i] = *ab;
        ls.erase(ls.begin() + static_cast<long>(i) + 1);
        changed = true;
        break;
      }
  }
  return ls;
}

}  // namespace

MonodromyWord mon_normalize(const Pregroupoid& p, const MonodromyWord& w) {
  if (p.is_finite()) return named(p, w.base, letters_of(p, w));
  return named(Rational::parse(w.base).str(), values_of(p, w));
}

MonodromyWord mon_reduce(const Pregroupoid& p, const MonodromyWord& w) {
  if (p.is_finite()) return named(p, w.base, reduce_ids(p, letters_of(p, w)));
  Rational x = Rational::parse(w.base);
  std::vector<Rational> vs = values_of(p, w);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < vs.size(); ++i)
      if (vs[i].is_zero()) {
        vs.erase(vs.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    if (changed) continue;
    for (size_t i = 0; i + 1 < vs.size(); ++i)
      if (auto ab = p.product(x, vs[i], vs[i + 1])) {
        vs[i] = *ab;
        vs.erase(vs.begin() + static_cast<long>(i) + 1);
        changed = true;
        break;
      }
  }
  return named(x.str(), vs);
}

std::string ambient_product(const Pregroupoid& p, const MonodromyWord& w) {
  if (p.is_finite()) {
    const auto& g = p.ambient();
    ArrowId acc = g.identity(g.object(w.base));
    for (ArrowId a : letters_of(p, w)) acc = g.compose(acc, a);
    return g.name(acc);
  }
  Rational x = Rational::parse(w.base);
  Rational s = germ_sum(p, w), n = p.model().profile(x);
  if (n.is_zero()) return s.str();
  // canonical representative in [0, n)
  return (s - from_integer((s / n).floor()) * n).str();
}

Rational germ_sum(const Pregroupoid& p, const MonodromyWord& w) {
  auto vs = values_of(p, w);
  return std::accumulate(vs.begin(), vs.end(), Rational(0));
}

std::string to_string(MonVerdict v) {
  switch (v) {
    case MonVerdict::Equal: return "equal";
    case MonVerdict::Distinct: return "distinct";
    case MonVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

// ----------------------------------------------------------------- equality

namespace {

using Word = std::vector<ArrowId>;

std::vector<Word> neighbours(const Pregroupoid& p, const Word& w, ObjectId base, size_t max_len,
                             const std::map<ArrowId, std::vector<std::pair<ArrowId, ArrowId>>>& splits) {
  const auto& g = p.ambient();
  std::vector<Word> out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (g.arrow(w[i]).identity) {
      Word v = w;
      v.erase(v.begin() + static_cast<long>(i));
      out.push_back(v);
    }
    if (i + 1 < w.size())
      if (auto ab = p.product(w[i], w[i + 1])) {
        Word v = w;
        v[i] = *ab;
        v.erase(v.begin() + static_cast<long>(i) + 1);
        out.push_back(v);
      }
    if (w.size() < max_len)
      for (const auto& [u, v2] : splits.at(w[i])) {
        Word v = w;
        v[i] = u;
        v.insert(v.begin() + static_cast<long>(i) + 1, v2);
        out.push_back(v);
      }
  }
  if (w.size() < max_len)
    for (size_t i = 0; i <= w.size(); ++i) {
      ObjectId at = i == 0 ? base : g.tgt(w[i - 1]);
      Word v = w;
      v.insert(v.begin() + static_cast<long>(i), g.identity(at));
      out.push_back(v);
    }
  return out;
}

MonEquality finite_equal(const Pregroupoid& p, const MonodromyWord& a, const MonodromyWord& b, int depth) {
  const auto& g = p.ambient();
  Word wa = letters_of(p, a), wb = letters_of(p, b);
  std::string pa = ambient_product(p, a), pb = ambient_product(p, b);
  if (pa != pb) return {MonVerdict::Distinct, {{"invariant", "ambient_product"}, {"left", pa}, {"right", pb}}};
  Word ra = reduce_ids(p, wa), rb = reduce_ids(p, wb);
  if (ra == rb) return {MonVerdict::Equal, {{"reduced", named(p, a.base, ra).letters}}};

  std::map<ArrowId, std::vector<std::pair<ArrowId, ArrowId>>> splits;
  auto carrier = p.carrier();
  for (ArrowId c : carrier) splits[c];
  for (ArrowId u : carrier)
    for (ArrowId v : carrier)
      if (auto uv = p.product(u, v); uv && !g.arrow(u).identity && !g.arrow(v).identity) splits[*uv].push_back({u, v});

  ObjectId base = g.object(a.base);
  size_t max_len = std::max(ra.size(), rb.size()) + 2;
  std::set<Word> seen_a{ra}, seen_b{rb};
  std::vector<Word> fa{ra}, fb{rb};
  for (int step = 0; step < depth; ++step) {
    bool from_a = !fa.empty() && (fb.empty() || fa.size() <= fb.size());
    auto& frontier = from_a ? fa : fb;
    auto& seen = from_a ? seen_a : seen_b;
    auto& other = from_a ? seen_b : seen_a;
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (auto& v : neighbours(p, w, base, max_len, splits)) {
        if (other.count(v))
          return {MonVerdict::Equal, {{"steps", step + 1}, {"meeting_word", named(p, a.base, v).letters}}};
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    frontier = std::move(next);
    if (fa.empty() && fb.empty()) break;
  }
  return {MonVerdict::Unknown, {{"explored", seen_a.size() + seen_b.size()}, {"depth", depth}}};
}

MonEquality bundle_equal(const Pregroupoid& p, const MonodromyWord& a, const MonodromyWord& b) {
  Rational x = Rational::parse(a.base);
  Rational sa = germ_sum(p, a), sb = germ_sum(p, b);
  nlohmann::json cert = {{"germ_sum_left", sa.str()}, {"germ_sum_right", sb.str()}};
  if (!fiber_equal(p.model(), x, sa, sb)) {
    cert["invariant"] = "ambient_product";
    return {MonVerdict::Distinct, cert};
  }
  if (p.sum_invariant_complete(x)) {
    cert["invariant"] = "germ_sum";
    return {sa == sb ? MonVerdict::Equal : MonVerdict::Distinct, cert};
  }
  if (mon_reduce(p, a) == mon_reduce(p, b)) return {MonVerdict::Equal, cert};
  return {MonVerdict::Unknown, cert};
}

}  // namespace

MonEquality mon_equal(const Pregroupoid& p, const MonodromyWord& a, const MonodromyWord& b, int depth) {
  bool same = p.is_finite() ? a.base == b.base : Rational::parse(a.base) == Rational::parse(b.base);
  if (!same)
    throw Error(ErrorCode::BaseMismatch, "words start at " + a.base + " and " + b.base,
                {{"left", a.base}, {"right", b.base}});
  if (p.is_finite()) return finite_equal(p, a, b, depth);
  return bundle_equal(p, a, b);
}

// --------------------------------------------------------------- extension

ArrowId MonExtension::apply(const MonodromyWord& w) const {
  const auto& g = p_->ambient();
  auto ls = letters_of(*p_, w);
  ObjectId base = g.object(w.base);
  ArrowId acc = f_.at(g.identity(base));
  for (ArrowId a : ls) acc = k_->compose(acc, f_.at(a));
  return acc;
}

MonExtension mon_extend(const Pregroupoid& p, const FiniteGroupoid& k, const std::map<ArrowId, ArrowId>& f) {
  const auto& g = p.ambient();
  auto carrier = p.carrier();
  for (ArrowId a : carrier)
    if (!f.count(a))
      throw Error(ErrorCode::NotPregroupoidMorphism, "no image for " + g.name(a), {{"letter", g.name(a)}});
  for (ArrowId a : carrier)
    for (ArrowId b : carrier) {
      auto ab = p.product(a, b);
      if (!ab) continue;
      nlohmann::json wit = {{"u", g.name(a)}, {"v", g.name(b)}, {"uv", g.name(*ab)}};
      if (!k.composable(f.at(a), f.at(b)) || k.compose(f.at(a), f.at(b)) != f.at(*ab))
        throw Error(ErrorCode::NotPregroupoidMorphism, "f(uv) != f(u) f(v) for u=" + g.name(a) + ", v=" + g.name(b), wit);
    }
  MonExtension e;
  e.p_ = &p;
  e.k_ = &k;
  e.f_ = f;
  return e;
}

Rational mon_extend_cover(const Pregroupoid& p, const MonodromyWord& w) {
  Rational x = Rational::parse(w.base);
  if (!p.sum_invariant_complete(x)) {
    const auto& m = p.model();
    Rational n = m.profile(x), l = m.lower(x), h = m.upper(x);
    // a + b = s with s - n inside the window
    Rational s = n < Rational(2) * h - l ? (max(Rational(2) * l, l + n) + min(Rational(2) * h, h + n)) / Rational(2)
                                         : (max(Rational(2) * l, l - n) + min(Rational(2) * h, h - n)) / Rational(2);
    Rational a = s / Rational(2);
    throw Error(ErrorCode::NotPregroupoidMorphism, "lift is not additive at " + x.str(),
                {{"u", a.str()}, {"v", a.str()}, {"uv", window_rep(m, x, s)->str()}});
  }
  return germ_sum(p, w);
}

// -------------------------------------------------------------------- stars

namespace {

nlohmann::json finite_star(const Pregroupoid& p, const std::string& base_name, int depth) {
  const auto& g = p.ambient();
  ObjectId base = g.object(base_name);
  auto carrier = p.carrier();
  std::map<ArrowId, std::set<Word>> by_arrow;
  std::vector<std::pair<Word, ArrowId>> layer{{{}, g.identity(base)}};
  size_t total = 0;
  for (int len = 0; len <= depth; ++len) {
    std::vector<std::pair<Word, ArrowId>> next;
    for (const auto& [w, prod] : layer) {
      by_arrow[prod].insert(reduce_ids(p, w));
      if (len == depth) continue;
      ObjectId at = w.empty() ? base : g.tgt(w.back());
      for (ArrowId a : carrier) {
        if (g.src(a) != at) continue;
        Word v = w;
        v.push_back(a);
        next.push_back({v, g.compose(prod, a)});
      }
    }
    total += next.size();
    if (total > 200000)
      throw Error(ErrorCode::DepthExceeded, "star enumeration too large at depth " + std::to_string(depth),
                  {{"depth", depth}, {"words", total}});
    layer = std::move(next);
  }

  auto star = g.star(base);
  nlohmann::json fibers = nlohmann::json::array();
  bool injective = true;
  for (const auto& [arrow, words] : by_arrow) {
    std::vector<Word> ws(words.begin(), words.end());
    std::vector<size_t> cls(ws.size());
    std::iota(cls.begin(), cls.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t i) { return cls[i] == i ? i : cls[i] = find(cls[i]); };
    int unknown = 0;
    for (size_t i = 0; i < ws.size(); ++i)
      for (size_t j = i + 1; j < ws.size(); ++j) {
        if (find(i) == find(j)) continue;
        auto r = mon_equal(p, named(p, base_name, ws[i]), named(p, base_name, ws[j]), 2 * depth + 2);
        if (r.verdict == MonVerdict::Equal) cls[find(i)] = find(j);
        else ++unknown;
      }
    std::set<size_t> roots;
    for (size_t i = 0; i < ws.size(); ++i) roots.insert(find(i));
    if (roots.size() > 1) injective = false;
    fibers.push_back({{"arrow", g.name(arrow)}, {"classes_upper_bound", roots.size()}, {"unresolved_pairs", unknown}});
  }
  return {{"base", base_name},
          {"star_size", star.size()},
          {"reached", by_arrow.size()},
          {"surjective", by_arrow.size() == star.size()},
          {"single_class_fibers", injective},
          {"bijective", injective && by_arrow.size() == star.size()},
          {"fibers", fibers},
          {"depth", depth}};
}

nlohmann::json bundle_star(const Pregroupoid& p, const std::string& base_name) {
  const auto& m = p.model();
  Rational x = Rational::parse(base_name);
  Rational n = m.profile(x);
  nlohmann::json rep = {{"base", x.str()}, {"n", n.str()}, {"invariant_complete", p.sum_invariant_complete(x)}};

  bool surjective = true;
  for (long k = -12; k <= 12; ++k) {
    Rational t(k, 4);
    MonodromyWord w{x.str(), {}};
    for (const auto& l : generation_certificate(m, x, t)) w.letters.push_back((l.inverse ? -l.t : l.t).str());
    if (!fiber_equal(m, x, germ_sum(p, w), t)) surjective = false;
  }
  rep["surjective"] = surjective;

  if (n.is_zero()) {
    rep["fiber_over_identity"] = "trivial";
    rep["bijective"] = surjective && p.sum_invariant_complete(x);
    return rep;
  }
  Rational w0 = min(m.upper(x), -m.lower(x));
  mpz_class count = (n / (w0 / Rational(2))).ceil();
  Rational step = n / from_integer(count);
  std::vector<MonodromyWord> winding;
  nlohmann::json ws = nlohmann::json::array();
  for (long k = -3; k <= 3; ++k) {
    MonodromyWord w{x.str(), {}};
    for (long i = 0; i < std::abs(k) * count.get_si(); ++i) w.letters.push_back((k < 0 ? -step : step).str());
    winding.push_back(w);
    ws.push_back({{"k", k}, {"letters", w.letters.size()}, {"germ_sum", germ_sum(p, w).str()},
                  {"ambient", ambient_product(p, w)}});
  }
  bool distinct = true;
  for (size_t i = 0; i < winding.size(); ++i)
    for (size_t j = i + 1; j < winding.size(); ++j)
      if (mon_equal(p, winding[i], winding[j], 0).verdict != MonVerdict::Distinct) distinct = false;
  rep["winding"] = ws;
  rep["pairwise_distinct"] = distinct;
  rep["fiber_over_identity"] = distinct ? "Z" : "unresolved";
  rep["bijective"] = false;
  return rep;
}

}  // namespace

nlohmann::json star_projection_check(const Pregroupoid& p, const std::string& base, int depth) {
  return p.is_finite() ? finite_star(p, base, depth) : bundle_star(p, base);
}

nlohmann::json to_json(const MonodromyWord& w) { return {{"base", w.base}, {"letters", w.letters}}; }

MonodromyWord word_from_json(const nlohmann::json& j) {
  try {
    MonodromyWord w;
    w.base = j.at("base").get<std::string>();
    for (const auto& l : j.at("letters")) w.letters.push_back(l.get<std::string>());
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad word document: ") + e.what());
  }
}

}  // namespace gpd
