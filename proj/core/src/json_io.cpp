#include "gpd/json_io.hpp"

#include <cstdint>
#include <cstdio>

#include "gpd/error.hpp"

namespace gpd {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

json edge_json(const ChartEdge& e) {
  return {{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}, {"map", to_json(e.map)}, {"identity", e.identity}};
}

ChartEdge edge_from_json(const json& j) {
  ChartEdge e{str_field(j, "id"), str_field(j, "src"), str_field(j, "tgt"), pl_from_json(field(j, "map")), false};
  if (j.contains("identity")) e.identity = j.at("identity").get<bool>();
  return e;
}

}  // namespace

// ------------------------------------------------------------------ writers

json to_json(const Bound& b) { return b.str(); }

json to_json(const OpenSet1D& u) {
  json j = json::array();
  for (const auto& p : u.parts()) j.push_back({p.lo.str(), p.hi.str()});
  return j;
}

json to_json(const Affine& a) { return {{"slope", a.slope.str()}, {"intercept", a.intercept.str()}}; }

json to_json(const PLFunction& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces())
    pieces.push_back({{"from", p.from.str()}, {"to", p.to.str()}, {"slope", p.f.slope.str()},
                      {"intercept", p.f.intercept.str()}});
  return {{"domain", to_json(f.domain())}, {"pieces", pieces}};
}

json to_json(const Germ1D& g) {
  json j = {{"base", g.base.str()}};
  j["value"] = g.value ? json(g.value->str()) : json(nullptr);
  j["left"] = g.left ? to_json(*g.left) : json(nullptr);
  j["right"] = g.right ? to_json(*g.right) : json(nullptr);
  return j;
}

json to_json(const Point& p) {
  if (p.chart.empty()) return p.y.str();
  return {{"chart", p.chart}, {"y", p.y.str()}};
}

json to_json(const ModelArrow& a) {
  if (a.src.chart.empty()) return {{"at", a.src.y.str()}, {"t", a.t.str()}};
  return {{"src", to_json(a.src)}, {"tgt", to_json(a.tgt)}};
}

json to_json(const Model& m) {
  if (const auto* b = std::get_if<QuotientBundleModel>(&m)) {
    json j = {{"family", "quotient_bundle"},
              {"name", b->name},
              {"profile", to_json(b->profile)},
              {"width", to_json(b->upper)}};
    if (!b->symmetric()) j["lower"] = to_json(b->lower);
    j["smoothness"] = b->smoothness.r;
    return j;
  }
  const auto& c = std::get<ChartComplex>(m);
  json charts = json::array(), edges = json::array(), leaves = json::array();
  for (const auto& ch : c.charts)
    charts.push_back({{"id", ch.id}, {"transversal", {ch.transversal.lo.str(), ch.transversal.hi.str()}},
                      {"base", ch.base.str()}});
  for (const auto& e : c.edges) edges.push_back(edge_json(e));
  for (const auto& e : c.leaf_maps) leaves.push_back(edge_json(e));
  json j = {{"family", "chart_complex"}, {"name", c.name}, {"charts", charts}, {"edges", edges}};
  if (!c.leaf_maps.empty()) j["leaf_maps"] = leaves;
  j["smoothness"] = c.smoothness.r;
  return j;
}

json to_json(const SectionWord& w) {
  json entries = json::array();
  for (const auto& e : w.entries()) {
    json x = {{"data", to_json(e.data)}, {"procedure", e.procedure}};
    if (!e.edge.empty()) x["edge"] = e.edge;
    if (!e.src.empty()) {
      x["src"] = e.src;
      x["tgt"] = e.tgt;
    }
    entries.push_back(x);
  }
  json j = {{"entries", entries}, {"domain", to_json(w.domain())}};
  if (w.src_chart().empty()) {
    j["values"] = to_json(w.values());
  } else {
    j["src"] = w.src_chart();
    j["tgt"] = w.tgt_chart();
    j["target_map"] = to_json(w.target_map());
  }
  return j;
}

json to_json(const KernelDescriptor& k) {
  json j = {{"point", to_json(k.point)}, {"group", k.label()}, {"order", k.order}, {"certificate", k.certificate}};
  if (k.generator) {
    j["generator"] = {{"letters", k.generator->word.entries().size()}, {"word", to_json(k.generator->word)}};
  }
  return j;
}

json to_json(const FiniteGroupoid& src, const FiniteGroupoid& dst, const GroupoidMorphism& f) {
  json objs = json::object(), arrows = json::object();
  for (ObjectId x = 0; x < src.object_count(); ++x) objs[src.object_name(x)] = dst.object_name(f.on_objects.at(x));
  for (ArrowId a = 0; a < src.arrow_count(); ++a) arrows[src.name(a)] = dst.name(f.on_arrows.at(a));
  return {{"objects", objs}, {"arrows", arrows}};
}

// ------------------------------------------------------------------ readers

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("expected a rational as \"p/q\", got " + j.dump());
}

Bound bound_from_json(const json& j) {
  if (j.is_string()) return Bound::parse(j.get<std::string>());
  return Bound(rational_from_json(j));
}

Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("interval must be [lo, hi], got " + j.dump());
  return {bound_from_json(j[0]), bound_from_json(j[1])};
}

OpenSet1D open_set_from_json(const json& j) {
  if (!j.is_array()) bad("open set must be a list of intervals");
  if (j.size() == 2 && !j[0].is_array()) return OpenSet1D({interval_from_json(j)});
  std::vector<Interval> parts;
  for (const auto& iv : j) parts.push_back(interval_from_json(iv));
  return OpenSet1D(parts);
}

PLFunction pl_from_json(const json& j) {
  OpenSet1D dom = j.contains("domain") ? open_set_from_json(j.at("domain")) : OpenSet1D::real_line();
  std::vector<Piece> pieces;
  for (const auto& p : field(j, "pieces"))
    pieces.push_back({bound_from_json(field(p, "from")), bound_from_json(field(p, "to")),
                      {rational_from_json(field(p, "slope")), rational_from_json(field(p, "intercept"))}});
  try {
    return PLFunction(dom, pieces);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, std::string("bad PL function: ") + e.what(), e.witness());
  }
}

Point point_from_json(const json& j) {
  if (j.is_object()) return {str_field(j, "chart"), rational_from_json(field(j, "y"))};
  if (j.is_string()) {
    auto s = j.get<std::string>();
    auto colon = s.find(':');
    if (colon != std::string::npos) return {s.substr(0, colon), Rational::parse(s.substr(colon + 1))};
    return {"", Rational::parse(s)};
  }
  return {"", rational_from_json(j)};
}

Model model_from_json(const json& j) {
  std::string family = str_field(j, "family");
  int r = j.contains("smoothness") ? j.at("smoothness").get<int>() : 0;
  if (r != 0 && r != 1) bad("smoothness must be 0 or 1");
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : family;
  if (family == "quotient_bundle") {
    QuotientBundleModel m;
    m.name = name;
    m.profile = pl_from_json(field(j, "profile"));
    m.upper = pl_from_json(field(j, "width"));
    m.lower = j.contains("lower") ? pl_from_json(j.at("lower")) : -m.upper;
    m.smoothness = {r};
    if (!(m.profile.domain() == OpenSet1D::real_line()) || !(m.upper.domain() == OpenSet1D::real_line()) ||
        !(m.lower.domain() == OpenSet1D::real_line()))
      throw Error(ErrorCode::InvalidModel, "profile and window must be defined on the whole line");
    return m;
  }
  if (family == "chart_complex") {
    ChartComplex c;
    c.name = name;
    c.smoothness = {r};
    for (const auto& ch : field(j, "charts"))
      c.charts.push_back({str_field(ch, "id"), interval_from_json(field(ch, "transversal")),
                          ch.contains("base") ? rational_from_json(ch.at("base")) : Rational(0)});
    for (const auto& e : field(j, "edges")) c.edges.push_back(edge_from_json(e));
    if (j.contains("leaf_maps"))
      for (const auto& e : j.at("leaf_maps")) c.leaf_maps.push_back(edge_from_json(e));
    return c;
  }
  bad("unknown model family '" + family + "'");
}

SectionWord section_from_json(const Model& m, const json& j) {
  SectionWord w = SectionWord::identity(m);
  if (j.contains("word")) {
    const json& ws = j.at("word");
    if (!ws.is_array() || ws.empty()) bad("'word' must be a nonempty list");
    w = section_from_json(m, ws[0]);
    for (size_t i = 1; i < ws.size(); ++i) w = ehresmann_product(m, w, section_from_json(m, ws[i]));
  } else if (j.contains("chart_edge")) {
    std::optional<OpenSet1D> u;
    if (j.contains("restrict")) u = open_set_from_json(j.at("restrict"));
    w = SectionWord::edge_section(m, str_field(j, "chart_edge"), u);
  } else {
    w = SectionWord::single(m, section_entry_from_json(m, j));
  }
  if (j.contains("repeat")) w = section_power(m, w, j.at("repeat").get<int>());
  return w;
}

SectionEntry section_entry_from_json(const Model& m, const json& j) {
  if (is_bundle(m)) {
    PLFunction f = pl_from_json(field(j, "f"));
    if (j.contains("domain")) f = f.restrict(open_set_from_json(j.at("domain")));
    return {"", "", "", f, false};
  }
  if (j.contains("chart_edge")) {
    const auto& e = complex(m).edge(str_field(j, "chart_edge"));
    PLFunction f = j.contains("restrict") ? e.map.restrict(open_set_from_json(j.at("restrict"))) : e.map;
    return {e.id, e.src, e.tgt, f, false};
  }
  PLFunction f = pl_from_json(field(j, "map"));
  if (j.contains("domain")) f = f.restrict(open_set_from_json(j.at("domain")));
  return {"", str_field(j, "src"), str_field(j, "tgt"), f, false};
}

ModelArrow arrow_from_json(const Model& m, const json& j) {
  if (is_bundle(m)) {
    Rational x = rational_from_json(field(j, "at"));
    return {{"", x}, {"", x}, rational_from_json(field(j, "t"))};
  }
  return {point_from_json(field(j, "src")), point_from_json(field(j, "tgt")), Rational(0)};
}

GermClass germ_from_json(const Model& m, const json& j) {
  Point at = point_from_json(field(j, "at"));
  if (is_bundle(m) && !at.chart.empty()) bad("bundle germs take a rational base point");
  const json& doc = j.contains("section") ? j.at("section") : j;
  return germ_of(m, section_from_json(m, doc), at);
}

GroupoidMorphism morphism_from_json(const FiniteGroupoid& src, const FiniteGroupoid& dst, const json& j) {
  GroupoidMorphism f;
  f.on_arrows.assign(src.arrow_count(), 0);
  f.on_objects.assign(src.object_count(), 0);
  const json& arrows = field(j, "arrows");
  for (ArrowId a = 0; a < src.arrow_count(); ++a) {
    if (!arrows.contains(src.name(a))) bad("morphism has no image for arrow " + src.name(a));
    f.on_arrows[a] = dst.arrow_id(arrows.at(src.name(a)).get<std::string>());
  }
  for (ObjectId x = 0; x < src.object_count(); ++x) {
    if (j.contains("objects") && j.at("objects").contains(src.object_name(x)))
      f.on_objects[x] = dst.object(j.at("objects").at(src.object_name(x)).get<std::string>());
    else
      f.on_objects[x] = dst.src(f.on_arrows[src.identity(x)]);
  }
  return f;
}

Pregroupoid pregroupoid_from_json(const json& j) {
  FiniteGroupoid g = finite_groupoid_from_json(field(j, "groupoid"));
  std::vector<ArrowId> carrier;
  for (const auto& a : field(j, "carrier")) carrier.push_back(g.arrow_id(a.get<std::string>()));
  return Pregroupoid::finite(std::move(g), carrier);
}

LiftProblem lift_problem_from_json(const json& j) {
  LiftProblem p;
  p.a = finite_groupoid_from_json(field(j, "A"));
  p.g = finite_groupoid_from_json(field(j, "G"));
  p.h = finite_groupoid_from_json(field(j, "H"));
  p.phi = morphism_from_json(p.h, p.g, field(j, "phi"));
  p.xi = morphism_from_json(p.a, p.g, field(j, "xi"));
  for (const auto& w : field(j, "W")) p.w.push_back(p.g.arrow_id(w.get<std::string>()));
  for (const auto& [k, v] : field(j, "i").items()) p.i[p.g.arrow_id(k)] = p.h.arrow_id(v.get<std::string>());
  for (const auto& v : field(j, "V")) p.v.push_back(p.a.arrow_id(v.get<std::string>()));
  return p;
}

std::string fingerprint(const json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gpd
