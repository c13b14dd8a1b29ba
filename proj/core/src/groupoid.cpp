#include "gpd/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gpd/error.hpp"

namespace gpd {

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                               const std::vector<Composite>& compose,
                               const std::vector<std::pair<std::string, std::string>>& inverses)
    : objects_(std::move(objects)) {
  for (ObjectId x = 0; x < objects_.size(); ++x)
    if (!object_index_.emplace(objects_[x], x).second)
      throw Error(ErrorCode::InvalidModel, "duplicate object '" + objects_[x] + "'");
  identities_.assign(objects_.size(), static_cast<ArrowId>(-1));
  for (auto& spec : arrows) {
    ArrowRecord rec{spec.name, object(spec.src), object(spec.tgt), spec.identity};
    ArrowId id = arrows_.size();
    if (!arrow_index_.emplace(rec.name, id).second)
      throw Error(ErrorCode::InvalidModel, "duplicate arrow '" + rec.name + "'");
    if (rec.identity) {
      if (rec.src != rec.tgt) throw Error(ErrorCode::InvalidModel, "identity '" + rec.name + "' is not a loop");
      if (identities_[rec.src] != static_cast<ArrowId>(-1))
        throw Error(ErrorCode::InvalidModel, "two identities at '" + spec.src + "'");
      identities_[rec.src] = id;
    }
    arrows_.push_back(std::move(rec));
  }
  for (ObjectId x = 0; x < objects_.size(); ++x)
    if (identities_[x] == static_cast<ArrowId>(-1))
      throw Error(ErrorCode::InvalidModel, "no identity at '" + objects_[x] + "'");
  for (const auto& c : compose) {
    ArrowId g = arrow_id(c.g), h = arrow_id(c.h), gh = arrow_id(c.gh);
    if (!composable(g, h))
      throw Error(ErrorCode::NotComposable, "table entry for non-composable pair (" + c.g + ", " + c.h + ")");
    if (src(gh) != src(g) || tgt(gh) != tgt(h))
      throw Error(ErrorCode::InvalidModel, "composite " + c.gh + " has wrong endpoints");
    table_[key(g, h)] = gh;
  }
  inverses_.assign(arrows_.size(), static_cast<ArrowId>(-1));
  for (const auto& [g, gi] : inverses) inverses_[arrow_id(g)] = arrow_id(gi);
  for (ArrowId g = 0; g < arrows_.size(); ++g) {
    if (inverses_[g] == static_cast<ArrowId>(-1)) throw Error(ErrorCode::InvalidModel, "no inverse for " + name(g));
    for (ArrowId h = 0; h < arrows_.size(); ++h)
      if (composable(g, h) && !table_.contains(key(g, h)))
        throw Error(ErrorCode::InvalidModel, "composition table missing (" + name(g) + ", " + name(h) + ")");
  }
}

FiniteGroupoid FiniteGroupoid::cyclic_group(unsigned m, const std::string& object) {
  std::vector<ArrowSpec> arrows;
  std::vector<Composite> comp;
  std::vector<std::pair<std::string, std::string>> inv;
  for (unsigned a = 0; a < m; ++a) {
    arrows.push_back({std::to_string(a), object, object, a == 0});
    inv.emplace_back(std::to_string(a), std::to_string((m - a) % m));
    for (unsigned b = 0; b < m; ++b) comp.push_back({std::to_string(a), std::to_string(b), std::to_string((a + b) % m)});
  }
  return FiniteGroupoid({object}, std::move(arrows), comp, inv);
}

FiniteGroupoid FiniteGroupoid::pair_groupoid(const std::vector<std::string>& objects) {
  auto nm = [](const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; };
  std::vector<ArrowSpec> arrows;
  std::vector<Composite> comp;
  std::vector<std::pair<std::string, std::string>> inv;
  for (const auto& a : objects)
    for (const auto& b : objects) {
      arrows.push_back({nm(a, b), a, b, a == b});
      inv.emplace_back(nm(a, b), nm(b, a));
      for (const auto& c : objects) comp.push_back({nm(a, b), nm(b, c), nm(a, c)});
    }
  return FiniteGroupoid(objects, std::move(arrows), comp, inv);
}

FiniteGroupoid FiniteGroupoid::pair_times_cyclic(unsigned k, unsigned m) {
  auto nm = [](unsigned i, unsigned j, unsigned a) {
    return std::to_string(i) + ">" + std::to_string(j) + ":" + std::to_string(a);
  };
  std::vector<std::string> objects;
  for (unsigned i = 0; i < k; ++i) objects.push_back(std::to_string(i));
  std::vector<ArrowSpec> arrows;
  std::vector<Composite> comp;
  std::vector<std::pair<std::string, std::string>> inv;
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j)
      for (unsigned a = 0; a < m; ++a) {
        arrows.push_back({nm(i, j, a), objects[i], objects[j], i == j && a == 0});
        inv.emplace_back(nm(i, j, a), nm(j, i, (m - a) % m));
        for (unsigned l = 0; l < k; ++l)
          for (unsigned b = 0; b < m; ++b) comp.push_back({nm(i, j, a), nm(j, l, b), nm(i, l, (a + b) % m)});
      }
  return FiniteGroupoid(std::move(objects), std::move(arrows), comp, inv);
}

ObjectId FiniteGroupoid::object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) throw Error(ErrorCode::UnknownObject, "unknown object '" + name + "'");
  return it->second;
}

ArrowId FiniteGroupoid::arrow_id(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) throw Error(ErrorCode::UnknownArrow, "unknown arrow '" + name + "'");
  return it->second;
}

ArrowId FiniteGroupoid::compose(ArrowId g, ArrowId h) const {
  if (!composable(g, h))
    throw Error(ErrorCode::NotComposable, "cannot compose " + name(g) + " with " + name(h),
                {{"g", name(g)}, {"h", name(h)}});
  return table_.at(key(g, h));
}

std::vector<ArrowId> FiniteGroupoid::star(ObjectId x) const {
  if (x >= objects_.size()) throw Error(ErrorCode::UnknownObject, "object index out of range");
  std::vector<ArrowId> out;
  for (ArrowId g = 0; g < arrows_.size(); ++g)
    if (src(g) == x) out.push_back(g);
  return out;
}

std::vector<ArrowId> FiniteGroupoid::vertex_group(ObjectId x) const {
  auto s = star(x);
  std::erase_if(s, [&](ArrowId g) { return tgt(g) != x; });
  return s;
}

bool FiniteGroupoid::is_equivalence_relation() const {
  std::set<std::pair<ObjectId, ObjectId>> seen;
  for (const auto& a : arrows_)
    if (!seen.emplace(a.src, a.tgt).second) return false;
  return true;
}

std::optional<std::string> FiniteGroupoid::audit() const {
  const auto n = arrows_.size();
  for (ArrowId g = 0; g < n; ++g) {
    if (compose(identity(src(g)), g) != g || compose(g, identity(tgt(g))) != g)
      return "identity law fails at " + name(g);
    if (compose(g, inverse(g)) != identity(src(g)) || compose(inverse(g), g) != identity(tgt(g)))
      return "inverse law fails at " + name(g);
  }
  for (ArrowId g = 0; g < n; ++g)
    for (ArrowId h = 0; h < n; ++h) {
      if (!composable(g, h)) continue;
      ArrowId gh = compose(g, h);
      for (ArrowId k = 0; k < n; ++k) {
        if (!composable(h, k)) continue;
        if (compose(gh, k) != compose(g, compose(h, k)))
          return "associativity fails at (" + name(g) + ", " + name(h) + ", " + name(k) + ")";
      }
    }
  return std::nullopt;
}

std::optional<std::string> morphism_defect(const FiniteGroupoid& dom, const FiniteGroupoid& cod,
                                           const GroupoidMorphism& m) {
  if (m.on_objects.size() != dom.object_count() || m.on_arrows.size() != dom.arrow_count())
    return "map sizes do not match the domain";
  for (ArrowId a = 0; a < dom.arrow_count(); ++a) {
    ArrowId b = m(a);
    if (b >= cod.arrow_count()) return "arrow image out of range";
    if (cod.src(b) != m.on_objects[dom.src(a)] || cod.tgt(b) != m.on_objects[dom.tgt(a)])
      return "endpoints not preserved at " + dom.name(a);
  }
  for (ObjectId x = 0; x < dom.object_count(); ++x)
    if (m(dom.identity(x)) != cod.identity(m.on_objects[x])) return "identity not preserved at " + dom.object_name(x);
  for (ArrowId a = 0; a < dom.arrow_count(); ++a)
    for (ArrowId b = 0; b < dom.arrow_count(); ++b)
      if (dom.composable(a, b) && m(dom.compose(a, b)) != cod.compose(m(a), m(b)))
        return "composition not preserved at (" + dom.name(a) + ", " + dom.name(b) + ")";
  return std::nullopt;
}

GroupoidMorphism identity_morphism(const FiniteGroupoid& g) {
  GroupoidMorphism m;
  for (ObjectId x = 0; x < g.object_count(); ++x) m.on_objects.push_back(x);
  for (ArrowId a = 0; a < g.arrow_count(); ++a) m.on_arrows.push_back(a);
  return m;
}

// ------------------------------------------------------- NormalSubgroupoid

NormalSubgroupoid::NormalSubgroupoid(const FiniteGroupoid& parent, std::vector<ArrowId> members) {
  mask_.assign(parent.arrow_count(), false);
  for (ArrowId a : members) mask_.at(a) = true;
  for (ObjectId x = 0; x < parent.object_count(); ++x)
    if (!mask_[parent.identity(x)])
      throw Error(ErrorCode::NotNormal, "not wide: identity at " + parent.object_name(x) + " missing",
                  {{"missing_identity", parent.name(parent.identity(x))}});
  for (ArrowId a = 0; a < parent.arrow_count(); ++a) {
    if (!mask_[a]) continue;
    if (!mask_[parent.inverse(a)])
      throw Error(ErrorCode::NotNormal, "not closed under inverse at " + parent.name(a), {{"n", parent.name(a)}});
    for (ArrowId b = 0; b < parent.arrow_count(); ++b)
      if (mask_[b] && parent.composable(a, b) && !mask_[parent.compose(a, b)])
        throw Error(ErrorCode::NotNormal, "not closed under composition",
                    {{"n", parent.name(a)}, {"m", parent.name(b)}});
  }
  for (ArrowId n = 0; n < parent.arrow_count(); ++n) {
    if (!mask_[n] || parent.src(n) != parent.tgt(n)) continue;
    for (ArrowId g = 0; g < parent.arrow_count(); ++g) {
      if (parent.tgt(g) != parent.src(n)) continue;
      ArrowId c = parent.compose(parent.compose(g, n), parent.inverse(g));
      if (!mask_[c])
        throw Error(ErrorCode::NotNormal, "conjugate escapes the subgroupoid",
                    {{"g", parent.name(g)}, {"n", parent.name(n)}, {"conjugate", parent.name(c)}});
    }
  }
}

NormalSubgroupoid NormalSubgroupoid::identities(const FiniteGroupoid& parent) {
  std::vector<ArrowId> ids;
  for (ObjectId x = 0; x < parent.object_count(); ++x) ids.push_back(parent.identity(x));
  return NormalSubgroupoid(parent, ids);
}

Quotient quotient(const FiniteGroupoid& g, const NormalSubgroupoid& n) {
  for (ArrowId a = 0; a < g.arrow_count(); ++a)
    if (n.contains(a) && g.src(a) != g.tgt(a))
      throw Error(ErrorCode::NotNormal, "subgroupoid is not contained in the vertex groups", {{"n", g.name(a)}});
  // Class representative: least index in g * N.
  std::vector<ArrowId> rep(g.arrow_count());
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    rep[a] = a;
    for (ArrowId m : g.vertex_group(g.tgt(a)))
      if (n.contains(m)) rep[a] = std::min(rep[a], g.compose(a, m));
  }
  std::map<ArrowId, std::string> names;
  std::vector<FiniteGroupoid::ArrowSpec> arrows;
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    if (rep[a] != a) continue;
    std::string nm = "[" + g.name(a) + "]";
    names[a] = nm;
    arrows.push_back({nm, g.object_name(g.src(a)), g.object_name(g.tgt(a)), n.contains(a)});
  }
  std::vector<FiniteGroupoid::Composite> comp;
  std::vector<std::pair<std::string, std::string>> inv;
  for (const auto& [a, an] : names) {
    inv.emplace_back(an, names.at(rep[g.inverse(a)]));
    for (const auto& [b, bn] : names)
      if (g.composable(a, b)) comp.push_back({an, bn, names.at(rep[g.compose(a, b)])});
  }
  std::vector<std::string> objects;
  for (ObjectId x = 0; x < g.object_count(); ++x) objects.push_back(g.object_name(x));
  Quotient q{FiniteGroupoid(objects, std::move(arrows), comp, inv), {}};
  for (ObjectId x = 0; x < g.object_count(); ++x) q.projection.on_objects.push_back(x);
  for (ArrowId a = 0; a < g.arrow_count(); ++a) q.projection.on_arrows.push_back(q.groupoid.arrow_id(names.at(rep[a])));
  return q;
}

// --------------------------------------------------------------------- JSON

nlohmann::json to_json(const FiniteGroupoid& g) {
  nlohmann::json j;
  j["objects"] = nlohmann::json::array();
  for (ObjectId x = 0; x < g.object_count(); ++x) j["objects"].push_back(g.object_name(x));
  j["arrows"] = nlohmann::json::array();
  j["compose"] = nlohmann::json::array();
  j["inverses"] = nlohmann::json::array();
  for (ArrowId a = 0; a < g.arrow_count(); ++a) {
    nlohmann::json rec = {{"id", g.name(a)}, {"src", g.object_name(g.src(a))}, {"tgt", g.object_name(g.tgt(a))}};
    if (g.arrow(a).identity) rec["identity"] = true;
    j["arrows"].push_back(rec);
    j["inverses"].push_back({g.name(a), g.name(g.inverse(a))});
    for (ArrowId b = 0; b < g.arrow_count(); ++b)
      if (g.composable(a, b)) j["compose"].push_back({g.name(a), g.name(b), g.name(g.compose(a, b))});
  }
  return j;
}

FiniteGroupoid finite_groupoid_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
    std::vector<FiniteGroupoid::ArrowSpec> arrows;
    for (const auto& a : j.at("arrows"))
      arrows.push_back({a.at("id").get<std::string>(), a.at("src").get<std::string>(), a.at("tgt").get<std::string>(),
                        a.value("identity", false)});
    std::vector<FiniteGroupoid::Composite> comp;
    for (const auto& c : j.at("compose"))
      comp.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(), c.at(2).get<std::string>()});
    std::vector<std::pair<std::string, std::string>> inv;
    for (const auto& c : j.at("inverses")) inv.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
    return FiniteGroupoid(std::move(objects), std::move(arrows), comp, inv);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("groupoid document: ") + e.what());
  }
}

}  // namespace gpd
