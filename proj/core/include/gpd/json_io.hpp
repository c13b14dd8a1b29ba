#pragma once

#include <string>

#include <json.hpp>

#include "gpd/groupoid.hpp"
#include "gpd/holonomy.hpp"
#include "gpd/models.hpp"
#include "gpd/monodromy.hpp"
#include "gpd/pl.hpp"
#include "gpd/sections.hpp"

namespace gpd {

// All parse functions throw Error(Parse) on malformed input.

nlohmann::json to_json(const Bound& b);
nlohmann::json to_json(const OpenSet1D& u);
nlohmann::json to_json(const Affine& a);
nlohmann::json to_json(const PLFunction& f);
nlohmann::json to_json(const Germ1D& g);
nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const ModelArrow& a);
nlohmann::json to_json(const Model& m);
nlohmann::json to_json(const SectionWord& w);
nlohmann::json to_json(const KernelDescriptor& k);
nlohmann::json to_json(const FiniteGroupoid& src, const FiniteGroupoid& dst, const GroupoidMorphism& f);

Rational rational_from_json(const nlohmann::json& j);
Bound bound_from_json(const nlohmann::json& j);
Interval interval_from_json(const nlohmann::json& j);
OpenSet1D open_set_from_json(const nlohmann::json& j);
PLFunction pl_from_json(const nlohmann::json& j);
Point point_from_json(const nlohmann::json& j);
Model model_from_json(const nlohmann::json& j);

/// {"domain":..., "f": PL} | {"chart_edge": id, "restrict": [lo, hi]} |
/// {"src", "tgt", "map": PL} | {"word": [section, ...]}.
SectionWord section_from_json(const Model& m, const nlohmann::json& j);
/// Raw data for admissibility checks.
SectionEntry section_entry_from_json(const Model& m, const nlohmann::json& j);
/// Bundle: {"at": x, "t": t}; chart: {"src": point, "tgt": point}.
ModelArrow arrow_from_json(const Model& m, const nlohmann::json& j);
/// {"at": point, "word": section document}.
GermClass germ_from_json(const Model& m, const nlohmann::json& j);

GroupoidMorphism morphism_from_json(const FiniteGroupoid& src, const FiniteGroupoid& dst, const nlohmann::json& j);
/// {"groupoid": ..., "carrier": [arrow names]}.
Pregroupoid pregroupoid_from_json(const nlohmann::json& j);
/// {"A","G","H": groupoids, "phi","xi": morphisms, "W": [...], "i": {w: h}, "V": [...]}.
LiftProblem lift_problem_from_json(const nlohmann::json& j);

/// FNV-1a over the canonical dump, as 16 hex digits.
std::string fingerprint(const nlohmann::json& j);

}  // namespace gpd
