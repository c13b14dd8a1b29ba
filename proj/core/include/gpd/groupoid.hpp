#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gpd {

using ObjectId = std::size_t;
using ArrowId = std::size_t;

struct ArrowRecord {
  std::string name;
  ObjectId src = 0;
  ObjectId tgt = 0;
  bool identity = false;
};

/// Finite groupoid with explicit composition table. gh is defined iff
/// tgt(g) == src(h); src(gh) = src(g), tgt(gh) = tgt(h).
///
/// Object and arrow names are opaque strings; internally everything is
/// addressed by dense indices. Instances are immutable once built.
class FiniteGroupoid {
 public:
  struct Composite {
    std::string g, h, gh;
  };
  struct ArrowSpec {
    std::string name, src, tgt;
    bool identity = false;
  };

  FiniteGroupoid() = default;
  /// Validates the tables (total on composable pairs, identities, inverses)
  /// and throws InvalidModel on failure. Run audit() for associativity.
  FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                 const std::vector<Composite>& compose,
                 const std::vector<std::pair<std::string, std::string>>& inverses);

  /// Single-object group Z/m with arrows "0".."m-1".
  static FiniteGroupoid cyclic_group(unsigned m, const std::string& object = "*");
  /// Pair groupoid on the given objects, arrows "(a,b)".
  static FiniteGroupoid pair_groupoid(const std::vector<std::string>& objects);
  /// Pair groupoid on k objects times Z/m; arrows "i>j:a".
  static FiniteGroupoid pair_times_cyclic(unsigned k, unsigned m);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& object_name(ObjectId x) const { return objects_.at(x); }
  const ArrowRecord& arrow(ArrowId g) const { return arrows_.at(g); }
  const std::string& name(ArrowId g) const { return arrows_.at(g).name; }
  ObjectId object(const std::string& name) const;  // UnknownObject
  ArrowId arrow_id(const std::string& name) const;  // UnknownArrow

  ObjectId src(ArrowId g) const { return arrows_.at(g).src; }
  ObjectId tgt(ArrowId g) const { return arrows_.at(g).tgt; }
  bool composable(ArrowId g, ArrowId h) const { return tgt(g) == src(h); }
  /// Throws NotComposable when tgt(g) != src(h).
  ArrowId compose(ArrowId g, ArrowId h) const;
  ArrowId identity(ObjectId x) const { return identities_.at(x); }
  ArrowId inverse(ArrowId g) const { return inverses_.at(g); }

  /// All arrows with source x, sorted by index.
  std::vector<ArrowId> star(ObjectId x) const;
  std::vector<ArrowId> vertex_group(ObjectId x) const;
  /// True iff the anchor (src, tgt) is injective.
  bool is_equivalence_relation() const;

  /// Exhaustive check of associativity and the identity/inverse laws;
  /// returns a description of the first violation.
  std::optional<std::string> audit() const;

 private:
  static std::uint64_t key(ArrowId g, ArrowId h) { return (static_cast<std::uint64_t>(g) << 32) | h; }

  std::vector<std::string> objects_;
  std::vector<ArrowRecord> arrows_;
  std::unordered_map<std::string, ObjectId> object_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
  std::unordered_map<std::uint64_t, ArrowId> table_;
  std::vector<ArrowId> identities_;
  std::vector<ArrowId> inverses_;
};

/// Identity on objects is not assumed; maps are indexed by the domain's ids.
struct GroupoidMorphism {
  std::vector<ObjectId> on_objects;
  std::vector<ArrowId> on_arrows;

  ArrowId operator()(ArrowId a) const { return on_arrows.at(a); }
};

/// First failure of the morphism laws, if any.
std::optional<std::string> morphism_defect(const FiniteGroupoid& dom, const FiniteGroupoid& cod,
                                           const GroupoidMorphism& m);
GroupoidMorphism identity_morphism(const FiniteGroupoid& g);

/// Wide normal subgroupoid of a parent groupoid, stored as a membership mask.
class NormalSubgroupoid {
 public:
  /// Validates wideness, closure and normality; throws NotNormal with a
  /// witness {"g", "n", "conjugate"} when a conjugate escapes.
  NormalSubgroupoid(const FiniteGroupoid& parent, std::vector<ArrowId> members);

  static NormalSubgroupoid identities(const FiniteGroupoid& parent);
  bool contains(ArrowId a) const { return mask_.at(a); }
  const std::vector<bool>& mask() const { return mask_; }

 private:
  NormalSubgroupoid() = default;
  std::vector<bool> mask_;
};

struct Quotient {
  FiniteGroupoid groupoid;
  GroupoidMorphism projection;
};

/// G/N with its canonical projection (identity on objects). N must lie in the
/// vertex groups.
Quotient quotient(const FiniteGroupoid& g, const NormalSubgroupoid& n);

nlohmann::json to_json(const FiniteGroupoid& g);
FiniteGroupoid finite_groupoid_from_json(const nlohmann::json& j);

}  // namespace gpd
