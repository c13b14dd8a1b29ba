#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpd/models.hpp"
#include "gpd/pl.hpp"

namespace gpd {

/// One admissible local section.
///
/// Bundle family: x -> q(x, data(x)) on dom(data); the target map is the
/// identity. Chart family: the sheet of `edge` over dom(data), sending the
/// point (src, y) to (tgt, data(y)).
struct SectionEntry {
  std::string edge;  // empty for the bundle family
  std::string src;
  std::string tgt;
  PLFunction data;
  bool procedure = false;  // member of the local procedures
};

/// Formal product of admissible local sections together with its pointwise
/// Ehresmann product. Words are never collapsed: the entry list is the
/// certificate of membership in the inverse monoid generated by the local
/// procedures.
class SectionWord {
 public:
  /// Empty word: the identity section on the whole object space (bundle) or
  /// on the transversal of `chart`.
  static SectionWord identity(const Model& m, const std::string& chart = "");
  /// One-letter word; the local-procedure flag is computed here.
  static SectionWord single(const Model& m, SectionEntry e);
  static SectionWord bundle_section(const Model& m, const PLFunction& f);
  /// Sheet of an edge restricted to `u` (whole edge domain when omitted).
  static SectionWord edge_section(const Model& m, const std::string& edge,
                                  const std::optional<OpenSet1D>& u = std::nullopt);

  const std::vector<SectionEntry>& entries() const { return entries_; }
  const std::string& src_chart() const { return src_; }
  const std::string& tgt_chart() const { return tgt_; }
  const OpenSet1D& domain() const { return target_.domain(); }
  /// The map x -> beta(sigma(x)) on the domain.
  const PLFunction& target_map() const { return target_; }
  /// Bundle family: fiber values of the product. Chart family: zero.
  const PLFunction& values() const { return values_; }
  bool all_procedures() const;

  ModelArrow evaluate(const Model& m, const Rational& x) const;

 private:
  friend SectionWord ehresmann_product(const Model&, const SectionWord&, const SectionWord&);
  friend SectionWord section_inverse(const Model&, const SectionWord&);

  std::vector<SectionEntry> entries_;
  std::string src_, tgt_;
  PLFunction target_;
  PLFunction values_;
};

/// (sigma tau)(x) = (sigma x)(tau beta sigma x). Throws EmptyDomain.
SectionWord ehresmann_product(const Model& m, const SectionWord& sigma, const SectionWord& tau);
/// Generalised inverse: reversed word of entry inverses.
SectionWord section_inverse(const Model& m, const SectionWord& sigma);
/// k-fold product; negative k uses the inverse, 0 the identity word.
SectionWord section_power(const Model& m, const SectionWord& sigma, int k);

struct Verdict {
  bool holds = false;
  nlohmann::json witness;  // failing clause / point, or supporting data
};

/// Admissibility of raw section data: alpha sigma = id, open image, target
/// map a PL homeomorphism.
Verdict is_admissible(const Model& m, const SectionEntry& raw);
/// Membership of the product in the local procedures, at one point or on the
/// whole domain.
Verdict is_local_procedure(const Model& m, const SectionWord& sigma,
                           const std::optional<Rational>& at = std::nullopt);

/// Admissible local section through a W-element with values in W.
/// `variant` selects an alternative construction (a sloped or shrunk
/// section) used to check choice-independence. Throws NoSectionThroughW.
SectionWord local_section_through(const Model& m, const ModelArrow& w, int variant = 0);

/// Subset where f > 0 (f may jump at breakpoints).
OpenSet1D positive_set(const PLFunction& f);

}  // namespace gpd
