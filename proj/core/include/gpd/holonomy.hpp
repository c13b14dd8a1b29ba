#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpd/groupoid.hpp"
#include "gpd/models.hpp"
#include "gpd/sections.hpp"

namespace gpd {

/// Germ at `base` of a word of admissible local sections. The same type
/// represents holonomy classes; equality differs (germ_equal vs hol_equal).
struct GermClass {
  SectionWord word;
  Point base;
};
using HolClass = GermClass;

/// Throws NotInDomain when the base is outside the word's domain.
GermClass germ_of(const Model& m, SectionWord word, const Point& base);
bool germ_equal(const Model& m, const GermClass& a, const GermClass& b);
/// [sigma]_x [tau]_y with y = beta(sigma x). Throws NotComposable.
GermClass germ_product(const Model& m, const GermClass& a, const GermClass& b);
GermClass germ_class_inverse(const Model& m, const GermClass& a);
/// psi: the value of the section at the base point.
ModelArrow final_map(const Model& m, const GermClass& a);
/// Membership in J_0: the germ has identity value and is the germ of a local
/// procedure at the base. Decided on the germ, not on the letters.
Verdict in_j0(const Model& m, const GermClass& a);
/// Throws SourceMismatch when the bases differ.
bool hol_equal(const Model& m, const HolClass& a, const HolClass& b);

struct KernelDescriptor {
  Point point;
  std::string kind;  // "trivial", "Z", "Z/m", "finite"
  long order = 1;    // group order, 0 for Z
  std::optional<GermClass> generator;
  nlohmann::json certificate;

  std::string label() const;
};

/// Kernel of psi on the holonomy vertex group at x. The chart family explores
/// germ states breadth-first and throws DepthExceeded when not closed within
/// `depth` letters.
KernelDescriptor kernel_at(const Model& m, const Point& x, int depth = 8);
/// Bundle family: the integer class of a kernel element relative to the
/// generator (exact for Z, reduced for Z/d). Throws NotGenerating if no class
/// in [-bound, bound] matches.
long kernel_class(const Model& m, const GermClass& a, long bound = 64);

/// holds == extendible; on failure the witness names a point and a
/// non-trivial kernel germ.
Verdict is_extendible(const Model& m, int depth = 8);

/// chi_f(w) = <f sigma_w>_x with beta f(x) = alpha w. Throws
/// NoSectionThroughW or OutOfOverlap.
HolClass chart_map(const Model& m, const SectionWord& f, const ModelArrow& w, int variant = 0);
/// w' with chi_f(w') = chi_g(w), computed in Hol. Throws OutOfOverlap.
ModelArrow chart_transition(const Model& m, const SectionWord& f, const SectionWord& g, const ModelArrow& w);
/// Direct left translation L_h(w) = h(z) w with h = f^-1 g.
ModelArrow left_translate(const Model& m, const SectionWord& f, const SectionWord& g, const ModelArrow& w);

/// Whether W generates G. Bundle family: decided symbolically from the window;
/// chart family: orbit reachability of every leaf map within `depth`.
Verdict generates(const Model& m, int depth = 8);
/// Factorisation of an arrow of G into W-letters; throws NotGenerating.
nlohmann::json generation_word(const Model& m, const ModelArrow& a, int depth = 8);

struct NormalityReport {
  std::uint64_t seed = 0;
  int checked = 0;
  int failures = 0;
  nlohmann::json first_failure;
  nlohmann::json to_json() const;
};
/// Randomised check that J_0 is closed under products with inverses and
/// under conjugation by J^c(W).
NormalityReport normality_audit(const Model& m, int samples, std::uint64_t seed);

/// Data for lifting xi: A -> G through phi: H -> G along i: W -> H.
struct LiftProblem {
  FiniteGroupoid a, g, h;
  GroupoidMorphism phi;       // H -> G
  GroupoidMorphism xi;        // A -> G
  std::vector<ArrowId> w;     // arrows of G
  std::map<ArrowId, ArrowId> i;  // W -> H
  std::vector<ArrowId> v;     // generators of A with xi(V) in W
};
/// The unique xi' with phi xi' = xi and xi'(v) = i xi(v). Throws
/// NotGenerating or RelationViolation.
GroupoidMorphism lift_morphism(const LiftProblem& p);

}  // namespace gpd
