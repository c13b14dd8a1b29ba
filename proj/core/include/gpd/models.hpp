#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gpd/pl.hpp"

namespace gpd {

/// Bundle of groups F/N over the rational line. The fiber at x is R when
/// n(x) = 0 and R / n(x)Z otherwise; arrows are classes q(x, t). The piece W
/// consists of the classes with a representative strictly inside the window
/// (lower(x), upper(x)).
struct QuotientBundleModel {
  std::string name;
  PLFunction profile;  // n(x) >= 0
  PLFunction upper;    // window top, the "width"
  PLFunction lower;    // window bottom, -width when symmetric
  SmoothnessClass smoothness;

  bool symmetric() const { return lower == -upper; }
};

struct Chart {
  std::string id;
  Interval transversal;
  Rational base;  // designated point for kernel queries
};

/// Partial PL homeomorphism between transversals of two charts.
struct ChartEdge {
  std::string id;
  std::string src;
  std::string tgt;
  PLFunction map;
  bool identity = false;
};

/// Foliation chart complex. `edges` are the sheets of W (identities
/// included); `leaf_maps` are extra generators of the leaf relation G, which
/// is otherwise the relation generated by `edges`.
struct ChartComplex {
  std::string name;
  std::vector<Chart> charts;
  std::vector<ChartEdge> edges;
  std::vector<ChartEdge> leaf_maps;
  SmoothnessClass smoothness;

  const Chart& chart(const std::string& id) const;
  const ChartEdge& edge(const std::string& id) const;
  /// Adds formal inverses ("<id>~") for edges that lack one.
  void close_under_inverse();
};

using Model = std::variant<QuotientBundleModel, ChartComplex>;

inline bool is_bundle(const Model& m) { return std::holds_alternative<QuotientBundleModel>(m); }
const QuotientBundleModel& bundle(const Model& m);
const ChartComplex& complex(const Model& m);
const std::string& model_name(const Model& m);
Model with_smoothness(Model m, SmoothnessClass r);

// ---------------------------------------------------------------- builders

QuotientBundleModel build_pradines_1();
QuotientBundleModel build_pradines_2(SmoothnessClass r = {0});
ChartComplex build_mobius();

// ------------------------------------------------------------ arrows of G

/// A point of the object space: chart is empty for the bundle family.
struct Point {
  std::string chart;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Arrow of G. Bundle family: src == tgt and `t` is a fiber representative.
/// Chart family: an ordered pair of leaf-equivalent points, `t` unused.
struct ModelArrow {
  Point src;
  Point tgt;
  Rational t;
};

std::string to_string(const Point& p);
std::string to_string(const ModelArrow& a);

ModelArrow identity_arrow(const Point& x);
bool arrow_equal(const Model& m, const ModelArrow& a, const ModelArrow& b);
/// Throws NotComposable.
ModelArrow compose_arrows(const Model& m, const ModelArrow& a, const ModelArrow& b);
ModelArrow inverse_arrow(const ModelArrow& a);
bool is_identity(const Model& m, const ModelArrow& a);

/// q(x, t) == q(x, t') in the bundle family.
bool fiber_equal(const QuotientBundleModel& m, const Rational& x, const Rational& t, const Rational& t2);
/// Representative of q(x, t) inside the window, if q(x, t) is in W.
std::optional<Rational> window_rep(const QuotientBundleModel& m, const Rational& x, const Rational& t);
/// W membership; for the chart family the sheet containing the arrow.
bool in_w(const Model& m, const ModelArrow& a);
std::optional<std::string> sheet_of(const ChartComplex& c, const ModelArrow& a);

// --------------------------------------------------- local representatives

/// Result of searching for a W-valued, C^r representative of a fiber-valued
/// germ: u = t - k n with the integer shift chosen per side.
struct WRepresentative {
  bool found = false;
  mpz_class k;  // shift at the base point
  mpz_class k_left, k_right;
  Germ1D u;
  /// On failure: "forced_branch", "out_of_window", "discontinuous", "slope_kink".
  std::string reason;
};

/// t must be defined at x0.
WRepresentative w_representative(const QuotientBundleModel& m, const PLFunction& t, const Rational& x0);

// ------------------------------------------------------------------ axioms

struct AxiomVerdict {
  bool holds = true;
  nlohmann::json witness;  // null when holds
};

struct AxiomReport {
  std::array<AxiomVerdict, 5> g;  // G1..G5
  bool all() const;
  nlohmann::json to_json() const;
};

AxiomReport check_axioms(const Model& m, int depth = 6);

/// Factorisation of q(x, t) into W-elements (each letter a representative,
/// possibly inverted). Throws NotGenerating if the window at x is empty.
struct GenerationLetter {
  Rational t;
  bool inverse = false;
};
std::vector<GenerationLetter> generation_certificate(const QuotientBundleModel& m, const Rational& x,
                                                      const Rational& t);

/// Orbit of a point under W-edge words of length <= depth.
std::set<Point> w_orbit(const ChartComplex& c, const Point& p, int depth);
/// Leaf through a point: orbit under edges and leaf maps.
std::set<Point> leaf_through(const ChartComplex& c, const Point& p, int depth);

}  // namespace gpd
