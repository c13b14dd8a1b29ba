#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpd/rational.hpp"

namespace gpd {

/// Open interval (lo, hi); empty when lo >= hi.
struct Interval {
  Bound lo;
  Bound hi;

  bool empty() const { return !(lo < hi); }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A rational point strictly inside a nonempty interval.
Rational sample_point(const Bound& lo, const Bound& hi);

/// Finite union of disjoint open intervals, sorted. Overlapping inputs are
/// merged; intervals that merely touch at an endpoint stay separate since the
/// endpoint is excluded.
class OpenSet1D {
 public:
  OpenSet1D() = default;
  explicit OpenSet1D(std::vector<Interval> parts);

  static OpenSet1D real_line() { return OpenSet1D({{Bound::neg_inf(), Bound::pos_inf()}}); }
  static OpenSet1D interval(Bound lo, Bound hi) { return OpenSet1D({{std::move(lo), std::move(hi)}}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;
  bool contains(const OpenSet1D& other) const;
  /// Component containing x, if any.
  std::optional<Interval> component(const Rational& x) const;
  /// True if every point of (x - e, x) lies in the set for some e > 0.
  bool covers_left_of(const Rational& x) const;
  bool covers_right_of(const Rational& x) const;

  OpenSet1D intersect(const OpenSet1D& other) const;
  OpenSet1D unite(const OpenSet1D& other) const;

  friend bool operator==(const OpenSet1D&, const OpenSet1D&) = default;

 private:
  std::vector<Interval> parts_;
};

/// x -> slope * x + intercept.
struct Affine {
  Rational slope;
  Rational intercept;

  Rational at(const Rational& x) const { return slope * x + intercept; }
  static Affine constant(Rational c) { return {Rational(0), std::move(c)}; }
  static Affine identity() { return {Rational(1), Rational(0)}; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

Affine operator+(const Affine& a, const Affine& b);
Affine operator-(const Affine& a);
Affine operator*(const Rational& k, const Affine& a);
/// outer(inner(x)).
Affine compose(const Affine& outer, const Affine& inner);
/// Inverse of a non-constant affine map.
Affine invert(const Affine& a);

/// Affine data valid on [from, to) intersected with the domain component the
/// piece lives in.
struct Piece {
  Bound from;
  Bound to;
  Affine f;
  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Exact piecewise-linear function on an open subset of the rational line.
///
/// Pieces are half-open on the right, so the value at an interior breakpoint is
/// the value of the piece starting there. Jumps at breakpoints are allowed and
/// detected by comparing one-sided limits; the representation is kept
/// canonical (adjacent pieces with equal affine data merged) so structural
/// equality is function equality.
class PLFunction {
 public:
  PLFunction() = default;
  /// Validates that pieces tile every domain component, then canonicalizes.
  PLFunction(OpenSet1D domain, std::vector<Piece> pieces);

  static PLFunction constant(const Rational& c, OpenSet1D domain = OpenSet1D::real_line());
  static PLFunction affine(const Affine& f, OpenSet1D domain = OpenSet1D::real_line());
  static PLFunction identity(OpenSet1D domain = OpenSet1D::real_line());

  /// Builds a function by cutting every domain component at `cuts` and asking
  /// `piece_at` for the affine data valid around a sample point of each cell.
  static PLFunction tabulate(const OpenSet1D& domain, std::vector<Rational> cuts,
                             const std::function<Affine(const Rational&)>& piece_at);

  const OpenSet1D& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  bool defined_at(const Rational& x) const { return domain_.contains(x); }
  Rational operator()(const Rational& x) const;
  const Piece& piece_at(const Rational& x) const;
  /// Affine data on a left (right) punctured neighbourhood of x, if the
  /// domain covers one. x itself need not be in the domain.
  std::optional<Affine> left_line(const Rational& x) const;
  std::optional<Affine> right_line(const Rational& x) const;
  /// Finite piece boundaries interior to the domain.
  std::vector<Rational> breakpoints() const;
  bool continuous_at(const Rational& x) const;
  bool continuous() const;

  PLFunction restrict(const OpenSet1D& u) const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  void canonicalize();

  OpenSet1D domain_;
  std::vector<Piece> pieces_;
};

PLFunction operator-(const PLFunction& f);
/// Sum on the intersection of domains. Throws EmptyIntersection.
PLFunction pl_add(const PLFunction& f, const PLFunction& g);
PLFunction pl_sub(const PLFunction& f, const PLFunction& g);
PLFunction pl_scale(const Rational& k, const PLFunction& f);
/// outer o inner on { x in dom(inner) : inner(x) in dom(outer) }. The inner
/// function must be continuous; the result may have empty domain. Where a
/// decreasing inner meets a jump of outer, the value is the right limit of
/// the composite rather than outer(inner(x)).
PLFunction pl_compose(const PLFunction& outer, const PLFunction& inner);
/// Image of a continuous function that is strictly monotone on each component.
OpenSet1D pl_image(const PLFunction& f);

/// Why a PL map fails to be a homeomorphism onto an open image.
struct FoldWitness {
  std::string reason;  // "constant_piece", "discontinuous", "fold", "overlap"
  Rational point;
};
std::optional<FoldWitness> homeomorphism_defect(const PLFunction& f);
/// Inverse of a PL homeomorphism onto its image. Throws InvalidModel with a
/// fold witness otherwise.
PLFunction pl_inverse(const PLFunction& f);

/// Finite complete invariant for the germ of a PL function at a point.
struct Germ1D {
  Rational base;
  std::optional<Rational> value;
  std::optional<Affine> left;
  std::optional<Affine> right;

  static Germ1D identity_at(const Rational& x);
  static Germ1D of_affine(const Rational& x, const Affine& f);
  friend bool operator==(const Germ1D&, const Germ1D&) = default;
};

/// Throws NotInDomain when no one-sided neighbourhood of x0 is in the domain.
Germ1D germ_at(const PLFunction& f, const Rational& x0);
Germ1D germ_add(const Germ1D& a, const Germ1D& b);
Germ1D germ_neg(const Germ1D& a);
/// Germ of outer o inner for homeomorphism germs; inner.value must equal
/// outer.base.
Germ1D germ_compose(const Germ1D& outer, const Germ1D& inner);
Germ1D germ_inverse(const Germ1D& g);

struct SmoothnessClass {
  int r = 0;  // 0: continuous, 1: continuous with matching one-sided slopes
  friend bool operator==(const SmoothnessClass&, const SmoothnessClass&) = default;
};

struct CrVerdict {
  bool holds = false;
  bool one_sided = false;  // decided on the defined side only
};
CrVerdict is_cr_at(const Germ1D& g, SmoothnessClass r);

}  // namespace gpd
