#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpd/groupoid.hpp"
#include "gpd/models.hpp"

namespace gpd {

/// A word of pregroupoid elements starting at `base`. Finite carriers use
/// object and arrow names; the bundle family uses "p/q" for both the base
/// point and the fiber values of the letters.
struct MonodromyWord {
  std::string base;
  std::vector<std::string> letters;
  friend bool operator==(const MonodromyWord&, const MonodromyWord&) = default;
};

/// W with the product inherited from its ambient groupoid, defined exactly
/// when the ambient product lands back in W.
class Pregroupoid {
 public:
  /// Carrier must contain the identities and be closed under inverse;
  /// throws InvalidModel otherwise.
  static Pregroupoid finite(FiniteGroupoid g, const std::vector<ArrowId>& carrier);
  /// The piece W of a quotient bundle, one star at a time.
  static Pregroupoid bundle_piece(QuotientBundleModel m);

  bool is_finite() const { return finite_.has_value(); }
  const FiniteGroupoid& ambient() const { return *finite_; }
  const QuotientBundleModel& model() const { return *bundle_; }
  bool contains(ArrowId a) const { return in_.at(a); }
  std::vector<ArrowId> carrier() const;
  /// Product in W, if defined.
  std::optional<ArrowId> product(ArrowId a, ArrowId b) const;

  /// Bundle family: q(x,a) q(x,b) in W, as the window representative.
  std::optional<Rational> product(const Rational& x, const Rational& a, const Rational& b) const;
  /// True when sums of representatives form a complete invariant at x.
  bool sum_invariant_complete(const Rational& x) const;

 private:
  std::optional<FiniteGroupoid> finite_;
  std::vector<bool> in_;
  std::optional<QuotientBundleModel> bundle_;
};

/// Normalises and validates a word: letters composable from the base and in
/// W (bundle letters replaced by their window representatives). Throws
/// NotComposable or InvalidModel.
MonodromyWord mon_normalize(const Pregroupoid& p, const MonodromyWord& w);
/// Contractions and identity deletions, leftmost first, to a fixpoint.
MonodromyWord mon_reduce(const Pregroupoid& p, const MonodromyWord& w);
/// Image of the word in the ambient groupoid: an arrow name or a fiber value.
std::string ambient_product(const Pregroupoid& p, const MonodromyWord& w);
/// Bundle family: sum of the letter representatives.
Rational germ_sum(const Pregroupoid& p, const MonodromyWord& w);

enum class MonVerdict { Equal, Distinct, Unknown };
std::string to_string(MonVerdict v);

struct MonEquality {
  MonVerdict verdict = MonVerdict::Unknown;
  nlohmann::json certificate;
};
/// Semi-decides equality in M(W). Throws BaseMismatch.
MonEquality mon_equal(const Pregroupoid& p, const MonodromyWord& a, const MonodromyWord& b, int depth);

/// Extension of a pregroupoid morphism W -> K to M(W).
class MonExtension {
 public:
  ArrowId apply(const MonodromyWord& w) const;
  const std::map<ArrowId, ArrowId>& on_letters() const { return f_; }

 private:
  friend MonExtension mon_extend(const Pregroupoid&, const FiniteGroupoid&, const std::map<ArrowId, ArrowId>&);
  const Pregroupoid* p_ = nullptr;
  const FiniteGroupoid* k_ = nullptr;
  std::map<ArrowId, ArrowId> f_;
};
/// Checks every defined product exhaustively; throws NotPregroupoidMorphism
/// with the violating pair. The returned object refers to p and k.
MonExtension mon_extend(const Pregroupoid& p, const FiniteGroupoid& k, const std::map<ArrowId, ArrowId>& f);
/// Bundle family: the lift of W to the covering bundle R (t -> t on window
/// representatives), extended additively. Throws NotPregroupoidMorphism at a
/// point where the lift is not additive.
Rational mon_extend_cover(const Pregroupoid& p, const MonodromyWord& w);

/// Evidence that M(W) -> G is a covering on the star at `base`.
nlohmann::json star_projection_check(const Pregroupoid& p, const std::string& base, int depth);

nlohmann::json to_json(const MonodromyWord& w);
MonodromyWord word_from_json(const nlohmann::json& j);

}  // namespace gpd
