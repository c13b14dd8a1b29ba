#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gpd {

/// Exact rational number in canonical form (denominator positive, reduced).
/// Thin value wrapper around GMP's mpq_class so expression templates never
/// leak into callers.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p", "p/q", "-p/q". Throws Error(Parse) on malformed input.
  static Rational parse(std::string_view text);

  std::string str() const;
  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  mpz_class floor() const;
  mpz_class ceil() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

Rational from_integer(const mpz_class& z);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Interval endpoint: a rational or one of the symbolic infinities.
class Bound {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  Bound() = default;
  Bound(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  Bound(long v) : kind_(Kind::Finite), value_(v) {}                  // NOLINT
  static Bound neg_inf() { Bound b; b.kind_ = Kind::NegInf; return b; }
  static Bound pos_inf() { Bound b; b.kind_ = Kind::PosInf; return b; }
  static Bound parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const { return value_; }
  std::string str() const;

  friend bool operator==(const Bound& a, const Bound& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

 private:
  Kind kind_ = Kind::Finite;
  Rational value_;
};

bool operator<(const Bound& a, const Rational& x);
bool operator<(const Rational& x, const Bound& b);

}  // namespace gpd

template <>
struct std::hash<gpd::Rational> {
  size_t operator()(const gpd::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
