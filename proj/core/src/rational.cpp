#include "gpd/rational.hpp"

#include <cctype>

#include "gpd/error.hpp"

namespace gpd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownArrow: return "UnknownArrow";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::SourceMismatch: return "SourceMismatch";
    case ErrorCode::NoSectionThroughW: return "NoSectionThroughW";
    case ErrorCode::OutOfOverlap: return "OutOfOverlap";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::NotPregroupoidMorphism: return "NotPregroupoidMorphism";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Rational::Rational(long n, long d) {
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(zn, zd);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::Parse, "division by zero");
  v_ /= o.v_;
  return *this;
}

Rational from_integer(const mpz_class& z) { return Rational(mpq_class(z)); }
Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Bound Bound::parse(std::string_view text) {
  if (text == "-inf") return neg_inf();
  if (text == "inf" || text == "+inf") return pos_inf();
  return Bound(Rational::parse(text));
}

std::string Bound::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Finite: break;
  }
  return value_.str();
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
  auto rank = [](Bound::Kind k) { return k == Bound::Kind::NegInf ? 0 : (k == Bound::Kind::Finite ? 1 : 2); };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != Bound::Kind::Finite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

bool operator<(const Bound& a, const Rational& x) {
  return a.kind() == Bound::Kind::NegInf || (a.finite() && a.value() < x);
}

bool operator<(const Rational& x, const Bound& b) {
  return b.kind() == Bound::Kind::PosInf || (b.finite() && x < b.value());
}

}  // namespace gpd
