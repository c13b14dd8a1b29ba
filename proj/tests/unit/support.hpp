#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "gpd/pl.hpp"

namespace gpd::test {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline Rational frac(Rng& rng, int lo, int hi, int den) { return Rational(pick(rng, lo, hi), den); }

inline PLFunction pl(std::initializer_list<std::tuple<Bound, Bound, Rational, Rational>> pieces) {
  std::vector<Piece> ps;
  std::vector<Interval> parts;
  for (const auto& [a, b, k, c] : pieces) {
    ps.push_back({a, b, {k, c}});
    if (!parts.empty() && parts.back().hi == a)
      parts.back().hi = b;
    else
      parts.push_back({a, b});
  }
  return PLFunction(OpenSet1D(parts), ps);
}

/// Random PL function on (lo, hi) with up to three cuts; continuous when asked.
inline PLFunction random_pl(Rng& rng, Rational lo, Rational hi, bool continuous, int vnum = 8, int den = 8) {
  std::vector<Rational> cuts;
  int n = pick(rng, 0, 3);
  for (int i = 0; i < n; ++i) cuts.push_back(lo + (hi - lo) * Rational(pick(rng, 1, 31), 32));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> ps;
  Rational start = frac(rng, -vnum, vnum, den);
  Bound from = lo;
  Rational at = lo;
  auto push = [&](Bound to, Rational x_end) {
    Rational k = frac(rng, -8, 8, 4);
    if (!continuous) start = frac(rng, -vnum, vnum, den);
    ps.push_back({from, to, {k, start - k * at}});
    start = start + k * (x_end - at);
    from = to;
    at = x_end;
  };
  for (const auto& c : cuts) push(Bound(c), c);
  push(Bound(hi), hi);
  return PLFunction(OpenSet1D::interval(lo, hi), ps);
}

/// Points in the domain: breakpoints, midpoints and random rationals.
inline std::vector<Rational> samples(const PLFunction& f, Rng& rng, int extra = 6) {
  std::vector<Rational> out = f.breakpoints();
  for (const auto& iv : f.domain().parts()) {
    Rational lo = iv.lo.finite() ? iv.lo.value() : Rational(-8);
    Rational hi = iv.hi.finite() ? iv.hi.value() : Rational(8);
    for (int i = 0; i < extra; ++i) out.push_back(lo + (hi - lo) * Rational(pick(rng, 1, 127), 128));
  }
  std::erase_if(out, [&](const Rational& x) { return !f.defined_at(x); });
  return out;
}

}  // namespace gpd::test
