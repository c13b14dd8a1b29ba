#include <benchmark/benchmark.h>

#include "gpd/holonomy.hpp"
#include "gpd/monodromy.hpp"

using namespace gpd;

namespace {

PLFunction zigzag(int pieces, const Rational& shift) {
  std::vector<Rational> cuts;
  for (int i = 1; i < pieces; ++i) cuts.push_back(Rational(i, pieces));
  return PLFunction::tabulate(OpenSet1D::interval(Bound(0), Bound(1)), cuts, [&](const Rational& x) {
    Rational k((x * Rational(pieces)).floor().get_si() % 2 == 0 ? 1 : -1);
    return Affine{k, shift};
  });
}

void BM_PlAdd(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  PLFunction f = zigzag(n, Rational(1, 3)), g = zigzag(n + 1, Rational(-1, 7));
  for (auto _ : state) benchmark::DoNotOptimize(pl_add(f, g));
}
BENCHMARK(BM_PlAdd)->Arg(4)->Arg(32)->Arg(256);

void BM_GermCompose(benchmark::State& state) {
  Model m = build_mobius();
  GermClass a = germ_of(m, SectionWord::edge_section(m, "e1"), {"A", Rational(1, 3)});
  GermClass b = germ_of(m, SectionWord::edge_section(m, "e2"), {"B", Rational(1, 3)});
  for (auto _ : state) benchmark::DoNotOptimize(germ_product(m, a, b));
}
BENCHMARK(BM_GermCompose);

void BM_KernelBundle(benchmark::State& state) {
  Model m = build_pradines_1();
  for (auto _ : state) benchmark::DoNotOptimize(kernel_at(m, {"", Rational(0)}));
}
BENCHMARK(BM_KernelBundle);

void BM_KernelMobius(benchmark::State& state) {
  Model m = build_mobius();
  int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_at(m, {"A", Rational(0)}, depth));
}
BENCHMARK(BM_KernelMobius)->Arg(4)->Arg(8);

void BM_MonEqualFinite(benchmark::State& state) {
  FiniteGroupoid g = FiniteGroupoid::cyclic_group(6);
  Pregroupoid p = Pregroupoid::finite(g, {g.arrow_id("0"), g.arrow_id("1"), g.arrow_id("5")});
  MonodromyWord a{"*", {"1", "1", "5", "1"}}, b{"*", {"1", "1"}};
  for (auto _ : state) benchmark::DoNotOptimize(mon_equal(p, a, b, 6));
}
BENCHMARK(BM_MonEqualFinite);

}  // namespace
BENCHMARK_MAIN();
