#include <benchmark/benchmark.h>

#include "lva/autgrp.hpp"
#include "lva/lattice.hpp"
#include "lva/vertex.hpp"

using namespace lva;

static void BM_ShortVectors(benchmark::State& state) {
  const Lattice l = Lattice::preset(state.range(0) == 0 ? "D4" : "E8");
  for (auto _ : state) benchmark::DoNotOptimize(short_vectors(l, 4));
}
BENCHMARK(BM_ShortVectors)->Arg(0)->Arg(1);

static void BM_WeylClosureD4(benchmark::State& state) {
  const Lattice l = Lattice::preset("D4");
  for (auto _ : state) benchmark::DoNotOptimize(weyl_group(l).order());
}
BENCHMARK(BM_WeylClosureD4);

static void BM_OrthogonalGroupD4(benchmark::State& state) {
  const Lattice l = Lattice::preset("D4");
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_group(l).order());
}
BENCHMARK(BM_OrthogonalGroupD4);

// Uncached mode products: the cache is cleared on every iteration.
static void BM_ModeProductA2(benchmark::State& state) {
  const LatticeVertexAlgebra va(Lattice::preset("A2"));
  const auto basis = truncation_basis(va.lattice(), state.range(0));
  for (auto _ : state) {
    va.clear_cache();
    for (const auto& u : basis)
      for (const auto& v : basis) benchmark::DoNotOptimize(va.mode(u, -1, v));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(basis.size() * basis.size()));
}
BENCHMARK(BM_ModeProductA2)->Arg(1)->Arg(2);

static void BM_BorcherdsA1(benchmark::State& state) {
  const LatticeVertexAlgebra va(Lattice::preset("A1"));
  const auto basis = truncation_basis(va.lattice(), 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const FockVector u(basis[i % basis.size()]), v(basis[(i / 3) % basis.size()]), w(basis[(i / 7) % basis.size()]);
    benchmark::DoNotOptimize(borcherds_check(va, u, v, w, 1, -1, 0).holds);
    ++i;
  }
}
BENCHMARK(BM_BorcherdsA1);

static void BM_TitsGroupA2(benchmark::State& state) {
  const LatticeVertexAlgebra va(Lattice::preset("A2"));
  for (auto _ : state) benchmark::DoNotOptimize(tits_group(va, 1).group.order());
}
BENCHMARK(BM_TitsGroupA2);

BENCHMARK_MAIN();
