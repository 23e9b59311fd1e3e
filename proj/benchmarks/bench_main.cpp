#include <benchmark/benchmark.h>

#include "instanton/autgrp.hpp"
#include "instanton/darboux.hpp"
#include "instanton/ncalg.hpp"
#include "instanton/sampling.hpp"
#include "instanton/slice.hpp"

using namespace instanton;

static void BM_NecklaceBracket(benchmark::State& state) {
  sampling::Rng rng(1);
  const int deg = static_cast<int>(state.range(0));
  ncalg::Necklace f = sampling::random_necklace(rng, deg, 4), g = sampling::random_necklace(rng, deg, 4);
  for (auto _ : state) benchmark::DoNotOptimize(ncalg::necklace_bracket(f, g));
}
BENCHMARK(BM_NecklaceBracket)->DenseRange(2, 6, 2);

static void BM_ToSlice(benchmark::State& state) {
  sampling::Rng rng(2);
  const int k = static_cast<int>(state.range(0));
  Mat Ahat = sampling::random_matrix(rng, k + 1, k + 1);
  for (auto _ : state) benchmark::DoNotOptimize(slice::to_slice(Ahat));
}
BENCHMARK(BM_ToSlice)->DenseRange(1, 5);

static void BM_PiForward(benchmark::State& state) {
  sampling::Rng rng(3);
  const int k = static_cast<int>(state.range(0));
  hat::HatPair h = hat::to_hats(sampling::sample_on_shell(rng, k, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(darboux::pi_forward(h));
}
BENCHMARK(BM_PiForward)->DenseRange(1, 5);

static void BM_PiInverse(benchmark::State& state) {
  sampling::Rng rng(4);
  const int k = static_cast<int>(state.range(0));
  darboux::DarbouxPoint p = darboux::pi_forward(hat::to_hats(sampling::sample_on_shell(rng, k, 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(darboux::pi_inverse(p));
}
BENCHMARK(BM_PiInverse)->DenseRange(1, 5);

static void BM_CanonicalBracketMatrix(benchmark::State& state) {
  sampling::Rng rng(5);
  const int k = static_cast<int>(state.range(0));
  hat::HatPair h = hat::to_hats(sampling::sample_on_shell(rng, k, 1.0));
  auto F = darboux::coordinate_function(h);
  for (auto _ : state) benchmark::DoNotOptimize(darboux::bracket_matrix(F, h));
}
BENCHMARK(BM_CanonicalBracketMatrix)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_TriangularAct(benchmark::State& state) {
  sampling::Rng rng(6);
  rep::AdhmData d = sampling::sample_on_shell(rng, 3, 1.0);
  autgrp::Potential f = sampling::random_potential(rng, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(autgrp::act(autgrp::Triangular{f}, d));
}
BENCHMARK(BM_TriangularAct)->DenseRange(1, 4);

static void BM_NormalizeToCM(benchmark::State& state) {
  sampling::Rng rng(7);
  const int k = static_cast<int>(state.range(0));
  rep::AdhmData d = sampling::sample_on_shell(rng, k, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(autgrp::normalize_to_cm(d));
}
BENCHMARK(BM_NormalizeToCM)->DenseRange(1, 5);
BENCHMARK_MAIN();
