#include <benchmark/benchmark.h>

#include "hermikit/cyclotomic.hpp"
#include "hermikit/intmat.hpp"
#include "hermikit/reduction.hpp"
#include "hermikit/unitary.hpp"

using namespace hermikit;

static void BM_CycZeroTest(benchmark::State& state) {
  long n = state.range(0);
  CycNum s;
  for (long k = 0; k < n; ++k) s += CycNum::phase(make_q(k, n));
  for (auto _ : state) benchmark::DoNotOptimize(s.is_zero());
}
BENCHMARK(BM_CycZeroTest)->Arg(12)->Arg(30)->Arg(60);

static void BM_Reduce(benchmark::State& state) {
  const long D = -4;
  FieldElem w = FieldElem::omega(D);
  FMat m{{FieldElem(7), w + 3}, {conj(w) + 3, FieldElem(4)}};
  for (auto _ : state) benchmark::DoNotOptimize(reduce(m, D, int(state.range(0))));
}
BENCHMARK(BM_Reduce)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EnumerateM(benchmark::State& state) {
  std::vector<long> diag(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_M(diag, -4));
}
BENCHMARK(BM_EnumerateM)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SinvFactorization(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_sinv_factorization(std::size_t(state.range(0))));
}
BENCHMARK(BM_SinvFactorization)->DenseRange(2, 4);

static void BM_WordSearch(benchmark::State& state) {
  std::vector<FMat> gens = {make_sinv1(2), make_rot(swap_matrix(1, 2)), elementary_unitary(ElementaryKind::trans, 0, 1, 1, 2)};
  FMat target = make_sinv(2);
  for (auto _ : state) benchmark::DoNotOptimize(word_search(target, gens, 5));
}
BENCHMARK(BM_WordSearch)->Unit(benchmark::kMillisecond);
