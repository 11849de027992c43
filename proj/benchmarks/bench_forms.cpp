#include <benchmark/benchmark.h>

#include "hermikit/jacobi.hpp"
#include "hermikit/sfjs.hpp"
#include "hermikit/weil.hpp"

using namespace hermikit;

namespace {

QMat e8_gram() {
  QMat g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  for (std::size_t i = 0; i + 2 < 8; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  g(2, 7) = g(7, 2) = -1;
  return g;
}

}  // namespace

static void BM_E8ThetaJacobi(benchmark::State& state) {
  QMat g = e8_gram(), v(8, 1);
  v(0, 0) = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lattice_theta_jacobi(g, v, state.range(0)));
}
BENCHMARK(BM_E8ThetaJacobi)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_HermLatticeTheta(benchmark::State& state) {
  FMat G = FMat::identity(2);
  for (auto _ : state) benchmark::DoNotOptimize(herm_lattice_theta(G, -4, 2, state.range(0)));
}
BENCHMARK(BM_HermLatticeTheta)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SymmetryCheck(benchmark::State& state) {
  SFJSeries f = herm_lattice_theta(FMat::identity(2), -3, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(symmetry_check(f));
}
BENCHMARK(BM_SymmetryCheck)->Unit(benchmark::kMillisecond);

static void BM_ThetaDecompose(benchmark::State& state) {
  SFJSeries f = herm_lattice_theta_scalar(FMat{{FieldElem(1)}}, -4, 3, 3);
  FMat mp{{FieldElem(1)}};
  for (auto _ : state) benchmark::DoNotOptimize(theta_decompose(f, mp));
}
BENCHMARK(BM_ThetaDecompose)->Unit(benchmark::kMillisecond);

static void BM_WeilSinv1(benchmark::State& state) {
  QMat g = QMat::diagonal({2, 2, 2, 2});
  DiscForm df(g, 4);
  for (auto _ : state) benchmark::DoNotOptimize(rho_sinv1(df, std::size_t(state.range(0))));
}
BENCHMARK(BM_WeilSinv1)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
