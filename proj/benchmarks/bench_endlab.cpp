#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "endlab/admissible.hpp"
#include "endlab/crossratio.hpp"
#include "endlab/decor.hpp"
#include "endlab/fixtures.hpp"
#include "endlab/rigidity.hpp"
#include "endlab/volume.hpp"

using namespace endlab;

namespace {

void BM_AssemblePhi(benchmark::State& st) {
  const PolySurface s = fixtures::random_compact(static_cast<std::uint64_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_Phi(s));
}
BENCHMARK(BM_AssemblePhi)->Arg(1)->Arg(2);

void BM_KernelDim(benchmark::State& st) {
  const OperatorBundle b = assemble_Phi(fixtures::random_compact(1));
  for (auto _ : st) benchmark::DoNotOptimize(kernel_dim(b));
}
BENCHMARK(BM_KernelDim);

void BM_RigidityVerdictIdeal(benchmark::State& st) {
  const PolySurface s = fixtures::ideal_octahedron();
  for (auto _ : st) benchmark::DoNotOptimize(projective_rigidity_verdict(s));
}
BENCHMARK(BM_RigidityVerdictIdeal);

void BM_AdmissibleCycles(benchmark::State& st) {
  const CellSurface g = fixtures::genus2_stellar();
  const CellSurface w = g.with_weights(std::vector<double>(g.num_edges(), 2 * std::numbers::pi / 3));
  AdmissibleOptions opt;
  opt.max_cycle = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(validate_admissible(w, opt));
}
BENCHMARK(BM_AdmissibleCycles)->Arg(4)->Arg(6)->Arg(8);

void BM_PakReport(benchmark::State& st) {
  const CellSurface g = fixtures::genus2();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(-1, 1);
  Decoration d = Decoration::trivial(g);
  for (auto& e : d.state) e = static_cast<EdgeState>(pick(rng));
  for (auto _ : st) benchmark::DoNotOptimize(pak_report(g, d));
}
BENCHMARK(BM_PakReport);

void BM_CrossRatioSolve(benchmark::State& st) {
  const CellSurface g = fixtures::genus2();
  SolveOptions opt;
  opt.seed = 7;
  for (auto _ : st) benchmark::DoNotOptimize(solve_vertex_conditions(g, opt));
}
BENCHMARK(BM_CrossRatioSolve);

void BM_Lobachevsky(benchmark::State& st) {
  double t = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(lobachevsky(t));
    t = std::fmod(t + 0.37, std::numbers::pi);
  }
}
BENCHMARK(BM_Lobachevsky);

}  // namespace
BENCHMARK_MAIN();
