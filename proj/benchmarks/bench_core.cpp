#include "hatom/bounds/lemmas.hpp"
#include "hatom/bounds/monte_carlo.hpp"
#include "hatom/bounds/reduced_integrals.hpp"
#include "hatom/hole/exchange_hole.hpp"
#include "hatom/kernels/relativistic.hpp"
#include "hatom/lower/semiclassical.hpp"
#include "hatom/phase_space/occupation.hpp"
#include "hatom/tf/atom.hpp"
#include <benchmark/benchmark.h>
#include <cmath>
#include <memory>

using namespace hatom;

namespace {
std::shared_ptr<const tf::TFUniversalSolution> universal() {
  static const auto u =
      std::make_shared<const tf::TFUniversalSolution>(tf::solve_universal_tf());
  return u;
}
} // namespace

static void BM_UniversalSolve(benchmark::State &st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(tf::solve_universal_tf());
}
BENCHMARK(BM_UniversalSolve)->Unit(benchmark::kMillisecond);

static void BM_AtomBuild(benchmark::State &st) {
  const auto u = universal();
  for (auto _ : st)
    benchmark::DoNotOptimize(tf::TFAtom(static_cast<double>(st.range(0)), u));
}
BENCHMARK(BM_AtomBuild)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SmearDensity(benchmark::State &st) {
  const tf::TFAtom a(static_cast<double>(st.range(0)), universal());
  const phase_space::ShapeFunction g;
  for (auto _ : st)
    benchmark::DoNotOptimize(tf::smear_density(a, 5.0 / 9.0, g));
}
BENCHMARK(BM_SmearDensity)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_KernelWeights(benchmark::State &st) {
  const auto prm = kernels::DispersionParams::make(137.0);
  double x = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernels::kernel_weights(x, 2.0 * x, prm));
    x = x < 1e4 ? 1.1 * x : 0.1;
  }
}
BENCHMARK(BM_KernelWeights);

static void BM_ReducedIntegrals(benchmark::State &st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(
        bounds::reduced_integrals(static_cast<double>(st.range(0)), false));
}
BENCHMARK(BM_ReducedIntegrals)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_PhaseSpaceMoments(benchmark::State &st) {
  const phase_space::PhaseSpaceOccupation occ(
      std::make_shared<const tf::TFAtom>(1000.0, universal()));
  for (auto _ : st)
    for (int k = 0; k < 3; ++k)
      benchmark::DoNotOptimize(phase_space::phase_space_moment(occ, k));
}
BENCHMARK(BM_PhaseSpaceMoments)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloLemma(benchmark::State &st) {
  const double Z = 10.0;
  const phase_space::PhaseSpaceOccupation occ(
      std::make_shared<const tf::TFAtom>(Z, universal()));
  const phase_space::ShapeFunction g(std::pow(Z, -5.0 / 9.0));
  const auto prm = kernels::DispersionParams::for_atom(Z, 0.5);
  for (auto _ : st)
    benchmark::DoNotOptimize(bounds::mc_kernel_integral(
        occ, g, prm, bounds::Kernel::K, static_cast<std::uint64_t>(st.range(0)), 1));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_MonteCarloLemma)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

static void BM_HolePotential(benchmark::State &st) {
  const tf::TFAtom a(100.0, universal());
  double s = 1e-3 * a.b();
  for (auto _ : st) {
    benchmark::DoNotOptimize(hole::hole_potential(a.rho(), s));
    s = s < 10.0 * a.b() ? 1.3 * s : 1e-3 * a.b();
  }
}
BENCHMARK(BM_HolePotential)->Unit(benchmark::kMicrosecond);

static void BM_SmearedHoleSup(benchmark::State &st) {
  const tf::TFAtom a(static_cast<double>(st.range(0)), universal());
  for (auto _ : st)
    benchmark::DoNotOptimize(hole::smeared_hole_sup(a, 5.0 / 9.0));
}
BENCHMARK(BM_SmearedHoleSup)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_SemiclassicalEnergy(benchmark::State &st) {
  const auto u = universal();
  for (auto _ : st)
    benchmark::DoNotOptimize(lower::semiclassical_energy(
        u, static_cast<double>(st.range(0)), 0.5, 5.0 / 9.0));
}
BENCHMARK(BM_SemiclassicalEnergy)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
