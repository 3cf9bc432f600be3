#include <benchmark/benchmark.h>

#include "cvtele/fock_oracle.hpp"
#include "cvtele/resource.hpp"
#include "cvtele/special_functions.hpp"
#include "cvtele/teleportation.hpp"

using namespace cvtele;

namespace {

ResourceSpec sym_ps(int n) { return ResourceSpec::symmetric(ResourceKind::ps, n, 0.9, 0.6, 0.5); }

void BM_Hermite2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite2({n, n}, Complex(0.3, 0.1), Complex(-0.2, 0.4)));
  }
}
BENCHMARK(BM_Hermite2)->Arg(1)->Arg(3)->Arg(8);

void BM_CharHermite(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(static_cast<int>(state.range(0)));
  const PhasePoint l{0.3, -0.2, 0.5, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_unnormalized_char(spec, l, EvalPath::hermite).value);
  }
}
BENCHMARK(BM_CharHermite)->Arg(1)->Arg(3);

void BM_CharJet(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(static_cast<int>(state.range(0)));
  const PhasePoint l{0.3, -0.2, 0.5, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_unnormalized_char(spec, l, EvalPath::jet).value);
  }
}
BENCHMARK(BM_CharJet)->Arg(1)->Arg(3);

void BM_SuccessProbability(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(success_probability(spec));
}
BENCHMARK(BM_SuccessProbability)->Arg(1)->Arg(3);

void BM_FidelityCoherent(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_coherent(spec).fidelity);
}
BENCHMARK(BM_FidelityCoherent)->Arg(1)->Arg(3);

void BM_FidelitySqv(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_sqv(spec, 0.3).fidelity);
}
BENCHMARK(BM_FidelitySqv)->Arg(1)->Arg(3);

void BM_FidelityQuadrature(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity_by_quadrature(spec, CoherentInput{}).fidelity);
  }
}
BENCHMARK(BM_FidelityQuadrature)->Unit(benchmark::kMillisecond);

void BM_OraclePrepare(benchmark::State& state) {
  const ResourceSpec spec = sym_ps(1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::prepare_resource(spec, N).probability);
}
BENCHMARK(BM_OraclePrepare)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_OracleChar(benchmark::State& state) {
  const auto prepared = oracle::prepare_resource(sym_ps(1), static_cast<int>(state.range(0)));
  const PhasePoint l{0.3, -0.2, 0.5, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_char(prepared.state, l));
}
BENCHMARK(BM_OracleChar)->Arg(24)->Arg(40);

}  // namespace
BENCHMARK_MAIN();
