#include <random>

#include <benchmark/benchmark.h>

#include "liegeo/flows.hpp"
#include "liegeo/integrals.hpp"

using namespace liegeo;

namespace {

AlgebraElement random_element(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector c(SoBasis(n).dim());
  for (auto& v : c) v = normal(rng);
  return AlgebraElement::from_coeffs(n, c);
}

void BM_Expm(benchmark::State& state) {
  const auto x = random_element(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm(x));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(7)->Arg(12);

void BM_ChainField(benchmark::State& state) {
  const auto spec = VectorFieldSpec::sub_riemannian(catalog("su3-g2-so7").structure());
  const auto x = random_element(7, 2);
  for (auto _ : state) benchmark::DoNotOptimize(spec(x));
}
BENCHMARK(BM_ChainField);

void BM_IntegrateChain(benchmark::State& state) {
  const auto spec = VectorFieldSpec::sub_riemannian(catalog("u1-su2-u2-so4").structure());
  const auto x = random_element(4, 3);
  IntegrationOptions opts;
  opts.t_end = 1.0;
  opts.step = 1e-3;
  opts.record_every = 100;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(spec, GroupElement::identity(4), x, opts));
}
BENCHMARK(BM_IntegrateChain)->Unit(benchmark::kMillisecond);

void BM_IntegralSearch(benchmark::State& state) {
  const auto sys = extract_poly_system(VectorFieldSpec::rank2_so4(1.0, 0.5));
  const std::vector<Polynomial> known{rank2_hamiltonian_poly(1.0, 0.5), casimir_i1_poly(), casimir_i2_poly()};
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_integrals(sys, degree, known));
}
BENCHMARK(BM_IntegralSearch)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
