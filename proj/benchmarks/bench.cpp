#include <benchmark/benchmark.h>

#include "eulerchar/closure.hpp"
#include "eulerchar/corpus.hpp"
#include "eulerchar/euler.hpp"
#include "eulerchar/gw.hpp"

using namespace eulerchar;

namespace {

GWElement sample_form(const Int& scale) {
  return form_from_diagonal(FieldDescriptor::Q(),
                            {scale, -3, 5, 7 * scale, -scale, 30});
}

void BM_GwMul(benchmark::State& state) {
  GWElement a = sample_form(2), b = sample_form(6);
  for (auto _ : state) benchmark::DoNotOptimize(gw_mul(a, b));
}
BENCHMARK(BM_GwMul);

// Hasse-Minkowski equality on rank-6 rational forms.
void BM_GwEquals(benchmark::State& state) {
  GWElement a = sample_form(2), b = sample_form(10);
  for (auto _ : state) benchmark::DoNotOptimize(gw_equals(a, b));
}
BENCHMARK(BM_GwEquals);

void BM_Resolve2d(benchmark::State& state) {
  Fan f = corpus::random_singular_complete_2d(101);
  for (auto _ : state) benchmark::DoNotOptimize(resolve_2d(f));
}
BENCHMARK(BM_Resolve2d);

// Strata degree of the torus closure of a larger smooth surface.
void BM_StrataClass(benchmark::State& state) {
  GoodClosure gc = toric_good_closure(corpus::random_smooth_complete_2d(22, 12));
  Measure m = Measure::quadratic(FieldDescriptor::Q());
  for (auto _ : state) benchmark::DoNotOptimize(strata_class(gc, m));
}
BENCHMARK(BM_StrataClass);

void BM_Factorization(benchmark::State& state) {
  Fan a = corpus::random_smooth_complete_2d(9000, 10);
  Fan b = corpus::random_smooth_complete_2d(9001, 10);
  for (auto _ : state) benchmark::DoNotOptimize(weak_factorization_path_2d(a, b));
}
BENCHMARK(BM_Factorization);

}  // namespace

BENCHMARK_MAIN();
