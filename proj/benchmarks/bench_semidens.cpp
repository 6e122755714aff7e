#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "semidens/bias_bench.hpp"
#include "semidens/expfam.hpp"
#include "semidens/kde.hpp"
#include "semidens/kernels.hpp"
#include "semidens/mixtures.hpp"
#include "semidens/quadrature.hpp"

namespace {

using namespace semidens;

const std::vector<NormalMixture>& catalog() {
  static const std::vector<NormalMixture> c =
      load_catalog(SEMIDENS_BENCH_CATALOG);
  return c;
}

void BM_KdeEvaluate(benchmark::State& state) {
  const Sample data = sample(catalog()[0], state.range(0), 42);
  const DensityEstimate est = kde_fit(data, 0.3, KernelSpec::gaussian());
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(est.value(x));
    x = x < 3.0 ? x + 1e-4 : -3.0;
  }
}
BENCHMARK(BM_KdeEvaluate)->Arg(100)->Arg(1000);

void BM_EtFit(benchmark::State& state) {
  const Sample data = sample(catalog()[1], 200, 42);
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(et_fit(data, p, 0.3, KernelSpec::gaussian()));
  }
}
BENCHMARK(BM_EtFit)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BiasFactorSweep(benchmark::State& state) {
  const NormalMixture& m = catalog()[9];
  const BiasProfile profile = make_bias_profile(Method::et3, m);
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i <= 200; ++i) {
      acc += profile.b(-3.0 + 0.03 * i);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_BiasFactorSweep);

void BM_IntegratedSquaredBias(benchmark::State& state) {
  const NormalMixture& m = catalog()[5];
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrated_squared_bias(Method::jones, m));
  }
}
BENCHMARK(BM_IntegratedSquaredBias)->Unit(benchmark::kMillisecond);

void BM_WholeLineQuadrature(benchmark::State& state) {
  const NormalMixture& m = catalog()[2];
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate_whole_line([&](double x) { return mixture_pdf(m, x, 0); },
                             m.mean(), m.sd(), 1e-10));
  }
}
BENCHMARK(BM_WholeLineQuadrature);

}  // namespace

BENCHMARK_MAIN();
