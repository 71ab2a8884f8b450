#include <benchmark/benchmark.h>

#include "logdamp/analysis.hpp"
#include "logdamp/model.hpp"
#include "logdamp/quadrature.hpp"
#include "logdamp/spectral.hpp"

namespace {

using namespace logdamp;

SpectralState make_state(int n, double theta) {
  return SpectralState(ModelParams(n, theta), InitialDatum::gaussian(n, 1.0));
}

// One mode per zone: low (r = 1e-3), near the double root, high (r = 10).
void BM_UHat(benchmark::State& st) {
  const SpectralState s = make_state(1, 0.3);
  const double r = st.range(0) == 0 ? 1e-3 : st.range(0) == 1 ? s.thresholds().delta * (1 + 1e-8) : 10.0;
  for (auto _ : st) benchmark::DoNotOptimize(s.u_hat(100.0, r));
}
BENCHMARK(BM_UHat)->Arg(0)->Arg(1)->Arg(2);

void BM_ProfileError(benchmark::State& st) {
  const SpectralState s = make_state(2, 0.4);
  const double r = 0.5 * s.thresholds().eta_cubed;
  for (auto _ : st) benchmark::DoNotOptimize(s.profile_error(1e4, r));
}
BENCHMARK(BM_ProfileError);

void BM_Thresholds(benchmark::State& st) {
  const ModelParams p(1, 0.01 * st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(compute_thresholds(p));
}
BENCHMARK(BM_Thresholds)->Arg(5)->Arg(25)->Arg(45);

void BM_SolutionNorm(benchmark::State& st) {
  const SpectralState s = make_state(2, 0.2);
  const double t = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(l2_norm_sq(s, NormKind::Solution, t));
}
BENCHMARK(BM_SolutionNorm)->Arg(100)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_ProfileErrorNorm(benchmark::State& st) {
  const SpectralState s = make_state(1, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(l2_norm_sq(s, NormKind::ProfileError, 1e4));
}
BENCHMARK(BM_ProfileErrorNorm)->Unit(benchmark::kMillisecond);

void BM_IP(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(i_p(1e5, 1.0));
}
BENCHMARK(BM_IP)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
