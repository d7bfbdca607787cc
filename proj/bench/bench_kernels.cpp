// Serial reference vs OpenMP kernels. GEODUBINS_THREADS caps the thread
// count of the parallel variants.

#include <benchmark/benchmark.h>

#include <random>

#include "geodubins/classifier.hpp"
#include "geodubins/dubins.hpp"
#include "geodubins/family.hpp"
#include "geodubins/index.hpp"
#include "geodubins/parallel.hpp"

using namespace geodubins;

namespace {

const Mat3 kQ = rotation_about_axis(e3(), 2.0);
constexpr double kRho0 = 0.2;

Mat3 random_target() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized().toRotationMatrix();
}

void BM_Oracle(benchmark::State& state) {
  const Mat3 Q = random_target();
  const bool par = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(par ? sweep_oracle(Frame::Identity(), Q, 0.3) : sweep_oracle_serial(Frame::Identity(), Q, 0.3));
  state.counters["threads"] = par ? thread_count() : 1;
}

// Half great circle: degenerate maximin, so the direction grid is evaluated.
void BM_AxisGrid(benchmark::State& state) {
  Curve c;
  c.arcs.push_back(geodesic_from_frame(Frame::Identity(), kPi));
  const SampledCurve s = sample_uniform(c, 4001);
  const EndpointCenters ctr = endpoint_centers(rotation_about_axis(e3(), kPi), kRho0);
  const bool par = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(par ? hemispheric_axis(s, ctr) : hemispheric_axis_serial(s, ctr));
  state.counters["threads"] = par ? thread_count() : 1;
}

std::vector<std::vector<double>> parameter_grid(int n, int count) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> xs(count, std::vector<double>(n));
  for (auto& x : xs)
    for (double& v : x) v = u(rng);
  return xs;
}

void BM_FamilyGrid(benchmark::State& state) {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  const auto xs = parameter_grid(tr.pairs(), 64);
  const bool par = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(f_bar_grid(tr, xs, par));
  state.counters["threads"] = par ? thread_count() : 1;
}

void BM_ClassifyCorpus(benchmark::State& state) {
  const ControlTrajectories tr(make_family_params(kQ, kRho0));
  const auto curves = f_bar_grid(tr, parameter_grid(tr.pairs(), 32), false);
  const bool par = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(classify_corpus(curves, kQ, kRho0, kRho0 / 16, par));
  state.counters["threads"] = par ? thread_count() : 1;
}

}  // namespace

BENCHMARK(BM_Oracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AxisGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FamilyGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyCorpus)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
