// Serial vs OpenMP timings for the parallel kernels. Arg 0 is serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "umb/verifier.hpp"

using namespace umb;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_tg_patch(benchmark::State& state) {
  const auto space = resolve_ambient("sphere:1,3");
  const Vec p = Vec::Zero(3);
  Mat basis = Mat::Zero(3, 2);
  basis(0, 0) = basis(1, 1) = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(tg_patch(space, p, basis, 1.0, 21, 256, exec_of(state)));
}

void BM_cartan_audit(benchmark::State& state) {
  const auto space = resolve_ambient("perturbed-minkowski:0.1");
  const auto pts = sample_points(space, 16, 42);
  CartanAuditOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(cartan_audit(space, pts, opt, 42));
}

void BM_trace_slice(benchmark::State& state) {
  const auto im = resolve_immersion("ellipsoid:1,2,3,4");
  const Vec u = Vec::Constant(3, 0.3);
  std::mt19937_64 rng(42);
  const Mat dirs = frames(im, u).tangent * random_orthonormal(3, 2, rng);
  const auto spec = make_slice_spec(im, u, dirs);
  TraceOptions opt;
  opt.samples_per_dim = 16;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(trace_slice(im, spec, opt));
}

void BM_verify_theorem8(benchmark::State& state) {
  const auto t = target_from_catalog(resolve("ellipsoid:1,2,3,4", EntryKind::Immersion));
  const auto pts = random_points(t.immersion, 8, 42);
  SuiteOptions opt;
  opt.exec = exec_of(state);
  opt.trace.exec = opt.exec;
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem8(t, pts, opt));
}

}  // namespace

BENCHMARK(BM_tg_patch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cartan_audit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_slice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_theorem8)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
