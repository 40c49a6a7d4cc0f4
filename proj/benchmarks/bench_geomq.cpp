#include <benchmark/benchmark.h>

#include "geomq/classify.hpp"
#include "geomq/curvature.hpp"
#include "geomq/manifold_spec.hpp"
#include "geomq/sectional.hpp"

namespace {

geomq::CirculantMetric example_metric() {
  return geomq::paper_example_spec().build();
}

const geomq::Point kPoint{1.0, -1.0, -0.5};

void BM_ParseDiff(benchmark::State& state) {
  for (auto _ : state) {
    geomq::Expr e = geomq::Expr::parse("2*X1 + sin(X2*X3) + X1^3/(1 + X2^2)");
    geomq::Expr d = e.diff(1).diff(2);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_ParseDiff);

void BM_Christoffel(benchmark::State& state) {
  auto m = example_metric();
  for (auto _ : state) {
    auto gam = geomq::christoffel_at(m, kPoint);
    benchmark::DoNotOptimize(gam);
  }
}
BENCHMARK(BM_Christoffel);

void BM_Curvature(benchmark::State& state) {
  auto m = example_metric();
  for (auto _ : state) {
    auto r = geomq::curvature_at(m, kPoint);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Curvature);

void BM_FdCurvatureOracle(benchmark::State& state) {
  auto m = example_metric();
  for (auto _ : state) {
    auto r = geomq::fd_curvature_oracle(m, kPoint);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_FdCurvatureOracle);

void BM_ClassCheck(benchmark::State& state) {
  auto m = example_metric();
  for (auto _ : state) {
    auto rep = geomq::class_check(m, kPoint);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_ClassCheck);

void BM_OrthonormalQBase(benchmark::State& state) {
  auto m = example_metric();
  auto g = m.at(kPoint);
  for (auto _ : state) {
    auto x = geomq::orthonormal_q_base(g);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_OrthonormalQBase);

}  // namespace

BENCHMARK_MAIN();
