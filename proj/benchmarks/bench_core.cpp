#include <benchmark/benchmark.h>

#include "idemgeo/bundle.hpp"
#include "idemgeo/geometry.hpp"
#include "idemgeo/poisson.hpp"
#include "idemgeo/rng.hpp"
#include "idemgeo/variety.hpp"

using namespace idemgeo;

static void BM_Pushforward(benchmark::State& state) {
  Rng rng(1001);
  const ProjectionPoint q = random_point(4, 2, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pushforward(q, a));
  }
}
BENCHMARK(BM_Pushforward);

static void BM_HorizontalLift(benchmark::State& state) {
  Rng rng(1002);
  const ProjectionPoint q = random_point(4, 2, 1.0, rng);
  const HermitianPoint p = base_projection(q);
  const Matrix ah = random_hermitian_tangent(p, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(horizontal_lift(q, p, ah));
  }
}
BENCHMARK(BM_HorizontalLift);

static void BM_JhatChartSolve(benchmark::State& state) {
  Rng rng(1003);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jhat(q, a));
  }
}
BENCHMARK(BM_JhatChartSolve);

static void BM_ExteriorDerivative(benchmark::State& state) {
  Rng rng(1004);
  const ProjectionPoint q = random_point(3, 1, 1.0, rng);
  const Matrix a = random_tangent(q, rng).a;
  const Matrix b = random_tangent(q, rng).a;
  const Matrix c = random_tangent(q, rng).a;
  const DifferentialForm form{
      2, [](const ProjectionPoint& pt, const std::vector<Matrix>& args) {
        return omega(pt, args[0], args[1]);
      }};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exterior_derivative(form, q, {a, b, c}));
  }
}
BENCHMARK(BM_ExteriorDerivative);

static void BM_PoissonBracket(benchmark::State& state) {
  Rng rng(1005);
  const ProjectionPoint q = random_point(2, 1, 1.0, rng);
  const Matrix m = ginibre(2, rng);
  const Matrix n = ginibre(2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_bracket(m, n, q));
  }
}
BENCHMARK(BM_PoissonBracket);

static void BM_HaarPoint(benchmark::State& state) {
  Rng rng(1006);
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_hermitian_point(4, 2, rng));
  }
}
BENCHMARK(BM_HaarPoint);

static void BM_Decompactify(benchmark::State& state) {
  Rng rng(1007);
  const ProjectionPoint q = random_point(4, 2, 1.0, rng);
  const PairPoint pair = compactify(q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(try_decompactify(pair));
  }
}
BENCHMARK(BM_Decompactify);

BENCHMARK_MAIN();
