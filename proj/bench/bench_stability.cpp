#include <benchmark/benchmark.h>

#include <random>

#include "wildhodge/betti.hpp"

using namespace wildhodge;

namespace {

// tame punctures with upper triangular C and unipotent h, so every
// standard parabolic is compatible and nothing is skipped early
FilteredStokesRep triangular_rep(std::size_t n, std::size_t punctures, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  FilteredStokesRep f;
  f.rep.n = n;
  for (std::size_t x = 0; x < punctures; ++x) {
    PunctureData p;
    p.C = Matrix(n);
    p.h = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.C(i, i) = d(gen) == 0 ? 1 : d(gen) + 4;
      for (std::size_t j = i + 1; j < n; ++j) {
        p.C(i, j) = GaussRat(d(gen), d(gen));
        p.h(i, j) = d(gen);
      }
    }
    f.rep.punctures.push_back(p);
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = Rational(d(gen), 7);
    f.weights.emplace_back(w);
  }
  return f;
}

void BM_stability_parallel(benchmark::State& state) {
  auto f = triangular_rep(static_cast<std::size_t>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(check_stability(f));
}

void BM_stability_serial(benchmark::State& state) {
  auto f = triangular_rep(static_cast<std::size_t>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(check_stability_serial(f));
}

}  // namespace

BENCHMARK(BM_stability_serial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stability_parallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
