#include <benchmark/benchmark.h>

#include <random>

#include "navfield/errors.hpp"
#include "navfield/path_search.hpp"

using namespace navfield;

namespace {

GridEnvironment random_grid(int n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution blocked(density);
  std::vector<std::uint8_t> pass(static_cast<std::size_t>(n) * n);
  for (auto& p : pass) p = blocked(rng) ? kObstacleCell : kFreeCell;
  pass.front() = kFreeCell;
  pass.back() = kFreeCell;
  return GridEnvironment(n, n, 0.4, {0.0, 0.0}, std::move(pass));
}

void BM_AStarCorner(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto env = random_grid(n, 0.2, 1);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(astar(env, {0, 0}, {n - 1, n - 1}));
    } catch (const NoPathError&) {
    }
  }
}
BENCHMARK(BM_AStarCorner)->Arg(20)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
