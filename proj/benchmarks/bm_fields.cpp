#include <benchmark/benchmark.h>

#include "navfield/direction_field.hpp"
#include "navfield/field_matrix.hpp"
#include "navfield/repulsion.hpp"
#include "navfield/trend.hpp"

using namespace navfield;

namespace {

GridEnvironment open_grid(int n) {
  const auto w = static_cast<std::size_t>(n);
  std::vector<std::uint8_t> pass(w * w, kFreeCell);
  for (std::size_t j = 0; j < w / 4; ++j) pass[j * w + w / 2] = kObstacleCell;
  return GridEnvironment(n, n, 0.4, {0.0, 0.0}, std::move(pass));
}

TrendLine diagonal_line(int n) {
  TrendLine line;
  for (int k = 0; k < n; ++k) line.cells.push_back({k, n - 1 - k});
  return line;
}

void BM_NavigationMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto env = open_grid(n);
  const auto line = diagonal_line(n);
  const FieldParams params;
  for (auto _ : state) {
    const auto field = expand_field(raw_direction_vectors(line), line, params.r, env, 3);
    benchmark::DoNotOptimize(field_to_matrix(field, line.destination(), params, env));
  }
}
BENCHMARK(BM_NavigationMatrix)->Arg(30)->Arg(64)->Arg(128);

void BM_ObstacleField(benchmark::State& state) {
  const auto env = open_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(obstacle_field(env, 2.0, 1.0));
}
BENCHMARK(BM_ObstacleField)->Arg(30)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
