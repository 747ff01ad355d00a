#include <benchmark/benchmark.h>

#include "navfield/sim.hpp"

using namespace navfield;

namespace {

void BM_CrowdRun(benchmark::State& state) {
  const int agents = static_cast<int>(state.range(0));
  const int n = 40;
  const GridEnvironment env(n, n, 0.4, {0.0, 0.0},
                            std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, kFreeCell));
  std::vector<AgentSpec> specs;
  for (int k = 0; k < agents; ++k) {
    AgentSpec s;
    s.id = k + 1;
    const bool left = k % 2 == 0;
    s.start = {left ? 0 : n - 1, k};
    s.destination = {left ? n - 1 : 0, n - 1 - k};
    s.preferred_speed = 1.0 + 0.01 * k;
    specs.push_back(s);
  }
  SimConfig config;
  config.max_steps = 150;
  config.seed = 5;
  for (auto _ : state) {
    World world(env, specs, config);
    benchmark::DoNotOptimize(world.run());
  }
}
BENCHMARK(BM_CrowdRun)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
