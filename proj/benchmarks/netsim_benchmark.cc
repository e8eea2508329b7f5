// Copyright 2026 The pcluster Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pcluster/allocation.h"
#include "pcluster/bench.h"
#include "pcluster/netsim.h"

namespace pcluster {
namespace {

void BM_MaxMinRates(benchmark::State& state) {
  const auto n_flows = static_cast<std::uint32_t>(state.range(0));
  const std::uint32_t n_links = n_flows / 2 + 2;
  std::mt19937_64 rng(1);
  LinkCapacities caps;
  for (std::uint32_t l = 0; l < n_links; ++l) {
    caps[{NodeId{l}, ChannelKind::kIo, LinkDirection::kTx}] = 1e8 + static_cast<double>(rng() % 900) * 1e6;
  }
  std::vector<RoutedFlow> flows;
  for (std::uint32_t f = 0; f < n_flows; ++f) {
    RoutedFlow rf{FlowId{f}, {}};
    for (std::uint32_t l = 0; l < n_links; ++l) {
      if (rng() % 3 == 0) rf.links.push_back({NodeId{l}, ChannelKind::kIo, LinkDirection::kTx});
    }
    if (rf.links.empty()) rf.links.push_back({NodeId{f % n_links}, ChannelKind::kIo, LinkDirection::kTx});
    flows.push_back(std::move(rf));
  }
  for (auto _ : state) benchmark::DoNotOptimize(MaxMinRates(flows, caps));
  state.SetComplexityN(n_flows);
}
BENCHMARK(BM_MaxMinRates)->RangeMultiplier(4)->Range(4, 256)->Complexity();

// Staggered flows through the shared master: many rate-change events.
void BM_SimulateConventional(benchmark::State& state) {
  ClusterConfig c;
  c.mode = ClusterMode::kConventional;
  c.worker_pool_size = 32;
  ClusterState s = BuildCluster(c);
  s = AllocateBlock(s, {"a", 32, WorkloadType::kIoIntensive}).state;
  const std::vector<NodeId> members = s.members(s.block(BlockId{1}));
  std::vector<Flow> flows;
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (std::uint32_t i = 0; i < n; ++i) {
    flows.push_back({FlowId{i}, members[i % 16], members[16 + i % 16], 1u << 20, ChannelKind::kIo, 37.0 * i});
  }
  for (auto _ : state) benchmark::DoNotOptimize(Simulate(s, flows));
}
BENCHMARK(BM_SimulateConventional)->RangeMultiplier(4)->Range(4, 256);

void BM_RunSweep(benchmark::State& state) {
  BenchSpec spec;
  spec.mode = state.range(0) ? ClusterMode::kConventional : ClusterMode::kIndependent;
  spec.n_blocks = 2;
  spec.sizes = DefaultSizeLadder();
  spec.reps = 3;
  const BenchCluster bc = PrepareBenchCluster(ClusterConfig{}, spec);
  for (auto _ : state) benchmark::DoNotOptimize(RunSweep(bc.state, spec));
}
BENCHMARK(BM_RunSweep)->Arg(0)->Arg(1);

}  // namespace
}  // namespace pcluster
BENCHMARK_MAIN();
