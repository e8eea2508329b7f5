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

#include "invariants.h"

#include <map>
#include <set>

#include "pcluster/allocation.h"
#include "pcluster/gateway.h"

namespace pcluster::oracle {

std::vector<std::string> CheckAllocationInvariants(const ClusterState& state, std::size_t initial_node_count) {
  std::vector<std::string> out;
  const bool independent = state.mode() == ClusterMode::kIndependent;

  std::map<NodeId, int> seen;
  for (NodeId id : state.free_pool) ++seen[id];
  std::size_t in_blocks = 0;
  std::set<NodeId> masters;
  std::size_t running = 0;
  for (const auto& [bid, b] : state.blocks) {
    if (!b.running()) continue;
    ++running;
    if (b.workers.empty()) out.push_back(ToString(bid) + " has no workers");
    for (NodeId w : b.workers) {
      ++seen[w];
      ++in_blocks;
    }
    masters.insert(b.master);
    if (independent) {
      ++seen[b.master];
      ++in_blocks;
    }
  }
  for (const auto& [id, count] : seen) {
    if (count > 1) out.push_back("partition: " + ToString(id) + " appears " + std::to_string(count) + " times");
  }

  const std::size_t dedicated = independent ? 3 : 1;
  if (state.free_pool.size() + in_blocks + dedicated != initial_node_count) {
    out.push_back("conservation: free " + std::to_string(state.free_pool.size()) + " + blocks " +
                  std::to_string(in_blocks) + " + servers " + std::to_string(dedicated) +
                  " != " + std::to_string(initial_node_count));
  }
  if (running > 0) {
    if (!independent && masters.size() != 1) out.push_back("conventional blocks do not share one master");
    if (independent && masters.size() != running) out.push_back("independent blocks share a master");
  }
  return out;
}

RandomOpsReport RunRandomOps(const ClusterConfig& config, std::size_t ops, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::string> users = {"alice", "bob", "carol"};
  ClusterState state = BuildCluster(config);
  const std::size_t total = state.nodes.size();
  RandomOpsReport report;

  auto running_blocks = [&] {
    std::vector<BlockId> ids;
    for (const auto& [id, b] : state.blocks) {
      if (b.running()) ids.push_back(id);
    }
    return ids;
  };
  auto any_block = [&]() -> BlockId {
    // Mostly running blocks, sometimes released or never-allocated ids.
    const auto live = running_blocks();
    if (!live.empty() && rng() % 4 != 0) return live[rng() % live.size()];
    return BlockId{static_cast<std::uint32_t>(rng() % (state.next_block_id + 2))};
  };
  auto fail = [&](const std::string& what) { report.violations.push_back("op " + std::to_string(report.ops) + ": " + what); };
  auto expect_code = [&](const Error& e, std::initializer_list<ErrorCode> allowed) {
    for (ErrorCode c : allowed) {
      if (e.code() == c) {
        ++report.rejected;
        return;
      }
    }
    fail(std::string("unexpected error ") + e.what());
  };

  for (report.ops = 0; report.ops < ops; ++report.ops) {
    const int kind = static_cast<int>(rng() % 10);
    try {
      if (kind < 3) {
        ++report.allocations;
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 4);
        state = AllocateBlock(state, {users[rng() % users.size()], n, WorkloadType::kIoIntensive}).state;
      } else if (kind < 5) {
        ++report.resizes;
        state = ResizeBlock(state, any_block(), static_cast<std::uint32_t>(rng() % 6)).state;
      } else if (kind < 7) {
        ++report.releases;
        state = ReleaseBlock(state, any_block());
      } else {
        ++report.routes;
        Command cmd;
        cmd.user = users[rng() % users.size()];
        cmd.block_id = any_block();
        cmd.request_bytes = rng() % 4096;
        cmd.response_bytes = rng() % 4096;
        const bool allowed = Authorize(state, cmd.user, cmd.block_id);
        try {
          const RoutedResult r = RouteCommand(state, cmd);
          if (!allowed) fail("route succeeded for an unauthorized user");
          if (r.delivered_to != state.block(cmd.block_id).master) fail("route delivered outside the target block");
        } catch (const Error& e) {
          if (allowed) fail(std::string("authorized route failed: ") + e.what());
          const auto it = state.blocks.find(cmd.block_id);
          const bool running_foreign = it != state.blocks.end() && it->second.running();
          if ((e.code() == ErrorCode::kUnauthorized) != running_foreign) fail("Unauthorized raised for the wrong reason");
          ++report.rejected;
        }
      }
    } catch (const Error& e) {
      expect_code(e, {ErrorCode::kInsufficientNodes, ErrorCode::kInvalidRequest, ErrorCode::kUnknownBlock,
                      ErrorCode::kAlreadyReleased, ErrorCode::kBlockNotRunning});
    }

    if (rng() % 20 == 0) {
      const ClusterMode other =
          state.mode() == ClusterMode::kIndependent ? ClusterMode::kConventional : ClusterMode::kIndependent;
      if (state.running_block_count() > 0) {
        try {
          (void)SetClusterMode(state, other);
          fail("mode switch accepted with running blocks");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kBlocksActive) fail(std::string("mode switch raised ") + e.what());
        }
      }
    }

    for (const std::string& v : CheckAllocationInvariants(state, total)) fail(v);
    for (const Violation& v : ValidateTopology(state)) fail(v.ToString());
  }
  return report;
}

}  // namespace pcluster::oracle
