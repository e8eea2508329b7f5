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

#include "pcluster/allocation.h"

#include <algorithm>

namespace pcluster {
namespace {

Block& FindBlock(ClusterState& state, BlockId id) {
  auto it = state.blocks.find(id);
  if (it == state.blocks.end()) throw Error(ErrorCode::kUnknownBlock, ToString(id));
  return it->second;
}

void RequireFree(const ClusterState& state, std::size_t needed) {
  if (state.free_pool.size() < needed) {
    throw Error(ErrorCode::kInsufficientNodes, "need " + std::to_string(needed) + " free nodes, have " +
                                                   std::to_string(state.free_pool.size()));
  }
}

NodeId TakeLowestFree(ClusterState& state, NodeRole role) {
  const NodeId id = *state.free_pool.begin();
  state.free_pool.erase(state.free_pool.begin());
  state.nodes[id.value].role = role;
  return id;
}

void ReturnToPool(ClusterState& state, NodeId id) {
  state.nodes[id.value].role = NodeRole::kFree;
  state.free_pool.insert(id);
}

}  // namespace

BlockResult AllocateBlock(const ClusterState& state, const AllocationRequest& request) {
  if (request.n_workers == 0) throw Error(ErrorCode::kInvalidRequest, "a block needs at least one worker");
  if (request.owner.empty()) throw Error(ErrorCode::kInvalidRequest, "a block needs an owner");

  const bool independent = state.mode() == ClusterMode::kIndependent;
  RequireFree(state, std::size_t{request.n_workers} + (independent ? 1 : 0));

  BlockResult result{state, {}};
  ClusterState& next = result.state;
  Block block;
  block.id = BlockId{next.next_block_id++};
  block.owner = request.owner;
  block.workload_type = request.workload_type;
  block.status = BlockStatus::kRunning;
  if (independent) {
    block.master = TakeLowestFree(next, NodeRole::kBlockMaster);
  } else {
    block.master = *next.find_role(NodeRole::kSharedMaster);
  }
  block.workers.reserve(request.n_workers);
  for (std::uint32_t i = 0; i < request.n_workers; ++i) block.workers.push_back(TakeLowestFree(next, NodeRole::kWorker));

  next.blocks.emplace(block.id, block);
  result.block = std::move(block);
  return result;
}

ClusterState ReleaseBlock(const ClusterState& state, BlockId block_id) {
  ClusterState next = state;
  Block& block = FindBlock(next, block_id);
  if (!block.running()) throw Error(ErrorCode::kAlreadyReleased, ToString(block_id));

  for (NodeId w : block.workers) ReturnToPool(next, w);
  if (next.mode() == ClusterMode::kIndependent) ReturnToPool(next, block.master);
  block.status = BlockStatus::kReleased;
  return next;
}

BlockResult ResizeBlock(const ClusterState& state, BlockId block_id, std::uint32_t new_n_workers) {
  if (new_n_workers == 0) throw Error(ErrorCode::kInvalidRequest, "a block needs at least one worker");

  BlockResult result{state, {}};
  ClusterState& next = result.state;
  Block& block = FindBlock(next, block_id);
  if (!block.running()) throw Error(ErrorCode::kBlockNotRunning, ToString(block_id));

  const std::size_t current = block.workers.size();
  if (new_n_workers > current) {
    RequireFree(next, new_n_workers - current);
    while (block.workers.size() < new_n_workers) block.workers.push_back(TakeLowestFree(next, NodeRole::kWorker));
  } else if (new_n_workers < current) {
    // Workers are kept sorted by id, so the highest-numbered ones sit at the back.
    std::sort(block.workers.begin(), block.workers.end());
    while (block.workers.size() > new_n_workers) {
      ReturnToPool(next, block.workers.back());
      block.workers.pop_back();
    }
  }
  std::sort(block.workers.begin(), block.workers.end());
  result.block = block;
  return result;
}

bool Authorize(const ClusterState& state, const std::string& user, BlockId block_id) {
  auto it = state.blocks.find(block_id);
  return it != state.blocks.end() && it->second.running() && it->second.owner == user;
}

ClusterState SetClusterMode(const ClusterState& state, ClusterMode mode) {
  if (const std::size_t running = state.running_block_count(); running > 0) {
    throw Error(ErrorCode::kBlocksActive, std::to_string(running) + " block(s) still running");
  }
  if (state.mode() == mode) return state;
  ClusterConfig config = state.config;
  config.mode = mode;
  return BuildCluster(config);
}

DaemonEndpoint DaemonEndpointFor(const Block& block) { return {block.id, block.master}; }

}  // namespace pcluster
