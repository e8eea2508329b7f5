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

#pragma once

#include <cstdint>
#include <string>

#include "pcluster/topology.h"

namespace pcluster {

struct AllocationRequest {
  std::string owner;
  std::uint32_t n_workers = 1;
  WorkloadType workload_type = WorkloadType::kProcessorIntensive;
};

struct BlockResult {
  ClusterState state;
  Block block;
};

// Conventional mode takes n_workers nodes from the free pool and fronts them
// with the shared master. Independent mode takes n_workers + 1 and promotes
// the first (lowest id) to block master. Lowest free ids are used first.
//
// Errors: kInvalidRequest (n_workers == 0, empty owner),
//         kInsufficientNodes (pool too small).
BlockResult AllocateBlock(const ClusterState& state, const AllocationRequest& request);

// Returns every node of the block, dedicated master included, to the free
// pool. The block stays in the table with status released.
//
// Errors: kUnknownBlock, kAlreadyReleased.
ClusterState ReleaseBlock(const ClusterState& state, BlockId block_id);

// Grows from the lowest free ids; shrinks by returning the highest-numbered
// workers. The master is never touched.
//
// Errors: kInvalidRequest (new_n_workers == 0), kUnknownBlock,
//         kBlockNotRunning, kInsufficientNodes.
BlockResult ResizeBlock(const ClusterState& state, BlockId block_id, std::uint32_t new_n_workers);

// True iff the block exists, is running and belongs to `user`.
bool Authorize(const ClusterState& state, const std::string& user, BlockId block_id);

// Rebuilds the whole cluster in `mode`. A cluster runs one architecture at a
// time, so this refuses while any block is running (kBlocksActive), even when
// `mode` is the current one. Otherwise switching to the current mode returns
// the state unchanged.
ClusterState SetClusterMode(const ClusterState& state, ClusterMode mode);

// Logical per-block runtime daemon endpoint. There is one per block and it
// lives on the block master; no process is simulated.
struct DaemonEndpoint {
  BlockId block;
  NodeId host;

  bool operator==(const DaemonEndpoint&) const = default;
};

DaemonEndpoint DaemonEndpointFor(const Block& block);

}  // namespace pcluster
