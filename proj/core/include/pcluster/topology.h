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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcluster/error.h"

namespace pcluster {

enum class TierName { kFE, kGE };
enum class ChannelKind { kService, kIo };
enum class ClusterMode { kConventional, kIndependent };

enum class NodeRole {
  kFree,
  kWorker,
  kBlockMaster,
  kSharedMaster,
  kGateway,
  kServiceServer,
  kIoServer,
};

enum class WorkloadType { kProcessorIntensive, kIoIntensive };
enum class BlockStatus { kRunning, kReleased };

std::string_view ToString(TierName tier);       // "FE" / "GE"
std::string_view ToString(ChannelKind kind);    // "service" / "io"
std::string_view ToString(ClusterMode mode);    // "conventional" / "independent"
std::string_view ToString(NodeRole role);
std::string_view ToString(WorkloadType type);   // "processor" / "io"
std::string_view ToString(BlockStatus status);

// Case-insensitive; throws Error(kParseError) on anything unrecognised.
TierName ParseTierName(std::string_view text);
ChannelKind ParseChannelKind(std::string_view text);
ClusterMode ParseClusterMode(std::string_view text);
WorkloadType ParseWorkloadType(std::string_view text);

// Bandwidth/latency/reliability envelope of one physical network class.
struct NetworkTier {
  TierName name = TierName::kFE;
  double bandwidth_bps = 0.0;
  // One-way, per hop.
  double latency_us = 0.0;
  // Largest message that still completes; anything bigger fails outright.
  std::uint64_t max_reliable_bytes = 0;

  bool operator==(const NetworkTier&) const = default;
};

// 100 Mb/s, 100 us, 2^25 B for FE; 1 Gb/s, 50 us, 2^30 B for GE.
NetworkTier DefaultTier(TierName name);

struct Channel {
  ChannelKind kind = ChannelKind::kIo;
  NetworkTier tier;

  bool operator==(const Channel&) const = default;
};

struct ClusterConfig {
  ClusterMode mode = ClusterMode::kIndependent;
  std::uint32_t worker_pool_size = 8;
  NetworkTier fe = DefaultTier(TierName::kFE);
  NetworkTier ge = DefaultTier(TierName::kGE);
  // Independent mode needs both entries. Conventional mode runs a single
  // shared network, which takes the io assignment.
  std::map<ChannelKind, TierName> channel_tiers = {
      {ChannelKind::kService, TierName::kFE},
      {ChannelKind::kIo, TierName::kGE},
  };

  const NetworkTier& tier(TierName name) const { return name == TierName::kFE ? fe : ge; }

  bool operator==(const ClusterConfig&) const = default;
};

// Throws Error(kInvalidConfig) naming the first broken rule.
void ValidateConfig(const ClusterConfig& config);

struct Node {
  NodeId id;
  bool has_storage = true;
  NodeRole role = NodeRole::kFree;
  // Indexed by ChannelKind.
  std::array<bool, 2> nics = {false, false};

  bool has_nic(ChannelKind kind) const { return nics[static_cast<std::size_t>(kind)]; }

  bool operator==(const Node&) const = default;
};

struct Block {
  BlockId id;
  std::string owner;
  // The shared master in conventional mode, a dedicated node otherwise.
  NodeId master;
  std::vector<NodeId> workers;
  WorkloadType workload_type = WorkloadType::kProcessorIntensive;
  BlockStatus status = BlockStatus::kRunning;

  bool running() const { return status == BlockStatus::kRunning; }

  bool operator==(const Block&) const = default;
};

// Value type. Node ids are dense: nodes[i].id.value == i.
//
// Layout produced by BuildCluster:
//   n0                 shared master (conventional) or gateway (independent)
//   n1 .. nP           worker pool
//   nP+1, nP+2         service server, io server (independent only)
struct ClusterState {
  ClusterConfig config;
  std::vector<Channel> channels;
  std::vector<Node> nodes;
  std::set<NodeId> free_pool;
  std::map<BlockId, Block> blocks;
  std::uint32_t next_block_id = 1;

  ClusterMode mode() const { return config.mode; }

  // Throw Error(kUnknownNode) / Error(kUnknownBlock).
  const Node& node(NodeId id) const;
  Node& node(NodeId id);
  const Block& block(BlockId id) const;

  bool has_node(NodeId id) const { return id.value < nodes.size(); }

  // First node holding `role`, if any.
  std::optional<NodeId> find_role(NodeRole role) const;

  // In conventional mode every kind resolves to the one shared network.
  const Channel& channel(ChannelKind kind) const;

  // Nodes a running block occupies: its dedicated master (independent mode)
  // followed by the workers.
  std::vector<NodeId> members(const Block& block) const;

  // Block whose running membership contains `id`.
  std::optional<BlockId> owning_block(NodeId id) const;

  std::size_t running_block_count() const;

  bool operator==(const ClusterState&) const = default;
};

ClusterState BuildCluster(const ClusterConfig& config);

enum class ViolationKind {
  kPartition,
  kOrphanNode,
  kFreePoolRole,
  kMasterCardinality,
  kDedicatedServerCardinality,
  kRoleNotAllowedInMode,
  kMissingNic,
  kChannelLayout,
  kBlockShape,
  kBlockRole,
  kMasterSharing,
  kMasterDistinctness,
};

std::string_view ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
  std::vector<NodeId> nodes;
  std::vector<BlockId> blocks;

  std::string ToString() const;
};

// Empty iff every node, channel and running block is consistent with the
// cluster mode.
std::vector<Violation> ValidateTopology(const ClusterState& state);

}  // namespace pcluster
