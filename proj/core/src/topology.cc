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

#include "pcluster/topology.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace pcluster {
namespace {

std::string Lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void Invalid(const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); }

void ValidateTier(const NetworkTier& tier) {
  const std::string name(ToString(tier.name));
  if (!(tier.bandwidth_bps > 0.0)) Invalid("tier " + name + ": bandwidth must be positive");
  if (!(tier.latency_us >= 0.0)) Invalid("tier " + name + ": latency must be non-negative");
  if (tier.max_reliable_bytes == 0) Invalid("tier " + name + ": max_reliable_bytes must be positive");
}

Node MakeNode(std::uint32_t index, NodeRole role, const std::vector<Channel>& channels) {
  Node node;
  node.id = NodeId{index};
  node.role = role;
  for (const Channel& channel : channels) node.nics[static_cast<std::size_t>(channel.kind)] = true;
  return node;
}

bool IsDedicatedRole(NodeRole role) {
  return role == NodeRole::kSharedMaster || role == NodeRole::kGateway ||
         role == NodeRole::kServiceServer || role == NodeRole::kIoServer;
}

}  // namespace

std::string_view ToString(TierName tier) { return tier == TierName::kFE ? "FE" : "GE"; }

std::string_view ToString(ChannelKind kind) { return kind == ChannelKind::kService ? "service" : "io"; }

std::string_view ToString(ClusterMode mode) {
  return mode == ClusterMode::kConventional ? "conventional" : "independent";
}

std::string_view ToString(NodeRole role) {
  switch (role) {
    case NodeRole::kFree:
      return "free";
    case NodeRole::kWorker:
      return "worker";
    case NodeRole::kBlockMaster:
      return "block_master";
    case NodeRole::kSharedMaster:
      return "shared_master";
    case NodeRole::kGateway:
      return "gateway";
    case NodeRole::kServiceServer:
      return "service_server";
    case NodeRole::kIoServer:
      return "io_server";
  }
  return "unknown";
}

std::string_view ToString(WorkloadType type) {
  return type == WorkloadType::kProcessorIntensive ? "processor" : "io";
}

std::string_view ToString(BlockStatus status) {
  return status == BlockStatus::kRunning ? "running" : "released";
}

TierName ParseTierName(std::string_view text) {
  const std::string s = Lower(text);
  if (s == "fe") return TierName::kFE;
  if (s == "ge") return TierName::kGE;
  throw Error(ErrorCode::kParseError, "unknown tier '" + std::string(text) + "' (expected fe or ge)");
}

ChannelKind ParseChannelKind(std::string_view text) {
  const std::string s = Lower(text);
  if (s == "service") return ChannelKind::kService;
  if (s == "io") return ChannelKind::kIo;
  throw Error(ErrorCode::kParseError, "unknown channel '" + std::string(text) + "'");
}

ClusterMode ParseClusterMode(std::string_view text) {
  const std::string s = Lower(text);
  if (s == "conventional") return ClusterMode::kConventional;
  if (s == "independent") return ClusterMode::kIndependent;
  throw Error(ErrorCode::kParseError,
              "unknown mode '" + std::string(text) + "' (expected conventional or independent)");
}

WorkloadType ParseWorkloadType(std::string_view text) {
  const std::string s = Lower(text);
  if (s == "processor" || s == "processor_intensive") return WorkloadType::kProcessorIntensive;
  if (s == "io" || s == "io_intensive") return WorkloadType::kIoIntensive;
  throw Error(ErrorCode::kParseError, "unknown workload '" + std::string(text) + "'");
}

NetworkTier DefaultTier(TierName name) {
  if (name == TierName::kFE) return {TierName::kFE, 100e6, 100.0, std::uint64_t{1} << 25};
  return {TierName::kGE, 1e9, 50.0, std::uint64_t{1} << 30};
}

void ValidateConfig(const ClusterConfig& config) {
  if (config.worker_pool_size < 1) Invalid("worker pool must hold at least one node");
  if (config.fe.name != TierName::kFE || config.ge.name != TierName::kGE) {
    Invalid("tier slots hold the wrong tier names");
  }
  ValidateTier(config.fe);
  ValidateTier(config.ge);
  if (!(config.ge.bandwidth_bps > config.fe.bandwidth_bps)) Invalid("GE bandwidth must exceed FE bandwidth");
  if (!(config.ge.latency_us <= config.fe.latency_us)) Invalid("GE latency must not exceed FE latency");
  if (!(config.ge.max_reliable_bytes > config.fe.max_reliable_bytes)) {
    Invalid("GE reliability limit must exceed FE reliability limit");
  }
  if (!config.channel_tiers.contains(ChannelKind::kIo)) Invalid("missing tier for the io channel");
  if (config.mode == ClusterMode::kIndependent && !config.channel_tiers.contains(ChannelKind::kService)) {
    Invalid("missing tier for the service channel");
  }
}

const Node& ClusterState::node(NodeId id) const {
  if (!has_node(id)) throw Error(ErrorCode::kUnknownNode, ToString(id));
  return nodes[id.value];
}

Node& ClusterState::node(NodeId id) {
  if (!has_node(id)) throw Error(ErrorCode::kUnknownNode, ToString(id));
  return nodes[id.value];
}

const Block& ClusterState::block(BlockId id) const {
  auto it = blocks.find(id);
  if (it == blocks.end()) throw Error(ErrorCode::kUnknownBlock, ToString(id));
  return it->second;
}

std::optional<NodeId> ClusterState::find_role(NodeRole role) const {
  for (const Node& n : nodes) {
    if (n.role == role) return n.id;
  }
  return std::nullopt;
}

const Channel& ClusterState::channel(ChannelKind kind) const {
  if (mode() == ClusterMode::kConventional && channels.size() == 1) return channels.front();
  for (const Channel& c : channels) {
    if (c.kind == kind) return c;
  }
  throw Error(ErrorCode::kInvalidConfig, "cluster has no " + std::string(ToString(kind)) + " channel");
}

std::vector<NodeId> ClusterState::members(const Block& block) const {
  std::vector<NodeId> out;
  out.reserve(block.workers.size() + 1);
  if (mode() == ClusterMode::kIndependent) out.push_back(block.master);
  out.insert(out.end(), block.workers.begin(), block.workers.end());
  return out;
}

std::optional<BlockId> ClusterState::owning_block(NodeId id) const {
  for (const auto& [bid, b] : blocks) {
    if (!b.running()) continue;
    if (mode() == ClusterMode::kIndependent && b.master == id) return bid;
    if (std::find(b.workers.begin(), b.workers.end(), id) != b.workers.end()) return bid;
  }
  return std::nullopt;
}

std::size_t ClusterState::running_block_count() const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(), [](const auto& kv) { return kv.second.running(); }));
}

ClusterState BuildCluster(const ClusterConfig& config) {
  ValidateConfig(config);

  ClusterState state;
  state.config = config;
  const NetworkTier& io_tier = config.tier(config.channel_tiers.at(ChannelKind::kIo));
  if (config.mode == ClusterMode::kConventional) {
    state.channels.push_back({ChannelKind::kIo, io_tier});
  } else {
    state.channels.push_back({ChannelKind::kService, config.tier(config.channel_tiers.at(ChannelKind::kService))});
    state.channels.push_back({ChannelKind::kIo, io_tier});
  }

  const std::uint32_t pool = config.worker_pool_size;
  const bool independent = config.mode == ClusterMode::kIndependent;
  state.nodes.reserve(pool + (independent ? 3 : 1));
  state.nodes.push_back(MakeNode(0, independent ? NodeRole::kGateway : NodeRole::kSharedMaster, state.channels));
  for (std::uint32_t i = 1; i <= pool; ++i) {
    state.nodes.push_back(MakeNode(i, NodeRole::kFree, state.channels));
    state.free_pool.insert(NodeId{i});
  }
  if (independent) {
    state.nodes.push_back(MakeNode(pool + 1, NodeRole::kServiceServer, state.channels));
    state.nodes.push_back(MakeNode(pool + 2, NodeRole::kIoServer, state.channels));
  }
  return state;
}

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kPartition:
      return "PartitionViolation";
    case ViolationKind::kOrphanNode:
      return "OrphanNode";
    case ViolationKind::kFreePoolRole:
      return "FreePoolRoleViolation";
    case ViolationKind::kMasterCardinality:
      return "MasterCardinalityViolation";
    case ViolationKind::kDedicatedServerCardinality:
      return "DedicatedServerCardinalityViolation";
    case ViolationKind::kRoleNotAllowedInMode:
      return "RoleNotAllowedInMode";
    case ViolationKind::kMissingNic:
      return "MissingNic";
    case ViolationKind::kChannelLayout:
      return "ChannelLayoutViolation";
    case ViolationKind::kBlockShape:
      return "BlockShapeViolation";
    case ViolationKind::kBlockRole:
      return "BlockRoleViolation";
    case ViolationKind::kMasterSharing:
      return "MasterSharingViolation";
    case ViolationKind::kMasterDistinctness:
      return "MasterDistinctnessViolation";
  }
  return "Unknown";
}

std::string Violation::ToString() const {
  std::ostringstream os;
  os << pcluster::ToString(kind) << ": " << detail;
  if (!nodes.empty()) {
    os << " [nodes";
    for (NodeId n : nodes) os << ' ' << n;
    os << ']';
  }
  if (!blocks.empty()) {
    os << " [blocks";
    for (BlockId b : blocks) os << ' ' << b;
    os << ']';
  }
  return os.str();
}

std::vector<Violation> ValidateTopology(const ClusterState& state) {
  std::vector<Violation> out;
  auto report = [&out](ViolationKind kind, std::string detail, std::vector<NodeId> nodes = {},
                       std::vector<BlockId> blocks = {}) {
    out.push_back({kind, std::move(detail), std::move(nodes), std::move(blocks)});
  };
  const bool independent = state.mode() == ClusterMode::kIndependent;

  // Channels.
  if (independent) {
    const bool ok = state.channels.size() == 2 && state.channels[0].kind != state.channels[1].kind;
    if (!ok) report(ViolationKind::kChannelLayout, "independent mode needs distinct service and io channels");
  } else if (state.channels.size() != 1) {
    report(ViolationKind::kChannelLayout, "conventional mode runs exactly one channel");
  }

  // Dense ids.
  for (std::size_t i = 0; i < state.nodes.size(); ++i) {
    if (state.nodes[i].id.value != i) {
      report(ViolationKind::kOrphanNode, "node id does not match its slot", {state.nodes[i].id});
    }
  }

  // Per-node checks: NICs and role/mode compatibility.
  std::unordered_map<NodeRole, std::vector<NodeId>> by_role;
  for (const Node& n : state.nodes) {
    by_role[n.role].push_back(n.id);
    for (const Channel& c : state.channels) {
      if (!n.has_nic(c.kind)) {
        report(ViolationKind::kMissingNic, "no NIC on the " + std::string(ToString(c.kind)) + " channel", {n.id});
      }
    }
    const bool independent_only = n.role == NodeRole::kGateway || n.role == NodeRole::kServiceServer ||
                                  n.role == NodeRole::kIoServer || n.role == NodeRole::kBlockMaster;
    if ((independent_only && !independent) || (n.role == NodeRole::kSharedMaster && independent)) {
      report(ViolationKind::kRoleNotAllowedInMode,
             std::string(ToString(n.role)) + " in " + std::string(ToString(state.mode())) + " mode", {n.id});
    }
  }

  if (!independent && by_role[NodeRole::kSharedMaster].size() != 1) {
    report(ViolationKind::kMasterCardinality,
           "expected exactly one shared_master, found " + std::to_string(by_role[NodeRole::kSharedMaster].size()),
           by_role[NodeRole::kSharedMaster]);
  }
  if (independent) {
    for (NodeRole role : {NodeRole::kGateway, NodeRole::kServiceServer, NodeRole::kIoServer}) {
      if (by_role[role].size() != 1) {
        report(ViolationKind::kDedicatedServerCardinality,
               "expected exactly one " + std::string(ToString(role)) + ", found " +
                   std::to_string(by_role[role].size()),
               by_role[role]);
      }
    }
  }

  // Partition: free pool, running block membership and dedicated roles are
  // pairwise disjoint and together cover every node.
  std::vector<int> placements(state.nodes.size(), 0);
  auto place = [&](NodeId id) {
    if (id.value < placements.size()) ++placements[id.value];
  };
  for (NodeId id : state.free_pool) {
    if (!state.has_node(id)) {
      report(ViolationKind::kPartition, "free pool references a missing node", {id});
      continue;
    }
    place(id);
    if (state.nodes[id.value].role != NodeRole::kFree) {
      report(ViolationKind::kFreePoolRole, "free pool node has role " + std::string(ToString(state.nodes[id.value].role)),
             {id});
    }
  }
  for (const Node& n : state.nodes) {
    if (IsDedicatedRole(n.role)) place(n.id);
    if (n.role == NodeRole::kFree && !state.free_pool.contains(n.id)) {
      report(ViolationKind::kFreePoolRole, "node has role free but is not in the free pool", {n.id});
    }
  }

  const auto shared_master = state.find_role(NodeRole::kSharedMaster);
  std::map<NodeId, std::vector<BlockId>> master_users;
  for (const auto& [bid, b] : state.blocks) {
    if (!b.running()) continue;
    if (b.workers.empty()) report(ViolationKind::kBlockShape, "running block has no workers", {}, {bid});
    std::set<NodeId> seen;
    for (NodeId w : b.workers) {
      if (!seen.insert(w).second) report(ViolationKind::kBlockShape, "worker listed twice", {w}, {bid});
      if (w == b.master) report(ViolationKind::kBlockShape, "master listed among workers", {w}, {bid});
    }
    for (NodeId w : seen) {
      if (!state.has_node(w)) {
        report(ViolationKind::kBlockShape, "block references a missing node", {w}, {bid});
        continue;
      }
      place(w);
      if (state.nodes[w.value].role != NodeRole::kWorker) {
        report(ViolationKind::kBlockRole, "block worker has role " + std::string(ToString(state.nodes[w.value].role)),
               {w}, {bid});
      }
    }
    master_users[b.master].push_back(bid);
    if (independent) {
      if (!state.has_node(b.master)) {
        report(ViolationKind::kBlockShape, "block master is a missing node", {b.master}, {bid});
      } else {
        place(b.master);
        if (state.nodes[b.master.value].role != NodeRole::kBlockMaster) {
          report(ViolationKind::kBlockRole, "block master has role " + std::string(ToString(state.nodes[b.master.value].role)),
                 {b.master}, {bid});
        }
      }
    } else if (!shared_master || b.master != *shared_master) {
      report(ViolationKind::kMasterSharing, "block master is not the shared master", {b.master}, {bid});
    }
  }
  if (independent) {
    for (const auto& [master, users] : master_users) {
      if (users.size() > 1) {
        report(ViolationKind::kMasterDistinctness, "blocks share a master", {master}, users);
      }
    }
    // Every block_master node must front some running block.
    for (NodeId id : by_role[NodeRole::kBlockMaster]) {
      if (!master_users.contains(id)) report(ViolationKind::kBlockRole, "block_master without a running block", {id});
    }
  }
  for (NodeId id : by_role[NodeRole::kWorker]) {
    if (!state.owning_block(id)) report(ViolationKind::kBlockRole, "worker without a running block", {id});
  }

  for (std::size_t i = 0; i < placements.size(); ++i) {
    const NodeId id{static_cast<std::uint32_t>(i)};
    if (placements[i] > 1) {
      std::vector<BlockId> holders;
      for (const auto& [bid, b] : state.blocks) {
        if (!b.running()) continue;
        const auto m = state.members(b);
        if (std::find(m.begin(), m.end(), id) != m.end()) holders.push_back(bid);
      }
      report(ViolationKind::kPartition, "node placed " + std::to_string(placements[i]) + " times", {id}, holders);
    } else if (placements[i] == 0) {
      report(ViolationKind::kOrphanNode, "node is neither free, in a block, nor a dedicated server", {id});
    }
  }
  return out;
}

}  // namespace pcluster
