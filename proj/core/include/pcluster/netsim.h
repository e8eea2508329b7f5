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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pcluster/topology.h"

namespace pcluster {

// Flow-level network model.
//
// Contention happens only on NIC links. Every node has one full-duplex NIC
// per channel, so each (node, channel) pair contributes a tx link and an rx
// link of the channel tier's bandwidth. Switches are non-blocking.
//
// Timing is cut-through: a flow pays hop_count * latency once, and its bits
// drain at whatever max-min fair rate its bottleneck link grants at each
// instant. Transfers larger than the tier's reliability limit fail
// atomically and consume no capacity.

enum class LinkDirection { kTx, kRx };

struct LinkRef {
  NodeId node;
  ChannelKind channel = ChannelKind::kIo;
  LinkDirection direction = LinkDirection::kTx;

  auto operator<=>(const LinkRef&) const = default;
};

std::string ToString(const LinkRef& link);  // "n3.io.tx"

struct Path {
  ChannelKind channel = ChannelKind::kIo;
  std::vector<LinkRef> links;
  int hop_count = 1;

  bool operator==(const Path&) const = default;
};

struct Flow {
  FlowId id;
  NodeId src;
  NodeId dst;
  std::uint64_t size_bytes = 0;
  ChannelKind channel = ChannelKind::kIo;
  double start_time_us = 0.0;
};

enum class FlowStatus { kCompleted, kFailedUnreliable };

std::string_view ToString(FlowStatus status);  // "completed" / "failed_unreliable"

// Constant-rate stretch of a flow's transfer, [begin_us, end_us).
struct RateSegment {
  double begin_us = 0.0;
  double end_us = 0.0;
  double rate_bps = 0.0;
};

struct FlowOutcome {
  FlowId flow;
  FlowStatus status = FlowStatus::kCompleted;
  // Present iff completed.
  std::optional<double> completion_time_us;
  Path path;
  // Empty for failed and zero-length flows.
  std::vector<RateSegment> rate_trace;
};

using LinkCapacities = std::map<LinkRef, double>;

// One-way uncontended transfer time in microseconds:
//   hop_count * latency + size_bytes * 8 / bandwidth.
double ClosedFormTime(std::uint64_t size_bytes, const NetworkTier& tier, int hop_count);

// Conventional mode relays through the shared master:
//   [src.tx, master.rx, master.tx, dst.rx], 2 hops, on the single channel.
// Independent mode goes direct on the flow's channel:
//   [src.tx, dst.rx], 1 hop.
//
// Both ends must sit in the same running block. In independent mode a block
// node may also talk to the io server over the io channel (home directory
// traffic) and to the service server over the service channel.
//
// Errors: kUnknownNode, kCrossBlockFlow (ends in different blocks),
//         kInvalidRequest (src == dst, an end outside any block, or a
//         dedicated server on the wrong channel).
Path RouteFlow(const ClusterState& state, const Flow& flow);

// Capacity of every link on `paths`, taken from the owning channel's tier.
LinkCapacities CapacitiesFor(const ClusterState& state, std::span<const Path> paths);

struct RoutedFlow {
  FlowId id;
  std::vector<LinkRef> links;
};

// Max-min fair rates by progressive filling: repeatedly find the link whose
// remaining capacity split over its unfixed flows is smallest, fix those
// flows at that share, and charge them to every link they cross. Flows with
// no links are skipped. Throws Error(kInvalidRequest) if a link has no
// capacity entry.
std::map<FlowId, double> MaxMinRates(std::span<const RoutedFlow> flows, const LinkCapacities& capacities);

// Input to the event-driven fluid engine underneath Simulate.
struct FluidFlow {
  FlowId id;
  std::vector<LinkRef> links;
  double start_time_us = 0.0;
  double bits = 0.0;
  // Added once, after the last bit has drained.
  double latency_us = 0.0;
};

struct FluidResult {
  FlowId id;
  double drain_end_us = 0.0;
  double completion_time_us = 0.0;
  std::vector<RateSegment> rate_trace;
};

// Event-driven progressive simulation: rates are recomputed with MaxMinRates
// at every flow arrival and departure. Events at equal times are processed in
// flow id order. Results come back in input order.
std::vector<FluidResult> RunFluid(std::span<const FluidFlow> flows, const LinkCapacities& capacities);

// Routes every flow, drops unreliable ones, and runs the rest through
// RunFluid. Outcomes are in input order. Routing errors propagate.
std::vector<FlowOutcome> Simulate(const ClusterState& state, std::span<const Flow> flows);

}  // namespace pcluster
