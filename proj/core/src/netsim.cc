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

#include "pcluster/netsim.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace pcluster {
namespace {

constexpr double kMicrosPerSecond = 1e6;

// Two finish times closer than this (relative) are treated as one event.
constexpr double kSameEventTolerance = 1e-12;

bool IsDedicatedServer(NodeRole role) { return role == NodeRole::kIoServer || role == NodeRole::kServiceServer; }

void CheckServerChannel(const Node& server, ChannelKind channel) {
  const ChannelKind wanted = server.role == NodeRole::kIoServer ? ChannelKind::kIo : ChannelKind::kService;
  if (channel != wanted) {
    throw Error(ErrorCode::kInvalidRequest, ToString(server.id) + " (" + std::string(ToString(server.role)) +
                                                ") is only reachable on the " + std::string(ToString(wanted)) +
                                                " channel");
  }
}

// Appends a segment, merging with the previous one when the rate is unchanged.
void AppendSegment(std::vector<RateSegment>& trace, double begin, double end, double rate) {
  if (!trace.empty() && trace.back().rate_bps == rate && trace.back().end_us == begin) {
    trace.back().end_us = end;
    return;
  }
  trace.push_back({begin, end, rate});
}

}  // namespace

std::string ToString(const LinkRef& link) {
  return ToString(link.node) + "." + std::string(ToString(link.channel)) +
         (link.direction == LinkDirection::kTx ? ".tx" : ".rx");
}

std::string_view ToString(FlowStatus status) {
  return status == FlowStatus::kCompleted ? "completed" : "failed_unreliable";
}

double ClosedFormTime(std::uint64_t size_bytes, const NetworkTier& tier, int hop_count) {
  const double bits = static_cast<double>(size_bytes) * 8.0;
  return hop_count * tier.latency_us + bits / tier.bandwidth_bps * kMicrosPerSecond;
}

Path RouteFlow(const ClusterState& state, const Flow& flow) {
  const Node& src = state.node(flow.src);
  const Node& dst = state.node(flow.dst);
  if (flow.src == flow.dst) throw Error(ErrorCode::kInvalidRequest, "flow source and destination coincide");

  const bool independent = state.mode() == ClusterMode::kIndependent;
  const auto src_block = state.owning_block(flow.src);
  const auto dst_block = state.owning_block(flow.dst);

  auto outside = [](const Node& n) {
    return Error(ErrorCode::kInvalidRequest, ToString(n.id) + " is not part of a running block");
  };
  if (independent && (IsDedicatedServer(src.role) || IsDedicatedServer(dst.role))) {
    const Node& server = IsDedicatedServer(src.role) ? src : dst;
    const Node& client = IsDedicatedServer(src.role) ? dst : src;
    if (IsDedicatedServer(client.role)) throw Error(ErrorCode::kInvalidRequest, "server-to-server flows are not modelled");
    if (!state.owning_block(client.id)) throw outside(client);
    CheckServerChannel(server, flow.channel);
  } else {
    if (!src_block) throw outside(src);
    if (!dst_block) throw outside(dst);
    if (*src_block != *dst_block) {
      throw Error(ErrorCode::kCrossBlockFlow, ToString(flow.src) + " in " + ToString(*src_block) + " -> " +
                                                  ToString(flow.dst) + " in " + ToString(*dst_block));
    }
  }

  Path path;
  path.channel = state.channel(flow.channel).kind;
  if (independent) {
    path.hop_count = 1;
    path.links = {{flow.src, path.channel, LinkDirection::kTx}, {flow.dst, path.channel, LinkDirection::kRx}};
  } else {
    const NodeId master = state.block(*src_block).master;
    path.hop_count = 2;
    path.links = {{flow.src, path.channel, LinkDirection::kTx},
                  {master, path.channel, LinkDirection::kRx},
                  {master, path.channel, LinkDirection::kTx},
                  {flow.dst, path.channel, LinkDirection::kRx}};
  }
  return path;
}

LinkCapacities CapacitiesFor(const ClusterState& state, std::span<const Path> paths) {
  LinkCapacities caps;
  for (const Path& p : paths) {
    for (const LinkRef& link : p.links) caps.emplace(link, state.channel(link.channel).tier.bandwidth_bps);
  }
  return caps;
}

std::map<FlowId, double> MaxMinRates(std::span<const RoutedFlow> flows, const LinkCapacities& capacities) {
  struct LinkState {
    double remaining = 0.0;
    std::vector<std::size_t> unfixed;  // indices into `flows`
  };
  std::map<LinkRef, LinkState> links;
  std::map<FlowId, double> rates;
  std::size_t unfixed_count = 0;

  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (flows[i].links.empty()) continue;
    ++unfixed_count;
    for (const LinkRef& link : flows[i].links) {
      auto cap = capacities.find(link);
      if (cap == capacities.end()) throw Error(ErrorCode::kInvalidRequest, "no capacity for link " + ToString(link));
      auto [it, inserted] = links.try_emplace(link);
      if (inserted) it->second.remaining = cap->second;
      it->second.unfixed.push_back(i);
    }
  }

  std::vector<bool> fixed(flows.size(), false);
  while (unfixed_count > 0) {
    // Bottleneck: smallest fair share among links that still carry unfixed
    // flows. std::map order breaks ties deterministically.
    const LinkState* bottleneck = nullptr;
    double share = std::numeric_limits<double>::infinity();
    for (const auto& [ref, ls] : links) {
      if (ls.unfixed.empty()) continue;
      const double s = std::max(ls.remaining, 0.0) / static_cast<double>(ls.unfixed.size());
      if (s < share) {
        share = s;
        bottleneck = &ls;
      }
    }

    const std::vector<std::size_t> to_fix = bottleneck->unfixed;
    for (std::size_t i : to_fix) {
      fixed[i] = true;
      rates[flows[i].id] = share;
      --unfixed_count;
      for (const LinkRef& link : flows[i].links) {
        LinkState& ls = links[link];
        ls.remaining -= share;
        std::erase(ls.unfixed, i);
      }
    }
  }
  return rates;
}

std::vector<FluidResult> RunFluid(std::span<const FluidFlow> flows, const LinkCapacities& capacities) {
  std::vector<FluidResult> results(flows.size());
  std::vector<double> remaining(flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) {
    results[i].id = flows[i].id;
    remaining[i] = flows[i].bits;
  }

  // Arrival order: (start time, flow id).
  std::vector<std::size_t> arrivals(flows.size());
  std::iota(arrivals.begin(), arrivals.end(), 0);
  std::sort(arrivals.begin(), arrivals.end(), [&](std::size_t a, std::size_t b) {
    if (flows[a].start_time_us != flows[b].start_time_us) return flows[a].start_time_us < flows[b].start_time_us;
    return flows[a].id < flows[b].id;
  });

  auto finish = [&](std::size_t i, double t) {
    remaining[i] = 0.0;
    results[i].drain_end_us = t;
    results[i].completion_time_us = t + flows[i].latency_us;
  };

  // Active flows ordered by id so rate computation and finish order are
  // independent of input order.
  auto by_id = [&](std::size_t a, std::size_t b) { return flows[a].id < flows[b].id; };
  std::set<std::size_t, decltype(by_id)> active(by_id);
  std::size_t next_arrival = 0;
  double now = arrivals.empty() ? 0.0 : flows[arrivals.front()].start_time_us;

  std::vector<RoutedFlow> routed;
  while (next_arrival < arrivals.size() || !active.empty()) {
    while (next_arrival < arrivals.size() && flows[arrivals[next_arrival]].start_time_us <= now) {
      const std::size_t i = arrivals[next_arrival++];
      if (remaining[i] <= 0.0 || flows[i].links.empty()) {
        finish(i, std::max(now, flows[i].start_time_us));
      } else {
        active.insert(i);
      }
    }
    if (active.empty()) {
      if (next_arrival < arrivals.size()) now = flows[arrivals[next_arrival]].start_time_us;
      continue;
    }

    routed.clear();
    for (std::size_t i : active) routed.push_back({flows[i].id, flows[i].links});
    const std::map<FlowId, double> rates = MaxMinRates(routed, capacities);

    double step = std::numeric_limits<double>::infinity();
    for (std::size_t i : active) step = std::min(step, remaining[i] / rates.at(flows[i].id) * kMicrosPerSecond);

    const double next_start = next_arrival < arrivals.size() ? flows[arrivals[next_arrival]].start_time_us
                                                             : std::numeric_limits<double>::infinity();
    const bool arrival_first = next_start - now < step;
    if (arrival_first) step = next_start - now;
    const double end = arrival_first ? next_start : now + step;

    for (auto it = active.begin(); it != active.end();) {
      const std::size_t i = *it;
      const double rate = rates.at(flows[i].id);
      const double to_drain = remaining[i] / rate * kMicrosPerSecond;
      AppendSegment(results[i].rate_trace, now, end, rate);
      if (!arrival_first && to_drain <= step * (1.0 + kSameEventTolerance)) {
        finish(i, end);
        it = active.erase(it);
      } else {
        remaining[i] -= rate * step / kMicrosPerSecond;
        ++it;
      }
    }
    now = end;
  }
  return results;
}

std::vector<FlowOutcome> Simulate(const ClusterState& state, std::span<const Flow> flows) {
  std::set<FlowId> ids;
  for (const Flow& f : flows) {
    if (!ids.insert(f.id).second) throw Error(ErrorCode::kInvalidRequest, "duplicate flow id " + ToString(f.id));
  }

  std::vector<FlowOutcome> outcomes(flows.size());
  std::vector<Path> paths;
  std::vector<FluidFlow> fluid;
  std::vector<std::size_t> fluid_owner;
  paths.reserve(flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const Flow& f = flows[i];
    FlowOutcome& out = outcomes[i];
    out.flow = f.id;
    out.path = RouteFlow(state, f);
    paths.push_back(out.path);

    const NetworkTier& tier = state.channel(out.path.channel).tier;
    if (f.size_bytes > tier.max_reliable_bytes) {
      out.status = FlowStatus::kFailedUnreliable;
      continue;
    }
    out.status = FlowStatus::kCompleted;
    fluid.push_back({f.id, out.path.links, f.start_time_us, static_cast<double>(f.size_bytes) * 8.0,
                     out.path.hop_count * tier.latency_us});
    fluid_owner.push_back(i);
  }

  const LinkCapacities caps = CapacitiesFor(state, paths);
  std::vector<FluidResult> results = RunFluid(fluid, caps);
  for (std::size_t k = 0; k < results.size(); ++k) {
    FlowOutcome& out = outcomes[fluid_owner[k]];
    out.completion_time_us = results[k].completion_time_us;
    out.rate_trace = std::move(results[k].rate_trace);
  }
  return outcomes;
}

}  // namespace pcluster
