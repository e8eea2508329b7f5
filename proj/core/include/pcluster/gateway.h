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
#include <string_view>

#include "pcluster/topology.h"

namespace pcluster {

enum class CommandVerb { kSubmit, kStatus, kCancel };

std::string_view ToString(CommandVerb verb);
CommandVerb ParseCommandVerb(std::string_view text);

// Payloads are modelled by size only.
struct Command {
  std::string user;
  BlockId block_id;
  CommandVerb verb = CommandVerb::kStatus;
  std::uint64_t request_bytes = 0;
  std::uint64_t response_bytes = 0;
};

struct RoutedResult {
  CommandVerb verb = CommandVerb::kStatus;
  // Request leg plus response leg, microseconds.
  double transit_time_us = 0.0;
  NodeId delivered_to;
};

// Node that accepts user commands: the gateway server in independent mode,
// the shared master in conventional mode.
NodeId CommandEntryPoint(const ClusterState& state);

// Forwards `cmd` from the entry point to the block master over the service
// channel and back. Each leg is one hop through a non-blocking switch and
// never competes with data traffic:
//
//   transit = (L + request_bits / B) + (L + response_bits / B)
//
// with L and B from the service channel's tier.
//
// Errors: kUnknownBlock, kBlockNotRunning, kUnauthorized (block runs but
// belongs to someone else).
RoutedResult RouteCommand(const ClusterState& state, const Command& cmd);

}  // namespace pcluster
