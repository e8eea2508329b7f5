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

#include "pcluster/gateway.h"

#include <algorithm>
#include <cctype>

#include "pcluster/allocation.h"
#include "pcluster/netsim.h"

namespace pcluster {

std::string_view ToString(CommandVerb verb) {
  switch (verb) {
    case CommandVerb::kSubmit:
      return "submit";
    case CommandVerb::kStatus:
      return "status";
    case CommandVerb::kCancel:
      return "cancel";
  }
  return "unknown";
}

CommandVerb ParseCommandVerb(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "submit") return CommandVerb::kSubmit;
  if (s == "status") return CommandVerb::kStatus;
  if (s == "cancel") return CommandVerb::kCancel;
  throw Error(ErrorCode::kParseError, "unknown verb '" + std::string(text) + "'");
}

NodeId CommandEntryPoint(const ClusterState& state) {
  const NodeRole role = state.mode() == ClusterMode::kIndependent ? NodeRole::kGateway : NodeRole::kSharedMaster;
  auto id = state.find_role(role);
  if (!id) throw Error(ErrorCode::kUnknownNode, "cluster has no " + std::string(ToString(role)));
  return *id;
}

RoutedResult RouteCommand(const ClusterState& state, const Command& cmd) {
  const Block& block = state.block(cmd.block_id);
  if (!block.running()) throw Error(ErrorCode::kBlockNotRunning, ToString(cmd.block_id));
  if (!Authorize(state, cmd.user, cmd.block_id)) {
    throw Error(ErrorCode::kUnauthorized, "user '" + cmd.user + "' does not own " + ToString(cmd.block_id));
  }

  const NetworkTier& tier = state.channel(ChannelKind::kService).tier;
  RoutedResult result;
  result.verb = cmd.verb;
  result.delivered_to = block.master;
  result.transit_time_us = ClosedFormTime(cmd.request_bytes, tier, 1) + ClosedFormTime(cmd.response_bytes, tier, 1);
  return result;
}

}  // namespace pcluster
