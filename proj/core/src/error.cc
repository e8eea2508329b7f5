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

#include "pcluster/error.h"

namespace pcluster {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kInvalidRequest:
      return "InvalidRequest";
    case ErrorCode::kInsufficientNodes:
      return "InsufficientNodes";
    case ErrorCode::kUnknownBlock:
      return "UnknownBlock";
    case ErrorCode::kAlreadyReleased:
      return "AlreadyReleased";
    case ErrorCode::kBlocksActive:
      return "BlocksActive";
    case ErrorCode::kUnauthorized:
      return "Unauthorized";
    case ErrorCode::kBlockNotRunning:
      return "BlockNotRunning";
    case ErrorCode::kUnknownNode:
      return "UnknownNode";
    case ErrorCode::kCrossBlockFlow:
      return "CrossBlockFlow";
    case ErrorCode::kMismatchedLadders:
      return "MismatchedLadders";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ToString(code)) + ": " + message), code_(code) {}

std::string ToString(NodeId id) { return "n" + std::to_string(id.value); }
std::string ToString(BlockId id) { return "b" + std::to_string(id.value); }
std::string ToString(FlowId id) { return "f" + std::to_string(id.value); }

}  // namespace pcluster
