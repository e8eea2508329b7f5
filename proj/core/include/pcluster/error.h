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
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcluster {

enum class ErrorCode {
  kInvalidConfig,
  kParseError,
  kInvalidRequest,
  kInsufficientNodes,
  kUnknownBlock,
  kAlreadyReleased,
  kBlocksActive,
  kUnauthorized,
  kBlockNotRunning,
  kUnknownNode,
  kCrossBlockFlow,
  kMismatchedLadders,
};

std::string_view ToString(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Opaque integral identifier. The tag keeps node, block and flow ids from
// being mixed up at compile time.
template <typename Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr auto operator<=>(const Id&) const = default;
};

struct NodeTag {};
struct BlockTag {};
struct FlowTag {};

using NodeId = Id<NodeTag>;
using BlockId = Id<BlockTag>;
using FlowId = Id<FlowTag>;

std::string ToString(NodeId id);   // "n3"
std::string ToString(BlockId id);  // "b1"
std::string ToString(FlowId id);   // "f0"

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << ToString(id); }
inline std::ostream& operator<<(std::ostream& os, BlockId id) { return os << ToString(id); }
inline std::ostream& operator<<(std::ostream& os, FlowId id) { return os << ToString(id); }

}  // namespace pcluster

template <typename Tag>
struct std::hash<pcluster::Id<Tag>> {
  std::size_t operator()(pcluster::Id<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
