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

#include <filesystem>
#include <string>
#include <string_view>

#include "pcluster/topology.h"

namespace pcluster {

// INI cluster description:
//
//   [cluster]   mode=independent|conventional  pool=<count>
//   [tier.fe]   bandwidth_bps=<bits/s>  latency_us=<us>  max_reliable_bytes=<bytes>
//   [tier.ge]   (same keys)
//   [channels]  service=fe|ge  io=fe|ge
//
// Every section and key is optional; omitted values keep the ClusterConfig
// defaults. Unknown sections or keys, repeated keys and malformed numbers
// raise Error(kParseError). The result is checked with ValidateConfig, so
// semantic problems raise Error(kInvalidConfig).
ClusterConfig ParseConfig(std::string_view text);
ClusterConfig LoadConfigFile(const std::filesystem::path& path);

// Inverse of ParseConfig; emits every key.
std::string FormatConfig(const ClusterConfig& config);

}  // namespace pcluster
