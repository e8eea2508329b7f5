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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcluster/netsim.h"
#include "pcluster/topology.h"

namespace pcluster {

// Ping-pong experiment description. Blocks hold `nodes_per_block` compute
// nodes: in independent mode the block master is one of them, in
// conventional mode they are all workers behind the shared master.
struct BenchSpec {
  ClusterMode mode = ClusterMode::kIndependent;
  // Tier of the data channel (io channel, or the single shared network).
  TierName tier = TierName::kGE;
  std::uint32_t n_blocks = 1;
  std::uint32_t nodes_per_block = 4;
  std::uint32_t senders_per_block = 2;
  // Strictly increasing byte counts.
  std::vector<std::uint64_t> sizes;
  std::uint32_t reps = 1;
};

// Throws Error(kInvalidRequest) on a malformed spec.
void ValidateBenchSpec(const BenchSpec& spec);

// min, 2*min, 4*min, ... while <= max. Throws Error(kInvalidRequest) when
// min is zero or min > max.
std::vector<std::uint64_t> PowerOfTwoLadder(std::uint64_t min_bytes, std::uint64_t max_bytes);

// 2^10 .. 2^30.
std::vector<std::uint64_t> DefaultSizeLadder();

struct BenchSample {
  ClusterMode mode = ClusterMode::kIndependent;
  TierName tier = TierName::kGE;
  std::uint32_t n_blocks = 1;
  std::uint32_t block = 0;
  std::uint32_t flow = 0;
  std::uint64_t size_bytes = 0;
  // Present iff status is completed.
  std::optional<double> rtt_us;
  FlowStatus status = FlowStatus::kCompleted;

  bool operator==(const BenchSample&) const = default;
};

struct BenchCluster {
  ClusterState state;
  std::vector<BlockId> blocks;
};

// Rebuilds `base` in the spec's mode with the data channel on the spec's
// tier, then allocates `n_blocks` identical blocks. Propagates
// kInsufficientNodes when the pool is too small.
BenchCluster PrepareBenchCluster(const ClusterConfig& base, const BenchSpec& spec);

// One ping-pong round at `size` over every running block of `state` (the
// first n_blocks by id). Sender i of a block pairs with member
// senders_per_block + i. All forward flows start together; the reverse phase
// starts once every forward flow has finished. Each phase is timed from its
// own start, and rtt = forward duration + reverse duration.
//
// Flows beyond the tier's reliability limit yield samples with status
// failed_unreliable and no rtt.
std::vector<BenchSample> PingPong(const ClusterState& state, const BenchSpec& spec, std::uint64_t size);

// Rows ordered by (size, rep, block, flow).
std::vector<BenchSample> RunSweep(const ClusterState& state, const BenchSpec& spec);

// Header: mode,tier,blocks,block,flow,size_bytes,rtt_us,status
// rtt_us has three fractional digits and is empty on failure.
inline constexpr std::string_view kCsvHeader = "mode,tier,blocks,block,flow,size_bytes,rtt_us,status";

std::string FormatCsv(std::span<const BenchSample> samples);

// Throws Error(kParseError) on a wrong header or malformed row.
std::vector<BenchSample> ParseCsv(std::string_view text);

struct SizeComparison {
  std::uint64_t size_bytes = 0;
  std::optional<double> single_mean_us;
  std::optional<double> twin_mean_us;
  // twin / single; present when both sides completed.
  std::optional<double> ratio;
};

struct ComparisonReport {
  std::vector<SizeComparison> rows;
  std::optional<double> max_ratio;
  std::optional<std::uint64_t> max_ratio_size;
  // Smallest failed size per tier seen in either input; nullopt if none.
  std::map<TierName, std::optional<std::uint64_t>> first_failure;
};

// Per-size slowdown of the twin-block run over the single-block run.
// Throws Error(kMismatchedLadders) when the two inputs cover different sizes.
ComparisonReport Compare(std::span<const BenchSample> single, std::span<const BenchSample> twin);

std::string FormatReport(const ComparisonReport& report);

}  // namespace pcluster
