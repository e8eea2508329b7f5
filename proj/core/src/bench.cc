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

#include "pcluster/bench.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

#include "pcluster/allocation.h"

namespace pcluster {
namespace {

[[noreturn]] void BadSpec(const std::string& what) { throw Error(ErrorCode::kInvalidRequest, what); }

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    out.push_back(line.substr(begin, comma == std::string_view::npos ? std::string_view::npos : comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return out;
}

template <typename T>
T ParseField(std::string_view field, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": bad numeric field '" + std::string(field) + "'");
  }
  return value;
}

// Running mean; exact when every value is identical.
class Mean {
 public:
  void Add(double x) {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
  }
  std::optional<double> value() const { return count_ ? std::optional<double>(mean_) : std::nullopt; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
};

std::string FormatMicros(double us) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", us);
  return buf;
}

}  // namespace

void ValidateBenchSpec(const BenchSpec& spec) {
  if (spec.n_blocks < 1) BadSpec("at least one block is required");
  if (spec.senders_per_block < 1) BadSpec("at least one sender per block is required");
  if (spec.senders_per_block * 2 > spec.nodes_per_block) BadSpec("senders_per_block * 2 exceeds nodes_per_block");
  if (spec.mode == ClusterMode::kIndependent && spec.nodes_per_block < 2) {
    BadSpec("independent blocks need a master plus at least one worker");
  }
  if (spec.reps < 1) BadSpec("reps must be at least 1");
  for (std::size_t i = 1; i < spec.sizes.size(); ++i) {
    if (spec.sizes[i] <= spec.sizes[i - 1]) BadSpec("sizes must be strictly increasing");
  }
}

std::vector<std::uint64_t> PowerOfTwoLadder(std::uint64_t min_bytes, std::uint64_t max_bytes) {
  if (min_bytes == 0) BadSpec("smallest size must be positive");
  if (min_bytes > max_bytes) BadSpec("smallest size exceeds largest size");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = min_bytes; s <= max_bytes; s *= 2) {
    out.push_back(s);
    if (s > max_bytes / 2) break;
  }
  return out;
}

std::vector<std::uint64_t> DefaultSizeLadder() { return PowerOfTwoLadder(std::uint64_t{1} << 10, std::uint64_t{1} << 30); }

BenchCluster PrepareBenchCluster(const ClusterConfig& base, const BenchSpec& spec) {
  ValidateBenchSpec(spec);
  ClusterConfig config = base;
  config.mode = spec.mode;
  config.channel_tiers[ChannelKind::kIo] = spec.tier;

  BenchCluster out{BuildCluster(config), {}};
  const std::uint32_t workers =
      spec.mode == ClusterMode::kIndependent ? spec.nodes_per_block - 1 : spec.nodes_per_block;
  for (std::uint32_t b = 0; b < spec.n_blocks; ++b) {
    BlockResult r = AllocateBlock(out.state, {"bench" + std::to_string(b), workers, WorkloadType::kIoIntensive});
    out.state = std::move(r.state);
    out.blocks.push_back(r.block.id);
  }
  return out;
}

std::vector<BenchSample> PingPong(const ClusterState& state, const BenchSpec& spec, std::uint64_t size) {
  ValidateBenchSpec(spec);
  std::vector<std::vector<NodeId>> members;
  for (const auto& [id, block] : state.blocks) {
    if (!block.running()) continue;
    if (members.size() == spec.n_blocks) break;
    members.push_back(state.members(block));
    if (members.back().size() < spec.nodes_per_block) {
      BadSpec(ToString(id) + " has fewer than " + std::to_string(spec.nodes_per_block) + " nodes");
    }
  }
  if (members.size() < spec.n_blocks) BadSpec("cluster has fewer running blocks than the bench needs");

  const std::uint32_t senders = spec.senders_per_block;
  std::vector<Flow> forward;
  std::vector<Flow> reverse;
  for (std::uint32_t b = 0; b < spec.n_blocks; ++b) {
    for (std::uint32_t i = 0; i < senders; ++i) {
      const FlowId id{b * senders + i};
      const NodeId a = members[b][i];
      const NodeId z = members[b][senders + i];
      forward.push_back({id, a, z, size, ChannelKind::kIo, 0.0});
      reverse.push_back({id, z, a, size, ChannelKind::kIo, 0.0});
    }
  }

  // The reverse phase begins at the forward barrier. Phases never overlap, so
  // each is simulated on its own clock.
  const std::vector<FlowOutcome> fwd = Simulate(state, forward);
  const std::vector<FlowOutcome> rev = Simulate(state, reverse);

  const TierName tier = state.channel(ChannelKind::kIo).tier.name;
  std::vector<BenchSample> samples;
  samples.reserve(forward.size());
  for (std::size_t k = 0; k < forward.size(); ++k) {
    BenchSample s;
    s.mode = state.mode();
    s.tier = tier;
    s.n_blocks = spec.n_blocks;
    s.block = static_cast<std::uint32_t>(k / senders);
    s.flow = static_cast<std::uint32_t>(k % senders);
    s.size_bytes = size;
    if (fwd[k].status == FlowStatus::kCompleted && rev[k].status == FlowStatus::kCompleted) {
      s.status = FlowStatus::kCompleted;
      s.rtt_us = (*fwd[k].completion_time_us - forward[k].start_time_us) +
                 (*rev[k].completion_time_us - reverse[k].start_time_us);
    } else {
      s.status = FlowStatus::kFailedUnreliable;
    }
    samples.push_back(s);
  }
  return samples;
}

std::vector<BenchSample> RunSweep(const ClusterState& state, const BenchSpec& spec) {
  ValidateBenchSpec(spec);
  std::vector<BenchSample> rows;
  for (std::uint64_t size : spec.sizes) {
    // The simulator is deterministic, so every rep reproduces the first.
    const std::vector<BenchSample> round = PingPong(state, spec, size);
    for (std::uint32_t rep = 0; rep < spec.reps; ++rep) rows.insert(rows.end(), round.begin(), round.end());
  }
  return rows;
}

std::string FormatCsv(std::span<const BenchSample> samples) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchSample& s : samples) {
    out += ToString(s.mode);
    out += ',';
    out += ToString(s.tier);
    out += ',' + std::to_string(s.n_blocks) + ',' + std::to_string(s.block) + ',' + std::to_string(s.flow) + ',' +
           std::to_string(s.size_bytes) + ',';
    if (s.rtt_us) out += FormatMicros(*s.rtt_us);
    out += ',';
    out += ToString(s.status);
    out += '\n';
  }
  return out;
}

std::vector<BenchSample> ParseCsv(std::string_view text) {
  std::vector<BenchSample> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kCsvHeader) throw Error(ErrorCode::kParseError, "unexpected CSV header '" + std::string(line) + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string_view> f = SplitFields(line);
    if (f.size() != 8) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected 8 fields");
    }
    BenchSample s;
    s.mode = ParseClusterMode(f[0]);
    s.tier = ParseTierName(f[1]);
    s.n_blocks = ParseField<std::uint32_t>(f[2], line_no);
    s.block = ParseField<std::uint32_t>(f[3], line_no);
    s.flow = ParseField<std::uint32_t>(f[4], line_no);
    s.size_bytes = ParseField<std::uint64_t>(f[5], line_no);
    if (f[7] == "completed") {
      s.status = FlowStatus::kCompleted;
      s.rtt_us = ParseField<double>(f[6], line_no);
    } else if (f[7] == "failed_unreliable") {
      s.status = FlowStatus::kFailedUnreliable;
      if (!f[6].empty()) throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": failed row has rtt");
    } else {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": bad status '" + std::string(f[7]) + "'");
    }
    out.push_back(s);
  }
  if (!header_seen) throw Error(ErrorCode::kParseError, "empty CSV");
  return out;
}

ComparisonReport Compare(std::span<const BenchSample> single, std::span<const BenchSample> twin) {
  std::map<std::uint64_t, Mean> single_means;
  std::map<std::uint64_t, Mean> twin_means;
  ComparisonReport report;

  auto collect = [&report](std::span<const BenchSample> rows, std::map<std::uint64_t, Mean>& means) {
    for (const BenchSample& s : rows) {
      Mean& m = means[s.size_bytes];
      auto& first = report.first_failure[s.tier];
      if (s.status == FlowStatus::kCompleted && s.rtt_us) {
        m.Add(*s.rtt_us);
      } else if (!first || s.size_bytes < *first) {
        first = s.size_bytes;
      }
    }
  };
  collect(single, single_means);
  collect(twin, twin_means);

  std::set<std::uint64_t> single_sizes;
  std::set<std::uint64_t> twin_sizes;
  for (const auto& kv : single_means) single_sizes.insert(kv.first);
  for (const auto& kv : twin_means) twin_sizes.insert(kv.first);
  if (single_sizes != twin_sizes) {
    throw Error(ErrorCode::kMismatchedLadders, "inputs cover " + std::to_string(single_sizes.size()) + " and " +
                                                   std::to_string(twin_sizes.size()) + " sizes, or different ones");
  }

  for (const auto& [size, m] : single_means) {
    SizeComparison row;
    row.size_bytes = size;
    row.single_mean_us = m.value();
    row.twin_mean_us = twin_means.at(size).value();
    if (row.single_mean_us && row.twin_mean_us) {
      row.ratio = *row.twin_mean_us / *row.single_mean_us;
      if (!report.max_ratio || *row.ratio > *report.max_ratio) {
        report.max_ratio = row.ratio;
        report.max_ratio_size = size;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string FormatReport(const ComparisonReport& report) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%14s %16s %16s %8s\n", "size_bytes", "single_rtt_us", "twin_rtt_us", "ratio");
  os << line;
  for (const SizeComparison& r : report.rows) {
    const std::string single = r.single_mean_us ? FormatMicros(*r.single_mean_us) : "failed";
    const std::string twin = r.twin_mean_us ? FormatMicros(*r.twin_mean_us) : "failed";
    const std::string ratio = r.ratio ? FormatMicros(*r.ratio) : "-";
    std::snprintf(line, sizeof line, "%14llu %16s %16s %8s\n", static_cast<unsigned long long>(r.size_bytes),
                  single.c_str(), twin.c_str(), ratio.c_str());
    os << line;
  }
  os << "max ratio ";
  if (report.max_ratio) {
    os << FormatMicros(*report.max_ratio) << " at " << *report.max_ratio_size << " bytes";
  } else {
    os << "n/a";
  }
  os << "; first failing size:";
  for (const auto& [tier, size] : report.first_failure) {
    os << ' ' << ToString(tier) << '=' << (size ? std::to_string(*size) : std::string("none"));
  }
  os << '\n';
  return os.str();
}

}  // namespace pcluster
