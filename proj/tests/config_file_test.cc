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

#include "pcluster/config_file.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace pcluster {
namespace {

ErrorCode CodeOf(std::string_view text) {
  try {
    ParseConfig(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "config parsed: " << text;
  return ErrorCode::kParseError;
}

TEST(ParseConfig, FullFile) {
  const ClusterConfig c = ParseConfig(R"(
; comment
[cluster]
mode=independent
pool=8

[tier.fe]
bandwidth_bps=100000000
latency_us=100
max_reliable_bytes=33554432

[tier.ge]
bandwidth_bps=1000000000
latency_us=50
max_reliable_bytes=1073741824

[channels]
service=fe
io=ge
)");
  EXPECT_EQ(c, ClusterConfig{});
}

TEST(ParseConfig, EmptyTextGivesDefaults) { EXPECT_EQ(ParseConfig(""), ClusterConfig{}); }

TEST(ParseConfig, OverridesIndividualKeys) {
  const ClusterConfig c = ParseConfig("[cluster]\nmode=conventional\npool=3\n[channels]\nio=fe\n[tier.ge]\nlatency_us=10\n");
  EXPECT_EQ(c.mode, ClusterMode::kConventional);
  EXPECT_EQ(c.worker_pool_size, 3u);
  EXPECT_EQ(c.channel_tiers.at(ChannelKind::kIo), TierName::kFE);
  EXPECT_DOUBLE_EQ(c.ge.latency_us, 10.0);
  EXPECT_DOUBLE_EQ(c.ge.bandwidth_bps, 1e9);
}

TEST(ParseConfig, UnknownKeysAndSectionsAreErrors) {
  EXPECT_EQ(CodeOf("[cluster]\nnodes=4\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[tier.xe]\nlatency_us=1\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[tier.fe]\njitter=1\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[channels]\nmonitoring=fe\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("pool=4\n"), ErrorCode::kParseError);
}

TEST(ParseConfig, DuplicateAssignmentsAreErrors) {
  EXPECT_EQ(CodeOf("[channels]\nio=ge\nio=fe\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[cluster]\npool=1\n[cluster]\npool=2\n"), ErrorCode::kParseError);
}

TEST(ParseConfig, MalformedValuesAreErrors) {
  EXPECT_EQ(CodeOf("[cluster]\npool=eight\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[cluster]\npool=-1\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[cluster]\nmode=hybrid\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[tier.fe]\nbandwidth_bps=1e8x\n"), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf("[channels]\nio=xe\n"), ErrorCode::kParseError);
}

TEST(ParseConfig, SemanticProblemsAreInvalidConfig) {
  EXPECT_EQ(CodeOf("[cluster]\npool=0\n"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf("[tier.fe]\nbandwidth_bps=2e9\n"), ErrorCode::kInvalidConfig);
}

TEST(FormatConfig, RoundTrips) {
  ClusterConfig c;
  c.mode = ClusterMode::kConventional;
  c.worker_pool_size = 17;
  c.fe.latency_us = 123.25;
  c.ge.max_reliable_bytes = (std::uint64_t{1} << 31) + 7;
  c.channel_tiers[ChannelKind::kIo] = TierName::kFE;
  EXPECT_EQ(ParseConfig(FormatConfig(c)), c);
}

TEST(LoadConfigFile, ReadsFromDiskAndReportsMissingFiles) {
  const auto path = std::filesystem::temp_directory_path() / "pcluster_config_test.ini";
  {
    std::ofstream out(path);
    out << "[cluster]\npool=2\n";
  }
  EXPECT_EQ(LoadConfigFile(path).worker_pool_size, 2u);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadConfigFile(path), Error);
}

}  // namespace
}  // namespace pcluster
