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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pcluster/allocation.h"
#include "pcluster/bench.h"
#include "pcluster/config_file.h"
#include "pcluster/gateway.h"
#include "pcluster/topology.h"

namespace pcluster::cli {
namespace {

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kMismatchedLadders:
      return kExitConfig;
    case ErrorCode::kInvalidRequest:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

ClusterConfig LoadOrDefault(const std::string& path) {
  return path.empty() ? ClusterConfig{} : LoadConfigFile(path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void PrintBlock(std::ostream& out, const ClusterState& state, const Block& block) {
  out << "block " << block.id << " owner=" << block.owner << " workload=" << ToString(block.workload_type)
      << " mode=" << ToString(state.mode()) << "\n";
  out << "  master " << block.master << " (" << ToString(state.node(block.master).role) << ")\n";
  out << "  workers";
  for (NodeId w : block.workers) out << ' ' << w;
  out << "\n  free pool " << state.free_pool.size() << "\n";
}

struct ValidateArgs {
  std::string config;
};

struct AllocArgs {
  std::string config;
  std::string owner;
  std::uint32_t n = 1;
  std::string workload = "processor";
};

struct RouteArgs {
  std::string config;
  std::string owner;
  std::uint32_t n = 1;
  std::string user;
  std::string verb = "status";
  std::string request_bytes = "0";
  std::string response_bytes = "0";
};

struct BenchArgs {
  std::string config;
  std::string mode = "independent";
  std::string tier = "ge";
  std::uint32_t blocks = 1;
  std::string size_min = "1Ki";
  std::string size_max = "1Gi";
  std::uint32_t reps = 1;
  std::string out = "-";
};

struct ReportArgs {
  std::string single;
  std::string twin;
};

int DoValidate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  const ClusterState state = BuildCluster(LoadConfigFile(a.config));
  const auto violations = ValidateTopology(state);
  for (const Violation& v : violations) err << v.ToString() << "\n";
  if (!violations.empty()) return kExitConfig;
  out << "ok: " << ToString(state.mode()) << " cluster, " << state.nodes.size() << " nodes, pool "
      << state.free_pool.size() << "\n";
  return kExitOk;
}

int DoAlloc(const AllocArgs& a, std::ostream& out, std::ostream&) {
  const ClusterState state = BuildCluster(LoadOrDefault(a.config));
  const BlockResult r = AllocateBlock(state, {a.owner, a.n, ParseWorkloadType(a.workload)});
  PrintBlock(out, r.state, r.block);
  return kExitOk;
}

int DoRoute(const RouteArgs& a, std::ostream& out, std::ostream&) {
  const ClusterState state = BuildCluster(LoadOrDefault(a.config));
  const BlockResult r = AllocateBlock(state, {a.owner, a.n, WorkloadType::kProcessorIntensive});
  Command cmd;
  cmd.user = a.user.empty() ? a.owner : a.user;
  cmd.block_id = r.block.id;
  cmd.verb = ParseCommandVerb(a.verb);
  cmd.request_bytes = ParseByteSize(a.request_bytes);
  cmd.response_bytes = ParseByteSize(a.response_bytes);
  const RoutedResult routed = RouteCommand(r.state, cmd);
  char transit[64];
  std::snprintf(transit, sizeof transit, "%.3f", routed.transit_time_us);
  out << ToString(routed.verb) << " " << CommandEntryPoint(r.state) << " -> " << routed.delivered_to
      << " block=" << r.block.id << " transit_us=" << transit << "\n";
  return kExitOk;
}

int DoBench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  try {
    lo = ParseByteSize(a.size_min);
    hi = ParseByteSize(a.size_max);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (lo == 0 || lo > hi) {
    err << "--size-min must be positive and not exceed --size-max\n";
    return kExitUsage;
  }

  BenchSpec spec;
  spec.mode = ParseClusterMode(a.mode);
  spec.tier = ParseTierName(a.tier);
  spec.n_blocks = a.blocks;
  spec.reps = a.reps;
  spec.sizes = PowerOfTwoLadder(lo, hi);

  const BenchCluster cluster = PrepareBenchCluster(LoadOrDefault(a.config), spec);
  const std::string csv = FormatCsv(RunSweep(cluster.state, spec));
  if (a.out == "-") {
    out << csv;
    return kExitOk;
  }
  std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kParseError, "cannot write " + a.out);
  file << csv;
  if (!file) throw Error(ErrorCode::kParseError, "write failed for " + a.out);
  return kExitOk;
}

int DoReport(const ReportArgs& a, std::ostream& out, std::ostream&) {
  const auto single = ParseCsv(ReadFile(a.single));
  const auto twin = ParseCsv(ReadFile(a.twin));
  out << FormatReport(Compare(single, twin));
  return kExitOk;
}

}  // namespace

std::uint64_t ParseByteSize(std::string_view text) {
  std::uint64_t multiplier = 1;
  std::string_view digits = text;
  auto strip = [&](std::string_view suffix, std::uint64_t m) {
    if (digits.size() > suffix.size() && digits.substr(digits.size() - suffix.size()) == suffix) {
      digits.remove_suffix(suffix.size());
      multiplier = m;
      return true;
    }
    return false;
  };
  strip("Ki", std::uint64_t{1} << 10) || strip("Mi", std::uint64_t{1} << 20) || strip("Gi", std::uint64_t{1} << 30);

  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("bad size '" + std::string(text) + "' (use an integer with optional Ki/Mi/Gi)");
  }
  if (value > UINT64_MAX / multiplier) throw std::invalid_argument("size '" + std::string(text) + "' overflows");
  return value * multiplier;
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-block public cluster control plane and flow-level network simulator", "pcluster"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Parse a config, build the cluster and check its invariants");
  validate->add_option("-c,--config", validate_args.config, "Cluster config file")->required();

  AllocArgs alloc_args;
  auto* alloc = app.add_subcommand("alloc", "Allocate one block on a fresh cluster and print it");
  alloc->add_option("-c,--config", alloc_args.config, "Cluster config file (built-in defaults if omitted)");
  alloc->add_option("--owner", alloc_args.owner, "Owning user")->required();
  alloc->add_option("-n,--n", alloc_args.n, "Number of workers")->required()->check(CLI::PositiveNumber);
  alloc->add_option("--workload", alloc_args.workload, "processor | io")
      ->check(CLI::IsMember({"processor", "io"}, CLI::ignore_case));

  RouteArgs route_args;
  auto* route = app.add_subcommand("route", "Allocate a block for --owner, then route a command from --user to it");
  route->add_option("-c,--config", route_args.config, "Cluster config file (built-in defaults if omitted)");
  route->add_option("--owner", route_args.owner, "Block owner")->required();
  route->add_option("-n,--n", route_args.n, "Number of workers in the block")->check(CLI::PositiveNumber);
  route->add_option("--user", route_args.user, "User sending the command (defaults to the owner)");
  route->add_option("--verb", route_args.verb, "submit | status | cancel")
      ->check(CLI::IsMember({"submit", "status", "cancel"}, CLI::ignore_case));
  route->add_option("--request-bytes", route_args.request_bytes, "Request payload size");
  route->add_option("--response-bytes", route_args.response_bytes, "Response payload size");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a ping-pong size sweep and write CSV");
  bench->add_option("-c,--config", bench_args.config, "Cluster config file (built-in defaults if omitted)");
  bench->add_option("--mode", bench_args.mode, "conventional | independent")
      ->check(CLI::IsMember({"conventional", "independent"}, CLI::ignore_case));
  bench->add_option("--tier", bench_args.tier, "Data channel tier: fe | ge")
      ->check(CLI::IsMember({"fe", "ge"}, CLI::ignore_case));
  bench->add_option("--blocks", bench_args.blocks, "Blocks run simultaneously: 1 or 2")->check(CLI::Range(1, 2));
  bench->add_option("--size-min", bench_args.size_min, "Smallest message (Ki/Mi/Gi suffixes allowed)");
  bench->add_option("--size-max", bench_args.size_max, "Largest message (Ki/Mi/Gi suffixes allowed)");
  bench->add_option("--reps", bench_args.reps, "Repetitions per size")->check(CLI::PositiveNumber);
  bench->add_option("-o,--out", bench_args.out, "Output CSV path, '-' for stdout");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Compare single-block and twin-block sweep CSVs");
  report->add_option("--single", report_args.single, "Single-block CSV")->required();
  report->add_option("--twin", report_args.twin, "Twin-block CSV")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return DoValidate(validate_args, out, err);
    if (*alloc) return DoAlloc(alloc_args, out, err);
    if (*route) return DoRoute(route_args, out, err);
    if (*bench) return DoBench(bench_args, out, err);
    if (*report) return DoReport(report_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitFor(e.code());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pcluster::cli
