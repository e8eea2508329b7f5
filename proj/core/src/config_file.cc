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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pcluster {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void Fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

template <typename T>
T ParseNumber(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) Fail("bad numeric value for " + key + ": '" + text + "'");
  return value;
}

// libstdc++ 11 has no floating-point from_chars.
double ParseDouble(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double value = 0.0;
  in >> value;
  if (in.fail() || !in.eof() || !std::isfinite(value)) Fail("bad numeric value for " + key + ": '" + text + "'");
  return value;
}

void ApplyTier(const pt::ptree& section, const std::string& name, NetworkTier& tier) {
  for (const auto& [key, node] : section) {
    const std::string full = name + "." + key;
    const std::string value = node.get_value<std::string>();
    if (key == "bandwidth_bps") {
      tier.bandwidth_bps = ParseDouble(full, value);
    } else if (key == "latency_us") {
      tier.latency_us = ParseDouble(full, value);
    } else if (key == "max_reliable_bytes") {
      tier.max_reliable_bytes = ParseNumber<std::uint64_t>(full, value);
    } else {
      Fail("unknown key " + full);
    }
  }
}

}  // namespace

ClusterConfig ParseConfig(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    Fail(e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  ClusterConfig config;
  for (const auto& [section_name, section] : tree) {
    if (!section.data().empty()) Fail("key '" + section_name + "' outside of any section");
    if (section_name == "cluster") {
      for (const auto& [key, node] : section) {
        const std::string value = node.get_value<std::string>();
        if (key == "mode") {
          config.mode = ParseClusterMode(value);
        } else if (key == "pool") {
          config.worker_pool_size = ParseNumber<std::uint32_t>("cluster.pool", value);
        } else {
          Fail("unknown key cluster." + key);
        }
      }
    } else if (section_name == "tier.fe") {
      ApplyTier(section, section_name, config.fe);
    } else if (section_name == "tier.ge") {
      ApplyTier(section, section_name, config.ge);
    } else if (section_name == "channels") {
      for (const auto& [key, node] : section) {
        ChannelKind kind;
        try {
          kind = ParseChannelKind(key);
        } catch (const Error&) {
          Fail("unknown key channels." + key);
        }
        config.channel_tiers[kind] = ParseTierName(node.get_value<std::string>());
      }
    } else {
      Fail("unknown section [" + section_name + "]");
    }
  }

  ValidateConfig(config);
  return config;
}

ClusterConfig LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string FormatConfig(const ClusterConfig& config) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "[cluster]\n"
     << "mode=" << ToString(config.mode) << "\n"
     << "pool=" << config.worker_pool_size << "\n";
  for (const NetworkTier* tier : {&config.fe, &config.ge}) {
    os << "\n[tier." << (tier->name == TierName::kFE ? "fe" : "ge") << "]\n"
       << "bandwidth_bps=" << tier->bandwidth_bps << "\n"
       << "latency_us=" << tier->latency_us << "\n"
       << "max_reliable_bytes=" << tier->max_reliable_bytes << "\n";
  }
  os << "\n[channels]\n";
  for (const auto& [kind, tier] : config.channel_tiers) {
    os << ToString(kind) << "=" << (tier == TierName::kFE ? "fe" : "ge") << "\n";
  }
  return os.str();
}

}  // namespace pcluster
