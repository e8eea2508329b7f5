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

#include "fluid_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcluster::oracle {

std::vector<double> WaterFill(const std::vector<std::vector<int>>& paths, const std::vector<double>& capacities) {
  const std::size_t n = paths.size();
  std::vector<double> rate(n, 0.0);
  std::vector<bool> frozen(n, false);
  for (std::size_t f = 0; f < n; ++f) frozen[f] = paths[f].empty();

  auto any_unfrozen = [&] { return std::find(frozen.begin(), frozen.end(), false) != frozen.end(); };
  while (any_unfrozen()) {
    std::vector<double> used(capacities.size(), 0.0);
    std::vector<int> climbing(capacities.size(), 0);
    for (std::size_t f = 0; f < n; ++f) {
      for (int l : paths[f]) {
        used[l] += rate[f];
        if (!frozen[f]) ++climbing[l];
      }
    }
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < capacities.size(); ++l) {
      if (climbing[l] > 0) delta = std::min(delta, (capacities[l] - used[l]) / climbing[l]);
    }
    delta = std::max(delta, 0.0);
    for (std::size_t f = 0; f < n; ++f) {
      if (!frozen[f]) rate[f] += delta;
    }
    // Freeze everything crossing a link that is now full.
    for (std::size_t l = 0; l < capacities.size(); ++l) {
      if (climbing[l] == 0) continue;
      const double headroom = capacities[l] - used[l] - climbing[l] * delta;
      if (headroom <= 1e-9 * capacities[l]) {
        for (std::size_t f = 0; f < n; ++f) {
          if (std::find(paths[f].begin(), paths[f].end(), static_cast<int>(l)) != paths[f].end()) frozen[f] = true;
        }
      }
    }
  }
  return rate;
}

bool IsMaxMinFair(const std::vector<std::vector<int>>& paths, const std::vector<double>& capacities,
                  const std::vector<double>& rates, double rel_tol) {
  std::vector<double> load(capacities.size(), 0.0);
  for (std::size_t f = 0; f < paths.size(); ++f) {
    for (int l : paths[f]) load[l] += rates[f];
  }
  for (std::size_t l = 0; l < capacities.size(); ++l) {
    if (load[l] > capacities[l] * (1.0 + rel_tol)) return false;
  }
  for (std::size_t f = 0; f < paths.size(); ++f) {
    if (paths[f].empty()) continue;
    bool has_bottleneck = false;
    for (int l : paths[f]) {
      if (load[l] < capacities[l] * (1.0 - rel_tol)) continue;
      bool is_max = true;
      for (std::size_t g = 0; g < paths.size(); ++g) {
        const bool shares = std::find(paths[g].begin(), paths[g].end(), l) != paths[g].end();
        if (shares && rates[g] > rates[f] * (1.0 + rel_tol)) is_max = false;
      }
      if (is_max) has_bottleneck = true;
    }
    if (!has_bottleneck) return false;
  }
  return true;
}

std::vector<double> FixedStepCompletion(const Instance& instance, double dt_us) {
  const auto& flows = instance.flows;
  const std::size_t n = flows.size();
  std::vector<double> remaining(n);
  std::vector<double> done(n, -1.0);
  for (std::size_t f = 0; f < n; ++f) {
    remaining[f] = flows[f].bits;
    if (remaining[f] <= 0.0) done[f] = flows[f].start_us + flows[f].latency_us;
  }

  double t = 0.0;
  auto pending = [&] { return std::any_of(done.begin(), done.end(), [](double d) { return d < 0.0; }); };
  while (pending()) {
    std::vector<std::size_t> active;
    std::vector<std::vector<int>> paths;
    for (std::size_t f = 0; f < n; ++f) {
      if (done[f] < 0.0 && flows[f].start_us <= t + 1e-9) {
        active.push_back(f);
        paths.push_back(flows[f].links);
      }
    }
    const std::vector<double> rates = WaterFill(paths, instance.capacities_bps);
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::size_t f = active[k];
      const double per_step = rates[k] * dt_us * 1e-6;
      if (remaining[f] <= per_step) {
        const double drain_end = t + remaining[f] / (rates[k] * 1e-6);
        done[f] = drain_end + flows[f].latency_us;
        remaining[f] = 0.0;
      } else {
        remaining[f] -= per_step;
      }
    }
    t += dt_us;
  }
  return done;
}

Instance RandomInstance(std::mt19937_64& rng, int max_flows, int max_links) {
  std::uniform_int_distribution<int> n_links_dist(1, max_links);
  std::uniform_int_distribution<int> n_flows_dist(1, max_flows);
  std::uniform_real_distribution<double> cap_dist(5e7, 1e9);
  std::uniform_int_distribution<int> start_dist(0, 3000);
  std::uniform_real_distribution<double> bytes_dist(5e4, 5e5);
  std::uniform_real_distribution<double> latency_dist(0.0, 200.0);

  Instance inst;
  const int n_links = n_links_dist(rng);
  for (int l = 0; l < n_links; ++l) {
    // Mix the nominal 100 Mb/s and 1 Gb/s rates with arbitrary ones.
    const int pick = static_cast<int>(rng() % 3);
    inst.capacities_bps.push_back(pick == 0 ? 1e8 : pick == 1 ? 1e9 : cap_dist(rng));
  }
  const int n_flows = n_flows_dist(rng);
  for (int f = 0; f < n_flows; ++f) {
    OracleFlow flow;
    std::uniform_int_distribution<int> path_len(1, std::min(3, n_links));
    std::vector<int> all(n_links);
    for (int l = 0; l < n_links; ++l) all[l] = l;
    std::shuffle(all.begin(), all.end(), rng);
    flow.links.assign(all.begin(), all.begin() + path_len(rng));
    std::sort(flow.links.begin(), flow.links.end());
    flow.start_us = start_dist(rng);
    flow.bits = std::floor(bytes_dist(rng)) * 8.0;
    flow.latency_us = latency_dist(rng);
    inst.flows.push_back(std::move(flow));
  }
  return inst;
}

}  // namespace pcluster::oracle
