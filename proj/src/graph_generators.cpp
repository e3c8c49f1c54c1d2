// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "signsamp/graph_generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "signsamp/error.hpp"

namespace signsamp {
namespace {

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

std::vector<Edge> draw_sensor(const SensorGraphParams& params, std::mt19937_64& rng) {
  const std::size_t n = params.n_vertices;
  const std::size_t k = params.k_neighbors;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& pt : pts) {
    pt.first = unit(rng);
    pt.second = unit(rng);
  }
  auto dist = [&](std::size_t a, std::size_t b) {
    return std::hypot(pts[a].first - pts[b].first, pts[a].second - pts[b].second);
  };

  EdgeSet chosen;
  double knn_dist_sum = 0.0;
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = dist(v, a), db = dist(v, b);
      return da != db ? da < db : a < b;
    });
    // order[0] is v itself.
    for (std::size_t j = 1; j <= k; ++j) {
      const std::size_t u = order[j];
      chosen.emplace(std::min(u, v), std::max(u, v));
      knn_dist_sum += dist(v, u);
    }
  }
  const double sigma = knn_dist_sum / static_cast<double>(n * k);
  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  for (const auto& [p, q] : chosen) {
    const double d = dist(p, q);
    // Floor keeps far-apart k-NN pairs strictly positive.
    const double w = std::max(std::exp(-d * d / (sigma * sigma)), 1e-12);
    edges.push_back({p, q, w});
  }
  return edges;
}

std::vector<Edge> draw_erdos_renyi(const ErdosRenyiParams& params, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(params.p);
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < params.n_vertices; ++p) {
    for (std::size_t q = p + 1; q < params.n_vertices; ++q) {
      if (coin(rng)) edges.push_back({p, q, 1.0});
    }
  }
  return edges;
}

std::vector<Edge> draw_watts_strogatz(const WattsStrogatzParams& params, std::mt19937_64& rng) {
  const std::size_t n = params.n_vertices;
  const std::size_t half = params.k / 2;
  std::bernoulli_distribution rewire(params.p);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  // Lattice edges in a fixed order; rewiring keeps the source endpoint.
  std::vector<std::pair<std::size_t, std::size_t>> lattice;
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t v = 0; v < n; ++v) lattice.emplace_back(v, (v + j) % n);
  }
  EdgeSet present;
  for (const auto& [a, b] : lattice) present.emplace(std::min(a, b), std::max(a, b));

  for (auto& [a, b] : lattice) {
    if (!rewire(rng)) continue;
    // Retry a bounded number of targets; keep the lattice edge if all collide.
    for (int attempt = 0; attempt < 64; ++attempt) {
      const std::size_t c = pick(rng);
      const auto key = std::make_pair(std::min(a, c), std::max(a, c));
      if (c == a || present.count(key)) continue;
      present.erase({std::min(a, b), std::max(a, b)});
      present.insert(key);
      b = c;
      break;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(present.size());
  for (const auto& [p, q] : present) edges.push_back({p, q, 1.0});
  return edges;
}

void validate(const SensorGraphParams& p) {
  if (p.n_vertices < 2 || p.k_neighbors == 0 || p.k_neighbors >= p.n_vertices) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("sensor graph needs 1 <= k < n (n={}, k={})", p.n_vertices,
                            p.k_neighbors));
  }
}

void validate(const ErdosRenyiParams& p) {
  if (p.n_vertices < 2 || !(p.p > 0.0 && p.p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("ER graph needs n >= 2 and p in (0,1] (p={})", p.p));
  }
}

void validate(const WattsStrogatzParams& p) {
  if (p.k < 2 || p.k % 2 != 0 || p.k >= p.n_vertices || !(p.p >= 0.0 && p.p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("WS graph needs even 2 <= k < n and p in [0,1] (k={}, p={})",
                            p.k, p.p));
  }
}

}  // namespace

Graph generate_graph(const GraphParams& params, std::uint64_t rng_seed) {
  std::visit([](const auto& p) { validate(p); }, params);
  const std::size_t n = std::visit([](const auto& p) { return p.n_vertices; }, params);

  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    std::mt19937_64 rng(rng_seed + static_cast<std::uint64_t>(attempt));
    std::vector<Edge> edges = std::visit(
        [&](const auto& p) -> std::vector<Edge> {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SensorGraphParams>) return draw_sensor(p, rng);
          else if constexpr (std::is_same_v<T, ErdosRenyiParams>) return draw_erdos_renyi(p, rng);
          else return draw_watts_strogatz(p, rng);
        },
        params);
    if (is_connected(n, edges)) return Graph(n, std::move(edges));
  }
  throw Error(ErrorCode::kConnectivityFailure,
              fmt::format("no connected {} graph after {} draws starting at seed {}",
                          graph_kind_name(params), kMaxGeneratorAttempts, rng_seed));
}

std::string graph_kind_name(const GraphParams& params) {
  switch (params.index()) {
    case 0: return "sensor";
    case 1: return "er";
    default: return "ws";
  }
}

}  // namespace signsamp
