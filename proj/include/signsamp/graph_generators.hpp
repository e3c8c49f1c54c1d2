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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "signsamp/graph.hpp"

namespace signsamp {

// Random geometric graph on the unit square. Every vertex is joined to its
// k nearest neighbours (union symmetrization) with Gaussian kernel weights
// exp(-d^2 / sigma^2), sigma = mean k-NN distance.
struct SensorGraphParams {
  std::size_t n_vertices = 40;
  std::size_t k_neighbors = 6;  // about 147 edges at N = 40
};

struct ErdosRenyiParams {
  std::size_t n_vertices = 40;
  double p = 0.3;
};

// Ring lattice with k neighbours per vertex (k/2 per side), each lattice edge
// rewired with probability p.
struct WattsStrogatzParams {
  std::size_t n_vertices = 40;
  std::size_t k = 4;
  double p = 0.25;
};

using GraphParams = std::variant<SensorGraphParams, ErdosRenyiParams, WattsStrogatzParams>;

inline constexpr int kMaxGeneratorAttempts = 100;

// Draws with rng_seed, rng_seed+1, ... until the draw is connected. Throws
// Error(kConnectivityFailure) after kMaxGeneratorAttempts draws and
// Error(kInvalidArgument) for implausible parameters.
Graph generate_graph(const GraphParams& params, std::uint64_t rng_seed);

std::string graph_kind_name(const GraphParams& params);

}  // namespace signsamp
