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
#include <iosfwd>
#include <string>
#include <vector>

#include "signsamp/graph.hpp"
#include "signsamp/graph_generators.hpp"
#include "signsamp/spectral.hpp"

namespace signsamp::experiment {

enum class SamplerKind { kGss, kRandom, kRowNorm, kFull };

std::string sampler_name(SamplerKind kind);
SamplerKind parse_sampler(const std::string& name);
std::string domain_name(SampleDomain domain);
SampleDomain parse_domain(const std::string& name);

// Synthetic rating data and the graph built over it.
struct RatingsSpec {
  std::string csv_path;  // empty: use the synthetic generator
  std::size_t n_items = 100;
  std::size_t n_attributes = 6;
  std::size_t knn = 10;
  std::size_t bandwidth = 13;
  std::size_t datasets = 20;
};

// Everything an experiment run needs. Read from an INI file:
//
//   [graph]     kind = sensor|er|ws, n_vertices, k_neighbors, p, k, seed
//   [signal]    passband = 29-35 (range) or 29,30,31 (list)
//               bandwidths = 3,5,7 and passband_start = 29 (bandwidth sweep)
//   [sampling]  domain = vertices|vertices+edges, budgets = 10,15,...
//               samplers = gss,random,row_norm,full, random_repeats = 50
//   [recovery]  k = 50, n_max = 10000
//   [run]       trials = 20, seed = 7, output_dir = results
//   [ratings]   csv, n_items, n_attributes, knn, bandwidth, datasets
struct ExperimentManifest {
  GraphParams graph = SensorGraphParams{};
  std::uint64_t graph_seed = 1;
  Passband passband = contiguous_passband(29, 35);
  std::vector<std::size_t> bandwidths;
  std::size_t passband_start = 29;
  SampleDomain domain = SampleDomain::kVertices;
  std::vector<std::size_t> budgets;
  std::vector<SamplerKind> samplers = {SamplerKind::kGss, SamplerKind::kRandom,
                                       SamplerKind::kRowNorm, SamplerKind::kFull};
  std::size_t random_repeats = 50;
  std::size_t k = 50;
  std::size_t n_max = 10000;
  std::size_t trials = 20;
  std::uint64_t seed = 7;
  std::string output_dir = "results";
  RatingsSpec ratings;
};

// Throws kSchemaError on unknown keys, malformed values or trials = 0;
// kIoError if the file cannot be read.
ExperimentManifest parse_manifest(std::istream& in);
ExperimentManifest load_manifest(const std::string& path);

// Budgets must satisfy B < M <= |domain|. Throws kInvalidArgument.
void validate_budgets(const ExperimentManifest& manifest, std::size_t bandwidth,
                      std::size_t domain_size);

// Comma list of integers with optional a-b ranges ("3,5,7-9").
std::vector<std::size_t> parse_index_list(const std::string& text);

}  // namespace signsamp::experiment
