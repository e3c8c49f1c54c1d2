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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "signsamp/experiment/manifest.hpp"
#include "signsamp/graph.hpp"
#include "signsamp/spectral.hpp"

namespace signsamp::experiment {

struct BenchmarkRow {
  std::string sampler;
  std::size_t budget = 0;
  std::size_t trial = 0;
  double delta = 0.0;
  bool stopped_early = false;
};

struct SummaryRow {
  std::string sampler;
  std::size_t budget = 0;
  std::size_t trials = 0;
  double mean_delta = 0.0;
  double std_err = 0.0;
};

// Called once per finished row, in output order, so callers can stream rows
// to disk and keep partial results if a later trial fails.
using RowSink = std::function<void(const BenchmarkRow&)>;

// Angular error of UPOCS recoveries (K starts) from the given observations.
double recovery_delta(const SpectralBasis& basis, const Eigen::VectorXd& x_star,
                      const ObservationSequence& observations, std::size_t k, std::size_t n_max,
                      std::uint64_t recovery_seed);

// For every trial: a fresh signal, every sampler at every budget, UPOCS from
// the same K starting points, and delta. GSS runs once at the largest budget
// and is evaluated on its prefixes; Random averages `random_repeats` nested
// permutations; Full observes the whole domain (budget = |domain|).
std::vector<BenchmarkRow> run_benchmark(const ExperimentManifest& manifest,
                                        const SpectralBasis& basis, const RowSink& sink = {});
std::vector<BenchmarkRow> run_benchmark(const ExperimentManifest& manifest,
                                        const RowSink& sink = {});

// Mean and standard error per (sampler, budget), in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<BenchmarkRow>& rows);

void write_benchmark_header(std::ostream& out);
void write_benchmark_row(std::ostream& out, const BenchmarkRow& row);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

struct BandwidthRow {
  std::size_t bandwidth = 0;
  BenchmarkRow row;
};

struct BandwidthSummaryRow {
  std::size_t bandwidth = 0;
  SummaryRow summary;
  double cap_ratio = 0.0;  // spherical cap fraction at delta = 0.3
};

struct BandwidthSweep {
  std::vector<BandwidthRow> rows;
  std::vector<BandwidthSummaryRow> summary;
  std::vector<std::pair<std::string, double>> spearman;  // per sampler, B vs mean delta
  // Spearman > 0.8 for GSS (every sampler if GSS is absent). True with fewer
  // than two bandwidths.
  bool trend_ok = true;
};

// Passband of width b starting at `start`, shifted down to fit in 1..n.
Passband passband_at(std::size_t start, std::size_t b, std::size_t n_vertices);

// One benchmark per bandwidth at the single budget manifest.budgets[0].
BandwidthSweep run_bandwidth_sweep(const ExperimentManifest& manifest);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

void write_bandwidth_csv(std::ostream& out, const std::vector<BandwidthRow>& rows);
void write_bandwidth_summary_csv(std::ostream& out, const BandwidthSweep& sweep);

}  // namespace signsamp::experiment
