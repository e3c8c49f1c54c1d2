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

// Items with attribute vectors and a score each. The score range is the
// known [min, max] of the scores.
struct RatingDataset {
  std::vector<std::string> ids;
  Eigen::MatrixXd attributes;  // one row per item
  Eigen::VectorXd scores;
  double lo = 0.0;
  double hi = 0.0;
};

// CSV `id,attr_1,...,attr_d,score` (d >= 1). Throws kSchemaError on a bad
// header or row, kEmptyDataset without rows.
RatingDataset ingest_ratings(std::istream& in);
RatingDataset ingest_ratings(const std::string& path);
void write_ratings_csv(std::ostream& out, const RatingDataset& data);

// Weights max(0, <z_i, z_j>) of z-scored attributes; each item keeps its knn
// strongest positive links (union over both endpoints); components are then
// joined by their strongest cross links until the graph is connected.
Graph build_similarity_graph(const RatingDataset& data, std::size_t knn);

// Random attributes, a smooth score field over their similarity graph (random
// spectral coefficients decaying with frequency) plus noise, mapped into
// [0, 10] with one decimal.
RatingDataset synthetic_ratings(std::size_t n_items, std::size_t n_attributes, std::size_t knn,
                                std::uint64_t rng_seed);

// The sign-sampling target derived from a dataset: the DC level removed, the
// `bandwidth` largest-magnitude non-DC spectral components kept, normalized.
struct RatingSignal {
  Graph graph;
  GraphSpectrum spectrum;
  Passband passband;
  double dc_level = 0.0;  // per-vertex DC value (the mean score)
  Eigen::VectorXd h;      // passband coefficients, unit norm
  Eigen::VectorXd x_star; // U_B h
  double retained_energy = 0.0;  // kept share of the non-DC energy
};

RatingSignal prepare_rating_signal(const RatingDataset& data, std::size_t knn,
                                   std::size_t bandwidth);

// Nearest integer, halves rounded up.
long rating_label(double score);

// dc + c * x_hat with the largest c > 0 that keeps every entry in [lo, hi].
Eigen::VectorXd estimate_scores(double dc_level, const Eigen::VectorXd& x_hat, double lo,
                                double hi);

struct TopK {
  double top1 = 0.0;
  double top2 = 0.0;
};

// Share of items whose label is the nearest integer to the estimate (top1),
// or one of the two nearest integers (top2).
TopK topk_accuracy(const Eigen::VectorXd& estimate, const Eigen::VectorXd& scores);

struct RatingRow {
  std::size_t dataset = 0;
  std::string sampler;
  std::size_t budget = 0;
  double delta = 0.0;
  double top1 = 0.0;
  double top2 = 0.0;
  double retained_energy = 0.0;
};

using RatingSink = std::function<void(const RatingRow&)>;

// Every manifest sampler at every budget on one dataset. Accuracy and delta
// are averaged over the K recoveries (and over repeats for Random).
std::vector<RatingRow> rating_pipeline(const RatingDataset& data, std::size_t dataset_index,
                                       const ExperimentManifest& manifest,
                                       const RatingSink& sink = {});

// The CSV dataset if the manifest names one, else `datasets` synthetic sets.
std::vector<RatingRow> run_ratings(const ExperimentManifest& manifest,
                                   const RatingSink& sink = {});

void write_rating_header(std::ostream& out);
void write_rating_row(std::ostream& out, const RatingRow& row);

}  // namespace signsamp::experiment
