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
#include <vector>

#include <Eigen/Core>

#include "signsamp/cone.hpp"
#include "signsamp/incomplete_beta.hpp"
#include "signsamp/volume.hpp"

// Small-scale reference computations for the sampling decision process: a
// state is a feasible cone, an action observes the sign of one candidate, and
// the reward of an action is the expected shrinkage of the region's volume.

namespace signsamp {

// Volume fraction of a cone.
using VolumeOracle = std::function<double(const FeasibleCone&)>;

// exact_volume_lowdim (B <= 3).
VolumeOracle exact_volume_oracle();
// Monte Carlo over a fixed cloud (common random numbers). The cloud must
// outlive the oracle.
VolumeOracle cloud_volume_oracle(const BallSampleCloud& cloud);

// A sample available to the decision process, with its constraint row.
struct Candidate {
  SampleId id;
  Eigen::VectorXd row;
};

// child / parent. Throws kInvalidVolumes unless 0 < parent and
// 0 <= child <= parent (up to 1e-12 relative slack).
double transition_prob(double parent_vol, double child_vol);

// 2 / (1/v_plus + 1/v_minus), and 0 when either side is empty.
double marginal_benefit(double v_plus, double v_minus);

// Volumes of the two children of `cone` when `row` is observed.
struct SplitVolumes {
  double parent = 0.0;
  double plus = 0.0;   // row^T w >= 0
  double minus = 0.0;  // row^T w <= 0
};
SplitVolumes split_volumes(const FeasibleCone& cone, const Candidate& candidate,
                           const VolumeOracle& volume);

double expected_marginal_benefit(const FeasibleCone& cone, const Candidate& candidate,
                                 const VolumeOracle& volume);

// Binary tree of regions over the sign outcomes of a fixed sequence. Zero
// signs are not branched on: they occur with probability zero.
struct SegmentationNode {
  ObservationSequence observations;
  double volume_fraction = 0.0;
  double transition_prob = 1.0;  // from the parent; 1 at the root
  std::vector<SegmentationNode> children;  // +1 first, then -1
};

// Throws kTreeTooLarge for sequences longer than 12 and kInvalidVolumes if a
// node's children do not add up to it within sum_tol (relative).
SegmentationNode build_segmentation_tree(const FeasibleCone& initial,
                                         const std::vector<Candidate>& sequence,
                                         const VolumeOracle& volume, double sum_tol = 1e-12);

// Vol(root) - E[Vol(leaf)]: the objective of a fixed sequence.
double sequence_value(const SegmentationNode& root);

struct PolicyStep {
  ObservationSequence prefix;
  SampleId choice;
};

struct PolicyValue {
  double phi = 0.0;  // Vol(J_0) - E[Vol(J_T)]
  std::vector<PolicyStep> policy;
  // Greedy only: nodes where the minimum-imbalance choice and the maximum
  // benefit choice differ beyond ties.
  std::size_t criterion_disagreements = 0;
};

// Best adaptive policy of horizon T by backward induction. Throws
// kInstanceTooLarge beyond 8 candidates, T = 3 or B = 3.
PolicyValue exhaustive_optimal(const FeasibleCone& initial, const std::vector<Candidate>& candidates,
                               std::size_t horizon, const VolumeOracle& volume);

// Best fixed (non-adaptive) sequence of length T over the same candidates.
PolicyValue best_fixed_sequence(const FeasibleCone& initial,
                                const std::vector<Candidate>& candidates, std::size_t horizon,
                                const VolumeOracle& volume);

// Adaptive greedy: at each node the candidate with the smallest child volume
// imbalance, cross-checked against the largest marginal benefit.
PolicyValue greedy_exact_policy(const FeasibleCone& initial,
                                const std::vector<Candidate>& candidates, std::size_t horizon,
                                const VolumeOracle& volume);

struct SubmodularityReport {
  std::size_t triples = 0;
  std::size_t violations = 0;
  double max_gap = 0.0;  // largest Delta(a|O2) - Delta(a|O1), or negative Delta
};

// Random B = 3 instances: a hidden direction, an observation history O2 and a
// prefix O1 of it, and an unobserved candidate a. Checks
// Delta(a|O1) >= Delta(a|O2) - 1e-12 and Delta >= 0 with exact volumes.
SubmodularityReport check_adaptive_submodularity(std::size_t n_triples, std::uint64_t rng_seed);

}  // namespace signsamp
