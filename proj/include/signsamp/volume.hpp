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

#include <Eigen/Core>

#include "signsamp/cone.hpp"

namespace signsamp {

// Fraction of the unit ball inside a cone, i.e. Vol(cone ∩ ball) / Vol(ball).
struct VolumeEstimate {
  double fraction = 0.0;
  std::size_t n_samples = 0;
  double std_err = 0.0;  // sqrt(f (1 - f) / n)
};

// Points drawn uniformly in the unit ball of R^dim (Gaussian direction times
// U^{1/dim} radius). One cloud shared by several cones gives common random
// numbers, so that complementary halfspaces split the hit count exactly.
class BallSampleCloud {
 public:
  BallSampleCloud(std::size_t dim, std::size_t n_samples, std::uint64_t rng_seed);

  std::size_t dim() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }  // dim x n

 private:
  Eigen::MatrixXd points_;
};

// Number of cloud points satisfying every constraint. Equality constraints
// are tested exactly, so they hit with probability zero.
std::size_t count_hits(const FeasibleCone& cone, const BallSampleCloud& cloud);

// Throws kInvalidArgument for n_samples < 1000.
VolumeEstimate estimate_volume(const FeasibleCone& cone, std::size_t n_samples,
                               std::uint64_t rng_seed);
VolumeEstimate estimate_volume(const FeasibleCone& cone, const BallSampleCloud& cloud);

// The cone restricted to the nullspace of its equality rows, written in an
// orthonormal basis of that nullspace. Rows that vanish after projection are
// dropped since they hold everywhere on the subspace.
struct ReducedCone {
  FeasibleCone cone;
  Eigen::MatrixXd basis;  // B x (B - r), orthonormal columns
};

// Throws kDimensionCollapse if the equality rows have rank B.
ReducedCone reduce_equalities(const FeasibleCone& cone);

// Exact volume fraction for B = 2 (arc length / 2 pi) and B = 3 (solid
// angle / 4 pi). Inequality constraints only. Throws kUnsupportedDimension for
// other B and kInvalidArgument if an equality constraint is present.
double exact_volume_lowdim(const FeasibleCone& cone);

}  // namespace signsamp
