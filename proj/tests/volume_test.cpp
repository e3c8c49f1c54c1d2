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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "signsamp/error.hpp"
#include "signsamp/random.hpp"
#include "signsamp/volume.hpp"

namespace signsamp {
namespace {

using testing::random_cone;

FeasibleCone orthant(std::size_t dim) {
  FeasibleCone c(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    c = c.add_constraint(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(dim),
                                               static_cast<Eigen::Index>(i)),
                         Relation::kGeq, SampleId::vertex(i));
  }
  return c;
}

TEST(VolumeTest, UnconstrainedIsWholeBall) {
  const VolumeEstimate v = estimate_volume(FeasibleCone(4), 2000, 1);
  EXPECT_EQ(v.fraction, 1.0);
  EXPECT_EQ(v.std_err, 0.0);
}

TEST(VolumeTest, HalfspaceAndOctant) {
  const FeasibleCone half =
      FeasibleCone(2).add_constraint(Eigen::Vector2d(1, 1), Relation::kGeq, SampleId::vertex(0));
  const VolumeEstimate h = estimate_volume(half, 200000, 2);
  EXPECT_NEAR(h.fraction, 0.5, 3 * h.std_err);
  const VolumeEstimate o = estimate_volume(orthant(3), 200000, 3);
  EXPECT_NEAR(o.fraction, 0.125, 3 * o.std_err);
}

TEST(VolumeTest, RejectsTooFewSamples) {
  EXPECT_THROW(estimate_volume(orthant(2), 999, 1), Error);
  EXPECT_THROW(BallSampleCloud(0, 10, 1), Error);
}

TEST(VolumeTest, CloudPointsLieInBallWithUniformRadius) {
  const BallSampleCloud cloud(3, 50000, 4);
  const Eigen::VectorXd norms = cloud.points().colwise().norm();
  EXPECT_LE(norms.maxCoeff(), 1.0 + 1e-12);
  // P(|x| <= r) = r^3 for the uniform ball.
  const double below = static_cast<double>((norms.array() <= 0.5).count()) / 50000.0;
  EXPECT_NEAR(below, 0.125, 0.01);
}

TEST(VolumeTest, ExactLowDimensionalOrthants) {
  EXPECT_EQ(exact_volume_lowdim(orthant(2)), 0.25);
  EXPECT_NEAR(exact_volume_lowdim(orthant(3)), 0.125, 1e-15);
  EXPECT_EQ(exact_volume_lowdim(FeasibleCone(3)), 1.0);
  EXPECT_THROW(exact_volume_lowdim(orthant(4)), Error);
}

TEST(VolumeTest, ExactTwoDimensionalMatchesAngleSweep) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const FeasibleCone c = random_cone(2, 2 + static_cast<std::size_t>(t % 4), rng, 0.3, 0.0);
    EXPECT_NEAR(exact_volume_lowdim(c), testing::sweep_fraction_2d(testing::oriented_rows(c)), 1e-4);
  }
}

TEST(VolumeTest, ExactThreeDimensionalWedge) {
  // Two half-spaces meeting at angle a cut a wedge of fraction (pi - a) / (2 pi).
  const double a = 0.7;
  FeasibleCone c(3);
  c = c.add_constraint(Eigen::Vector3d(1, 0, 0), Relation::kGeq, SampleId::vertex(0));
  c = c.add_constraint(Eigen::Vector3d(std::cos(a), std::sin(a), 0), Relation::kGeq,
                       SampleId::vertex(1));
  EXPECT_NEAR(exact_volume_lowdim(c), (std::numbers::pi - a) / (2 * std::numbers::pi), 1e-12);
}

TEST(VolumeTest, ExactThreeDimensionalMatchesMonteCarlo) {
  std::mt19937_64 rng(6);
  const BallSampleCloud cloud(3, 400000, 7);
  for (int t = 0; t < 15; ++t) {
    const FeasibleCone c = random_cone(3, 3 + static_cast<std::size_t>(t % 5), rng, 0.0, 0.0);
    const VolumeEstimate est = estimate_volume(c, cloud);
    EXPECT_NEAR(exact_volume_lowdim(c), est.fraction, 4 * est.std_err + 1e-12) << "cone " << t;
  }
}

TEST(VolumeTest, PartitionIsExactUnderCommonRandomNumbers) {
  std::mt19937_64 rng(8);
  const BallSampleCloud cloud(5, 20000, 9);
  for (int t = 0; t < 30; ++t) {
    const FeasibleCone c = random_cone(5, 6, rng, 0.0, 0.0);
    const Eigen::VectorXd r = random_unit_vector(5, rng);
    const std::size_t plus = count_hits(c.add_constraint(r, Relation::kGeq, SampleId::vertex(99)), cloud);
    const std::size_t minus = count_hits(c.add_constraint(r, Relation::kLeq, SampleId::vertex(99)), cloud);
    EXPECT_EQ(plus + minus, count_hits(c, cloud));
  }
}

TEST(VolumeTest, AddingConstraintsNeverGrowsVolume) {
  std::mt19937_64 rng(10);
  const BallSampleCloud cloud(4, 20000, 11);
  for (int t = 0; t < 30; ++t) {
    FeasibleCone c(4);
    std::size_t prev = count_hits(c, cloud);
    for (std::size_t i = 0; i < 8; ++i) {
      c = c.add_constraint(random_unit_vector(4, rng), Relation::kGeq, SampleId::edge(i));
      const std::size_t now = count_hits(c, cloud);
      EXPECT_LE(now, prev);
      prev = now;
    }
  }
}

TEST(VolumeTest, ReduceEqualitiesKeepsInequalitiesInSubspace) {
  FeasibleCone c(3);
  c = c.add_constraint(Eigen::Vector3d(0, 0, 1), Relation::kEq, SampleId::vertex(0));
  c = c.add_constraint(Eigen::Vector3d(1, 0, 0.5), Relation::kGeq, SampleId::vertex(1));
  c = c.add_constraint(Eigen::Vector3d(0, 1, -2), Relation::kGeq, SampleId::vertex(2));
  c = c.add_constraint(Eigen::Vector3d(0, 0, 3), Relation::kGeq, SampleId::vertex(3));
  const ReducedCone r = reduce_equalities(c);
  EXPECT_EQ(r.cone.dim(), 2u);
  // The last row lies in the equality span and disappears.
  EXPECT_EQ(r.cone.n_constraints(), 2u);
  const Eigen::MatrixXd gram = r.basis.transpose() * r.basis;
  EXPECT_TRUE(gram.isApprox(Eigen::Matrix2d::Identity(), 1e-12));
  EXPECT_NEAR(exact_volume_lowdim(r.cone), 0.25, 1e-12);
}

TEST(VolumeTest, EqualityPointsNeverHit) {
  const FeasibleCone c =
      FeasibleCone(3).add_constraint(Eigen::Vector3d(1, 2, 3), Relation::kEq, SampleId::vertex(0));
  EXPECT_EQ(count_hits(c, BallSampleCloud(3, 5000, 1)), 0u);
}

}  // namespace
}  // namespace signsamp
