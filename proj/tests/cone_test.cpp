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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "signsamp/cone.hpp"
#include "signsamp/double_description.hpp"
#include "signsamp/error.hpp"
#include "signsamp/graph_generators.hpp"

namespace signsamp {
namespace {

using testing::brute_force_evs;
using testing::random_cone;
using testing::same_ray_set;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

FeasibleCone orthant(std::size_t dim) {
  FeasibleCone c(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    c = c.add_constraint(Eigen::VectorXd::Unit(static_cast<Eigen::Index>(dim),
                                               static_cast<Eigen::Index>(i)),
                         Relation::kGeq, SampleId::vertex(i));
  }
  return c;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

TEST(ConeTest, RelationFromSign) {
  EXPECT_EQ(relation_from_sign(Sign::kNegative), Relation::kLeq);
  EXPECT_EQ(relation_from_sign(Sign::kPositive), Relation::kGeq);
  EXPECT_EQ(relation_from_sign(Sign::kZero), Relation::kEq);
}

TEST(ConeTest, ObservationBecomesConstraint) {
  const Graph g = generate_graph(SensorGraphParams{}, 1);
  const SpectralBasis basis(g, contiguous_passband(29, 35));
  const FeasibleCone c = FeasibleCone(7).add_constraint({SampleId::vertex(3), Sign::kPositive}, basis);
  ASSERT_EQ(c.n_constraints(), 1u);
  EXPECT_EQ(c.constraints()[0].relation, Relation::kGeq);
  EXPECT_EQ(c.constraints()[0].row, basis.sample_row(SampleId::vertex(3)));
  EXPECT_EQ(c.relation_of(SampleId::vertex(3)), Relation::kGeq);
  EXPECT_FALSE(c.relation_of(SampleId::vertex(4)).has_value());
}

TEST(ConeTest, ReAddingSameObservationIsIdempotent) {
  const FeasibleCone a = orthant(2);
  const FeasibleCone b = a.add_constraint(vec({1, 0}), Relation::kGeq, SampleId::vertex(0));
  ASSERT_EQ(b.n_constraints(), a.n_constraints());
  for (std::size_t i = 0; i < a.n_constraints(); ++i) {
    EXPECT_EQ(a.constraints()[i].row, b.constraints()[i].row);
    EXPECT_EQ(a.constraints()[i].relation, b.constraints()[i].relation);
  }
}

TEST(ConeTest, ErrorPaths) {
  const FeasibleCone q = orthant(2);
  EXPECT_EQ(code_of([&] { q.add_constraint(vec({-1, 0}), Relation::kLeq, SampleId::vertex(0)); }),
            ErrorCode::kConflictingObservation);
  EXPECT_EQ(code_of([&] { q.add_constraint(vec({0, 0}), Relation::kGeq, SampleId::vertex(5)); }),
            ErrorCode::kZeroRow);
  EXPECT_EQ(code_of([&] { q.add_constraint(vec({1, 0, 0}), Relation::kGeq, SampleId::vertex(5)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { FeasibleCone(0); }), ErrorCode::kInvalidArgument);
}

TEST(ConeTest, QuadrantAndOctantEvs) {
  EXPECT_TRUE(same_ray_set(orthant(2).evs(), {vec({1, 0}), vec({0, 1})}));
  EXPECT_TRUE(same_ray_set(orthant(3).evs(), {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}));
}

TEST(ConeTest, NonPointedConeHasNoEvs) {
  const FeasibleCone half = FeasibleCone(3).add_constraint(vec({1, 0, 0}), Relation::kGeq,
                                                           SampleId::vertex(0));
  EXPECT_FALSE(half.pointed());
  EXPECT_TRUE(half.evs().empty());
  EXPECT_TRUE(FeasibleCone(2).evs().empty());
}

TEST(ConeTest, EqualitiesReduceDimension) {
  // w3 = 0 with the first quadrant of (w1, w2).
  const FeasibleCone c = orthant(2 + 1)
                             .add_constraint(vec({0, 0, 1}), Relation::kEq, SampleId::edge(0));
  EXPECT_EQ(c.equality_rank(), 1u);
  EXPECT_TRUE(same_ray_set(c.evs(), {vec({1, 0, 0}), vec({0, 1, 0})}));
}

TEST(ConeTest, FullRankEqualitiesCollapse) {
  FeasibleCone c(2);
  c = c.add_constraint(vec({1, 0}), Relation::kEq, SampleId::vertex(0));
  c = c.add_constraint(vec({0, 1}), Relation::kEq, SampleId::vertex(1));
  EXPECT_EQ(code_of([&] { c.evs(); }), ErrorCode::kDimensionCollapse);
}

TEST(ConeTest, SubsetCapIsEnforced) {
  Tolerances tol;
  tol.max_subsets = 10;
  std::mt19937_64 rng(3);
  FeasibleCone c(4, tol);
  const FeasibleCone src = random_cone(4, 10, rng, 0.0, 0.0);
  for (const auto& k : src.constraints()) c = c.add_constraint(k.row, k.relation, k.source);
  EXPECT_EQ(code_of([&] { enumerate_evs(c, EvMethod::kSubsetEnumeration); }),
            ErrorCode::kSubsetLimitExceeded);
  EXPECT_NO_THROW(enumerate_evs(c, EvMethod::kDoubleDescription));
}

TEST(ConeTest, DoubleDescriptionMatchesBruteForce) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 120; ++t) {
    const std::size_t dim = 2 + static_cast<std::size_t>(t % 3);
    const std::size_t n = 4 + static_cast<std::size_t>(t % 7);
    const FeasibleCone c = random_cone(dim, n, rng);
    EXPECT_TRUE(same_ray_set(enumerate_evs(c), brute_force_evs(c))) << "cone " << t;
  }
}

TEST(ConeTest, SubsetEnumerationMatchesDoubleDescription) {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 80; ++t) {
    const std::size_t dim = 2 + static_cast<std::size_t>(t % 4);
    const FeasibleCone c = random_cone(dim, 4 + static_cast<std::size_t>(t % 8), rng);
    EXPECT_TRUE(same_ray_set(enumerate_evs(c, EvMethod::kDoubleDescription),
                             enumerate_evs(c, EvMethod::kSubsetEnumeration)))
        << "cone " << t;
  }
}

TEST(ConeTest, EvsAreTightOnEnoughIndependentConstraints) {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 60; ++t) {
    const std::size_t dim = 3 + static_cast<std::size_t>(t % 3);
    const FeasibleCone c = random_cone(dim, 8, rng);
    for (const auto& z : c.evs()) {
      EXPECT_NEAR(z.norm(), 1.0, 1e-12);
      EXPECT_TRUE(contains(c, z));
      std::vector<Eigen::VectorXd> tight;
      for (const auto& k : c.constraints()) {
        if (std::abs(k.row.normalized().dot(z)) <= 1e-8) tight.push_back(k.row);
      }
      Eigen::MatrixXd m(static_cast<Eigen::Index>(tight.size()), static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < tight.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = tight[i];
      EXPECT_GE(numerical_rank(m), dim - 1);
    }
  }
}

TEST(ConeTest, EvSetIndependentOfConstraintOrder) {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 40; ++t) {
    const FeasibleCone c = random_cone(4, 9, rng);
    std::vector<ConeConstraint> cs = c.constraints();
    std::shuffle(cs.begin(), cs.end(), rng);
    FeasibleCone d(4);
    for (const auto& k : cs) d = d.add_constraint(k.row, k.relation, k.source);
    EXPECT_TRUE(same_ray_set(c.evs(), d.evs()));
  }
}

TEST(ConeTest, IncrementalCacheMatchesFreshEnumeration) {
  std::mt19937_64 rng(505);
  const FeasibleCone full = random_cone(5, 12, rng, 0.0, 0.0);
  FeasibleCone step(5);
  for (const auto& k : full.constraints()) {
    step = step.add_constraint(k.row, k.relation, k.source);
    (void)step.evs();  // build the chain one constraint at a time
  }
  FeasibleCone fresh(5);
  for (const auto& k : full.constraints()) fresh = fresh.add_constraint(k.row, k.relation, k.source);
  EXPECT_TRUE(same_ray_set(step.evs(), fresh.evs()));
}

TEST(EvDistanceTest, Examples) {
  EXPECT_DOUBLE_EQ(ev_distance(vec({1, 0, 0}), vec({2, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(ev_distance(vec({0, 1, 0}), vec({2, 0, 0})), 0.0);
  const Eigen::VectorXd z = vec({0.6, 0.8, 0.0});
  const Eigen::VectorXd r = vec({1, -3, 2});
  EXPECT_DOUBLE_EQ(ev_distance(z, -r), -ev_distance(z, r));
  EXPECT_THROW(ev_distance(z, vec({0, 0, 0})), Error);
}

TEST(ContainsTest, EvsApexAndReflection) {
  std::mt19937_64 rng(606);
  for (int t = 0; t < 30; ++t) {
    const FeasibleCone c = random_cone(4, 6, rng, 0.0, 0.0);
    EXPECT_TRUE(contains(c, Eigen::VectorXd::Zero(4)));
    if (c.evs().empty()) continue;
    Eigen::VectorXd interior = Eigen::VectorXd::Zero(4);
    for (const auto& z : c.evs()) {
      EXPECT_TRUE(contains(c, z));
      interior += z;
    }
    EXPECT_TRUE(contains(c, interior));
    EXPECT_FALSE(contains(c, -interior));
  }
}

TEST(DoubleDescriptionTest, LinealityTracksHyperplanes) {
  DoubleDescription dd(3);
  EXPECT_EQ(dd.lineality().size(), 3u);
  dd.add_halfspace(vec({1, 0, 0}));
  EXPECT_EQ(dd.lineality().size(), 2u);
  EXPECT_EQ(dd.rays().size(), 1u);
  dd.add_hyperplane(vec({0, 1, 0}));
  EXPECT_EQ(dd.lineality().size(), 1u);
  dd.add_halfspace(vec({0, 0, 1}));
  EXPECT_TRUE(dd.generators().pointed());
  EXPECT_TRUE(same_ray_set(dd.rays(), {vec({1, 0, 0}), vec({0, 0, 1})}));
}

TEST(DoubleDescriptionTest, DedupeDropsNearParallelRays) {
  const auto out = dedupe_rays({vec({1, 0}), vec({1, 1e-12}), vec({0, 1})}, 1e-8);
  EXPECT_EQ(out.size(), 2u);
}

}  // namespace
}  // namespace signsamp
