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
#include <vector>

#include <Eigen/Core>
#include <boost/dynamic_bitset.hpp>

#include "signsamp/tolerances.hpp"

namespace signsamp {

// Generator form of a polyhedral cone {w : a_i^T w >= 0 for all i}:
//   cone = span(lineality) + cone(rays).
// Rays are unit vectors and, modulo the lineality space, extreme.
struct ConeGenerators {
  std::vector<Eigen::VectorXd> rays;
  std::vector<Eigen::VectorXd> lineality;  // orthonormal

  bool pointed() const { return lineality.empty(); }
};

// Incremental double description (Motzkin) of a cone given by homogeneous
// halfspaces. Each add_halfspace() is one refinement step, so a cone that
// grows one constraint at a time is updated without starting over.
//
// Adjacency of a positive/negative ray pair uses the combinatorial test: the
// pair is adjacent iff no third ray is tight on every constraint both of them
// are tight on.
class DoubleDescription {
 public:
  explicit DoubleDescription(std::size_t dim, const Tolerances& tol = default_tolerances());

  // Adds a^T w >= 0. `a` need not be normalized; zero rows are ignored.
  void add_halfspace(const Eigen::VectorXd& a);
  // Adds a^T w = 0 as the pair of halfspaces.
  void add_hyperplane(const Eigen::VectorXd& a);

  std::size_t dim() const { return dim_; }
  std::size_t n_halfspaces() const { return rows_.size(); }
  ConeGenerators generators() const { return {rays_, lineality_}; }
  const std::vector<Eigen::VectorXd>& rays() const { return rays_; }
  const std::vector<Eigen::VectorXd>& lineality() const { return lineality_; }

 private:
  using TightSet = boost::dynamic_bitset<>;

  void eliminate_lineality(const Eigen::VectorXd& a, std::size_t best);
  void refine_pointed(const Eigen::VectorXd& a);

  std::size_t dim_;
  Tolerances tol_;
  std::vector<Eigen::VectorXd> rows_;  // unit normals processed so far
  std::vector<Eigen::VectorXd> lineality_;
  std::vector<Eigen::VectorXd> rays_;
  std::vector<TightSet> tight_;  // tight_[i] indexes rows_
};

// Drops rays within `angle` of an earlier ray (order preserved).
std::vector<Eigen::VectorXd> dedupe_rays(std::vector<Eigen::VectorXd> rays, double angle);

}  // namespace signsamp
