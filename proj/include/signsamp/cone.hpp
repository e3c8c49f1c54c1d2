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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "signsamp/graph.hpp"
#include "signsamp/spectral.hpp"
#include "signsamp/tolerances.hpp"

namespace signsamp {

// Sign -1 -> row^T w <= 0, +1 -> row^T w >= 0, 0 -> row^T w = 0.
enum class Relation { kLeq, kGeq, kEq };

Relation relation_from_sign(Sign sign);
std::string_view relation_name(Relation relation);

struct ConeConstraint {
  Eigen::VectorXd row;
  Relation relation = Relation::kGeq;
  SampleId source;
};

// How extreme vectors are computed.
//   kDoubleDescription: incremental Motzkin elimination, reused across
//     add_constraint() calls. The default.
//   kSubsetEnumeration: every (B-1)-subset of hyperplanes, nullspace direction
//     tested in both orientations. Exponential; bounded by max_subsets.
enum class EvMethod { kDoubleDescription, kSubsetEnumeration };

// The closed convex cone of directions consistent with a set of sign
// observations. Immutable: add_constraint() returns a new cone that shares the
// parent's extreme-vector computation as its starting point.
class FeasibleCone {
 public:
  explicit FeasibleCone(std::size_t dim, const Tolerances& tol = default_tolerances());

  std::size_t dim() const { return dim_; }
  const Tolerances& tolerances() const { return tol_; }
  const std::vector<ConeConstraint>& constraints() const { return constraints_; }
  std::size_t n_constraints() const { return constraints_.size(); }

  // Appends the constraint of `obs`. Re-adding a sample with the same sign
  // returns an identical cone; a different sign throws kConflictingObservation.
  FeasibleCone add_constraint(const SignObservation& obs, const SpectralBasis& basis) const;
  // Same, for an explicit row. Throws kZeroRow for a (near) zero row.
  FeasibleCone add_constraint(const Eigen::VectorXd& row, Relation relation,
                              const SampleId& source) const;

  std::optional<Relation> relation_of(const SampleId& sample) const;

  // Unit extreme vectors (double description, cached). Empty when the cone
  // contains a line. Throws kDimensionCollapse when the equality rows alone
  // have rank >= B.
  const std::vector<Eigen::VectorXd>& evs() const;

  // Rows of the equality constraints stacked as a matrix (r x B).
  Eigen::MatrixXd equality_rows() const;
  // Numerical rank of the equality rows.
  std::size_t equality_rank() const;
  // True iff all constraint rows together have rank B (no lineality).
  bool pointed() const;

 private:
  struct EvCache;
  static void fill_cache(EvCache& cache, std::size_t dim, const Tolerances& tol,
                         const std::vector<ConeConstraint>& cs, std::size_t count);

  std::size_t dim_;
  Tolerances tol_;
  std::vector<ConeConstraint> constraints_;
  std::shared_ptr<EvCache> cache_;
};

// Unit extreme vectors of the cone. kDoubleDescription returns the cached set.
std::vector<Eigen::VectorXd> enumerate_evs(const FeasibleCone& cone,
                                           EvMethod method = EvMethod::kDoubleDescription);

// Signed distance from unit `ev` to {w : row^T w = 0}. Throws kZeroRow.
double ev_distance(const Eigen::VectorXd& ev, const Eigen::VectorXd& row);

// Every constraint holds up to tol * |row| * |w|.
bool contains(const FeasibleCone& cone, const Eigen::VectorXd& w, double tol = 1e-9);

// Numerical rank with threshold rank_relative * sigma_max.
std::size_t numerical_rank(const Eigen::MatrixXd& m, double rank_relative = 1e-10);

}  // namespace signsamp
