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
#include <vector>

#include <Eigen/Core>

#include "signsamp/spectral.hpp"
#include "signsamp/tolerances.hpp"

namespace signsamp {

// One sign constraint u^T w ~ required.
struct ProjectionEntry {
  Eigen::VectorXd u;
  Sign required = Sign::kZero;
};

struct ProjectionSet {
  std::vector<ProjectionEntry> entries;  // observation order
};

// Entries for the observations; zero rows are skipped since every w satisfies
// them.
ProjectionSet make_projection_set(const ObservationSequence& observations,
                                  const SpectralBasis& basis,
                                  const Tolerances& tol = default_tolerances());

// Projects onto u^T w = 0 when the sign of u^T w is nonzero and differs from
// the required sign, or unconditionally when the required sign is 0.
Eigen::VectorXd project_entry(const Eigen::VectorXd& w, const ProjectionEntry& entry);

// Largest scale-free violation over the entries:
//   max(0, -s u^T w) / (|u| |w|)  for s = +-1,  |u^T w| / (|u| |w|)  for s = 0.
// Returns +inf for w = 0.
double sign_violation(const ProjectionSet& pset, const Eigen::VectorXd& w);

struct UpocsConfig {
  std::size_t n_max = 10000;
  double tol = 1e-10;
  // Seed for fresh starting points after the iterate collapses to zero.
  std::uint64_t restart_seed = 0;
  std::size_t max_restarts = 5;
  // Record sign_violation after every sweep.
  bool track_history = false;
};

struct RecoveryResult {
  Eigen::VectorXd h_hat;  // unit norm
  std::size_t iterations_used = 0;
  double final_violation = 0.0;
  bool converged = false;
  std::size_t restarts = 0;
  std::vector<double> violation_history;
};

// Cyclic sweeps of project_entry in observation order until the violation is
// at most tol or n_max sweeps are done; the result is normalized. Throws
// kInvalidArgument for h0 = 0 or n_max = 0, kDegenerateIterate after
// max_restarts collapses.
RecoveryResult upocs(const ProjectionSet& pset, const Eigen::VectorXd& h0,
                     const UpocsConfig& config = {});

struct DirectionRecovery {
  std::vector<RecoveryResult> results;
  std::vector<Eigen::VectorXd> x_hats;  // U_B h_hat, unit norm
};

// K runs of upocs from seeded uniform starts on the sphere.
DirectionRecovery recover_direction(const ObservationSequence& observations,
                                    const SpectralBasis& basis, std::size_t k,
                                    std::size_t n_max, std::uint64_t rng_seed,
                                    const Tolerances& tol = default_tolerances());

// Mean of arccos <x*, x_i> with the inner products clamped to [-1, 1]. Throws
// kNonUnitInput if any vector is off the unit sphere by more than 1e-8.
double angle_error(const Eigen::VectorXd& x_star, const std::vector<Eigen::VectorXd>& x_hats);

// CSV `start_id,iterations,violation,delta`.
void write_recovery_report(std::ostream& out, const DirectionRecovery& recovery,
                           const Eigen::VectorXd& x_star);

}  // namespace signsamp
