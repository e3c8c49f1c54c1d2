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

namespace signsamp {

/// Numerical tolerances shared by the cone, sampler and recovery code.
struct Tolerances {
  /// Absolute threshold below which an observed value is reported as sign 0.
  double zero_sign = 1e-12;
  /// Rows with norm at or below this are rejected as constraints.
  double zero_row = 1e-12;
  /// Constraint satisfaction, relative to |row| * |w|.
  double constraint = 1e-9;
  /// Two unit extreme vectors closer than this angle are the same ray.
  double angular_dedupe = 1e-8;
  /// Singular values below rank_relative * sigma_max count as zero.
  double rank_relative = 1e-10;
  /// One-sidedness slack used by the stopping criterion.
  double stopping = 1e-9;
  /// Relative slack when comparing greedy scores; closer scores are ties.
  double score_tie = 1e-12;
  /// Upper bound on the number of (B-1)-subsets the subset enumerator visits.
  std::size_t max_subsets = 2'000'000;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances kDefaults{};
  return kDefaults;
}

}  // namespace signsamp
