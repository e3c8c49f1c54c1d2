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
#include <string>
#include <vector>

namespace signsamp {

// One row of the theory report. `max_gap` is the largest signed amount by
// which the checked inequality was approached (negative: slack everywhere,
// positive: worst violation). Inequalities allow 1e-12 of slack, identities
// between exact volumes 1e-10.
struct TheoryCheck {
  std::string check;
  std::size_t instances = 0;
  std::size_t violations = 0;
  double max_gap = 0.0;
};

// Exact-volume checks on seeded random B = 3 instances:
//   volume_monotone            child volume <= parent volume
//   benefit_nonnegative        expected marginal benefit >= 0
//   benefit_closed_form        harmonic-mean benefit == V - (V+^2 + V-^2) / V
//   adaptive_submodularity     benefit does not grow as observations accrue
//   partition_identity         children volumes add up to the parent
//   reward_telescoping         summed expected benefits == V0 - E[V_T]
//   greedy_criteria_agree      min-imbalance choice == max-benefit choice
//   greedy_bound_adaptive      greedy >= (1 - 1/e) adaptive optimum
//   greedy_bound_fixed         greedy >= (1 - 1/e) best fixed sequence
//   optimum_dominates_fixed    adaptive optimum >= best fixed sequence
std::vector<TheoryCheck> run_theory_suite(std::size_t n_instances, std::uint64_t rng_seed);

std::size_t total_violations(const std::vector<TheoryCheck>& checks);

// CSV `check,instances,violations,max_gap`.
void write_theory_report(std::ostream& out, const std::vector<TheoryCheck>& checks);

}  // namespace signsamp
