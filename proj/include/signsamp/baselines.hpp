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
#include <vector>

#include "signsamp/graph.hpp"
#include "signsamp/gss.hpp"
#include "signsamp/spectral.hpp"

namespace signsamp {

// Samples of a domain in canonical order, read off the basis dimensions.
std::vector<SampleId> basis_domain(const SpectralBasis& basis, SampleDomain domain);

// Queries the oracle for each sample in order.
SamplingRun observe_sequence(const std::vector<SampleId>& sequence, const SignOracle& oracle);

// First m entries of a seeded uniform permutation of the domain, so runs with
// the same seed are nested across budgets. Throws kInvalidArgument if
// m > |domain|.
std::vector<SampleId> random_sequence(const std::vector<SampleId>& domain, std::size_t m,
                                      std::uint64_t rng_seed);

// The m rows of largest Euclidean norm, ties to the smaller SampleId.
std::vector<SampleId> row_norm_sequence(const SpectralBasis& basis, SampleDomain domain,
                                        std::size_t m);

SamplingRun baseline_random(const SpectralBasis& basis, SampleDomain domain, std::size_t m,
                            std::uint64_t rng_seed, const SignOracle& oracle);
SamplingRun baseline_row_norm(const SpectralBasis& basis, SampleDomain domain, std::size_t m,
                              const SignOracle& oracle);
// Every sample of the domain.
SamplingRun baseline_full(const SpectralBasis& basis, SampleDomain domain,
                          const SignOracle& oracle);

}  // namespace signsamp
