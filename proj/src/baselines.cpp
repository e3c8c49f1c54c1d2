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

#include "signsamp/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "signsamp/error.hpp"

namespace signsamp {

std::vector<SampleId> basis_domain(const SpectralBasis& basis, SampleDomain domain) {
  std::vector<SampleId> out;
  for (std::size_t j = 0; j < basis.n_vertices(); ++j) out.push_back(SampleId::vertex(j));
  if (domain == SampleDomain::kVerticesAndEdges) {
    for (std::size_t k = 0; k < basis.n_edges(); ++k) out.push_back(SampleId::edge(k));
  }
  return out;
}

SamplingRun observe_sequence(const std::vector<SampleId>& sequence, const SignOracle& oracle) {
  SamplingRun run;
  run.budget = sequence.size();
  for (const SampleId& a : sequence) {
    run.sequence.push_back(a);
    run.signs.push_back(oracle(a));
  }
  return run;
}

std::vector<SampleId> random_sequence(const std::vector<SampleId>& domain, std::size_t m,
                                      std::uint64_t rng_seed) {
  if (m > domain.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("cannot draw {} samples from a domain of {}", m, domain.size()));
  }
  std::vector<SampleId> perm = domain;
  std::mt19937_64 rng(rng_seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  perm.resize(m);
  return perm;
}

std::vector<SampleId> row_norm_sequence(const SpectralBasis& basis, SampleDomain domain,
                                        std::size_t m) {
  const std::vector<SampleId> all = basis_domain(basis, domain);
  if (m > all.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("cannot take {} samples from a domain of {}", m, all.size()));
  }
  std::vector<double> norms(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) norms[i] = basis.sample_row(all[i]).norm();
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
  std::vector<SampleId> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(all[order[i]]);
  return out;
}

SamplingRun baseline_random(const SpectralBasis& basis, SampleDomain domain, std::size_t m,
                            std::uint64_t rng_seed, const SignOracle& oracle) {
  return observe_sequence(random_sequence(basis_domain(basis, domain), m, rng_seed), oracle);
}

SamplingRun baseline_row_norm(const SpectralBasis& basis, SampleDomain domain, std::size_t m,
                              const SignOracle& oracle) {
  return observe_sequence(row_norm_sequence(basis, domain, m), oracle);
}

SamplingRun baseline_full(const SpectralBasis& basis, SampleDomain domain,
                          const SignOracle& oracle) {
  return observe_sequence(basis_domain(basis, domain), oracle);
}

}  // namespace signsamp
