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
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "signsamp/cone.hpp"
#include "signsamp/graph.hpp"
#include "signsamp/spectral.hpp"
#include "signsamp/tolerances.hpp"

namespace signsamp {

// Returns the sign of the hidden signal at a sample.
using SignOracle = std::function<Sign(const SampleId&)>;

SignOracle make_signal_oracle(const SpectralBasis& basis, const BandlimitedSignal& signal,
                              double zero_tol = 1e-12);

enum class SamplerPhase { kInit, kBthSelect, kGreedy, kStopped };

// Observations made so far, the cone they define, and the samples still
// available. Samples whose row is (numerically) zero never become candidates:
// their sign is always 0 and they constrain nothing.
class SamplerState {
 public:
  SamplerState(const SpectralBasis& basis, SampleDomain domain,
               const Tolerances& tol = default_tolerances());

  const SpectralBasis& basis() const { return *basis_; }
  const ObservationSequence& observed() const { return observed_; }
  const FeasibleCone& cone() const { return cone_; }
  const std::vector<SampleId>& candidates() const { return candidates_; }  // canonical order
  SamplerPhase phase() const { return phase_; }
  const Tolerances& tolerances() const { return cone_.tolerances(); }

  void set_phase(SamplerPhase phase) { phase_ = phase; }
  // Records the observation, removes the sample from the candidates and
  // tightens the cone.
  void observe(const SignObservation& obs);

 private:
  const SpectralBasis* basis_;
  ObservationSequence observed_;
  FeasibleCone cone_;
  std::vector<SampleId> candidates_;
  SamplerPhase phase_ = SamplerPhase::kInit;
};

// B-1 samples from the norm-descending scan of the domain's rows, keeping a
// row only if it raises the rank of those already kept. Throws
// kRankDeficientBasis if fewer than B-1 independent rows exist.
std::vector<SampleId> init_samples(const SpectralBasis& basis, SampleDomain domain,
                                   const Tolerances& tol = default_tolerances());

// Smallest pairwise inner product among unit vectors; -inf for fewer than 2.
double min_pairwise_inner(const std::vector<Eigen::VectorXd>& evs);

// min over both hypothesized signs of min_pairwise_inner of the resulting EVs.
double bth_score(const SamplerState& state, const SampleId& candidate);

// argmax of bth_score; ties go to the smallest SampleId. Throws kNoCandidates.
SampleId select_bth_sample(const SamplerState& state);

// Per-candidate quantities of the greedy phase, computed against the current
// EV set in one pass.
struct CandidateEvaluation {
  SampleId sample;
  double score = 0.0;      // |sum_z d(z, H)|
  bool one_sided = true;   // no EV strictly on either side beyond the slack
};

// Throws kEmptyEVSet if the cone has no EVs.
std::vector<CandidateEvaluation> evaluate_candidates(const SamplerState& state);

// |sum over EVs of the signed EV-hyperplane distance| for one candidate.
double greedy_score(const SamplerState& state, const SampleId& candidate);

// argmin of greedy_score; ties go to the smallest SampleId. Throws
// kNoCandidates or kEmptyEVSet.
SampleId greedy_step(const SamplerState& state);

// True iff no remaining candidate's hyperplane separates the EV set.
bool stopping_check(const SamplerState& state);

struct GssConfig {
  SampleDomain domain = SampleDomain::kVertices;
  Tolerances tol = default_tolerances();
  // Stop as soon as no candidate separates the EVs (before the budget).
  bool early_stopping = true;
};

struct RunLogEntry {
  std::size_t step = 0;
  SampleId sample;
  Sign sign = Sign::kZero;
  std::size_t n_evs = 0;
  bool stopping = false;  // stopping criterion held right after this step
};

struct SamplingRun {
  std::vector<SampleId> sequence;
  std::vector<Sign> signs;
  bool stopped_early = false;
  std::size_t budget = 0;
  std::vector<RunLogEntry> log;

  ObservationSequence observations() const;
  // The first `m` observations (all of them if the run is shorter).
  ObservationSequence prefix(std::size_t m) const;
};

// Greedy signed sampling. Throws kBudgetTooSmall if budget <= B and
// kInvalidArgument if the budget exceeds the domain size.
SamplingRun run_gss(const SignOracle& oracle, const SpectralBasis& basis, std::size_t budget,
                    const GssConfig& config = {});

// CSV `step,kind,index,sign,n_evs,stopping`.
void write_run_log(std::ostream& out, const SamplingRun& run);

}  // namespace signsamp
