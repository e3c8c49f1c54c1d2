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

#include "signsamp/gss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include <Eigen/SVD>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "signsamp/error.hpp"

namespace signsamp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Projector onto the nullspace of the cone's equality rows. EVs live in that
// subspace, so candidate rows are compared through their projection.
Eigen::MatrixXd equality_free_projector(const FeasibleCone& cone) {
  const auto b = static_cast<Eigen::Index>(cone.dim());
  const Eigen::MatrixXd eq = cone.equality_rows();
  const std::size_t r = numerical_rank(eq, cone.tolerances().rank_relative);
  if (r == 0) return Eigen::MatrixXd::Identity(b, b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(eq, Eigen::ComputeFullV);
  const Eigen::MatrixXd q = svd.matrixV().rightCols(b - static_cast<Eigen::Index>(r));
  return q * q.transpose();
}

bool strictly_better(double candidate, double incumbent, double tie) {
  return candidate < incumbent - tie * std::max(1.0, std::abs(incumbent));
}

}  // namespace

SignOracle make_signal_oracle(const SpectralBasis& basis, const BandlimitedSignal& signal,
                              double zero_tol) {
  return [&basis, signal, zero_tol](const SampleId& sample) {
    return sign_observe(basis, signal, sample, zero_tol).sign;
  };
}

SamplerState::SamplerState(const SpectralBasis& basis, SampleDomain domain, const Tolerances& tol)
    : basis_(&basis), cone_(basis.bandwidth(), tol) {
  const bool with_edges = domain == SampleDomain::kVerticesAndEdges;
  for (std::size_t j = 0; j < basis.n_vertices(); ++j) {
    if (basis.vertex_rows().row(static_cast<Eigen::Index>(j)).norm() > tol.zero_row) {
      candidates_.push_back(SampleId::vertex(j));
    }
  }
  if (with_edges) {
    for (std::size_t k = 0; k < basis.n_edges(); ++k) {
      if (basis.edge_rows().row(static_cast<Eigen::Index>(k)).norm() > tol.zero_row) {
        candidates_.push_back(SampleId::edge(k));
      }
    }
  }
}

void SamplerState::observe(const SignObservation& obs) {
  const auto it = std::lower_bound(candidates_.begin(), candidates_.end(), obs.sample);
  if (it == candidates_.end() || *it != obs.sample) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} is not an available candidate", to_string(obs.sample)));
  }
  cone_ = cone_.add_constraint(obs, *basis_);
  candidates_.erase(it);
  observed_.push_back(obs);
}

std::vector<SampleId> init_samples(const SpectralBasis& basis, SampleDomain domain,
                                   const Tolerances& tol) {
  const std::size_t b = basis.bandwidth();
  const std::size_t want = b > 0 ? b - 1 : 0;
  std::vector<SampleId> samples;
  samples.reserve(basis.n_vertices() + basis.n_edges());
  for (std::size_t j = 0; j < basis.n_vertices(); ++j) samples.push_back(SampleId::vertex(j));
  if (domain == SampleDomain::kVerticesAndEdges) {
    for (std::size_t k = 0; k < basis.n_edges(); ++k) samples.push_back(SampleId::edge(k));
  }
  std::vector<double> norms(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) norms[i] = basis.sample_row(samples[i]).norm();
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t c) { return norms[a] > norms[c]; });

  std::vector<SampleId> chosen;
  Eigen::MatrixXd kept(0, static_cast<Eigen::Index>(b));
  for (std::size_t i : order) {
    if (chosen.size() == want) break;
    if (norms[i] <= tol.zero_row) break;
    Eigen::MatrixXd trial(kept.rows() + 1, kept.cols());
    trial.topRows(kept.rows()) = kept;
    trial.row(kept.rows()) = basis.sample_row(samples[i]).transpose();
    if (numerical_rank(trial, tol.rank_relative) == chosen.size() + 1) {
      kept = std::move(trial);
      chosen.push_back(samples[i]);
    }
  }
  if (chosen.size() < want) {
    throw Error(ErrorCode::kRankDeficientBasis,
                fmt::format("only {} linearly independent rows, need {}", chosen.size(), want));
  }
  return chosen;
}

double min_pairwise_inner(const std::vector<Eigen::VectorXd>& evs) {
  if (evs.size() < 2) return -kInf;
  double best = kInf;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    for (std::size_t j = i + 1; j < evs.size(); ++j) best = std::min(best, evs[i].dot(evs[j]));
  }
  return best;
}

double bth_score(const SamplerState& state, const SampleId& candidate) {
  const Eigen::VectorXd row = state.basis().sample_row(candidate);
  const FeasibleCone& cone = state.cone();
  const double plus = min_pairwise_inner(cone.add_constraint(row, Relation::kGeq, candidate).evs());
  const double minus =
      min_pairwise_inner(cone.add_constraint(row, Relation::kLeq, candidate).evs());
  return std::min(plus, minus);
}

SampleId select_bth_sample(const SamplerState& state) {
  const auto& candidates = state.candidates();
  if (candidates.empty()) throw Error(ErrorCode::kNoCandidates, "no samples left to choose");
  const double tie = state.tolerances().score_tie;
  SampleId best = candidates.front();
  double best_score = bth_score(state, best);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = bth_score(state, candidates[i]);
    // argmax: compare negated scores so the shared tie rule applies.
    if (best_score == -kInf ? s > -kInf : strictly_better(-s, -best_score, tie)) {
      best = candidates[i];
      best_score = s;
    }
  }
  return best;
}

std::vector<CandidateEvaluation> evaluate_candidates(const SamplerState& state) {
  const auto& evs = state.cone().evs();
  if (evs.empty()) {
    throw Error(ErrorCode::kEmptyEVSet,
                fmt::format("the cone after {} observations has no extreme vectors",
                            state.observed().size()));
  }
  const auto& candidates = state.candidates();
  const Tolerances& tol = state.tolerances();
  const auto b = static_cast<Eigen::Index>(state.cone().dim());
  const auto n_ev = static_cast<Eigen::Index>(evs.size());
  const auto n_c = static_cast<Eigen::Index>(candidates.size());

  Eigen::MatrixXd z(b, n_ev);
  for (Eigen::Index j = 0; j < n_ev; ++j) z.col(j) = evs[static_cast<std::size_t>(j)];
  Eigen::MatrixXd rows(n_c, b);
  for (Eigen::Index i = 0; i < n_c; ++i) {
    rows.row(i) = state.basis().sample_row(candidates[static_cast<std::size_t>(i)]).transpose();
  }
  if (state.cone().equality_rank() > 0) rows = rows * equality_free_projector(state.cone());
  const Eigen::MatrixXd dots = rows * z;

  std::vector<CandidateEvaluation> out;
  out.reserve(candidates.size());
  for (Eigen::Index i = 0; i < n_c; ++i) {
    CandidateEvaluation e;
    e.sample = candidates[static_cast<std::size_t>(i)];
    const double norm = rows.row(i).norm();
    if (norm <= tol.zero_row) {
      // Constant on the subspace the cone lives in; never informative.
      e.score = kInf;
      e.one_sided = true;
    } else {
      const auto d = dots.row(i) / norm;
      e.score = std::abs(d.sum());
      e.one_sided = d.minCoeff() >= -tol.stopping || d.maxCoeff() <= tol.stopping;
    }
    out.push_back(e);
  }
  return out;
}

double greedy_score(const SamplerState& state, const SampleId& candidate) {
  const auto& evs = state.cone().evs();
  if (evs.empty()) throw Error(ErrorCode::kEmptyEVSet, "the cone has no extreme vectors");
  Eigen::VectorXd row = state.basis().sample_row(candidate);
  if (state.cone().equality_rank() > 0) row = equality_free_projector(state.cone()) * row;
  if (row.norm() <= state.tolerances().zero_row) return kInf;
  double sum = 0.0;
  for (const auto& z : evs) sum += ev_distance(z, row);
  return std::abs(sum);
}

namespace {

SampleId argmin_score(const std::vector<CandidateEvaluation>& evals, double tie) {
  if (evals.empty()) throw Error(ErrorCode::kNoCandidates, "no samples left to choose");
  std::size_t best = 0;
  for (std::size_t i = 1; i < evals.size(); ++i) {
    if (strictly_better(evals[i].score, evals[best].score, tie)) best = i;
  }
  return evals[best].sample;
}

}  // namespace

SampleId greedy_step(const SamplerState& state) {
  if (state.candidates().empty()) {
    throw Error(ErrorCode::kNoCandidates, "no samples left to choose");
  }
  return argmin_score(evaluate_candidates(state), state.tolerances().score_tie);
}

bool stopping_check(const SamplerState& state) {
  const auto evals = evaluate_candidates(state);
  return std::all_of(evals.begin(), evals.end(), [](const auto& e) { return e.one_sided; });
}

ObservationSequence SamplingRun::observations() const { return prefix(sequence.size()); }

ObservationSequence SamplingRun::prefix(std::size_t m) const {
  ObservationSequence out;
  const std::size_t n = std::min(m, sequence.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back({sequence[i], signs[i]});
  return out;
}

SamplingRun run_gss(const SignOracle& oracle, const SpectralBasis& basis, std::size_t budget,
                    const GssConfig& config) {
  const std::size_t b = basis.bandwidth();
  const std::size_t domain_size =
      basis.n_vertices() + (config.domain == SampleDomain::kVerticesAndEdges ? basis.n_edges() : 0);
  if (budget <= b) {
    throw Error(ErrorCode::kBudgetTooSmall,
                fmt::format("budget {} must exceed the bandwidth {}", budget, b));
  }
  if (budget > domain_size) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("budget {} exceeds the {} available samples", budget, domain_size));
  }

  SamplerState state(basis, config.domain, config.tol);
  SamplingRun run;
  run.budget = budget;
  auto record = [&](const SampleId& sample) {
    const Sign sign = oracle(sample);
    state.observe({sample, sign});
    run.sequence.push_back(sample);
    run.signs.push_back(sign);
    run.log.push_back({run.log.size(), sample, sign, state.cone().evs().size(), false});
  };

  for (const SampleId& a : init_samples(basis, config.domain, config.tol)) record(a);
  state.set_phase(SamplerPhase::kBthSelect);
  record(select_bth_sample(state));
  state.set_phase(SamplerPhase::kGreedy);

  while (true) {
    if (state.candidates().empty()) {
      run.log.back().stopping = true;
      break;
    }
    const auto evals = evaluate_candidates(state);
    const bool stop =
        std::all_of(evals.begin(), evals.end(), [](const auto& e) { return e.one_sided; });
    run.log.back().stopping = stop;
    if (run.sequence.size() >= budget) break;
    if (stop && config.early_stopping) {
      run.stopped_early = true;
      state.set_phase(SamplerPhase::kStopped);
      break;
    }
    record(argmin_score(evals, config.tol.score_tie));
  }
  return run;
}

void write_run_log(std::ostream& out, const SamplingRun& run) {
  out << "step,kind,index,sign,n_evs,stopping\n";
  for (const auto& e : run.log) {
    fmt::print(out, "{},{},{},{},{},{}\n", e.step,
               e.sample.kind == SampleKind::kVertex ? "vertex" : "edge", e.sample.index,
               to_int(e.sign), e.n_evs, e.stopping ? 1 : 0);
  }
}

}  // namespace signsamp
