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

#include "signsamp/upocs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "signsamp/csv.hpp"
#include "signsamp/error.hpp"
#include "signsamp/random.hpp"

namespace signsamp {
namespace {

constexpr double kCollapseNorm = 1e-12;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double clamped_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

}  // namespace

ProjectionSet make_projection_set(const ObservationSequence& observations,
                                  const SpectralBasis& basis, const Tolerances& tol) {
  ProjectionSet out;
  for (const auto& obs : observations) {
    Eigen::VectorXd u = basis.sample_row(obs.sample);
    if (u.norm() <= tol.zero_row) continue;
    out.entries.push_back({std::move(u), obs.sign});
  }
  return out;
}

Eigen::VectorXd project_entry(const Eigen::VectorXd& w, const ProjectionEntry& entry) {
  const double s = entry.u.dot(w);
  const int required = to_int(entry.required);
  if (required != 0) {
    const int observed = sign_of(s);
    if (observed == 0 || observed == required) return w;
  }
  return w - (s / entry.u.squaredNorm()) * entry.u;
}

double sign_violation(const ProjectionSet& pset, const Eigen::VectorXd& w) {
  const double wn = w.norm();
  if (!(wn > 0.0)) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& e : pset.entries) {
    const double s = e.u.dot(w) / (e.u.norm() * wn);
    const int required = to_int(e.required);
    const double v = required == 0 ? std::abs(s) : std::max(0.0, -required * s);
    worst = std::max(worst, v);
  }
  return worst;
}

RecoveryResult upocs(const ProjectionSet& pset, const Eigen::VectorXd& h0,
                     const UpocsConfig& config) {
  if (config.n_max == 0) throw Error(ErrorCode::kInvalidArgument, "n_max must be positive");
  if (!(h0.norm() > 0.0)) throw Error(ErrorCode::kInvalidArgument, "initial point is zero");

  RecoveryResult result;
  std::mt19937_64 restart_rng(config.restart_seed);
  Eigen::VectorXd w = h0;
  std::size_t sweep = 0;
  while (true) {
    bool collapsed = false;
    for (sweep = 1; sweep <= config.n_max; ++sweep) {
      for (const auto& e : pset.entries) w = project_entry(w, e);
      if (w.norm() < kCollapseNorm) {
        collapsed = true;
        break;
      }
      const double v = sign_violation(pset, w);
      if (config.track_history) result.violation_history.push_back(v);
      if (v <= config.tol) break;
    }
    if (!collapsed) break;
    if (result.restarts == config.max_restarts) {
      throw Error(ErrorCode::kDegenerateIterate,
                  fmt::format("iterate collapsed to zero after {} restarts", result.restarts));
    }
    ++result.restarts;
    result.violation_history.clear();
    w = random_unit_vector(h0.size(), restart_rng);
  }
  result.iterations_used = std::min(sweep, config.n_max);
  result.final_violation = sign_violation(pset, w);
  result.converged = result.final_violation <= config.tol;
  result.h_hat = w.normalized();
  return result;
}

DirectionRecovery recover_direction(const ObservationSequence& observations,
                                    const SpectralBasis& basis, std::size_t k,
                                    std::size_t n_max, std::uint64_t rng_seed,
                                    const Tolerances& tol) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one initial point");
  const ProjectionSet pset = make_projection_set(observations, basis, tol);
  DirectionRecovery out;
  const auto b = static_cast<Eigen::Index>(basis.bandwidth());
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t start_seed = derive_seed(rng_seed, 2 * i);
    std::mt19937_64 rng(start_seed);
    UpocsConfig config;
    config.n_max = n_max;
    config.restart_seed = derive_seed(rng_seed, 2 * i + 1);
    RecoveryResult r = upocs(pset, random_unit_vector(b, rng), config);
    out.x_hats.push_back((basis.u_b() * r.h_hat).normalized());
    out.results.push_back(std::move(r));
  }
  return out;
}

double angle_error(const Eigen::VectorXd& x_star, const std::vector<Eigen::VectorXd>& x_hats) {
  if (x_hats.empty()) throw Error(ErrorCode::kInvalidArgument, "no recovered signals");
  auto check = [](const Eigen::VectorXd& v) {
    if (std::abs(v.norm() - 1.0) > 1e-8) {
      throw Error(ErrorCode::kNonUnitInput, fmt::format("vector norm {:.12f}", v.norm()));
    }
  };
  check(x_star);
  double total = 0.0;
  for (const auto& x : x_hats) {
    if (x.size() != x_star.size()) {
      throw Error(ErrorCode::kInvalidArgument, "signal lengths differ");
    }
    check(x);
    total += clamped_angle(x_star, x);
  }
  return total / static_cast<double>(x_hats.size());
}

void write_recovery_report(std::ostream& out, const DirectionRecovery& recovery,
                           const Eigen::VectorXd& x_star) {
  out << "start_id,iterations,violation,delta\n";
  for (std::size_t i = 0; i < recovery.results.size(); ++i) {
    const auto& r = recovery.results[i];
    fmt::print(out, "{},{},{},{}\n", i, r.iterations_used, csv::format_double(r.final_violation),
               csv::format_double(clamped_angle(x_star, recovery.x_hats[i])));
  }
}

}  // namespace signsamp
