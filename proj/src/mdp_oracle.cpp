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

#include "signsamp/mdp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "signsamp/error.hpp"
#include "signsamp/random.hpp"

namespace signsamp {
namespace {

constexpr std::size_t kMaxTreeDepth = 12;
constexpr std::size_t kMaxCandidates = 8;
constexpr std::size_t kMaxHorizon = 3;
constexpr std::size_t kMaxExactDim = 3;
constexpr double kTie = 1e-12;

void check_instance(const FeasibleCone& initial, const std::vector<Candidate>& candidates,
                    std::size_t horizon) {
  if (candidates.size() > kMaxCandidates || horizon > kMaxHorizon ||
      initial.dim() > kMaxExactDim) {
    throw Error(ErrorCode::kInstanceTooLarge,
                fmt::format("policy search is limited to {} candidates, horizon {} and B <= {} "
                            "(got {}, {}, {})",
                            kMaxCandidates, kMaxHorizon, kMaxExactDim, candidates.size(), horizon,
                            initial.dim()));
  }
  if (horizon > candidates.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("horizon {} exceeds the {} candidates", horizon, candidates.size()));
  }
}

FeasibleCone child(const FeasibleCone& cone, const Candidate& c, Sign sign) {
  return cone.add_constraint(c.row, relation_from_sign(sign), c.id);
}

// Expected final volume under an adaptive policy chosen by `choose`, which
// returns the index of the candidate to observe among the unused ones.
struct PolicyWalker {
  const std::vector<Candidate>& candidates;
  const VolumeOracle& volume;

  template <typename Choose>
  double walk(const FeasibleCone& cone, double v, std::vector<bool>& used, std::size_t depth,
              ObservationSequence& prefix, PolicyValue& out, Choose&& choose) const {
    if (depth == 0 || v <= 0.0) return v;
    const std::size_t a = choose(cone, v, used, depth, out);
    out.policy.push_back({prefix, candidates[a].id});
    used[a] = true;
    double expected = 0.0;
    for (Sign s : {Sign::kPositive, Sign::kNegative}) {
      const FeasibleCone next = child(cone, candidates[a], s);
      const double vc = volume(next);
      if (vc <= 0.0) continue;
      prefix.push_back({candidates[a].id, s});
      expected += transition_prob(v, vc) * walk(next, vc, used, depth - 1, prefix, out, choose);
      prefix.pop_back();
    }
    used[a] = false;
    return expected;
  }
};

// Minimum expected final volume over adaptive policies, with the policy that
// attains it appended to `policy`.
double optimal_final(const std::vector<Candidate>& candidates, const VolumeOracle& volume,
                     const FeasibleCone& cone, double v, std::vector<bool>& used,
                     std::size_t depth, ObservationSequence& prefix,
                     std::vector<PolicyStep>& policy) {
  if (depth == 0 || v <= 0.0) return v;
  double best = v;
  std::vector<PolicyStep> best_policy;
  bool have = false;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    if (used[a]) continue;
    used[a] = true;
    std::vector<PolicyStep> sub{{prefix, candidates[a].id}};
    double expected = 0.0;
    for (Sign s : {Sign::kPositive, Sign::kNegative}) {
      const FeasibleCone next = child(cone, candidates[a], s);
      const double vc = volume(next);
      if (vc <= 0.0) continue;
      prefix.push_back({candidates[a].id, s});
      expected += transition_prob(v, vc) *
                  optimal_final(candidates, volume, next, vc, used, depth - 1, prefix, sub);
      prefix.pop_back();
    }
    used[a] = false;
    if (!have || expected < best - kTie * std::max(1.0, best)) {
      best = expected;
      best_policy = std::move(sub);
      have = true;
    }
  }
  policy.insert(policy.end(), best_policy.begin(), best_policy.end());
  return best;
}

}  // namespace

VolumeOracle exact_volume_oracle() {
  return [](const FeasibleCone& cone) { return exact_volume_lowdim(cone); };
}

VolumeOracle cloud_volume_oracle(const BallSampleCloud& cloud) {
  return [&cloud](const FeasibleCone& cone) {
    return static_cast<double>(count_hits(cone, cloud)) / static_cast<double>(cloud.size());
  };
}

double transition_prob(double parent_vol, double child_vol) {
  const double slack = 1e-12 * std::max(1.0, parent_vol);
  if (!(parent_vol > 0.0) || !(child_vol >= 0.0) || child_vol > parent_vol + slack) {
    throw Error(ErrorCode::kInvalidVolumes,
                fmt::format("need 0 < parent and 0 <= child <= parent (parent={}, child={})",
                            parent_vol, child_vol));
  }
  return std::min(1.0, child_vol / parent_vol);
}

double marginal_benefit(double v_plus, double v_minus) {
  if (v_plus < 0.0 || v_minus < 0.0) {
    throw Error(ErrorCode::kInvalidVolumes,
                fmt::format("negative volume ({}, {})", v_plus, v_minus));
  }
  if (v_plus == 0.0 || v_minus == 0.0) return 0.0;
  return 2.0 / (1.0 / v_plus + 1.0 / v_minus);
}

SplitVolumes split_volumes(const FeasibleCone& cone, const Candidate& candidate,
                           const VolumeOracle& volume) {
  return {volume(cone), volume(child(cone, candidate, Sign::kPositive)),
          volume(child(cone, candidate, Sign::kNegative))};
}

double expected_marginal_benefit(const FeasibleCone& cone, const Candidate& candidate,
                                 const VolumeOracle& volume) {
  const SplitVolumes s = split_volumes(cone, candidate, volume);
  return marginal_benefit(s.plus, s.minus);
}

namespace {

void grow(SegmentationNode& node, const FeasibleCone& cone,
          const std::vector<Candidate>& sequence, std::size_t depth, const VolumeOracle& volume,
          double sum_tol) {
  if (depth == sequence.size()) return;
  const Candidate& c = sequence[depth];
  double total = 0.0;
  for (Sign s : {Sign::kPositive, Sign::kNegative}) {
    const FeasibleCone next = child(cone, c, s);
    SegmentationNode kid;
    kid.observations = node.observations;
    kid.observations.push_back({c.id, s});
    kid.volume_fraction = volume(next);
    kid.transition_prob =
        node.volume_fraction > 0.0 ? transition_prob(node.volume_fraction, kid.volume_fraction)
                                   : 0.0;
    total += kid.volume_fraction;
    grow(kid, next, sequence, depth + 1, volume, sum_tol);
    node.children.push_back(std::move(kid));
  }
  if (std::abs(total - node.volume_fraction) > sum_tol * std::max(1.0, node.volume_fraction)) {
    throw Error(ErrorCode::kInvalidVolumes,
                fmt::format("children of a node sum to {} but the node has volume {}", total,
                            node.volume_fraction));
  }
}

double expected_leaf_volume(const SegmentationNode& node) {
  if (node.children.empty()) return node.volume_fraction;
  double e = 0.0;
  for (const auto& kid : node.children) e += kid.transition_prob * expected_leaf_volume(kid);
  return e;
}

}  // namespace

SegmentationNode build_segmentation_tree(const FeasibleCone& initial,
                                         const std::vector<Candidate>& sequence,
                                         const VolumeOracle& volume, double sum_tol) {
  if (sequence.size() > kMaxTreeDepth) {
    throw Error(ErrorCode::kTreeTooLarge,
                fmt::format("a sequence of {} samples needs 2^{} leaves; the limit is depth {}",
                            sequence.size(), sequence.size(), kMaxTreeDepth));
  }
  SegmentationNode root;
  root.volume_fraction = volume(initial);
  grow(root, initial, sequence, 0, volume, sum_tol);
  return root;
}

double sequence_value(const SegmentationNode& root) {
  return root.volume_fraction - expected_leaf_volume(root);
}

PolicyValue exhaustive_optimal(const FeasibleCone& initial, const std::vector<Candidate>& candidates,
                               std::size_t horizon, const VolumeOracle& volume) {
  check_instance(initial, candidates, horizon);
  PolicyValue out;
  const double v0 = volume(initial);
  std::vector<bool> used(candidates.size(), false);
  ObservationSequence prefix;
  const double final_vol =
      optimal_final(candidates, volume, initial, v0, used, horizon, prefix, out.policy);
  out.phi = v0 - final_vol;
  return out;
}

PolicyValue best_fixed_sequence(const FeasibleCone& initial,
                                const std::vector<Candidate>& candidates, std::size_t horizon,
                                const VolumeOracle& volume) {
  check_instance(initial, candidates, horizon);
  PolicyValue out;
  out.phi = -1.0;
  // The final region of a fixed sequence does not depend on its order, so
  // subsets suffice.
  std::vector<bool> pick(candidates.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(horizon), true);
  do {
    std::vector<Candidate> seq;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (pick[i]) seq.push_back(candidates[i]);
    }
    const double phi = sequence_value(build_segmentation_tree(initial, seq, volume, 1e-9));
    if (phi > out.phi + kTie * std::max(1.0, std::abs(out.phi))) {
      out.phi = phi;
      out.policy.clear();
      for (const auto& c : seq) out.policy.push_back({{}, c.id});
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

PolicyValue greedy_exact_policy(const FeasibleCone& initial,
                                const std::vector<Candidate>& candidates, std::size_t horizon,
                                const VolumeOracle& volume) {
  check_instance(initial, candidates, horizon);
  PolicyValue out;
  const double v0 = volume(initial);
  std::vector<bool> used(candidates.size(), false);
  ObservationSequence prefix;
  PolicyWalker walker{candidates, volume};
  auto choose = [&](const FeasibleCone& cone, double v, const std::vector<bool>& in_use,
                    std::size_t, PolicyValue& result) {
    const double tie = kTie * std::max(1.0, v);
    std::size_t by_balance = candidates.size();
    std::size_t by_benefit = candidates.size();
    std::vector<double> imbalance(candidates.size()), benefit(candidates.size());
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      if (in_use[a]) continue;
      const SplitVolumes s = split_volumes(cone, candidates[a], volume);
      imbalance[a] = std::abs(s.plus - s.minus);
      benefit[a] = marginal_benefit(s.plus, s.minus);
      if (by_balance == candidates.size() || imbalance[a] < imbalance[by_balance] - tie) {
        by_balance = a;
      }
      if (by_benefit == candidates.size() || benefit[a] > benefit[by_benefit] + tie) {
        by_benefit = a;
      }
    }
    if (by_balance != by_benefit &&
        (std::abs(imbalance[by_balance] - imbalance[by_benefit]) > tie ||
         std::abs(benefit[by_balance] - benefit[by_benefit]) > tie)) {
      ++result.criterion_disagreements;
    }
    return by_balance;
  };
  const double final_vol = walker.walk(initial, v0, used, horizon, prefix, out, choose);
  out.phi = v0 - final_vol;
  return out;
}

SubmodularityReport check_adaptive_submodularity(std::size_t n_triples, std::uint64_t rng_seed) {
  SubmodularityReport report;
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> history_len(0, 6);
  const VolumeOracle volume = exact_volume_oracle();
  for (std::size_t t = 0; t < n_triples; ++t) {
    const Eigen::VectorXd hidden = random_unit_vector(3, rng);
    const std::size_t n2 = history_len(rng);
    const std::size_t n1 = std::uniform_int_distribution<std::size_t>(0, n2)(rng);
    FeasibleCone o1(3), o2(3);
    for (std::size_t i = 0; i < n2; ++i) {
      const Eigen::VectorXd row = random_unit_vector(3, rng);
      const Relation rel = row.dot(hidden) >= 0.0 ? Relation::kGeq : Relation::kLeq;
      if (i < n1) o1 = o1.add_constraint(row, rel, SampleId::vertex(i));
      o2 = o2.add_constraint(row, rel, SampleId::vertex(i));
    }
    const Candidate a{SampleId::vertex(n2), random_unit_vector(3, rng)};
    const double d1 = expected_marginal_benefit(o1, a, volume);
    const double d2 = expected_marginal_benefit(o2, a, volume);
    const double gap = std::max({d2 - d1, -d1, -d2});
    report.max_gap = t == 0 ? gap : std::max(report.max_gap, gap);
    if (d1 < d2 - 1e-12 || d1 < -1e-12 || d2 < -1e-12) ++report.violations;
    ++report.triples;
  }
  return report;
}

}  // namespace signsamp
