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

#include "signsamp/theory_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <random>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "signsamp/csv.hpp"
#include "signsamp/mdp_oracle.hpp"
#include "signsamp/random.hpp"

namespace signsamp {
namespace {

constexpr double kSlack = 1e-12;
// Identities between separately computed exact volumes carry trigonometric
// rounding from each term.
constexpr double kIdentitySlack = 1e-10;

class Tally {
 public:
  // Records one evaluation; `gap` > slack is a violation.
  void add(const std::string& check, double gap, double slack = kSlack) {
    TheoryCheck& c = rows_[check];
    c.check = check;
    c.max_gap = c.instances == 0 ? gap : std::max(c.max_gap, gap);
    ++c.instances;
    if (gap > slack) ++c.violations;
  }
  void add_row(const TheoryCheck& row) { rows_[row.check] = row; }

  std::vector<TheoryCheck> rows(const std::vector<std::string>& order) const {
    std::vector<TheoryCheck> out;
    for (const auto& name : order) {
      auto it = rows_.find(name);
      out.push_back(it == rows_.end() ? TheoryCheck{name, 0, 0, 0.0} : it->second);
    }
    return out;
  }

 private:
  std::map<std::string, TheoryCheck> rows_;
};

struct Instance {
  FeasibleCone initial{3};
  Eigen::VectorXd hidden;
  std::vector<Candidate> candidates;
  std::size_t horizon = 1;
};

Instance random_instance(std::mt19937_64& rng) {
  Instance inst;
  inst.hidden = random_unit_vector(3, rng);
  const std::size_t n_prior = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t i = 0; i < n_prior; ++i) {
    const Eigen::VectorXd row = random_unit_vector(3, rng);
    inst.initial = inst.initial.add_constraint(
        row, row.dot(inst.hidden) >= 0.0 ? Relation::kGeq : Relation::kLeq, SampleId::edge(i));
  }
  const std::size_t n_cand = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
  for (std::size_t i = 0; i < n_cand; ++i) {
    inst.candidates.push_back({SampleId::vertex(i), random_unit_vector(3, rng)});
  }
  inst.horizon = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
  return inst;
}

// Largest |sum of children - node| over the tree, and the summed expected
// benefit of every internal node weighted by its reach probability.
void walk_tree(const SegmentationNode& node, double reach, double& worst_sum, double& benefit) {
  if (node.children.empty()) return;
  const double vp = node.children[0].volume_fraction;
  const double vm = node.children[1].volume_fraction;
  worst_sum = std::max(worst_sum, std::abs(vp + vm - node.volume_fraction));
  benefit += reach * marginal_benefit(vp, vm);
  for (const auto& kid : node.children) {
    walk_tree(kid, reach * kid.transition_prob, worst_sum, benefit);
  }
}

}  // namespace

std::vector<TheoryCheck> run_theory_suite(std::size_t n_instances, std::uint64_t rng_seed) {
  const VolumeOracle volume = exact_volume_oracle();
  const double ratio = 1.0 - std::exp(-1.0);
  Tally tally;
  for (std::size_t t = 0; t < n_instances; ++t) {
    std::mt19937_64 rng(derive_seed(rng_seed, t));
    const Instance inst = random_instance(rng);

    for (const Candidate& c : inst.candidates) {
      const SplitVolumes s = split_volumes(inst.initial, c, volume);
      tally.add("volume_monotone", std::max(s.plus, s.minus) - s.parent);
      const double delta = marginal_benefit(s.plus, s.minus);
      tally.add("benefit_nonnegative", -delta);
      const double closed =
          s.parent > 0.0 ? s.parent - (s.plus * s.plus + s.minus * s.minus) / s.parent : 0.0;
      tally.add("benefit_closed_form", std::abs(delta - closed), kIdentitySlack);
    }

    // A longer history: the first candidate observed with its true sign.
    const Candidate& first = inst.candidates.front();
    const FeasibleCone longer = inst.initial.add_constraint(
        first.row, first.row.dot(inst.hidden) >= 0.0 ? Relation::kGeq : Relation::kLeq,
        first.id);
    for (std::size_t i = 1; i < inst.candidates.size(); ++i) {
      const double d1 = expected_marginal_benefit(inst.initial, inst.candidates[i], volume);
      const double d2 = expected_marginal_benefit(longer, inst.candidates[i], volume);
      tally.add("adaptive_submodularity", d2 - d1);
    }

    std::vector<Candidate> seq(inst.candidates.begin(),
                               inst.candidates.begin() + static_cast<std::ptrdiff_t>(inst.horizon));
    const SegmentationNode tree = build_segmentation_tree(
        inst.initial, seq, volume, std::numeric_limits<double>::infinity());
    double worst_sum = 0.0, benefit = 0.0;
    walk_tree(tree, 1.0, worst_sum, benefit);
    tally.add("partition_identity", worst_sum, kIdentitySlack);
    tally.add("reward_telescoping", std::abs(benefit - sequence_value(tree)), kIdentitySlack);

    const PolicyValue greedy = greedy_exact_policy(inst.initial, inst.candidates, inst.horizon,
                                                   volume);
    const PolicyValue optimal = exhaustive_optimal(inst.initial, inst.candidates, inst.horizon,
                                                   volume);
    const PolicyValue fixed = best_fixed_sequence(inst.initial, inst.candidates, inst.horizon,
                                                  volume);
    tally.add("greedy_criteria_agree", static_cast<double>(greedy.criterion_disagreements));
    tally.add("greedy_bound_adaptive", ratio * optimal.phi - greedy.phi);
    tally.add("greedy_bound_fixed", ratio * fixed.phi - greedy.phi);
    tally.add("optimum_dominates_fixed", fixed.phi - optimal.phi);
  }

  const SubmodularityReport sub = check_adaptive_submodularity(5 * n_instances, rng_seed);
  TheoryCheck random_pairs{"adaptive_submodularity_random_history", sub.triples, sub.violations,
                           sub.max_gap};
  tally.add_row(random_pairs);

  return tally.rows({"volume_monotone", "benefit_nonnegative", "benefit_closed_form",
                     "adaptive_submodularity", "adaptive_submodularity_random_history",
                     "partition_identity", "reward_telescoping", "greedy_criteria_agree",
                     "greedy_bound_adaptive", "greedy_bound_fixed", "optimum_dominates_fixed"});
}

std::size_t total_violations(const std::vector<TheoryCheck>& checks) {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.violations;
  return n;
}

void write_theory_report(std::ostream& out, const std::vector<TheoryCheck>& checks) {
  out << "check,instances,violations,max_gap\n";
  for (const auto& c : checks) {
    fmt::print(out, "{},{},{},{}\n", c.check, c.instances, c.violations,
               csv::format_double(c.max_gap));
  }
}

}  // namespace signsamp
