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

#include "signsamp/double_description.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace signsamp {
namespace {

// Pairs (kept, dropped) of near-identical unit vectors; `dropped` always has
// the larger position so earlier entries win.
template <typename OnDuplicate>
void scan_duplicates(const std::vector<Eigen::VectorXd>& v, double chord, OnDuplicate&& on_dup) {
  if (v.size() < 2) return;
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return v[a](0) != v[b](0) ? v[a](0) < v[b](0) : a < b;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t a = order[i];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const std::size_t b = order[j];
      if (v[b](0) - v[a](0) > chord) break;
      if ((v[a] - v[b]).norm() <= chord) on_dup(std::min(a, b), std::max(a, b));
    }
  }
}

}  // namespace

std::vector<Eigen::VectorXd> dedupe_rays(std::vector<Eigen::VectorXd> rays, double angle) {
  std::vector<bool> drop(rays.size(), false);
  scan_duplicates(rays, angle, [&](std::size_t, std::size_t dropped) { drop[dropped] = true; });
  std::vector<Eigen::VectorXd> out;
  out.reserve(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(rays[i]));
  }
  return out;
}

DoubleDescription::DoubleDescription(std::size_t dim, const Tolerances& tol)
    : dim_(dim), tol_(tol) {
  const auto d = static_cast<Eigen::Index>(dim);
  for (Eigen::Index i = 0; i < d; ++i) lineality_.push_back(Eigen::VectorXd::Unit(d, i));
}

void DoubleDescription::add_hyperplane(const Eigen::VectorXd& a) {
  add_halfspace(a);
  add_halfspace(-a);
}

void DoubleDescription::add_halfspace(const Eigen::VectorXd& a_raw) {
  const double norm = a_raw.norm();
  if (norm <= tol_.zero_row) return;
  const Eigen::VectorXd a = a_raw / norm;

  rows_.push_back(a);
  for (TightSet& t : tight_) t.resize(rows_.size(), false);

  std::size_t best = 0;
  double best_dot = 0.0;
  for (std::size_t i = 0; i < lineality_.size(); ++i) {
    const double dot = std::abs(a.dot(lineality_[i]));
    if (dot > best_dot) {
      best_dot = dot;
      best = i;
    }
  }
  if (best_dot > tol_.constraint) {
    eliminate_lineality(a, best);
  } else {
    refine_pointed(a);
  }
}

// The new row is not orthogonal to the lineality space: pick the lineality
// direction l0 with a^T l0 > 0, slide every other generator along l0 onto the
// hyperplane, and promote l0 to a ray.
void DoubleDescription::eliminate_lineality(const Eigen::VectorXd& a, std::size_t best) {
  const std::size_t m = rows_.size() - 1;
  Eigen::VectorXd l0 = lineality_[best];
  double s0 = a.dot(l0);
  if (s0 < 0.0) {
    l0 = -l0;
    s0 = -s0;
  }

  std::vector<Eigen::VectorXd> reduced;
  for (std::size_t i = 0; i < lineality_.size(); ++i) {
    if (i == best) continue;
    Eigen::VectorXd l = lineality_[i] - (a.dot(lineality_[i]) / s0) * l0;
    for (const Eigen::VectorXd& prev : reduced) l -= prev.dot(l) * prev;
    const double n = l.norm();
    if (n > 1e-12) reduced.push_back(l / n);
  }
  lineality_ = std::move(reduced);

  for (std::size_t i = 0; i < rays_.size(); ++i) {
    rays_[i] -= (a.dot(rays_[i]) / s0) * l0;
    rays_[i].normalize();
    tight_[i].set(m);
  }
  TightSet all_previous(rows_.size());
  for (std::size_t j = 0; j < m; ++j) all_previous.set(j);
  rays_.push_back(l0);
  tight_.push_back(std::move(all_previous));
}

void DoubleDescription::refine_pointed(const Eigen::VectorXd& a) {
  const std::size_t m = rows_.size() - 1;
  const std::size_t n_rays = rays_.size();
  std::vector<double> slack(n_rays);
  std::vector<std::size_t> pos, neg;
  std::vector<Eigen::VectorXd> next_rays;
  std::vector<TightSet> next_tight;

  for (std::size_t i = 0; i < n_rays; ++i) {
    slack[i] = a.dot(rays_[i]);
    if (slack[i] > tol_.constraint) {
      pos.push_back(i);
    } else if (slack[i] < -tol_.constraint) {
      neg.push_back(i);
    } else {
      tight_[i].set(m);
    }
  }
  if (neg.empty()) return;

  // An edge of a cone with lineality L in R^dim lies on constraints of rank
  // dim - dim(L) - 2, which bounds the size of a common tight set from below.
  const long min_common = static_cast<long>(dim_) - static_cast<long>(lineality_.size()) - 2;

  // ray_sets[j]: rays tight on row j. A pair is adjacent iff the rays tight
  // on every row of their common tight set are exactly the pair itself.
  std::vector<TightSet> ray_sets(m, TightSet(n_rays));
  for (std::size_t i = 0; i < n_rays; ++i) {
    for (std::size_t j = tight_[i].find_first(); j != TightSet::npos; j = tight_[i].find_next(j)) {
      if (j < m) ray_sets[j].set(i);
    }
  }

  TightSet common(rows_.size());
  TightSet acc(n_rays);
  for (std::size_t p : pos) {
    for (std::size_t n : neg) {
      common = tight_[p];
      common &= tight_[n];
      if (static_cast<long>(common.count()) < min_common) continue;
      std::size_t j = common.find_first();
      if (j == TightSet::npos) {
        // No shared constraint: adjacent only if the cone has just these rays.
        if (n_rays != 2) continue;
      } else {
        acc = ray_sets[j];
        for (j = common.find_next(j); j != TightSet::npos; j = common.find_next(j)) {
          acc &= ray_sets[j];
        }
        if (acc.count() != 2) continue;
      }
      Eigen::VectorXd ray = slack[p] * rays_[n] - slack[n] * rays_[p];
      ray.normalize();
      common.set(m);
      next_rays.push_back(std::move(ray));
      next_tight.push_back(common);
    }
  }

  std::vector<Eigen::VectorXd> kept_rays;
  std::vector<TightSet> kept_tight;
  kept_rays.reserve(n_rays - neg.size() + next_rays.size());
  for (std::size_t i = 0; i < n_rays; ++i) {
    if (slack[i] < -tol_.constraint) continue;
    kept_rays.push_back(std::move(rays_[i]));
    kept_tight.push_back(std::move(tight_[i]));
  }
  for (std::size_t i = 0; i < next_rays.size(); ++i) {
    kept_rays.push_back(std::move(next_rays[i]));
    kept_tight.push_back(std::move(next_tight[i]));
  }

  // Rounding can leave a ray just outside the zero band and regenerate it
  // from a neighbour; merge such copies so the adjacency test stays exact.
  std::vector<bool> drop(kept_rays.size(), false);
  scan_duplicates(kept_rays, tol_.angular_dedupe, [&](std::size_t keep, std::size_t dup) {
    if (drop[dup] || drop[keep]) return;
    drop[dup] = true;
    kept_tight[keep] |= kept_tight[dup];
  });
  rays_.clear();
  tight_.clear();
  for (std::size_t i = 0; i < kept_rays.size(); ++i) {
    if (drop[i]) continue;
    rays_.push_back(std::move(kept_rays[i]));
    tight_.push_back(std::move(kept_tight[i]));
  }
}

}  // namespace signsamp
