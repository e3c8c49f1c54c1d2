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

#include "signsamp/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "signsamp/error.hpp"
#include "signsamp/random.hpp"

namespace signsamp {
namespace {

constexpr std::size_t kMinSamples = 1000;
constexpr Eigen::Index kChunk = 4096;

// Inequality normals oriented so that n^T w >= 0 is the constraint.
std::vector<Eigen::VectorXd> oriented_normals(const FeasibleCone& cone) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& c : cone.constraints()) {
    if (c.relation == Relation::kEq) {
      throw Error(ErrorCode::kInvalidArgument,
                  "exact volume needs inequality constraints; reduce equalities first");
    }
    out.push_back(c.relation == Relation::kGeq ? c.row : Eigen::VectorXd(-c.row));
  }
  return out;
}

double arc_fraction(const std::vector<Eigen::Vector2d>& normals) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (normals.empty()) return 1.0;
  std::vector<double> cuts;
  for (const auto& n : normals) {
    const double phi = std::atan2(n.y(), n.x());
    for (double c : {phi + std::numbers::pi / 2, phi - std::numbers::pi / 2}) {
      c = std::fmod(c, kTwoPi);
      if (c < 0.0) c += kTwoPi;
      cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + kTwoPi;
    if (hi - lo <= 0.0) continue;
    const double mid = 0.5 * (lo + hi);
    const Eigen::Vector2d m(std::cos(mid), std::sin(mid));
    bool inside = true;
    for (const auto& n : normals) inside = inside && n.dot(m) >= 0.0;
    if (inside) total += hi - lo;
  }
  return total / kTwoPi;
}

// Solid angle of the spherical triangle with unit vertices a, b, c.
double triangle_solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                            const Eigen::Vector3d& c) {
  const double num = std::abs(a.dot(b.cross(c)));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

double solid_angle_fraction(const FeasibleCone& cone,
                            const std::vector<Eigen::VectorXd>& normals) {
  if (normals.empty()) return 1.0;
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(normals.size()), 3);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) = normals[i].transpose().normalized();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const std::size_t rank = numerical_rank(rows, cone.tolerances().rank_relative);

  if (rank == 1) {
    // All normals parallel: a halfspace, or a plane if they disagree.
    const Eigen::VectorXd n0 = rows.row(0).transpose();
    for (Eigen::Index i = 1; i < rows.rows(); ++i) {
      if (rows.row(i).dot(n0) < 0.0) return 0.0;
    }
    return 0.5;
  }
  if (rank == 2) {
    // Wedge times a line: the solid angle of a wedge of opening a is 2a.
    const Eigen::MatrixXd plane = svd.matrixV().leftCols(2);
    std::vector<Eigen::Vector2d> projected;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      projected.emplace_back(plane.transpose() * rows.row(i).transpose());
    }
    return arc_fraction(projected);
  }

  const std::vector<Eigen::VectorXd>& evs = cone.evs();
  if (evs.size() < 3) return 0.0;
  if (evs.size() == 3) {
    return triangle_solid_angle(evs[0], evs[1], evs[2]) / (4.0 * std::numbers::pi);
  }
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  for (const auto& z : evs) center += Eigen::Vector3d(z);
  center.normalize();
  const Eigen::Vector3d u = center.unitOrthogonal();
  const Eigen::Vector3d v = center.cross(u);
  std::vector<std::pair<double, Eigen::Vector3d>> ordered;
  for (const auto& z : evs) {
    const Eigen::Vector3d z3(z);
    ordered.emplace_back(std::atan2(z3.dot(v), z3.dot(u)), z3);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double omega = 0.0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& a = ordered[i].second;
    const auto& b = ordered[(i + 1) % ordered.size()].second;
    omega += triangle_solid_angle(center, a, b);
  }
  return omega / (4.0 * std::numbers::pi);
}

}  // namespace

BallSampleCloud::BallSampleCloud(std::size_t dim, std::size_t n_samples, std::uint64_t rng_seed) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "ball dimension must be positive");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  points_.resize(d, static_cast<Eigen::Index>(n_samples));
  const double inv_dim = 1.0 / static_cast<double>(dim);
  for (Eigen::Index j = 0; j < points_.cols(); ++j) {
    const Eigen::VectorXd dir = random_unit_vector(d, rng);
    points_.col(j) = std::pow(unit(rng), inv_dim) * dir;
  }
}

std::size_t count_hits(const FeasibleCone& cone, const BallSampleCloud& cloud) {
  if (cloud.dim() != cone.dim()) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("cloud dimension {} differs from cone dimension {}", cloud.dim(),
                            cone.dim()));
  }
  const auto& cs = cone.constraints();
  if (cs.empty()) return cloud.size();
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(cs.size()), static_cast<Eigen::Index>(cone.dim()));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) =
        (cs[i].relation == Relation::kLeq ? -cs[i].row : cs[i].row).transpose();
  }
  std::size_t hits = 0;
  const Eigen::Index n = cloud.points().cols();
  for (Eigen::Index start = 0; start < n; start += kChunk) {
    const Eigen::Index len = std::min(kChunk, n - start);
    const Eigen::MatrixXd s = rows * cloud.points().middleCols(start, len);
    for (Eigen::Index j = 0; j < len; ++j) {
      bool inside = true;
      for (std::size_t i = 0; i < cs.size() && inside; ++i) {
        const double v = s(static_cast<Eigen::Index>(i), j);
        inside = cs[i].relation == Relation::kEq ? v == 0.0 : v >= 0.0;
      }
      hits += inside ? 1 : 0;
    }
  }
  return hits;
}

VolumeEstimate estimate_volume(const FeasibleCone& cone, const BallSampleCloud& cloud) {
  if (cloud.size() < kMinSamples) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("volume estimate needs at least {} samples, got {}", kMinSamples,
                            cloud.size()));
  }
  const std::size_t hits = count_hits(cone, cloud);
  const double n = static_cast<double>(cloud.size());
  const double f = static_cast<double>(hits) / n;
  return {f, cloud.size(), std::sqrt(f * (1.0 - f) / n)};
}

VolumeEstimate estimate_volume(const FeasibleCone& cone, std::size_t n_samples,
                               std::uint64_t rng_seed) {
  if (n_samples < kMinSamples) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("volume estimate needs at least {} samples, got {}", kMinSamples,
                            n_samples));
  }
  return estimate_volume(cone, BallSampleCloud(cone.dim(), n_samples, rng_seed));
}

ReducedCone reduce_equalities(const FeasibleCone& cone) {
  const Tolerances& tol = cone.tolerances();
  const std::size_t dim = cone.dim();
  const Eigen::MatrixXd eq = cone.equality_rows();
  const std::size_t r = numerical_rank(eq, tol.rank_relative);
  if (r >= dim) {
    throw Error(ErrorCode::kDimensionCollapse,
                fmt::format("equality constraints have rank {} in dimension {}", r, dim));
  }
  Eigen::MatrixXd basis;
  if (r == 0) {
    basis = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim));
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(eq, Eigen::ComputeFullV);
    basis = svd.matrixV().rightCols(static_cast<Eigen::Index>(dim - r));
  }
  FeasibleCone reduced(dim - r, tol);
  for (const auto& c : cone.constraints()) {
    if (c.relation == Relation::kEq) continue;
    const Eigen::VectorXd row = basis.transpose() * c.row;
    if (row.norm() <= 1e-10 * c.row.norm()) continue;
    reduced = reduced.add_constraint(row, c.relation, c.source);
  }
  return {std::move(reduced), std::move(basis)};
}

double exact_volume_lowdim(const FeasibleCone& cone) {
  if (cone.dim() != 2 && cone.dim() != 3) {
    throw Error(ErrorCode::kUnsupportedDimension,
                fmt::format("exact volume supports B = 2 or 3, got {}", cone.dim()));
  }
  const std::vector<Eigen::VectorXd> normals = oriented_normals(cone);
  if (cone.dim() == 2) {
    std::vector<Eigen::Vector2d> n2;
    for (const auto& n : normals) n2.emplace_back(n);
    return arc_fraction(n2);
  }
  return solid_angle_fraction(cone, normals);
}

}  // namespace signsamp
