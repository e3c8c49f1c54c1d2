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

#include "signsamp/cone.hpp"

#include <cmath>
#include <exception>
#include <mutex>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "signsamp/double_description.hpp"
#include "signsamp/error.hpp"

namespace signsamp {

struct FeasibleCone::EvCache {
  std::once_flag once;
  // Cache of the cone this one was derived from, and how many of our
  // constraints it had already absorbed. Released after the first fill.
  std::shared_ptr<EvCache> parent;
  std::size_t parent_constraints = 0;

  std::unique_ptr<DoubleDescription> dd;
  std::vector<Eigen::VectorXd> evs;
  std::exception_ptr error;
};

namespace {

void apply(DoubleDescription& dd, const ConeConstraint& c) {
  switch (c.relation) {
    case Relation::kGeq:
      dd.add_halfspace(c.row);
      break;
    case Relation::kLeq:
      dd.add_halfspace(-c.row);
      break;
    case Relation::kEq:
      dd.add_hyperplane(c.row);
      break;
  }
}

Eigen::MatrixXd stack_rows(const std::vector<ConeConstraint>& cs, std::size_t count,
                           std::size_t dim, bool eq_only) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < count; ++i) n += (!eq_only || cs[i].relation == Relation::kEq);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  Eigen::Index r = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (eq_only && cs[i].relation != Relation::kEq) continue;
    m.row(r++) = cs[i].row.transpose();
  }
  return m;
}

}  // namespace

Relation relation_from_sign(Sign sign) {
  switch (sign) {
    case Sign::kNegative:
      return Relation::kLeq;
    case Sign::kPositive:
      return Relation::kGeq;
    case Sign::kZero:
      break;
  }
  return Relation::kEq;
}

std::string_view relation_name(Relation relation) {
  switch (relation) {
    case Relation::kLeq:
      return "LEQ";
    case Relation::kGeq:
      return "GEQ";
    case Relation::kEq:
      return "EQ";
  }
  return "?";
}

std::size_t numerical_rank(const Eigen::MatrixXd& m, double rank_relative) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) >= rank_relative * s(0) ? 1 : 0;
  return rank;
}

FeasibleCone::FeasibleCone(std::size_t dim, const Tolerances& tol)
    : dim_(dim), tol_(tol), cache_(std::make_shared<EvCache>()) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "cone dimension must be positive");
}

std::optional<Relation> FeasibleCone::relation_of(const SampleId& sample) const {
  for (const auto& c : constraints_) {
    if (c.source == sample) return c.relation;
  }
  return std::nullopt;
}

FeasibleCone FeasibleCone::add_constraint(const SignObservation& obs,
                                          const SpectralBasis& basis) const {
  Eigen::VectorXd row = basis.sample_row(obs.sample);
  // A zero row is satisfied by every direction and carries no information.
  if (row.norm() <= tol_.zero_row) return *this;
  return add_constraint(row, relation_from_sign(obs.sign), obs.sample);
}

FeasibleCone FeasibleCone::add_constraint(const Eigen::VectorXd& row, Relation relation,
                                          const SampleId& source) const {
  if (row.size() != static_cast<Eigen::Index>(dim_)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("row has length {}, cone dimension is {}", row.size(), dim_));
  }
  if (row.norm() <= tol_.zero_row) {
    throw Error(ErrorCode::kZeroRow, fmt::format("row of {} has norm {:.3e}", to_string(source),
                                                 row.norm()));
  }
  if (const auto existing = relation_of(source)) {
    if (*existing == relation) return *this;
    throw Error(ErrorCode::kConflictingObservation,
                fmt::format("{} already observed as {}, now {}", to_string(source),
                            relation_name(*existing), relation_name(relation)));
  }
  FeasibleCone out(*this);
  out.constraints_.push_back({row, relation, source});
  out.cache_ = std::make_shared<EvCache>();
  out.cache_->parent = cache_;
  out.cache_->parent_constraints = constraints_.size();
  return out;
}

Eigen::MatrixXd FeasibleCone::equality_rows() const {
  return stack_rows(constraints_, constraints_.size(), dim_, /*eq_only=*/true);
}

std::size_t FeasibleCone::equality_rank() const {
  return numerical_rank(equality_rows(), tol_.rank_relative);
}

bool FeasibleCone::pointed() const {
  return numerical_rank(stack_rows(constraints_, constraints_.size(), dim_, false),
                        tol_.rank_relative) == dim_;
}

void FeasibleCone::fill_cache(EvCache& cache, std::size_t dim, const Tolerances& tol,
                              const std::vector<ConeConstraint>& cs, std::size_t count) {
  std::call_once(cache.once, [&] {
    if (cache.parent) {
      fill_cache(*cache.parent, dim, tol, cs, cache.parent_constraints);
      cache.dd = std::make_unique<DoubleDescription>(*cache.parent->dd);
      for (std::size_t i = cache.parent_constraints; i < count; ++i) apply(*cache.dd, cs[i]);
      cache.parent.reset();
    } else {
      cache.dd = std::make_unique<DoubleDescription>(dim, tol);
      for (std::size_t i = 0; i < count; ++i) apply(*cache.dd, cs[i]);
    }
    const std::size_t eq_rank =
        numerical_rank(stack_rows(cs, count, dim, /*eq_only=*/true), tol.rank_relative);
    if (eq_rank >= dim) {
      cache.error = std::make_exception_ptr(Error(
          ErrorCode::kDimensionCollapse,
          fmt::format("equality constraints have rank {} in dimension {}; the cone is {{0}}",
                      eq_rank, dim)));
      return;
    }
    const bool pointed =
        numerical_rank(stack_rows(cs, count, dim, false), tol.rank_relative) == dim;
    if (pointed && cache.dd->lineality().empty()) {
      cache.evs = dedupe_rays(cache.dd->rays(), tol.angular_dedupe);
    }
  });
}

const std::vector<Eigen::VectorXd>& FeasibleCone::evs() const {
  fill_cache(*cache_, dim_, tol_, constraints_, constraints_.size());
  if (cache_->error) std::rethrow_exception(cache_->error);
  return cache_->evs;
}

namespace {

std::vector<Eigen::VectorXd> enumerate_by_subsets(const FeasibleCone& cone) {
  const Tolerances& tol = cone.tolerances();
  const std::size_t dim = cone.dim();
  const auto b = static_cast<Eigen::Index>(dim);
  const Eigen::MatrixXd eq = cone.equality_rows();
  const std::size_t eq_rank = numerical_rank(eq, tol.rank_relative);
  if (eq_rank >= dim) {
    throw Error(ErrorCode::kDimensionCollapse,
                fmt::format("equality constraints have rank {} in dimension {}", eq_rank, dim));
  }
  if (!cone.pointed()) return {};

  std::vector<const ConeConstraint*> ineq;
  for (const auto& c : cone.constraints()) {
    if (c.relation != Relation::kEq) ineq.push_back(&c);
  }
  const std::size_t k = dim - 1 - eq_rank;
  const std::size_t m = ineq.size();
  if (k > m) return {};

  double n_subsets = 1.0;
  for (std::size_t i = 0; i < k; ++i) n_subsets = n_subsets * double(m - i) / double(i + 1);
  if (n_subsets > double(tol.max_subsets)) {
    throw Error(ErrorCode::kSubsetLimitExceeded,
                fmt::format("C({}, {}) = {:.3g} subsets exceeds the limit of {}; reduce the "
                            "bandwidth or use the double-description enumerator",
                            m, k, n_subsets, tol.max_subsets));
  }

  std::vector<Eigen::VectorXd> found;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Eigen::MatrixXd a(eq.rows() + static_cast<Eigen::Index>(k), b);
  a.topRows(eq.rows()) = eq;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      a.row(eq.rows() + static_cast<Eigen::Index>(i)) = ineq[idx[i]]->row.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    std::size_t rank = 0;
    if (s.size() > 0 && s(0) > 0.0) {
      for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) >= tol.rank_relative * s(0);
    }
    if (rank == dim - 1) {
      const Eigen::VectorXd d = svd.matrixV().col(b - 1).normalized();
      if (contains(cone, d, tol.constraint)) found.push_back(d);
      if (contains(cone, -d, tol.constraint)) found.push_back(-d);
    }
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return dedupe_rays(std::move(found), tol.angular_dedupe);
}

}  // namespace

std::vector<Eigen::VectorXd> enumerate_evs(const FeasibleCone& cone, EvMethod method) {
  if (method == EvMethod::kSubsetEnumeration) return enumerate_by_subsets(cone);
  return cone.evs();
}

double ev_distance(const Eigen::VectorXd& ev, const Eigen::VectorXd& row) {
  const double n = row.norm();
  if (n <= default_tolerances().zero_row) {
    throw Error(ErrorCode::kZeroRow, fmt::format("row norm {:.3e}", n));
  }
  return row.dot(ev) / n;
}

bool contains(const FeasibleCone& cone, const Eigen::VectorXd& w, double tol) {
  const double wn = w.norm();
  for (const auto& c : cone.constraints()) {
    const double s = c.row.dot(w);
    const double slack = tol * c.row.norm() * wn;
    switch (c.relation) {
      case Relation::kLeq:
        if (s > slack) return false;
        break;
      case Relation::kGeq:
        if (s < -slack) return false;
        break;
      case Relation::kEq:
        if (std::abs(s) > slack) return false;
        break;
    }
  }
  return true;
}

}  // namespace signsamp
