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

#include "signsamp/spectral.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "signsamp/error.hpp"

namespace signsamp {

Eigen::MatrixXd laplacian(const Graph& graph, bool normalized) {
  const Eigen::MatrixXd w = graph.adjacency();
  const Eigen::VectorXd degree = w.rowwise().sum();
  Eigen::MatrixXd l = -w;
  l.diagonal() += degree;
  if (normalized) {
    const Eigen::VectorXd inv_sqrt = degree.array().rsqrt();
    l = inv_sqrt.asDiagonal() * l * inv_sqrt.asDiagonal();
  }
  return l;
}

GraphSpectrum graph_spectrum(const Graph& graph, bool normalized) {
  const Eigen::MatrixXd l = laplacian(graph, normalized);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigenSolverFailure,
                fmt::format("Laplacian eigensolver failed (n={}, |L|_F={:.3e}, max|diag|={:.3e}, "
                            "asymmetry={:.3e})",
                            l.rows(), l.norm(), l.diagonal().cwiseAbs().maxCoeff(),
                            (l - l.transpose()).cwiseAbs().maxCoeff()));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Passband contiguous_passband(std::size_t first, std::size_t last) {
  if (first == 0 || last < first) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("invalid passband range [{}, {}]", first, last));
  }
  Passband out;
  for (std::size_t f = first; f <= last; ++f) out.push_back(f);
  return out;
}

SpectralBasis::SpectralBasis(const Graph& graph, const GraphSpectrum& spectrum, Passband passband)
    : passband_(std::move(passband)) {
  const std::size_t n = graph.n_vertices();
  if (passband_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty passband");
  for (std::size_t i = 0; i < passband_.size(); ++i) {
    if (passband_[i] == 0 || passband_[i] > n || (i > 0 && passband_[i] <= passband_[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("passband must be strictly increasing within 1..{}", n));
    }
  }
  const auto b = static_cast<Eigen::Index>(passband_.size());
  u_b_.resize(static_cast<Eigen::Index>(n), b);
  for (Eigen::Index c = 0; c < b; ++c) {
    u_b_.col(c) = spectrum.eigenvectors.col(static_cast<Eigen::Index>(passband_[c] - 1));
  }
  edge_rows_.resize(static_cast<Eigen::Index>(graph.n_edges()), b);
  endpoints_.reserve(graph.n_edges());
  for (std::size_t k = 0; k < graph.n_edges(); ++k) {
    const Edge& e = graph.edge(k);
    edge_rows_.row(static_cast<Eigen::Index>(k)) =
        u_b_.row(static_cast<Eigen::Index>(e.p)) - u_b_.row(static_cast<Eigen::Index>(e.q));
    endpoints_.emplace_back(e.p, e.q);
  }
}

SpectralBasis::SpectralBasis(const Graph& graph, Passband passband)
    : SpectralBasis(graph, graph_spectrum(graph), std::move(passband)) {}

Eigen::VectorXd SpectralBasis::sample_row(const SampleId& sample) const {
  if (sample.kind == SampleKind::kVertex) {
    if (sample.index >= n_vertices()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("no vertex {}", sample.index));
    }
    return u_b_.row(static_cast<Eigen::Index>(sample.index)).transpose();
  }
  if (sample.index >= n_edges()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("no edge {}", sample.index));
  }
  return edge_rows_.row(static_cast<Eigen::Index>(sample.index)).transpose();
}

BandlimitedSignal make_bandlimited_signal(const SpectralBasis& basis, Eigen::VectorXd h) {
  if (h.size() != static_cast<Eigen::Index>(basis.bandwidth())) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient vector length differs from bandwidth");
  }
  const double norm = h.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::kInvalidArgument, "zero coefficient vector");
  h /= norm;
  Eigen::VectorXd x = basis.u_b() * h;
  return {std::move(h), std::move(x)};
}

BandlimitedSignal random_bandlimited_signal(const SpectralBasis& basis, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd h(static_cast<Eigen::Index>(basis.bandwidth()));
  for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = unit(rng);
  return make_bandlimited_signal(basis, std::move(h));
}

Sign sign_from_int(int s) {
  if (s < -1 || s > 1) throw Error(ErrorCode::kInvalidArgument, fmt::format("bad sign {}", s));
  return static_cast<Sign>(s);
}

double sample_value(const SpectralBasis& basis, const Eigen::VectorXd& x, const SampleId& sample) {
  if (sample.kind == SampleKind::kVertex) {
    return x(static_cast<Eigen::Index>(sample.index));
  }
  const auto& [p, q] = basis.endpoints(sample.index);
  return x(static_cast<Eigen::Index>(p)) - x(static_cast<Eigen::Index>(q));
}

SignObservation sign_observe(const SpectralBasis& basis, const BandlimitedSignal& signal,
                             const SampleId& sample, double zero_tol) {
  const double v = sample_value(basis, signal.x, sample);
  if (std::abs(v) <= zero_tol) return {sample, Sign::kZero};
  return {sample, v > 0.0 ? Sign::kPositive : Sign::kNegative};
}

}  // namespace signsamp
