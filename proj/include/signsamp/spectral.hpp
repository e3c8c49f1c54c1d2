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
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "signsamp/graph.hpp"

namespace signsamp {

// L = D - W, or D^{-1/2} (D - W) D^{-1/2} when normalized.
Eigen::MatrixXd laplacian(const Graph& graph, bool normalized = false);

// Full eigendecomposition of the Laplacian, eigenvalues ascending. Columns of
// `eigenvectors` follow the same order.
struct GraphSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Throws Error(kEigenSolverFailure) with a short conditioning report.
GraphSpectrum graph_spectrum(const Graph& graph, bool normalized = false);

// Frequency indices are 1-based positions in the ascending eigenvalue order,
// so {1} is the constant (DC) component and {N} the highest frequency.
using Passband = std::vector<std::size_t>;

// Inclusive range [first, last] of 1-based frequency indices.
Passband contiguous_passband(std::size_t first, std::size_t last);

// Passband-restricted GFT basis together with the sampling rows for every
// vertex (row j of U_B) and every edge (row p minus row q of U_B, p < q).
// Immutable after construction.
class SpectralBasis {
 public:
  SpectralBasis(const Graph& graph, const GraphSpectrum& spectrum, Passband passband);
  SpectralBasis(const Graph& graph, Passband passband);

  std::size_t bandwidth() const { return passband_.size(); }
  std::size_t n_vertices() const { return static_cast<std::size_t>(u_b_.rows()); }
  std::size_t n_edges() const { return endpoints_.size(); }
  const Passband& passband() const { return passband_; }

  // N x B, columns are the selected eigenvectors.
  const Eigen::MatrixXd& u_b() const { return u_b_; }
  // Same matrix; kept separate in name for readability at call sites.
  const Eigen::MatrixXd& vertex_rows() const { return u_b_; }
  // |E| x B.
  const Eigen::MatrixXd& edge_rows() const { return edge_rows_; }
  const std::pair<std::size_t, std::size_t>& endpoints(std::size_t edge) const {
    return endpoints_.at(edge);
  }

  // psi_a^T U_B as a B-vector.
  Eigen::VectorXd sample_row(const SampleId& sample) const;

 private:
  Passband passband_;
  Eigen::MatrixXd u_b_;
  Eigen::MatrixXd edge_rows_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
};

// x = U_B h with ||h|| = ||x|| = 1.
struct BandlimitedSignal {
  Eigen::VectorXd h;
  Eigen::VectorXd x;
};

// h drawn i.i.d. uniform(0,1) and normalized; deterministic in rng_seed.
BandlimitedSignal random_bandlimited_signal(const SpectralBasis& basis, std::uint64_t rng_seed);

// Wraps a known coefficient vector (normalized to unit length).
BandlimitedSignal make_bandlimited_signal(const SpectralBasis& basis, Eigen::VectorXd h);

enum class Sign : int { kNegative = -1, kZero = 0, kPositive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
Sign sign_from_int(int s);

struct SignObservation {
  SampleId sample;
  Sign sign = Sign::kZero;

  friend bool operator==(const SignObservation&, const SignObservation&) = default;
};

using ObservationSequence = std::vector<SignObservation>;

// Value psi_a^T x: x_j for a vertex, x_p - x_q for an edge.
double sample_value(const SpectralBasis& basis, const Eigen::VectorXd& x, const SampleId& sample);

// Sign of psi_a^T x, with |value| <= zero_tol reported as zero.
SignObservation sign_observe(const SpectralBasis& basis, const BandlimitedSignal& signal,
                             const SampleId& sample, double zero_tol = 1e-12);

}  // namespace signsamp
