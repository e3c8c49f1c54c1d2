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

#include "signsamp/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "signsamp/error.hpp"

namespace signsamp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConnectivityFailure: return "ConnectivityFailure";
    case ErrorCode::kEigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::kConflictingObservation: return "ConflictingObservation";
    case ErrorCode::kDimensionCollapse: return "DimensionCollapse";
    case ErrorCode::kSubsetLimitExceeded: return "SubsetLimitExceeded";
    case ErrorCode::kZeroRow: return "ZeroRow";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kRankDeficientBasis: return "RankDeficientBasis";
    case ErrorCode::kNoCandidates: return "NoCandidates";
    case ErrorCode::kEmptyEVSet: return "EmptyEVSet";
    case ErrorCode::kBudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::kDegenerateIterate: return "DegenerateIterate";
    case ErrorCode::kNonUnitInput: return "NonUnitInput";
    case ErrorCode::kInvalidVolumes: return "InvalidVolumes";
    case ErrorCode::kTreeTooLarge: return "TreeTooLarge";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ == 0) {
    throw Error(ErrorCode::kInvalidGraph, "graph has no vertices");
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (Edge& e : edges_) {
    if (e.p > e.q) std::swap(e.p, e.q);
    if (e.p == e.q) {
      throw Error(ErrorCode::kInvalidGraph, fmt::format("self-loop at vertex {}", e.p));
    }
    if (e.q >= n_vertices_) {
      throw Error(ErrorCode::kInvalidGraph,
                  fmt::format("edge ({},{}) out of range for {} vertices", e.p, e.q,
                              n_vertices_));
    }
    if (!(e.weight > 0.0)) {
      throw Error(ErrorCode::kInvalidGraph,
                  fmt::format("edge ({},{}) has non-positive weight {}", e.p, e.q, e.weight));
    }
    if (!seen.emplace(e.p, e.q).second) {
      throw Error(ErrorCode::kInvalidGraph, fmt::format("duplicate edge ({},{})", e.p, e.q));
    }
  }
  if (!is_connected(n_vertices_, edges_)) {
    throw Error(ErrorCode::kInvalidGraph, "graph is not connected");
  }
}

Eigen::MatrixXd Graph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(n_vertices_);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) {
    w(e.p, e.q) = e.weight;
    w(e.q, e.p) = e.weight;
  }
  return w;
}

std::vector<std::size_t> connected_components(std::size_t n_vertices,
                                              const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n_vertices);
  for (const Edge& e : edges) {
    adj[e.p].push_back(e.q);
    adj[e.q].push_back(e.p);
  }
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n_vertices, kUnset);
  std::size_t next = 0;
  for (std::size_t s = 0; s < n_vertices; ++s) {
    if (label[s] != kUnset) continue;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    label[s] = next;
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t u : adj[v]) {
        if (label[u] == kUnset) {
          label[u] = next;
          frontier.push(u);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(std::size_t n_vertices, const std::vector<Edge>& edges) {
  if (n_vertices == 0) return false;
  const auto labels = connected_components(n_vertices, edges);
  return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
}

std::string to_string(const SampleId& id) {
  return fmt::format("{}{}", id.kind == SampleKind::kVertex ? "v" : "e", id.index);
}

std::vector<SampleId> domain_samples(const Graph& graph, SampleDomain domain) {
  std::vector<SampleId> out;
  out.reserve(graph.n_vertices() + graph.n_edges());
  for (std::size_t i = 0; i < graph.n_vertices(); ++i) out.push_back(SampleId::vertex(i));
  if (domain == SampleDomain::kVerticesAndEdges) {
    for (std::size_t k = 0; k < graph.n_edges(); ++k) out.push_back(SampleId::edge(k));
  }
  return out;
}

bool is_valid_sample(const Graph& graph, const SampleId& id) {
  return id.kind == SampleKind::kVertex ? id.index < graph.n_vertices()
                                        : id.index < graph.n_edges();
}

}  // namespace signsamp
