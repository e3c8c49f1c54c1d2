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

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace signsamp {

struct Edge {
  std::size_t p = 0;  // always p < q
  std::size_t q = 0;
  double weight = 1.0;
};

// Weighted, undirected, connected graph without self-loops or parallel edges.
// Edges are stored in the order given; the edge index is the position in that
// list and is shared with every edge-sampling row.
class Graph {
 public:
  // Validates and normalizes orientation (p < q). Throws Error(kInvalidGraph)
  // on self-loops, duplicates, out-of-range endpoints, non-positive weights or
  // a disconnected result.
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t n_vertices() const { return n_vertices_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_.at(k); }

  // Dense symmetric weight matrix.
  Eigen::MatrixXd adjacency() const;

 private:
  std::size_t n_vertices_;
  std::vector<Edge> edges_;
};

// BFS from vertex 0 reaches everything. Works on a raw edge list so that the
// generators can test a draw before constructing a Graph.
bool is_connected(std::size_t n_vertices, const std::vector<Edge>& edges);

// Component label per vertex (labels are 0..k-1 in order of first vertex).
std::vector<std::size_t> connected_components(std::size_t n_vertices,
                                              const std::vector<Edge>& edges);

enum class SampleKind { kVertex = 0, kEdge = 1 };

// A vertex or an edge. The total order (all vertices before all edges, then by
// index) is the tie-break rule used everywhere in the samplers.
struct SampleId {
  SampleKind kind = SampleKind::kVertex;
  std::size_t index = 0;

  static SampleId vertex(std::size_t i) { return {SampleKind::kVertex, i}; }
  static SampleId edge(std::size_t k) { return {SampleKind::kEdge, k}; }

  friend auto operator<=>(const SampleId&, const SampleId&) = default;
};

std::string to_string(const SampleId& id);

// Which samples an experiment may choose from.
enum class SampleDomain { kVertices, kVerticesAndEdges };

// All samples of the domain in the canonical total order.
std::vector<SampleId> domain_samples(const Graph& graph, SampleDomain domain);

bool is_valid_sample(const Graph& graph, const SampleId& id);

}  // namespace signsamp
