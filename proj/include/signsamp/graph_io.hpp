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

#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "signsamp/graph.hpp"

namespace signsamp {

// Graph CSV: header `p,q,w`, one edge per line, 0-based vertex indices. The
// vertex count is one past the largest index seen.
Graph read_graph_csv(std::istream& in);
Graph read_graph_csv(const std::string& path);
void write_graph_csv(std::ostream& out, const Graph& graph);

// Signal CSV: header `vertex,value`, rows in vertex order.
Eigen::VectorXd read_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, const Eigen::VectorXd& x);

}  // namespace signsamp
