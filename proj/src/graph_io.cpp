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

#include "signsamp/graph_io.hpp"

#include <fstream>
#include <ostream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "signsamp/csv.hpp"
#include "signsamp/error.hpp"

namespace signsamp {
namespace {

void expect_header(std::istream& in, const std::vector<std::string>& expected,
                   std::string_view what) {
  std::vector<std::string> fields;
  if (!csv::next_row(in, fields) || fields != expected) {
    throw Error(ErrorCode::kSchemaError,
                fmt::format("{}: expected header '{}'", what, fmt::join(expected, ",")));
  }
}

}  // namespace

Graph read_graph_csv(std::istream& in) {
  expect_header(in, {"p", "q", "w"}, "graph csv");
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::vector<std::string> fields;
  while (csv::next_row(in, fields)) {
    if (fields.size() != 3) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("graph csv: expected 3 fields, got {}", fields.size()));
    }
    Edge e{csv::parse_index(fields[0], "graph csv p"), csv::parse_index(fields[1], "graph csv q"),
           csv::parse_double(fields[2], "graph csv w")};
    n = std::max({n, e.p + 1, e.q + 1});
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

Graph read_graph_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open graph file '{}'", path));
  return read_graph_csv(in);
}

void write_graph_csv(std::ostream& out, const Graph& graph) {
  out << "p,q,w\n";
  for (const Edge& e : graph.edges()) {
    out << e.p << ',' << e.q << ',' << csv::format_double(e.weight) << '\n';
  }
}

Eigen::VectorXd read_signal_csv(std::istream& in) {
  expect_header(in, {"vertex", "value"}, "signal csv");
  std::vector<std::pair<std::size_t, double>> rows;
  std::vector<std::string> fields;
  while (csv::next_row(in, fields)) {
    if (fields.size() != 2) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("signal csv: expected 2 fields, got {}", fields.size()));
    }
    rows.emplace_back(csv::parse_index(fields[0], "signal csv vertex"),
                      csv::parse_double(fields[1], "signal csv value"));
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(rows.size()));
  std::vector<bool> filled(rows.size(), false);
  for (const auto& [v, value] : rows) {
    if (v >= rows.size() || filled[v]) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("signal csv: vertex {} missing, repeated or out of range", v));
    }
    filled[v] = true;
    x(static_cast<Eigen::Index>(v)) = value;
  }
  return x;
}

void write_signal_csv(std::ostream& out, const Eigen::VectorXd& x) {
  out << "vertex,value\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) out << i << ',' << csv::format_double(x(i)) << '\n';
}

}  // namespace signsamp
