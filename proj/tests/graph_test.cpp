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

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "signsamp/csv.hpp"
#include "signsamp/error.hpp"
#include "signsamp/graph.hpp"
#include "signsamp/graph_generators.hpp"
#include "signsamp/graph_io.hpp"
#include "signsamp/spectral.hpp"

namespace signsamp {
namespace {

Graph path2() { return Graph(2, {{0, 1, 1.0}}); }
Graph triangle() { return Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, edges);
}

TEST(GraphTest, NormalizesOrientation) {
  const Graph g(3, {{2, 0, 1.5}, {1, 2, 1.0}});
  EXPECT_EQ(g.edge(0).p, 0u);
  EXPECT_EQ(g.edge(0).q, 2u);
  EXPECT_DOUBLE_EQ(g.edge(0).weight, 1.5);
}

TEST(GraphTest, RejectsInvalidEdges) {
  auto code = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  EXPECT_EQ(code([] { Graph(2, {{0, 0, 1.0}, {0, 1, 1.0}}); }), ErrorCode::kInvalidGraph);
  EXPECT_EQ(code([] { Graph(2, {{0, 1, 1.0}, {1, 0, 2.0}}); }), ErrorCode::kInvalidGraph);
  EXPECT_EQ(code([] { Graph(2, {{0, 2, 1.0}}); }), ErrorCode::kInvalidGraph);
  EXPECT_EQ(code([] { Graph(2, {{0, 1, 0.0}}); }), ErrorCode::kInvalidGraph);
  EXPECT_EQ(code([] { Graph(3, {{0, 1, 1.0}}); }), ErrorCode::kInvalidGraph);
}

TEST(GraphTest, ConnectedComponents) {
  const std::vector<Edge> edges = {{0, 1, 1.0}, {2, 3, 1.0}};
  EXPECT_FALSE(is_connected(4, edges));
  const auto comp = connected_components(4, edges);
  EXPECT_EQ(comp[0], comp[1]);
  EXPECT_EQ(comp[2], comp[3]);
  EXPECT_NE(comp[0], comp[2]);
}

TEST(GraphTest, DomainSamplesListVerticesThenEdges) {
  const auto s = domain_samples(triangle(), SampleDomain::kVerticesAndEdges);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s[0], SampleId::vertex(0));
  EXPECT_EQ(s[3], SampleId::edge(0));
  EXPECT_EQ(domain_samples(triangle(), SampleDomain::kVertices).size(), 3u);
  EXPECT_TRUE(is_valid_sample(triangle(), SampleId::edge(2)));
  EXPECT_FALSE(is_valid_sample(triangle(), SampleId::edge(3)));
}

TEST(LaplacianTest, PathOfTwo) {
  const Eigen::MatrixXd l = laplacian(path2());
  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_TRUE(l.isApprox(expected));
}

TEST(LaplacianTest, Triangle) {
  const Eigen::MatrixXd l = laplacian(triangle());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(l(i, j), i == j ? 2.0 : -1.0);
  }
}

TEST(SpectrumTest, SmallestEigenvalueIsZeroWithConstantVector) {
  const Graph g = generate_graph(SensorGraphParams{}, 3);
  const GraphSpectrum s = graph_spectrum(g);
  EXPECT_NEAR(s.eigenvalues(0), 0.0, 1e-10);
  const Eigen::VectorXd u0 = s.eigenvectors.col(0);
  EXPECT_NEAR((u0.array() - u0.mean()).abs().maxCoeff(), 0.0, 1e-10);
  for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) {
    EXPECT_LE(s.eigenvalues(i - 1), s.eigenvalues(i) + 1e-12);
  }
}

TEST(SpectrumTest, RepeatedEigenvaluesStayOrthonormal) {
  // Cycles have eigenvalues of multiplicity two.
  const Graph g = cycle(12);
  const SpectralBasis basis(g, contiguous_passband(1, 12));
  const Eigen::MatrixXd gram = basis.u_b().transpose() * basis.u_b();
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SpectralBasisTest, FullPassbandIsOrthogonalProjector) {
  const Graph g = generate_graph(ErdosRenyiParams{15, 0.4}, 2);
  const SpectralBasis basis(g, contiguous_passband(1, 15));
  const Eigen::MatrixXd p = basis.u_b() * basis.u_b().transpose();
  EXPECT_LE((p - Eigen::MatrixXd::Identity(15, 15)).cwiseAbs().maxCoeff(), 1e-10);
  // Vertex rows of a full basis are rows of U itself.
  const GraphSpectrum s = graph_spectrum(g);
  EXPECT_LE((basis.sample_row(SampleId::vertex(4)) - s.eigenvectors.row(4).transpose())
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(SpectralBasisTest, SensorPassbandShape) {
  const Graph g = generate_graph(SensorGraphParams{40, 6}, 1);
  const SpectralBasis basis(g, contiguous_passband(29, 35));
  EXPECT_EQ(basis.u_b().rows(), 40);
  EXPECT_EQ(basis.u_b().cols(), 7);
  EXPECT_EQ(basis.bandwidth(), 7u);
  const Eigen::MatrixXd gram = basis.u_b().transpose() * basis.u_b();
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SpectralBasisTest, RejectsBadPassbands) {
  const Graph g = triangle();
  EXPECT_THROW(SpectralBasis(g, Passband{}), Error);
  EXPECT_THROW(SpectralBasis(g, Passband{0, 1}), Error);
  EXPECT_THROW(SpectralBasis(g, Passband{2, 2}), Error);
  EXPECT_THROW(SpectralBasis(g, Passband{4}), Error);
  EXPECT_THROW(contiguous_passband(3, 2), Error);
}

TEST(SpectralBasisTest, EdgeRowIsDifferenceOfVertexRows) {
  const Graph g = generate_graph(WattsStrogatzParams{20, 4, 0.3}, 5);
  const SpectralBasis basis(g, contiguous_passband(3, 8));
  for (std::size_t k = 0; k < basis.n_edges(); ++k) {
    const auto [p, q] = basis.endpoints(k);
    EXPECT_LT((basis.sample_row(SampleId::edge(k)) + basis.sample_row(SampleId::vertex(q)) -
               basis.sample_row(SampleId::vertex(p)))
                  .norm(),
              1e-14);
  }
}

TEST(SignalTest, RandomSignalIsUnitAndBandlimited) {
  const Graph g = generate_graph(SensorGraphParams{}, 1);
  const GraphSpectrum s = graph_spectrum(g);
  const SpectralBasis basis(g, s, contiguous_passband(29, 35));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BandlimitedSignal x = random_bandlimited_signal(basis, seed);
    EXPECT_NEAR(x.x.norm(), 1.0, 1e-10);
    const Eigen::VectorXd spec = s.eigenvectors.transpose() * x.x;
    for (Eigen::Index i = 0; i < spec.size(); ++i) {
      if (i < 28 || i > 34) {
        EXPECT_NEAR(spec(i), 0.0, 1e-10);
      }
    }
  }
  const BandlimitedSignal a = random_bandlimited_signal(basis, 42);
  const BandlimitedSignal b = random_bandlimited_signal(basis, 42);
  EXPECT_EQ(a.x, b.x);
}

TEST(SignObserveTest, VertexAndEdgeSigns) {
  const Graph g = path2();
  const SpectralBasis basis(g, contiguous_passband(1, 2));
  BandlimitedSignal x;
  x.x = Eigen::Vector2d(0.6, -0.8);
  EXPECT_EQ(sign_observe(basis, x, SampleId::vertex(0)).sign, Sign::kPositive);
  EXPECT_EQ(sign_observe(basis, x, SampleId::vertex(1)).sign, Sign::kNegative);
  EXPECT_EQ(sign_observe(basis, x, SampleId::edge(0)).sign, Sign::kPositive);
  x.x = Eigen::Vector2d(1e-15, 0.5);
  EXPECT_EQ(sign_observe(basis, x, SampleId::vertex(0)).sign, Sign::kZero);
}

TEST(SignObserveTest, AntisymmetricAndScaleInvariant) {
  const Graph g = generate_graph(SensorGraphParams{}, 4);
  const SpectralBasis basis(g, contiguous_passband(29, 35));
  const BandlimitedSignal x = random_bandlimited_signal(basis, 9);
  BandlimitedSignal neg = x, scaled = x;
  neg.x = -x.x;
  scaled.x = 3.7 * x.x;
  for (const SampleId& id : domain_samples(g, SampleDomain::kVerticesAndEdges)) {
    const Sign s = sign_observe(basis, x, id).sign;
    if (s != Sign::kZero) {
      EXPECT_EQ(to_int(sign_observe(basis, neg, id).sign), -to_int(s));
    }
    EXPECT_EQ(sign_observe(basis, scaled, id).sign, s);
  }
}

TEST(GeneratorTest, WattsStrogatzLatticeEdgeCount) {
  EXPECT_EQ(generate_graph(WattsStrogatzParams{40, 4, 0.0}, 1).n_edges(), 80u);
}

TEST(GeneratorTest, ErdosRenyiEdgeCountNearExpectation) {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = generate_graph(ErdosRenyiParams{40, 0.3}, seed);
    EXPECT_TRUE(is_connected(g.n_vertices(), g.edges()));
    total += static_cast<double>(g.n_edges());
  }
  // 0.3 * C(40, 2) = 234; the standard deviation of a 20-draw mean is ~2.
  EXPECT_NEAR(total / 20.0, 234.0, 10.0);
}

TEST(GeneratorTest, SensorGraphConnectedWithComparableEdgeCount) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = generate_graph(SensorGraphParams{}, seed);
    EXPECT_EQ(g.n_vertices(), 40u);
    EXPECT_TRUE(is_connected(g.n_vertices(), g.edges()));
    EXPECT_GT(g.n_edges(), 110u);
    EXPECT_LT(g.n_edges(), 170u);
  }
}

TEST(GeneratorTest, DeterministicPerSeed) {
  const Graph a = generate_graph(SensorGraphParams{}, 11);
  const Graph b = generate_graph(SensorGraphParams{}, 11);
  ASSERT_EQ(a.n_edges(), b.n_edges());
  for (std::size_t k = 0; k < a.n_edges(); ++k) {
    EXPECT_EQ(a.edge(k).p, b.edge(k).p);
    EXPECT_EQ(a.edge(k).weight, b.edge(k).weight);
  }
}

TEST(GeneratorTest, RejectsImplausibleParameters) {
  EXPECT_THROW(generate_graph(ErdosRenyiParams{40, 0.0}, 1), Error);
  EXPECT_THROW(generate_graph(WattsStrogatzParams{40, 3, 0.1}, 1), Error);
  EXPECT_THROW(generate_graph(SensorGraphParams{40, 40}, 1), Error);
}

TEST(GraphIoTest, RoundTrip) {
  const Graph g = generate_graph(SensorGraphParams{}, 2);
  std::stringstream ss;
  write_graph_csv(ss, g);
  const Graph back = read_graph_csv(ss);
  ASSERT_EQ(back.n_edges(), g.n_edges());
  for (std::size_t k = 0; k < g.n_edges(); ++k) {
    EXPECT_EQ(back.edge(k).weight, g.edge(k).weight);
  }
  std::stringstream sig;
  const Eigen::Vector3d x(0.1, -2.5, 1.0 / 3.0);
  write_signal_csv(sig, x);
  EXPECT_EQ(read_signal_csv(sig), Eigen::VectorXd(x));
}

TEST(GraphIoTest, SchemaErrors) {
  std::stringstream bad_header("a,b,c\n0,1,1\n");
  EXPECT_THROW(read_graph_csv(bad_header), Error);
  std::stringstream bad_row("p,q,w\n0,1\n");
  EXPECT_THROW(read_graph_csv(bad_row), Error);
  std::stringstream bad_number("p,q,w\n0,1,abc\n");
  EXPECT_THROW(read_graph_csv(bad_number), Error);
  std::stringstream gap("vertex,value\n0,1\n2,1\n");
  EXPECT_THROW(read_signal_csv(gap), Error);
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125, std::numbers::pi}) {
    EXPECT_EQ(csv::parse_double(csv::format_double(v), "test"), v);
  }
  EXPECT_EQ(csv::split_line(" a, b ,c "), (std::vector<std::string>{"a", "b", "c"}));
}

}  // namespace
}  // namespace signsamp
