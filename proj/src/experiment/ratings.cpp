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

#include "signsamp/experiment/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "signsamp/baselines.hpp"
#include "signsamp/csv.hpp"
#include "signsamp/error.hpp"
#include "signsamp/gss.hpp"
#include "signsamp/random.hpp"
#include "signsamp/upocs.hpp"

namespace signsamp::experiment {
namespace {

constexpr double kBridgeFloor = 1e-6;

Eigen::MatrixXd zscore(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd z = a;
  const double n = static_cast<double>(a.rows());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const double mean = a.col(c).mean();
    const double sd = std::sqrt((a.col(c).array() - mean).square().sum() / n);
    if (sd > 0.0) {
      z.col(c) = (a.col(c).array() - mean) / sd;
    } else {
      z.col(c).setZero();
    }
  }
  return z;
}

void set_range(RatingDataset& data) {
  data.lo = data.scores.minCoeff();
  data.hi = data.scores.maxCoeff();
}

struct Accumulated {
  double delta = 0.0;
  TopK acc;
};

}  // namespace

RatingDataset ingest_ratings(std::istream& in) {
  std::vector<std::string> fields;
  if (!csv::next_row(in, fields)) throw Error(ErrorCode::kEmptyDataset, "ratings file is empty");
  if (fields.size() < 3 || fields.front() != "id" || fields.back() != "score") {
    throw Error(ErrorCode::kSchemaError,
                "ratings header must be id,<attribute columns>,score with at least one attribute");
  }
  const std::size_t width = fields.size();
  const std::size_t n_attr = width - 2;

  RatingDataset data;
  std::vector<std::vector<double>> attrs;
  std::vector<double> scores;
  std::set<std::string> seen;
  while (csv::next_row(in, fields)) {
    const std::size_t line = scores.size() + 2;
    if (fields.size() != width) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("ratings row {} has {} fields, expected {}", line, fields.size(), width));
    }
    if (!seen.insert(fields.front()).second) {
      throw Error(ErrorCode::kSchemaError,
                  fmt::format("duplicate item id '{}' on row {}", fields.front(), line));
    }
    std::vector<double> row(n_attr);
    for (std::size_t c = 0; c < n_attr; ++c) {
      row[c] = csv::parse_double(fields[c + 1], fmt::format("ratings row {}", line));
    }
    const double score = csv::parse_double(fields.back(), fmt::format("ratings row {}", line));
    if (!std::isfinite(score) ||
        !std::all_of(row.begin(), row.end(), [](double v) { return std::isfinite(v); })) {
      throw Error(ErrorCode::kSchemaError, fmt::format("non-finite value on ratings row {}", line));
    }
    data.ids.push_back(fields.front());
    attrs.push_back(std::move(row));
    scores.push_back(score);
  }
  if (scores.empty()) throw Error(ErrorCode::kEmptyDataset, "ratings file has no rows");

  const auto n = static_cast<Eigen::Index>(scores.size());
  data.attributes.resize(n, static_cast<Eigen::Index>(n_attr));
  data.scores.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = attrs[static_cast<std::size_t>(i)];
    for (std::size_t c = 0; c < n_attr; ++c) data.attributes(i, static_cast<Eigen::Index>(c)) = r[c];
    data.scores(i) = scores[static_cast<std::size_t>(i)];
  }
  set_range(data);
  return data;
}

RatingDataset ingest_ratings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open ratings file '{}'", path));
  return ingest_ratings(in);
}

void write_ratings_csv(std::ostream& out, const RatingDataset& data) {
  out << "id";
  for (Eigen::Index c = 0; c < data.attributes.cols(); ++c) out << ",attr_" << c + 1;
  out << ",score\n";
  for (Eigen::Index i = 0; i < data.attributes.rows(); ++i) {
    out << data.ids[static_cast<std::size_t>(i)];
    for (Eigen::Index c = 0; c < data.attributes.cols(); ++c) {
      out << ',' << csv::format_double(data.attributes(i, c));
    }
    out << ',' << csv::format_double(data.scores(i)) << '\n';
  }
}

Graph build_similarity_graph(const RatingDataset& data, std::size_t knn) {
  const auto n = static_cast<std::size_t>(data.attributes.rows());
  if (n < 2) throw Error(ErrorCode::kEmptyDataset, "a similarity graph needs at least two items");
  if (knn == 0) throw Error(ErrorCode::kInvalidArgument, "knn must be positive");
  const Eigen::MatrixXd z = zscore(data.attributes);
  const Eigen::MatrixXd w = (z * z.transpose()).cwiseMax(0.0);
  auto weight = [&](std::size_t i, std::size_t j) {
    return w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };

  std::set<std::pair<std::size_t, std::size_t>> keep;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return weight(i, a) > weight(i, b); });
    std::size_t taken = 0;
    for (std::size_t j : order) {
      if (taken == knn) break;
      if (j == i || weight(i, j) <= 0.0) continue;
      keep.emplace(std::min(i, j), std::max(i, j));
      ++taken;
    }
  }
  std::vector<Edge> edges;
  for (const auto& [p, q] : keep) edges.push_back({p, q, weight(p, q)});

  const double floor = kBridgeFloor * std::max(1.0, w.maxCoeff());
  while (!is_connected(n, edges)) {
    const std::vector<std::size_t> comp = connected_components(n, edges);
    // Strongest link from component 0 to anything outside it.
    std::size_t bi = 0, bj = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (comp[i] != comp[0]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (comp[j] == comp[0] || weight(i, j) <= best) continue;
        best = weight(i, j);
        bi = i;
        bj = j;
      }
    }
    edges.push_back({std::min(bi, bj), std::max(bi, bj), std::max(best, floor)});
  }
  return Graph(n, std::move(edges));
}

RatingDataset synthetic_ratings(std::size_t n_items, std::size_t n_attributes, std::size_t knn,
                                std::uint64_t rng_seed) {
  if (n_items < 2 || n_attributes == 0) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic ratings need >= 2 items and >= 1 attribute");
  }
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(n_items);

  RatingDataset data;
  data.attributes.resize(n, static_cast<Eigen::Index>(n_attributes));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < data.attributes.cols(); ++c) data.attributes(i, c) = gauss(rng);
    data.ids.push_back(fmt::format("item{:03d}", i + 1));
  }
  const GraphSpectrum spectrum = graph_spectrum(build_similarity_graph(data, knn));

  // Amplitudes fall off as 1/(1 + k/8) with frequency index k; with B = 13
  // about three quarters of the non-DC energy sits in the largest components.
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 1; k < n; ++k) {
    coeff(k) = gauss(rng) / (1.0 + static_cast<double>(k) / 8.0);
  }
  Eigen::VectorXd field = spectrum.eigenvectors * coeff;
  const double sd = std::sqrt(field.squaredNorm() / static_cast<double>(n));
  if (sd > 0.0) field /= sd;

  data.scores.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double raw = 6.0 + 1.5 * field(i) + 0.2 * gauss(rng);
    data.scores(i) = std::round(std::clamp(raw, 0.0, 10.0) * 10.0) / 10.0;
  }
  set_range(data);
  return data;
}

RatingSignal prepare_rating_signal(const RatingDataset& data, std::size_t knn,
                                   std::size_t bandwidth) {
  Graph graph = build_similarity_graph(data, knn);
  const std::size_t n = graph.n_vertices();
  if (bandwidth == 0 || bandwidth >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("bandwidth {} must lie in 1..{}", bandwidth, n - 1));
  }
  GraphSpectrum spectrum = graph_spectrum(graph);

  // The graph is connected, so the first eigenvector is the constant one and
  // its component is the mean score.
  const double dc = data.scores.mean();
  const Eigen::VectorXd residual = data.scores.array() - dc;
  const Eigen::VectorXd coeff = spectrum.eigenvectors.transpose() * residual;

  std::vector<std::size_t> order(n - 1);
  std::iota(order.begin(), order.end(), 2);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(coeff(static_cast<Eigen::Index>(a - 1))) >
           std::abs(coeff(static_cast<Eigen::Index>(b - 1)));
  });
  Passband passband(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(bandwidth));
  std::sort(passband.begin(), passband.end());

  Eigen::VectorXd h(static_cast<Eigen::Index>(bandwidth));
  for (std::size_t c = 0; c < bandwidth; ++c) {
    h(static_cast<Eigen::Index>(c)) = coeff(static_cast<Eigen::Index>(passband[c] - 1));
  }
  const double total = residual.squaredNorm();
  if (!(h.norm() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scores have no energy in the selected components");
  }

  RatingSignal out{std::move(graph), std::move(spectrum), std::move(passband), dc, {}, {}, 0.0};
  out.retained_energy = h.squaredNorm() / total;
  out.h = h.normalized();
  const SpectralBasis basis(out.graph, out.spectrum, out.passband);
  out.x_star = basis.u_b() * out.h;
  return out;
}

long rating_label(double score) { return static_cast<long>(std::floor(score + 0.5)); }

Eigen::VectorXd estimate_scores(double dc_level, const Eigen::VectorXd& x_hat, double lo,
                                double hi) {
  if (!(lo <= dc_level && dc_level <= hi)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("DC level {} outside the score range [{}, {}]", dc_level, lo, hi));
  }
  double c = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x_hat.size(); ++i) {
    if (x_hat(i) > 0.0) c = std::min(c, (hi - dc_level) / x_hat(i));
    if (x_hat(i) < 0.0) c = std::min(c, (lo - dc_level) / x_hat(i));
  }
  if (!std::isfinite(c)) c = 0.0;
  return (dc_level + c * x_hat.array()).matrix();
}

TopK topk_accuracy(const Eigen::VectorXd& estimate, const Eigen::VectorXd& scores) {
  if (estimate.size() != scores.size() || scores.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "estimate and scores must be equal-length and non-empty");
  }
  std::size_t hit1 = 0, hit2 = 0;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const long truth = rating_label(scores(i));
    const long first = rating_label(estimate(i));
    const long second = estimate(i) >= static_cast<double>(first) ? first + 1 : first - 1;
    hit1 += truth == first ? 1 : 0;
    hit2 += truth == first || truth == second ? 1 : 0;
  }
  const double n = static_cast<double>(scores.size());
  return {static_cast<double>(hit1) / n, static_cast<double>(hit2) / n};
}

std::vector<RatingRow> rating_pipeline(const RatingDataset& data, std::size_t dataset_index,
                                       const ExperimentManifest& manifest,
                                       const RatingSink& sink) {
  const RatingSignal target =
      prepare_rating_signal(data, manifest.ratings.knn, manifest.ratings.bandwidth);
  const SpectralBasis basis(target.graph, target.spectrum, target.passband);
  const BandlimitedSignal signal = make_bandlimited_signal(basis, target.h);
  const SignOracle oracle = make_signal_oracle(basis, signal);
  const std::vector<SampleId> domain = basis_domain(basis, manifest.domain);
  validate_budgets(manifest, basis.bandwidth(), domain.size());
  if (manifest.budgets.empty()) throw Error(ErrorCode::kInvalidArgument, "the manifest lists no budgets");
  const std::size_t max_budget = *std::max_element(manifest.budgets.begin(), manifest.budgets.end());

  const std::uint64_t rec_seed = derive_seed(manifest.seed, 3 * dataset_index + 1);
  auto assess = [&](const ObservationSequence& obs) {
    const DirectionRecovery rec = recover_direction(obs, basis, manifest.k, manifest.n_max, rec_seed);
    Accumulated a;
    a.delta = angle_error(signal.x, rec.x_hats);
    for (const auto& x_hat : rec.x_hats) {
      const TopK t = topk_accuracy(estimate_scores(target.dc_level, x_hat, data.lo, data.hi),
                                   data.scores);
      a.acc.top1 += t.top1;
      a.acc.top2 += t.top2;
    }
    const double k = static_cast<double>(rec.x_hats.size());
    a.acc.top1 /= k;
    a.acc.top2 /= k;
    return a;
  };

  std::vector<RatingRow> rows;
  auto emit = [&](const std::string& name, std::size_t budget, const Accumulated& a) {
    RatingRow row{dataset_index, name, budget, a.delta, a.acc.top1, a.acc.top2,
                  target.retained_energy};
    if (sink) sink(row);
    rows.push_back(std::move(row));
  };

  for (SamplerKind kind : manifest.samplers) {
    const std::string name = sampler_name(kind);
    switch (kind) {
      case SamplerKind::kGss: {
        GssConfig config;
        config.domain = manifest.domain;
        const SamplingRun run = run_gss(oracle, basis, max_budget, config);
        for (std::size_t b : manifest.budgets) emit(name, b, assess(run.prefix(b)));
        break;
      }
      case SamplerKind::kRandom: {
        std::vector<Accumulated> sum(manifest.budgets.size());
        const std::uint64_t base = derive_seed(manifest.seed, 3 * dataset_index + 2);
        for (std::size_t r = 0; r < manifest.random_repeats; ++r) {
          const SamplingRun run =
              observe_sequence(random_sequence(domain, max_budget, derive_seed(base, r)), oracle);
          for (std::size_t i = 0; i < manifest.budgets.size(); ++i) {
            const Accumulated a = assess(run.prefix(manifest.budgets[i]));
            sum[i].delta += a.delta;
            sum[i].acc.top1 += a.acc.top1;
            sum[i].acc.top2 += a.acc.top2;
          }
        }
        const double reps = static_cast<double>(manifest.random_repeats);
        for (std::size_t i = 0; i < manifest.budgets.size(); ++i) {
          Accumulated mean{sum[i].delta / reps, {sum[i].acc.top1 / reps, sum[i].acc.top2 / reps}};
          emit(name, manifest.budgets[i], mean);
        }
        break;
      }
      case SamplerKind::kRowNorm: {
        const SamplingRun run =
            observe_sequence(row_norm_sequence(basis, manifest.domain, max_budget), oracle);
        for (std::size_t b : manifest.budgets) emit(name, b, assess(run.prefix(b)));
        break;
      }
      case SamplerKind::kFull: {
        const SamplingRun run = baseline_full(basis, manifest.domain, oracle);
        emit(name, domain.size(), assess(run.observations()));
        break;
      }
    }
  }
  return rows;
}

std::vector<RatingRow> run_ratings(const ExperimentManifest& manifest, const RatingSink& sink) {
  const RatingsSpec& spec = manifest.ratings;
  std::vector<RatingRow> rows;
  auto append = [&](std::vector<RatingRow> more) {
    rows.insert(rows.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  if (!spec.csv_path.empty()) {
    append(rating_pipeline(ingest_ratings(spec.csv_path), 0, manifest, sink));
    return rows;
  }
  for (std::size_t d = 0; d < spec.datasets; ++d) {
    const RatingDataset data = synthetic_ratings(spec.n_items, spec.n_attributes, spec.knn,
                                                 derive_seed(manifest.seed, 3 * d));
    append(rating_pipeline(data, d, manifest, sink));
  }
  return rows;
}

void write_rating_header(std::ostream& out) {
  out << "dataset,sampler,budget,delta,top1,top2,retained_energy\n";
}

void write_rating_row(std::ostream& out, const RatingRow& row) {
  fmt::print(out, "{},{},{},{},{},{},{}\n", row.dataset, row.sampler, row.budget,
             csv::format_double(row.delta), csv::format_double(row.top1),
             csv::format_double(row.top2), csv::format_double(row.retained_energy));
}

}  // namespace signsamp::experiment
