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

#include "signsamp/experiment/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "signsamp/baselines.hpp"
#include "signsamp/csv.hpp"
#include "signsamp/error.hpp"
#include "signsamp/graph_generators.hpp"
#include "signsamp/gss.hpp"
#include "signsamp/incomplete_beta.hpp"
#include "signsamp/random.hpp"
#include "signsamp/upocs.hpp"

namespace signsamp::experiment {
namespace {

constexpr double kCapDelta = 0.3;

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double recovery_delta(const SpectralBasis& basis, const Eigen::VectorXd& x_star,
                      const ObservationSequence& observations, std::size_t k, std::size_t n_max,
                      std::uint64_t recovery_seed) {
  const DirectionRecovery rec = recover_direction(observations, basis, k, n_max, recovery_seed);
  return angle_error(x_star, rec.x_hats);
}

std::vector<BenchmarkRow> run_benchmark(const ExperimentManifest& manifest,
                                        const SpectralBasis& basis, const RowSink& sink) {
  const std::vector<SampleId> domain = basis_domain(basis, manifest.domain);
  validate_budgets(manifest, basis.bandwidth(), domain.size());
  const bool needs_budget = std::any_of(manifest.samplers.begin(), manifest.samplers.end(),
                                        [](SamplerKind s) { return s != SamplerKind::kFull; });
  if (needs_budget && manifest.budgets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "the manifest lists no budgets");
  }
  const std::size_t max_budget =
      manifest.budgets.empty() ? 0 : *std::max_element(manifest.budgets.begin(), manifest.budgets.end());

  std::vector<BenchmarkRow> rows;
  auto emit = [&](BenchmarkRow row) {
    if (sink) sink(row);
    rows.push_back(std::move(row));
  };

  for (std::size_t t = 0; t < manifest.trials; ++t) {
    const BandlimitedSignal signal = random_bandlimited_signal(basis, derive_seed(manifest.seed, 3 * t));
    const SignOracle oracle = make_signal_oracle(basis, signal);
    const std::uint64_t rec_seed = derive_seed(manifest.seed, 3 * t + 1);
    auto delta_of = [&](const ObservationSequence& obs) {
      return recovery_delta(basis, signal.x, obs, manifest.k, manifest.n_max, rec_seed);
    };

    for (SamplerKind kind : manifest.samplers) {
      const std::string name = sampler_name(kind);
      switch (kind) {
        case SamplerKind::kGss: {
          GssConfig config;
          config.domain = manifest.domain;
          const SamplingRun run = run_gss(oracle, basis, max_budget, config);
          for (std::size_t b : manifest.budgets) {
            const bool stopped = run.stopped_early && run.sequence.size() < b;
            emit({name, b, t, delta_of(run.prefix(b)), stopped});
          }
          break;
        }
        case SamplerKind::kRandom: {
          std::vector<double> sum(manifest.budgets.size(), 0.0);
          const std::uint64_t base = derive_seed(manifest.seed, 3 * t + 2);
          for (std::size_t r = 0; r < manifest.random_repeats; ++r) {
            const SamplingRun run =
                observe_sequence(random_sequence(domain, max_budget, derive_seed(base, r)), oracle);
            for (std::size_t i = 0; i < manifest.budgets.size(); ++i) {
              sum[i] += delta_of(run.prefix(manifest.budgets[i]));
            }
          }
          for (std::size_t i = 0; i < manifest.budgets.size(); ++i) {
            emit({name, manifest.budgets[i], t,
                  sum[i] / static_cast<double>(manifest.random_repeats), false});
          }
          break;
        }
        case SamplerKind::kRowNorm: {
          const SamplingRun run =
              observe_sequence(row_norm_sequence(basis, manifest.domain, max_budget), oracle);
          for (std::size_t b : manifest.budgets) emit({name, b, t, delta_of(run.prefix(b)), false});
          break;
        }
        case SamplerKind::kFull: {
          const SamplingRun run = baseline_full(basis, manifest.domain, oracle);
          emit({name, domain.size(), t, delta_of(run.observations()), false});
          break;
        }
      }
    }
  }
  return rows;
}

std::vector<BenchmarkRow> run_benchmark(const ExperimentManifest& manifest, const RowSink& sink) {
  const Graph graph = generate_graph(manifest.graph, manifest.graph_seed);
  const SpectralBasis basis(graph, manifest.passband);
  return run_benchmark(manifest, basis, sink);
}

std::vector<SummaryRow> summarize(const std::vector<BenchmarkRow>& rows) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> groups;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.sampler, r.budget);
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) keys.push_back(key);
    it->second.push_back(r.delta);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : keys) {
    const auto& v = groups[key];
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double d : v) ss += (d - mean) * (d - mean);
    const double se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    out.push_back({key.first, key.second, v.size(), mean, se});
  }
  return out;
}

void write_benchmark_header(std::ostream& out) {
  out << "sampler,budget,trial,delta,stopped_early\n";
}

void write_benchmark_row(std::ostream& out, const BenchmarkRow& row) {
  fmt::print(out, "{},{},{},{},{}\n", row.sampler, row.budget, row.trial,
             csv::format_double(row.delta), row.stopped_early ? 1 : 0);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "sampler,budget,trials,mean_delta,std_err\n";
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{}\n", r.sampler, r.budget, r.trials,
               csv::format_double(r.mean_delta), csv::format_double(r.std_err));
  }
}

Passband passband_at(std::size_t start, std::size_t b, std::size_t n_vertices) {
  if (b == 0 || b > n_vertices) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("bandwidth {} does not fit {} vertices", b, n_vertices));
  }
  const std::size_t first = std::max<std::size_t>(1, std::min(start, n_vertices - b + 1));
  return contiguous_passband(first, first + b - 1);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "spearman needs two equal-length series of length >= 2");
  }
  const std::vector<double> rx = average_ranks(x), ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

BandwidthSweep run_bandwidth_sweep(const ExperimentManifest& manifest) {
  if (manifest.bandwidths.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "the manifest lists no bandwidths");
  }
  if (manifest.budgets.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "the bandwidth sweep needs one budget");
  }
  const Graph graph = generate_graph(manifest.graph, manifest.graph_seed);
  const GraphSpectrum spectrum = graph_spectrum(graph);
  ExperimentManifest fixed = manifest;
  fixed.budgets = {manifest.budgets.front()};

  BandwidthSweep sweep;
  for (std::size_t b : manifest.bandwidths) {
    const SpectralBasis basis(graph, spectrum,
                              passband_at(manifest.passband_start, b, graph.n_vertices()));
    for (BenchmarkRow& row : run_benchmark(fixed, basis)) {
      sweep.rows.push_back({b, std::move(row)});
    }
  }

  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
  std::vector<std::string> sampler_order;
  for (std::size_t b : manifest.bandwidths) {
    std::vector<BenchmarkRow> at_b;
    for (const auto& r : sweep.rows) {
      if (r.bandwidth == b) at_b.push_back(r.row);
    }
    for (const SummaryRow& s : summarize(at_b)) {
      sweep.summary.push_back({b, s, spherical_cap_ratio(static_cast<int>(b), kCapDelta)});
      auto [it, fresh] = series.try_emplace(s.sampler);
      if (fresh) sampler_order.push_back(s.sampler);
      it->second.first.push_back(static_cast<double>(b));
      it->second.second.push_back(s.mean_delta);
    }
  }
  if (manifest.bandwidths.size() >= 2) {
    const bool has_gss = series.count(sampler_name(SamplerKind::kGss)) > 0;
    for (const auto& name : sampler_order) {
      const double rho = spearman(series[name].first, series[name].second);
      sweep.spearman.emplace_back(name, rho);
      if ((!has_gss || name == sampler_name(SamplerKind::kGss)) && !(rho > 0.8)) {
        sweep.trend_ok = false;
      }
    }
  }
  return sweep;
}

void write_bandwidth_csv(std::ostream& out, const std::vector<BandwidthRow>& rows) {
  out << "bandwidth,sampler,budget,trial,delta,stopped_early\n";
  for (const auto& r : rows) {
    fmt::print(out, "{},{},{},{},{},{}\n", r.bandwidth, r.row.sampler, r.row.budget, r.row.trial,
               csv::format_double(r.row.delta), r.row.stopped_early ? 1 : 0);
  }
}

void write_bandwidth_summary_csv(std::ostream& out, const BandwidthSweep& sweep) {
  out << "bandwidth,sampler,trials,mean_delta,std_err,cap_ratio\n";
  for (const auto& s : sweep.summary) {
    fmt::print(out, "{},{},{},{},{},{}\n", s.bandwidth, s.summary.sampler, s.summary.trials,
               csv::format_double(s.summary.mean_delta), csv::format_double(s.summary.std_err),
               csv::format_double(s.cap_ratio));
  }
}

}  // namespace signsamp::experiment
