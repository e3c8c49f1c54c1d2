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

// Experiment driver. Subcommands write CSV files into the output directory;
// exit status is 0 on success, 2 when a checked invariant fails, 1 on error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "signsamp/cone.hpp"
#include "signsamp/error.hpp"
#include "signsamp/experiment/benchmark.hpp"
#include "signsamp/experiment/manifest.hpp"
#include "signsamp/experiment/ratings.hpp"
#include "signsamp/experiment/svg_plot.hpp"
#include "signsamp/graph_generators.hpp"
#include "signsamp/gss.hpp"
#include "signsamp/random.hpp"
#include "signsamp/theory_checks.hpp"

namespace fs = std::filesystem;
namespace ex = signsamp::experiment;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kViolation = 2;

struct Options {
  std::string manifest_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool plots = false;
  std::size_t instances = 200;
  std::size_t trial = 0;
};

ex::ExperimentManifest load(const Options& opt) {
  if (opt.manifest_path.empty()) {
    throw signsamp::Error(signsamp::ErrorCode::kIoError, "--manifest is required");
  }
  ex::ExperimentManifest m = ex::load_manifest(opt.manifest_path);
  if (opt.seed) m.seed = *opt.seed;
  if (!opt.out_dir.empty()) m.output_dir = opt.out_dir;
  fs::create_directories(m.output_dir);
  return m;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw signsamp::Error(signsamp::ErrorCode::kIoError,
                          fmt::format("cannot write '{}'", path.string()));
  }
  return out;
}

bool delta_in_range(double delta) { return delta >= 0.0 && delta <= std::numbers::pi; }

std::string plot_name(const std::string& sub, const ex::ExperimentManifest& m) {
  return fmt::format("{}_{}_{}.svg", sub, signsamp::graph_kind_name(m.graph),
                     ex::domain_name(m.domain));
}

// One series per key, in first-appearance order.
class SeriesBuilder {
 public:
  void add(const std::string& key, double x, double y) {
    auto [it, fresh] = index_.try_emplace(key, series_.size());
    if (fresh) series_.push_back({key, {}, {}});
    series_[it->second].x.push_back(x);
    series_[it->second].y.push_back(y);
  }
  std::vector<ex::PlotSeries> take() { return std::move(series_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<ex::PlotSeries> series_;
};

int cmd_bench(const Options& opt) {
  const ex::ExperimentManifest m = load(opt);
  const fs::path dir = m.output_dir;
  std::ofstream rows_out = open_out(dir / "bench.csv");
  ex::write_benchmark_header(rows_out);
  bool ok = true;
  const auto rows = ex::run_benchmark(m, [&](const ex::BenchmarkRow& row) {
    ex::write_benchmark_row(rows_out, row);
    rows_out.flush();
    ok = ok && delta_in_range(row.delta);
  });
  const auto summary = ex::summarize(rows);
  std::ofstream summary_out = open_out(dir / "bench_summary.csv");
  ex::write_summary_csv(summary_out, summary);

  for (const auto& s : summary) {
    fmt::print("{:<9} M={:<4} mean delta {:.4f} (se {:.4f})\n", s.sampler, s.budget, s.mean_delta,
               s.std_err);
  }
  if (opt.plots) {
    SeriesBuilder sb;
    for (const auto& s : summary) sb.add(s.sampler, static_cast<double>(s.budget), s.mean_delta);
    ex::write_svg((dir / plot_name("bench", m)).string(),
                  {"Mean angular error vs budget", "budget M", "mean delta (rad)", sb.take()});
  }
  if (!ok) std::cerr << "error: a delta fell outside [0, pi]\n";
  return ok ? kOk : kViolation;
}

int cmd_bandwidth(const Options& opt) {
  const ex::ExperimentManifest m = load(opt);
  const fs::path dir = m.output_dir;
  const ex::BandwidthSweep sweep = ex::run_bandwidth_sweep(m);
  std::ofstream rows_out = open_out(dir / "bandwidth.csv");
  ex::write_bandwidth_csv(rows_out, sweep.rows);
  std::ofstream summary_out = open_out(dir / "bandwidth_summary.csv");
  ex::write_bandwidth_summary_csv(summary_out, sweep);

  bool ok = sweep.trend_ok;
  for (const auto& r : sweep.rows) ok = ok && delta_in_range(r.row.delta);
  for (const auto& [name, rho] : sweep.spearman) {
    fmt::print("{:<9} spearman(B, mean delta) = {:.3f}\n", name, rho);
  }
  if (opt.plots) {
    SeriesBuilder sb;
    for (const auto& s : sweep.summary) {
      sb.add(s.summary.sampler, static_cast<double>(s.bandwidth), s.summary.mean_delta);
    }
    ex::write_svg((dir / plot_name("bandwidth", m)).string(),
                  {"Mean angular error vs bandwidth", "bandwidth B", "mean delta (rad)", sb.take()});
  }
  if (!sweep.trend_ok) std::cerr << "error: mean delta does not increase with the bandwidth\n";
  return ok ? kOk : kViolation;
}

int cmd_ratings(const Options& opt) {
  const ex::ExperimentManifest m = load(opt);
  const fs::path dir = m.output_dir;
  std::ofstream rows_out = open_out(dir / "ratings.csv");
  ex::write_rating_header(rows_out);
  bool ok = true;
  const auto rows = ex::run_ratings(m, [&](const ex::RatingRow& row) {
    ex::write_rating_row(rows_out, row);
    rows_out.flush();
    ok = ok && delta_in_range(row.delta) && row.top2 >= row.top1;
  });

  // Means over datasets per (sampler, budget).
  std::map<std::pair<std::string, std::size_t>, std::array<double, 4>> acc;
  std::vector<std::pair<std::string, std::size_t>> order;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.sampler, r.budget);
    auto [it, fresh] = acc.try_emplace(key, std::array<double, 4>{0, 0, 0, 0});
    if (fresh) order.push_back(key);
    it->second[0] += r.delta;
    it->second[1] += r.top1;
    it->second[2] += r.top2;
    it->second[3] += 1.0;
  }
  SeriesBuilder sb;
  for (const auto& key : order) {
    const auto& a = acc[key];
    fmt::print("{:<9} M={:<4} delta {:.4f} top1 {:.3f} top2 {:.3f}\n", key.first, key.second,
               a[0] / a[3], a[1] / a[3], a[2] / a[3]);
    sb.add(key.first, static_cast<double>(key.second), a[0] / a[3]);
  }
  if (opt.plots) {
    ex::write_svg((dir / plot_name("ratings", m)).string(),
                  {"Rating recovery: mean angular error vs budget", "budget M", "mean delta (rad)",
                   sb.take()});
  }
  if (!ok) std::cerr << "error: a row has delta outside [0, pi] or top2 < top1\n";
  return ok ? kOk : kViolation;
}

int cmd_verify_theory(const Options& opt) {
  const std::uint64_t seed = opt.seed.value_or(7);
  const auto checks = signsamp::run_theory_suite(opt.instances, seed);
  signsamp::write_theory_report(std::cout, checks);
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    std::ofstream out = open_out(fs::path(opt.out_dir) / "theory.csv");
    signsamp::write_theory_report(out, checks);
  }
  const std::size_t violations = signsamp::total_violations(checks);
  if (violations > 0) std::cerr << "error: " << violations << " theory violations\n";
  return violations == 0 ? kOk : kViolation;
}

int cmd_dump_cone(const Options& opt) {
  const ex::ExperimentManifest m = load(opt);
  if (m.budgets.empty()) {
    throw signsamp::Error(signsamp::ErrorCode::kInvalidArgument, "the manifest lists no budgets");
  }
  const signsamp::Graph graph = signsamp::generate_graph(m.graph, m.graph_seed);
  const signsamp::SpectralBasis basis(graph, m.passband);
  const auto signal =
      signsamp::random_bandlimited_signal(basis, signsamp::derive_seed(m.seed, 3 * opt.trial));
  const auto oracle = signsamp::make_signal_oracle(basis, signal);
  signsamp::GssConfig config;
  config.domain = m.domain;
  const std::size_t budget = *std::max_element(m.budgets.begin(), m.budgets.end());
  const signsamp::SamplingRun run = signsamp::run_gss(oracle, basis, budget, config);

  signsamp::FeasibleCone cone(basis.bandwidth());
  for (const auto& obs : run.observations()) cone = cone.add_constraint(obs, basis);

  nlohmann::ordered_json doc;
  doc["dim"] = cone.dim();
  doc["constraints"] = nlohmann::json::array();
  for (const auto& c : cone.constraints()) {
    doc["constraints"].push_back({{"row", std::vector<double>(c.row.data(), c.row.data() + c.row.size())},
                                  {"relation", std::string(signsamp::relation_name(c.relation))},
                                  {"source", signsamp::to_string(c.source)}});
  }
  doc["evs"] = nlohmann::json::array();
  for (const auto& z : cone.evs()) {
    doc["evs"].push_back(std::vector<double>(z.data(), z.data() + z.size()));
  }
  const fs::path dir = m.output_dir;
  std::ofstream cone_out = open_out(dir / "cone.json");
  cone_out << doc.dump(2) << '\n';
  std::ofstream log_out = open_out(dir / "run_log.csv");
  signsamp::write_run_log(log_out, run);
  fmt::print("{} observations, {} extreme vectors, stopped early: {}\n", run.sequence.size(),
             cone.evs().size(), run.stopped_early ? "yes" : "no");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed sampling of bandlimited graph signals"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_manifest) {
    auto* m = sub->add_option("--manifest", opt.manifest_path, "experiment manifest (INI)");
    if (needs_manifest) m->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "override the manifest seed");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_flag("--plots", opt.plots, "also write SVG line charts");
  };
  auto* bench = app.add_subcommand("bench", "sampler comparison over budgets");
  auto* bandwidth = app.add_subcommand("bandwidth", "fixed budget, varying bandwidth");
  auto* ratings = app.add_subcommand("ratings", "rating recovery and top-k accuracy");
  auto* theory = app.add_subcommand("verify-theory", "exact-volume checks on small instances");
  auto* dump = app.add_subcommand("dump-cone", "GSS cone and run log for one trial");
  for (auto* sub : {bench, bandwidth, ratings, dump}) add_common(sub, true);
  theory->add_option("--seed", opt.seed, "random seed (default 7)");
  theory->add_option("--out", opt.out_dir, "also write theory.csv here");
  theory->add_option("--instances", opt.instances, "number of random instances")->check(CLI::PositiveNumber);
  dump->add_option("--trial", opt.trial, "trial index whose signal is used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  try {
    if (*bench) return cmd_bench(opt);
    if (*bandwidth) return cmd_bandwidth(opt);
    if (*ratings) return cmd_ratings(opt);
    if (*theory) return cmd_verify_theory(opt);
    if (*dump) return cmd_dump_cone(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
