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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. An optional argument names a directory for the CSVs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "signsamp/baselines.hpp"
#include "signsamp/experiment/benchmark.hpp"
#include "signsamp/experiment/ratings.hpp"
#include "signsamp/graph_generators.hpp"
#include "signsamp/gss.hpp"
#include "signsamp/incomplete_beta.hpp"
#include "signsamp/random.hpp"
#include "signsamp/theory_checks.hpp"
#include "signsamp/upocs.hpp"
#include "signsamp/volume.hpp"

namespace {

using namespace signsamp;
using namespace signsamp::experiment;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::filesystem::path g_out_dir;

void save(const std::string& name, const std::string& text) {
  if (g_out_dir.empty()) return;
  std::ofstream(g_out_dir / name) << text;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- 1 -----------------------------------------------------------------------

Outcome cone_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> dim(2, 4), count(4, 10);
  std::size_t mismatches = 0, total_evs = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t b = dim(rng);
    const FeasibleCone cone = testing::random_cone(b, count(rng), rng);
    const auto evs = enumerate_evs(cone);
    total_evs += evs.size();
    if (!testing::same_ray_set(evs, testing::brute_force_evs(cone), 1e-7)) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          fmt::format("200 cones, {} EVs, {} mismatches, {:.1f} s", total_evs, mismatches, secs)};
}

// --- 2 -----------------------------------------------------------------------

Outcome volume_oracles() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260102);
  std::uniform_int_distribution<std::size_t> count(2, 6);
  int outside = 0, cones = 0;
  double worst_z = 0.0;
  while (cones < 50) {
    const FeasibleCone cone = testing::random_cone(3, count(rng), rng, 0.2, 0.0);
    const double exact = exact_volume_lowdim(cone);
    if (exact <= 0.0) continue;
    const VolumeEstimate mc = estimate_volume(cone, 1000000, derive_seed(20260102, cones));
    const double z = std::abs(mc.fraction - exact) / mc.std_err;
    worst_z = std::max(worst_z, z);
    if (z > 4.0) ++outside;
    ++cones;
  }
  FeasibleCone q2(2), q3(3);
  for (Eigen::Index i = 0; i < 2; ++i) {
    q2 = q2.add_constraint(Eigen::Vector2d::Unit(i), Relation::kGeq, SampleId::vertex(i));
  }
  for (Eigen::Index i = 0; i < 3; ++i) {
    q3 = q3.add_constraint(Eigen::Vector3d::Unit(i), Relation::kGeq, SampleId::vertex(i));
  }
  const double v2 = exact_volume_lowdim(q2), v3 = exact_volume_lowdim(q3);
  const double secs = seconds_since(t0);
  return {outside == 0 && v2 == 0.25 && v3 == 0.125 && secs < 120.0,
          fmt::format("50 cones, worst |z| {:.2f}, {} beyond 4 sigma; orthants {} and {}; {:.1f} s",
                      worst_z, outside, v2, v3, secs)};
}

// --- 3 -----------------------------------------------------------------------

std::string theory_csv() {
  std::ostringstream out;
  write_theory_report(out, run_theory_suite(200, 7));
  return out.str();
}

Outcome theory_suite() {
  const auto t0 = Clock::now();
  const auto checks = run_theory_suite(200, 7);
  const double secs = seconds_since(t0);
  std::ostringstream out;
  write_theory_report(out, checks);
  save("theory.csv", out.str());
  std::size_t min_instances = checks.empty() ? 0 : checks.front().instances;
  for (const auto& c : checks) min_instances = std::min(min_instances, c.instances);
  const std::size_t violations = total_violations(checks);
  return {violations == 0 && min_instances >= 200 && secs < 300.0,
          fmt::format("{} checks, at least {} instances each, {} violations, {:.1f} s",
                      checks.size(), min_instances, violations, secs)};
}

// --- 4 -----------------------------------------------------------------------

struct StoppingTally {
  std::size_t runs = 0, fired = 0, changed = 0, hits = 0, added = 0;
};

void stopping_instance(const SpectralBasis& basis, const SignOracle& oracle, SampleDomain domain,
                       const BallSampleCloud& cloud, StoppingTally& tally) {
  GssConfig config;
  config.domain = domain;
  const std::size_t budget = basis_domain(basis, domain).size();
  const SamplingRun run = run_gss(oracle, basis, budget, config);
  ++tally.runs;
  if (!run.stopped_early) return;
  ++tally.fired;
  SamplerState state(basis, domain);
  for (const auto& obs : run.observations()) state.observe(obs);
  const std::size_t before = count_hits(state.cone(), cloud);
  const std::vector<SampleId> rest = state.candidates();
  for (const SampleId& id : rest) state.observe({id, oracle(id)});
  const std::size_t after = count_hits(state.cone(), cloud);
  tally.added += rest.size();
  tally.hits += before;
  if (after != before) ++tally.changed;
}

Outcome stopping_criterion() {
  StoppingTally tally;
  // Random B = 3 instances: cones stay large enough for many cloud hits.
  const BallSampleCloud cloud3(3, 200000, 11);
  std::mt19937_64 rng(20260104);
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXd rows(40, 3);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) = random_unit_vector(3, rng);
    const auto hb = testing::basis_from_rows(rows);
    const BandlimitedSignal s = make_bandlimited_signal(hb->basis, random_unit_vector(3, rng));
    stopping_instance(hb->basis, make_signal_oracle(hb->basis, s), SampleDomain::kVertices, cloud3,
                      tally);
  }
  // Sensor graph, B = 7, both domains.
  const Graph g = generate_graph(SensorGraphParams{}, 1);
  const SpectralBasis basis(g, contiguous_passband(29, 35));
  const BallSampleCloud cloud7(7, 200000, 12);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const BandlimitedSignal s = random_bandlimited_signal(basis, derive_seed(20260104, t));
    const SignOracle oracle = make_signal_oracle(basis, s);
    stopping_instance(basis, oracle, SampleDomain::kVertices, cloud7, tally);
    stopping_instance(basis, oracle, SampleDomain::kVerticesAndEdges, cloud7, tally);
  }
  return {tally.fired > 0 && tally.changed == 0,
          fmt::format("{} runs, stopping fired on {}, {} remaining constraints added, {} hits "
                      "before, {} instances changed",
                      tally.runs, tally.fired, tally.added, tally.hits, tally.changed)};
}

// --- 5 -----------------------------------------------------------------------

Outcome upocs_criterion() {
  std::mt19937_64 rng(20260105);
  std::uniform_int_distribution<int> sign(-1, 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t fne_fail = 0;
  for (int t = 0; t < 10000; ++t) {
    const Eigen::Index b = 2 + t % 8;
    ProjectionEntry e{random_unit_vector(b, rng) * (0.1 + std::abs(gauss(rng))),
                      sign_from_int(sign(rng))};
    Eigen::VectorXd x(b), y(b);
    for (Eigen::Index i = 0; i < b; ++i) {
      x(i) = 3.0 * gauss(rng);
      y(i) = 3.0 * gauss(rng);
    }
    const Eigen::VectorXd d = project_entry(x, e) - project_entry(y, e);
    if (d.squaredNorm() > d.dot(x - y) + 1e-12 * (1.0 + (x - y).squaredNorm())) ++fne_fail;
  }

  // Observation sets from GSS runs on the sensor graph.
  const Graph g = generate_graph(SensorGraphParams{}, 1);
  const SpectralBasis basis(g, contiguous_passband(29, 35));
  std::size_t unconverged = 0;
  double worst = 0.0, mean_sweeps = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const BandlimitedSignal s = random_bandlimited_signal(basis, derive_seed(20260105, t));
    GssConfig config;
    config.domain = t % 2 ? SampleDomain::kVerticesAndEdges : SampleDomain::kVertices;
    const SamplingRun run = run_gss(make_signal_oracle(basis, s), basis, 40, config);
    const ProjectionSet pset = make_projection_set(run.observations(), basis);
    std::mt19937_64 start(derive_seed(20260105, 1000 + t));
    UpocsConfig uc;
    uc.n_max = 10000;
    uc.tol = 1e-10;
    const RecoveryResult r = upocs(pset, random_unit_vector(7, start), uc);
    double v = 0.0;
    for (const auto& e : pset.entries) {
      if (e.required == Sign::kZero) continue;
      v = std::max(v, std::max(0.0, -to_int(e.required) * e.u.dot(r.h_hat) / e.u.norm()));
    }
    worst = std::max(worst, v);
    if (v > 1e-10 || !r.converged) ++unconverged;
    mean_sweeps += static_cast<double>(r.iterations_used) / 50.0;
  }
  return {fne_fail == 0 && unconverged == 0,
          fmt::format("firm non-expansiveness failed on {} of 10000 pairs; 50 instances, {} "
                      "above 1e-10, worst violation {:.2e}, mean sweeps {:.1f}",
                      fne_fail, unconverged, worst, mean_sweeps)};
}

// --- 6, 7, 8 -----------------------------------------------------------------

std::string bench_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  write_benchmark_header(out);
  for (const auto& r : rows) write_benchmark_row(out, r);
  return out.str();
}

ExperimentManifest sensor_manifest() {
  ExperimentManifest m;
  m.graph = SensorGraphParams{};
  m.graph_seed = 1;
  m.passband = contiguous_passband(29, 35);
  m.k = 50;
  m.n_max = 10000;
  m.trials = 20;
  m.seed = 7;
  return m;
}

ExperimentManifest vertices_manifest() {
  ExperimentManifest m = sensor_manifest();
  m.domain = SampleDomain::kVertices;
  m.budgets = {10, 15, 20, 25, 30, 35, 40};
  m.samplers = {SamplerKind::kGss, SamplerKind::kRandom, SamplerKind::kFull};
  m.random_repeats = 50;
  return m;
}

double mean_of(const std::vector<SummaryRow>& s, const std::string& sampler, std::size_t budget) {
  for (const auto& r : s) {
    if (r.sampler == sampler && (budget == 0 || r.budget == budget)) return r.mean_delta;
  }
  return NAN;
}

Outcome sensor_vertices(std::string& csv) {
  const auto t0 = Clock::now();
  const ExperimentManifest m = vertices_manifest();
  const auto rows = run_benchmark(m);
  csv = bench_csv(rows);
  save("vertices_bench.csv", csv);
  const auto s = summarize(rows);
  std::ostringstream sum;
  write_summary_csv(sum, s);
  save("vertices_summary.csv", sum.str());
  bool ok = true;
  std::string trend;
  for (std::size_t b : m.budgets) {
    const double gss = mean_of(s, "gss", b), rnd = mean_of(s, "random", b);
    trend += fmt::format(" M{}:{:.3f}/{:.3f}", b, gss, rnd);
    if (b >= 14 && !(gss <= rnd)) ok = false;
  }
  const double full = mean_of(s, "full", 0), gss40 = mean_of(s, "gss", 40);
  const double secs = seconds_since(t0);
  ok = ok && std::abs(gss40 - full) < 0.05 && secs < 900.0;
  return {ok, fmt::format("gss/random{}; full {:.3f}, |gss-full| at 40 = {:.3f}; {:.1f} s", trend,
                          full, std::abs(gss40 - full), secs)};
}

ExperimentManifest edges_manifest() {
  ExperimentManifest m = sensor_manifest();
  m.domain = SampleDomain::kVerticesAndEdges;
  const Graph g = generate_graph(m.graph, m.graph_seed);
  m.budgets = {(g.n_vertices() + g.n_edges() + 1) / 2};
  m.samplers = {SamplerKind::kGss, SamplerKind::kFull};
  return m;
}

Outcome sensor_edges(std::string& csv) {
  const auto t0 = Clock::now();
  const ExperimentManifest m = edges_manifest();
  const auto rows = run_benchmark(m);
  csv = bench_csv(rows);
  save("edges_bench.csv", csv);
  std::map<std::size_t, double> gss, full;
  for (const auto& r : rows) (r.sampler == "gss" ? gss : full)[r.trial] = r.delta;
  int close = 0;
  double worst = 0.0;
  for (const auto& [t, d] : gss) {
    const double gap = std::abs(d - full[t]);
    worst = std::max(worst, gap);
    if (gap <= 0.05) ++close;
  }
  const double share = static_cast<double>(close) / static_cast<double>(m.trials);
  return {share >= 0.8,
          fmt::format("M = {}: {} of {} trials within 0.05 rad of full (worst {:.3f}); {:.1f} s",
                      m.budgets.front(), close, m.trials, worst, seconds_since(t0))};
}

ExperimentManifest sweep_manifest() {
  ExperimentManifest m = sensor_manifest();
  m.domain = SampleDomain::kVerticesAndEdges;
  m.budgets = {50};
  m.bandwidths = {3, 5, 7, 9, 11};
  m.passband_start = 29;
  m.samplers = {SamplerKind::kGss};
  return m;
}

Outcome bandwidth_sweep(std::string& csv) {
  const auto t0 = Clock::now();
  const BandwidthSweep sweep = run_bandwidth_sweep(sweep_manifest());
  std::ostringstream rows, sum;
  write_bandwidth_csv(rows, sweep.rows);
  write_bandwidth_summary_csv(sum, sweep);
  csv = rows.str();
  save("bandwidth.csv", csv);
  save("bandwidth_summary.csv", sum.str());
  double rho = NAN;
  for (const auto& [name, r] : sweep.spearman) {
    if (name == "gss") rho = r;
  }
  bool cap_decreasing = true;
  std::string means;
  for (std::size_t i = 0; i < sweep.summary.size(); ++i) {
    const auto& s = sweep.summary[i];
    means += fmt::format(" B{}:{:.3f}/{:.4f}", s.bandwidth, s.summary.mean_delta, s.cap_ratio);
    if (i > 0 && !(s.cap_ratio < sweep.summary[i - 1].cap_ratio)) cap_decreasing = false;
  }
  return {rho > 0.8 && cap_decreasing,
          fmt::format("delta/cap{}; spearman {:.3f}; {:.1f} s", means, rho, seconds_since(t0))};
}

// --- 9 -----------------------------------------------------------------------

ExperimentManifest ratings_manifest(SampleDomain domain) {
  ExperimentManifest m;
  m.domain = domain;
  m.samplers = {SamplerKind::kGss, SamplerKind::kRandom, SamplerKind::kFull};
  m.budgets = {20, 30, 40};
  m.k = 30;
  m.n_max = 3000;
  m.random_repeats = 10;
  m.seed = 7;
  m.ratings.n_items = 100;
  m.ratings.n_attributes = 6;
  m.ratings.knn = 10;
  m.ratings.bandwidth = 13;
  m.ratings.datasets = 20;
  return m;
}

std::string ratings_csv(const std::vector<RatingRow>& rows) {
  std::ostringstream out;
  write_rating_header(out);
  for (const auto& r : rows) write_rating_row(out, r);
  return out.str();
}

// Both comparisons apply from budget 2B on, as for the sensor benchmark; the
// smaller budgets are reported only.
bool ratings_domain(SampleDomain domain, std::string& csv, std::string& detail) {
  const ExperimentManifest m = ratings_manifest(domain);
  const auto rows = run_ratings(m);
  csv = ratings_csv(rows);
  save("ratings_" + std::string(domain == SampleDomain::kVertices ? "vertices" : "edges") + ".csv",
       csv);
  struct Acc {
    double delta = 0.0, top1 = 0.0;
    int n = 0;
  };
  std::map<std::pair<std::string, std::size_t>, Acc> acc;
  std::size_t topk_bad = 0;
  for (const auto& r : rows) {
    auto& a = acc[{r.sampler, r.budget}];
    a.delta += r.delta;
    a.top1 += r.top1;
    ++a.n;
    if (r.top2 < r.top1) ++topk_bad;
  }
  bool ok = topk_bad == 0;
  detail += domain_name(domain) + ":";
  for (std::size_t b : m.budgets) {
    const Acc g = acc[{"gss", b}], r = acc[{"random", b}];
    const double gd = g.delta / g.n, rd = r.delta / r.n, gt = g.top1 / g.n, rt = r.top1 / r.n;
    const bool checked = b >= 2 * m.ratings.bandwidth;
    detail += fmt::format(" M{}{}: delta {:.3f}/{:.3f} top1 {:.3f}/{:.3f};", b,
                          checked ? "" : " (reported)", gd, rd, gt, rt);
    if (checked && (!(gt >= rt) || !(gd <= rd))) ok = false;
  }
  detail += fmt::format(" {} rows with top2 < top1. ", topk_bad);
  return ok;
}

Outcome ratings(std::string& csv) {
  const auto t0 = Clock::now();
  std::string detail = "gss/random ", edges_csv;
  const bool v = ratings_domain(SampleDomain::kVertices, csv, detail);
  const bool e = ratings_domain(SampleDomain::kVerticesAndEdges, edges_csv, detail);
  return {v && e, detail + fmt::format("{:.1f} s", seconds_since(t0))};
}

// --- 10 ----------------------------------------------------------------------

Outcome determinism(const std::string& theory, const std::string& c6, const std::string& c7,
                    const std::string& c8, const std::string& c9) {
  const auto t0 = Clock::now();
  std::vector<std::string> differ;
  if (theory_csv() != theory) differ.push_back("theory");
  if (bench_csv(run_benchmark(vertices_manifest())) != c6) differ.push_back("vertices bench");
  if (bench_csv(run_benchmark(edges_manifest())) != c7) differ.push_back("edges bench");
  {
    std::ostringstream out;
    write_bandwidth_csv(out, run_bandwidth_sweep(sweep_manifest()).rows);
    if (out.str() != c8) differ.push_back("bandwidth sweep");
  }
  // The first two ratings datasets; every dataset has its own seeds, so the
  // rows must match the head of the full run.
  ExperimentManifest m = ratings_manifest(SampleDomain::kVertices);
  m.ratings.datasets = 2;
  const std::string head = ratings_csv(run_ratings(m));
  if (c9.compare(0, head.size(), head) != 0) differ.push_back("ratings");
  std::string names;
  for (const auto& d : differ) names += " " + d;
  return {differ.empty(),
          fmt::format("reran theory, both benchmarks, the bandwidth sweep and 2 ratings datasets: {}; {:.1f} s",
                      differ.empty() ? "byte-identical" : "differ:" + names, seconds_since(t0))};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    g_out_dir = argv[1];
    std::filesystem::create_directories(g_out_dir);
  }
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("criterion %2d %-28s %s  %s\n", id, name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };
  auto guarded = [&](int id, const char* name, const std::function<Outcome()>& f) {
    try {
      report(id, name, f());
    } catch (const std::exception& e) {
      report(id, name, {false, std::string("error: ") + e.what()});
    }
  };

  std::string c6, c7, c8, c9;
  guarded(1, "cone oracle equivalence", cone_oracle);
  guarded(2, "volume oracles", volume_oracles);
  guarded(3, "theory suite", theory_suite);
  guarded(4, "stopping criterion", stopping_criterion);
  guarded(5, "upocs", upocs_criterion);
  guarded(6, "sensor vertices benchmark", [&] { return sensor_vertices(c6); });
  guarded(7, "sensor vertices+edges", [&] { return sensor_edges(c7); });
  guarded(8, "bandwidth sweep", [&] { return bandwidth_sweep(c8); });
  guarded(9, "ratings pipeline", [&] { return ratings(c9); });
  guarded(10, "determinism", [&] { return determinism(theory_csv(), c6, c7, c8, c9); });
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
