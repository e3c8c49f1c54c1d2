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

#include "signsamp/experiment/manifest.hpp"

#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "signsamp/csv.hpp"
#include "signsamp/error.hpp"

namespace signsamp::experiment {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "graph.kind",        "graph.n_vertices",       "graph.k_neighbors",
      "graph.p",           "graph.k",                "graph.seed",
      "signal.passband",   "signal.bandwidths",      "signal.passband_start",
      "sampling.domain",   "sampling.budgets",       "sampling.samplers",
      "sampling.random_repeats",                     "recovery.k",
      "recovery.n_max",    "run.trials",             "run.seed",
      "run.output_dir",    "ratings.csv",            "ratings.n_items",
      "ratings.n_attributes",                        "ratings.knn",
      "ratings.bandwidth", "ratings.datasets"};
  return keys;
}

std::size_t as_count(const std::string& text, const std::string& key) {
  return csv::parse_index(text, key);
}

std::uint64_t as_u64(const std::string& text, const std::string& key) {
  return static_cast<std::uint64_t>(csv::parse_index(text, key));
}

}  // namespace

std::string sampler_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kGss:
      return "gss";
    case SamplerKind::kRandom:
      return "random";
    case SamplerKind::kRowNorm:
      return "row_norm";
    case SamplerKind::kFull:
      return "full";
  }
  return "?";
}

SamplerKind parse_sampler(const std::string& name) {
  for (SamplerKind k :
       {SamplerKind::kGss, SamplerKind::kRandom, SamplerKind::kRowNorm, SamplerKind::kFull}) {
    if (sampler_name(k) == name) return k;
  }
  throw Error(ErrorCode::kSchemaError, fmt::format("unknown sampler '{}'", name));
}

std::string domain_name(SampleDomain domain) {
  return domain == SampleDomain::kVertices ? "vertices" : "vertices+edges";
}

SampleDomain parse_domain(const std::string& name) {
  if (name == "vertices") return SampleDomain::kVertices;
  if (name == "vertices+edges") return SampleDomain::kVerticesAndEdges;
  throw Error(ErrorCode::kSchemaError, fmt::format("unknown domain '{}'", name));
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : csv::split_line(text)) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(csv::parse_index(item, "index list"));
      continue;
    }
    const std::size_t lo = csv::parse_index(item.substr(0, dash), "index range");
    const std::size_t hi = csv::parse_index(item.substr(dash + 1), "index range");
    if (hi < lo) throw Error(ErrorCode::kSchemaError, fmt::format("empty range '{}'", item));
    for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
  }
  return out;
}

ExperimentManifest parse_manifest(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kSchemaError, e.what());
  }
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) {
      if (!known_keys().count(section + "." + key)) {
        throw Error(ErrorCode::kSchemaError, fmt::format("unknown key {}.{}", section, key));
      }
    }
  }
  auto get = [&](const std::string& key) { return tree.get_optional<std::string>(key); };

  ExperimentManifest m;
  const std::string kind = get("graph.kind").value_or("sensor");
  const std::size_t n = as_count(get("graph.n_vertices").value_or("40"), "graph.n_vertices");
  if (kind == "sensor") {
    m.graph = SensorGraphParams{n, as_count(get("graph.k_neighbors").value_or("6"),
                                            "graph.k_neighbors")};
  } else if (kind == "er") {
    m.graph = ErdosRenyiParams{n, csv::parse_double(get("graph.p").value_or("0.3"), "graph.p")};
  } else if (kind == "ws") {
    m.graph = WattsStrogatzParams{n, as_count(get("graph.k").value_or("4"), "graph.k"),
                                  csv::parse_double(get("graph.p").value_or("0.25"), "graph.p")};
  } else {
    throw Error(ErrorCode::kSchemaError, fmt::format("unknown graph kind '{}'", kind));
  }
  if (auto v = get("graph.seed")) m.graph_seed = as_u64(*v, "graph.seed");

  if (auto v = get("signal.passband")) m.passband = parse_index_list(*v);
  if (auto v = get("signal.bandwidths")) m.bandwidths = parse_index_list(*v);
  if (auto v = get("signal.passband_start")) m.passband_start = as_count(*v, "passband_start");

  if (auto v = get("sampling.domain")) m.domain = parse_domain(*v);
  if (auto v = get("sampling.budgets")) m.budgets = parse_index_list(*v);
  if (auto v = get("sampling.samplers")) {
    m.samplers.clear();
    for (const std::string& s : csv::split_line(*v)) m.samplers.push_back(parse_sampler(s));
  }
  if (auto v = get("sampling.random_repeats")) m.random_repeats = as_count(*v, "random_repeats");

  if (auto v = get("recovery.k")) m.k = as_count(*v, "recovery.k");
  if (auto v = get("recovery.n_max")) m.n_max = as_count(*v, "recovery.n_max");

  if (auto v = get("run.trials")) m.trials = as_count(*v, "run.trials");
  if (auto v = get("run.seed")) m.seed = as_u64(*v, "run.seed");
  if (auto v = get("run.output_dir")) m.output_dir = *v;

  if (auto v = get("ratings.csv")) m.ratings.csv_path = *v;
  if (auto v = get("ratings.n_items")) m.ratings.n_items = as_count(*v, "ratings.n_items");
  if (auto v = get("ratings.n_attributes")) {
    m.ratings.n_attributes = as_count(*v, "ratings.n_attributes");
  }
  if (auto v = get("ratings.knn")) m.ratings.knn = as_count(*v, "ratings.knn");
  if (auto v = get("ratings.bandwidth")) m.ratings.bandwidth = as_count(*v, "ratings.bandwidth");
  if (auto v = get("ratings.datasets")) m.ratings.datasets = as_count(*v, "ratings.datasets");

  if (m.trials == 0) throw Error(ErrorCode::kSchemaError, "run.trials must be at least 1");
  if (m.k == 0) throw Error(ErrorCode::kSchemaError, "recovery.k must be at least 1");
  if (m.random_repeats == 0) {
    throw Error(ErrorCode::kSchemaError, "sampling.random_repeats must be at least 1");
  }
  return m;
}

ExperimentManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open manifest '{}'", path));
  return parse_manifest(in);
}

void validate_budgets(const ExperimentManifest& manifest, std::size_t bandwidth,
                      std::size_t domain_size) {
  for (std::size_t m : manifest.budgets) {
    if (m <= bandwidth || m > domain_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("budget {} outside ({}, {}] for bandwidth {} and {} samples", m,
                              bandwidth, domain_size, bandwidth, domain_size));
    }
  }
}

}  // namespace signsamp::experiment
