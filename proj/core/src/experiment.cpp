// Copyright 2026 The Kappanet Authors.
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

#include "kappanet/experiment.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kappanet/errors.hpp"
#include "kappanet/json_io.hpp"
#include "kappanet/random_nets.hpp"

namespace kappanet {

namespace {

using json = nlohmann::ordered_json;

ProbNetwork load_network(const ExperimentNetwork& spec, std::uint64_t seed, std::size_t index) {
  if (spec.path) {
    std::ifstream in(*spec.path);
    if (!in) throw ValidationError("cannot open network file '" + *spec.path + "'");
    AnyNetwork net = parse_network(in);
    if (const ProbNetwork* prob = std::get_if<ProbNetwork>(&net)) return *prob;
    throw ValidationError("experiment network '" + spec.name + "' must be probability-quantified");
  }
  Rng rng(seed * 0x9e3779b97f4a7c15ull + index + 1);
  RandomProbOptions options;
  options.min_variables = spec.random_variables;
  options.max_variables = spec.random_variables;
  options.require_cycle = spec.cyclic;
  return random_prob_network(rng, options);
}

Query default_query(const NetworkStructure& structure) {
  int last = structure.topological_order_indices().back();
  Query query;
  query.target.emplace_back(structure.variable(last).name, structure.variable(last).values[0]);
  return query;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid experiment config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("experiment config must be a JSON object");

  ExperimentConfig config;
  config.seed = doc.value("seed", std::uint64_t{0});
  if (!doc.contains("epsilons") || !doc["epsilons"].is_array()) {
    throw ValidationError("experiment config needs an 'epsilons' array");
  }
  for (const json& e : doc["epsilons"]) {
    if (!e.is_number()) throw ValidationError("'epsilons' entries must be numbers");
    config.epsilons.push_back(e.get<double>());
    Epsilon check(config.epsilons.back());  // range validation
    (void)check;
  }
  if (doc.contains("budget") && !doc["budget"].is_null()) {
    if (!doc["budget"].is_number_unsigned()) {
      throw ValidationError("'budget' must be a nonnegative integer");
    }
    config.budget = doc["budget"].get<std::uint64_t>();
  }
  if (!doc.contains("networks") || !doc["networks"].is_array()) {
    throw ValidationError("experiment config needs a 'networks' array");
  }
  for (const json& n : doc["networks"]) {
    if (!n.is_object()) throw ValidationError("'networks' entries must be objects");
    ExperimentNetwork spec;
    spec.name = n.value("name", "net" + std::to_string(config.networks.size()));
    if (n.contains("path")) spec.path = n["path"].get<std::string>();
    if (n.contains("variables")) spec.random_variables = n["variables"].get<int>();
    if (n.contains("cyclic")) spec.cyclic = n["cyclic"].get<bool>();
    if (n.contains("query")) spec.query = n["query"].get<std::string>();
    config.networks.push_back(std::move(spec));
  }
  return config;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  std::vector<ExperimentRow> rows;
  for (std::size_t i = 0; i < config.networks.size(); ++i) {
    const ExperimentNetwork& spec = config.networks[i];
    ProbNetwork net = load_network(spec, config.seed, i);
    Query query = spec.query ? parse_query(*spec.query) : default_query(net.structure());

    for (double e : config.epsilons) {
      BudgetOptions budget;
      if (config.budget) budget.max_subproblems = *config.budget;

      auto start = std::chrono::steady_clock::now();
      BoundedConditioningResult run = bounded_conditioning(net, query, Epsilon(e), budget);
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();

      ExperimentRow row;
      row.network = spec.name;
      row.epsilon = e;
      row.lm = run.lm.average;
      row.instances = run.bounds.processed;
      row.bound_width = run.bounds.upper - run.bounds.lower;
      row.elapsed_sec = elapsed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "network,epsilon,lm,instances,bound_width,elapsed_sec\n";
  out.precision(12);
  for (const ExperimentRow& row : rows) {
    out << row.network << ',' << row.epsilon << ',' << row.lm << ',' << row.instances << ','
        << row.bound_width << ',' << row.elapsed_sec << '\n';
  }
  return out.str();
}

}  // namespace kappanet
