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

#ifndef KAPPANET_EXPERIMENT_HPP_
#define KAPPANET_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kappanet/network.hpp"
#include "kappanet/probinfer.hpp"

namespace kappanet {

// The eps-versus-lost-mass study: bounded conditioning across a grid of
// networks and eps values.

struct ExperimentNetwork {
  std::string name;
  std::optional<std::string> path;  // load from file when set
  // Otherwise generate pseudo-randomly from the run seed plus this many
  // variables; cyclic forces an undirected cycle.
  int random_variables = 6;
  bool cyclic = true;
  std::optional<std::string> query;  // "var=val[,...]"; defaults to the last
                                     // topological variable's first value
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::vector<double> epsilons;
  std::optional<std::uint64_t> budget;  // max subproblems per run
  std::vector<ExperimentNetwork> networks;
};

// Parses the JSON config (see docs/experiment-config.md).
ExperimentConfig parse_experiment_config(std::istream& in);

struct ExperimentRow {
  std::string network;
  double epsilon = 0.0;
  double lm = 0.0;
  std::uint64_t instances = 0;
  double bound_width = 0.0;
  double elapsed_sec = 0.0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// CSV with a header row, comma separators, LF line endings.  The
// elapsed_sec column is wall time and is not reproducible run to run.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace kappanet

#endif  // KAPPANET_EXPERIMENT_HPP_
