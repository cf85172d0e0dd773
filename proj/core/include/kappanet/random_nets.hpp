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

#ifndef KAPPANET_RANDOM_NETS_HPP_
#define KAPPANET_RANDOM_NETS_HPP_

#include <cstdint>
#include <random>

#include "kappanet/network.hpp"

namespace kappanet {

// Seeded generators for test suites and experiments.  All draws go through
// rand_below/rand_unit so results are reproducible across platforms.
using Rng = std::mt19937_64;

std::uint64_t rand_below(Rng& rng, std::uint64_t n);
double rand_unit(Rng& rng);

struct RandomNetOptions {
  int min_variables = 2;
  int max_variables = 10;
  int max_values = 3;
  int max_parents = 3;
  int max_kappa = 3;
  // Chance that a table entry is ranked impossible outright.
  double infinity_prob = 0.1;
  // When set, resample until the structure contains an undirected cycle.
  bool require_cycle = false;
};

NetworkStructure random_structure(Rng& rng, const RandomNetOptions& options);
// Polytree skeleton: a random tree with randomly oriented edges.
NetworkStructure random_polytree_structure(Rng& rng, const RandomNetOptions& options);

KappaNetwork random_kappa_network(Rng& rng, const RandomNetOptions& options = {});
KappaNetwork random_polytree_kappa_network(Rng& rng, const RandomNetOptions& options = {});
// Every table row ranks exactly one value zero.
KappaNetwork random_definite_kappa_network(Rng& rng, const RandomNetOptions& options = {});

struct RandomProbOptions {
  int min_variables = 2;
  int max_variables = 7;
  int max_values = 3;
  int max_parents = 3;
  // Chance a row is drawn extreme (one dominant value) rather than flat;
  // extreme rows give the rank abstraction something to prune.
  double extreme_row_prob = 0.7;
  double dominant_mass = 0.95;
  bool require_cycle = false;
};

ProbNetwork random_prob_network(Rng& rng, const RandomProbOptions& options = {});

}  // namespace kappanet

#endif  // KAPPANET_RANDOM_NETS_HPP_
