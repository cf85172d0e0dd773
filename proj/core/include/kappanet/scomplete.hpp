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

#ifndef KAPPANET_SCOMPLETE_HPP_
#define KAPPANET_SCOMPLETE_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "kappanet/network.hpp"
#include "kappanet/plausible_set.hpp"
#include "kappanet/predict.hpp"

namespace kappanet {

// The residual graph used to pick blocking nodes: what remains of the
// structure after deleting a node set and iteratively stripping everything
// that cannot lie on (or between) undirected cycles.
struct ReducedGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;

  bool empty() const { return nodes.empty(); }
  // Nodes without incoming edges inside the reduced graph, in declaration
  // order of the original structure.
  std::vector<std::string> roots() const;
};

// Deletes the nodes of `removed` (with all incident arcs), then repeatedly
// strips nodes with at most one undirected neighbor until a fixpoint.  The
// result is empty exactly when no undirected cycle survives.
ReducedGraph isolate_loops(const NetworkStructure& structure,
                           const std::set<std::string>& removed);

struct ScompleteOptions {
  // Cap on the number of blocking-set instantiations per stage.
  std::uint64_t cs_instantiation_cap = std::uint64_t{1} << 12;
};

struct ScompleteStage {
  std::vector<std::string> blocking_set;  // cumulative, in selection order
  PlausibleSetMap plsets;                 // map after this stage
  std::uint64_t sweeps = 0;               // plausibility sweeps run this stage
};

struct ScompleteResult {
  PlausibleSetMap plsets;
  std::vector<ScompleteStage> stages;
  bool capped = false;  // instantiation cap hit; plsets still sound
};

// Stratified completion: starting from a plain sweep, repeatedly pick the
// roots of the residual loop graph as blocking nodes, sweep once per
// plausible instantiation of the blocking set with those nodes clamped,
// and merge.  Each stage is sound and at least as tight as the previous
// one; when the residual graph empties the map is exact and its provenance
// becomes complete_certified.
ScompleteResult scomplete(const KappaNetwork& net, const Evidence& evidence = {},
                          const ActionSet& actions = {}, const ScompleteOptions& options = {});

}  // namespace kappanet

#endif  // KAPPANET_SCOMPLETE_HPP_
