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

#ifndef KAPPANET_PREDICT_HPP_
#define KAPPANET_PREDICT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kappanet/network.hpp"
#include "kappanet/plausible_set.hpp"

namespace kappanet {

// Work counters for the plausibility sweep.  table_lookups counts accesses
// to local conditional-table entries; edge_visits counts graph edges
// touched.  Together they realize the E + N*LU cost model, so the counter
// must grow linearly when chains double in length.
struct OpCounter {
  std::uint64_t table_lookups = 0;
  std::uint64_t edge_visits = 0;

  std::uint64_t total() const { return table_lookups + edge_visits; }
};

struct PredictResult {
  PlausibleSetMap plsets;
  OpCounter ops;
};

// Forced singleton plausible sets, keyed by variable name.  Used by the
// stratified completion procedure and the search lookahead to condition a
// sweep on an instantiation of interior nodes.
using ClampSet = std::map<std::string, std::string>;

// One topological sweep computing a plausible-value set per node.
//
// Roots keep the values their unconditional table ranks 0; an evidenced
// root collapses to the observed value (conditioning renormalizes an
// observed rank above 0 back to 0).  A non-root keeps value x iff some
// instantiation drawn from its parents' already-computed plausible sets
// gives x local rank 0.
//
// The sweep is sound: a value outside the returned set has positive rank.
// It can be incomplete on multiply connected graphs; see the completeness
// and scomplete modules.
//
// Actions are applied first (graph surgery); evidence must then name only
// roots of the modified graph.  Throws InferenceError for evidence on a
// non-root, an observed value of rank infinity, or a clamp conflicting
// with evidence.
PredictResult predict(const KappaNetwork& net, const Evidence& evidence = {},
                      const ActionSet& actions = {}, const ClampSet& clamps = {});

// Variables whose plausible set is a singleton, paired with that value,
// in declaration order.
std::vector<std::pair<std::string, std::string>> believed_nodes(const PlausibleSetMap& plsets,
                                                                const NetworkStructure& structure);

}  // namespace kappanet

#endif  // KAPPANET_PREDICT_HPP_
