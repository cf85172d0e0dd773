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

#ifndef KAPPANET_COMPLETENESS_HPP_
#define KAPPANET_COMPLETENESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kappanet/network.hpp"

namespace kappanet {

// Outcome of the structural completeness check.  `complete` certifies that
// a sweep with the given believed nodes computed exact plausible sets; the
// converse does not hold, so possibly-incomplete is only a warning.  When
// possibly-incomplete, witness_cycle names one undirected cycle that
// survives the removal of the believed nodes' outgoing edges.
struct CompletenessCertificate {
  bool complete = false;
  std::vector<std::string> witness_cycle;
  std::uint64_t edge_visits = 0;
};

// Removes the outgoing edges of every believed node, then builds an
// undirected spanning forest breadth-first.  Complete iff no cross-edge is
// found.  Runs in O(E): each edge is touched a bounded number of times,
// tracked in edge_visits.
CompletenessCertificate check_complete(const NetworkStructure& structure,
                                       const std::vector<std::string>& believed);

// A quantification is definite when every table row ranks exactly one
// value 0.  Definite networks make the plausibility sweep complete.
bool is_definite(const KappaNetwork& net);

}  // namespace kappanet

#endif  // KAPPANET_COMPLETENESS_HPP_
