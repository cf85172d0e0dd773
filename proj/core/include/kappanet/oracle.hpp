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

#ifndef KAPPANET_ORACLE_HPP_
#define KAPPANET_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kappanet/network.hpp"
#include "kappanet/plausible_set.hpp"

namespace kappanet {

// Exact rank semantics by full enumeration of the joint space.  Exponential
// and guarded by a world cap: this exists as desk-scale ground truth for
// the polynomial algorithms, not as an inference engine.
//
// Ranks combine as sums over local tables; marginals are minima over the
// worlds satisfying an event, and conditionals subtract the rank of the
// conditioning event.

// A full assignment, one value per variable in the network.
using World = std::map<std::string, std::string>;

struct OracleOptions {
  std::uint64_t max_worlds = std::uint64_t{1} << 22;
};

// Sum of local table ranks under the (total) world w.
Kappa joint_kappa(const KappaNetwork& net, const World& w);
Kappa joint_kappa(const KappaNetwork& net, std::span<const int> world_values);

// kappa(partial | given) = kappa(partial & given) - kappa(given).
// Throws InferenceError when the conditioning event itself has infinite
// rank, and ValidationError when partial and given conflict.
Kappa marginal_kappa(const KappaNetwork& net, const std::map<std::string, std::string>& partial,
                     const std::map<std::string, std::string>& given = {},
                     const OracleOptions& options = {});

// Values of `variable` whose conditional rank given `given` is zero.
// Nonempty for every variable of a valid network.
std::set<std::string> exact_plausible_set(const KappaNetwork& net, const std::string& variable,
                                          const std::map<std::string, std::string>& given = {},
                                          const OracleOptions& options = {});

// One enumeration pass computing the exact plausible set of every variable
// at once; the workhorse behind the random-suite comparisons.
PlausibleSetMap exact_plausible_sets(const KappaNetwork& net,
                                     const std::map<std::string, std::string>& given = {},
                                     const OracleOptions& options = {});

// Whether the variables are irrelevant to each other: every instantiation
// whose per-variable marginal ranks are all zero also has joint rank zero.
bool is_irrelevant(const KappaNetwork& net, const std::vector<std::string>& variables,
                   const OracleOptions& options = {});

// Number of worlds of the joint space; throws CapExceededError when it
// exceeds options.max_worlds.
std::uint64_t checked_world_count(const NetworkStructure& structure,
                                  const OracleOptions& options);

}  // namespace kappanet

#endif  // KAPPANET_ORACLE_HPP_
