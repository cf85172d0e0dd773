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

#ifndef KAPPANET_PLAUSIBLE_SET_HPP_
#define KAPPANET_PLAUSIBLE_SET_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kappanet/network.hpp"

namespace kappanet {

// Whether a plausible-set map is the direct (possibly incomplete) output of
// one Predict sweep or has been certified complete.
enum class Provenance { approximate, complete_certified };

// Per-variable sets of plausible values (rank 0), stored as masks over each
// variable's domain.
class PlausibleSetMap {
 public:
  PlausibleSetMap() = default;

  static PlausibleSetMap empty_sets(const NetworkStructure& structure);

  int variable_count() const { return static_cast<int>(mask_.size()); }
  int domain_size(int v) const { return static_cast<int>(mask_[v].size()); }

  bool contains(int v, int value) const { return mask_[v][value] != 0; }
  void insert(int v, int value) { mask_[v][value] = 1; }

  void assign_singleton(int v, int value);

  int count(int v) const;
  std::optional<int> singleton(int v) const;

  // Set operations, applied per variable.
  void unite(const PlausibleSetMap& other);
  void intersect(const PlausibleSetMap& other);

  bool same_sets(const PlausibleSetMap& other) const { return mask_ == other.mask_; }
  // True when every set of this map is contained in the matching set of other.
  bool subset_of(const PlausibleSetMap& other) const;

  Provenance provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = p; }

  std::map<std::string, std::vector<std::string>> named(const NetworkStructure& structure) const;

 private:
  std::vector<std::vector<char>> mask_;
  Provenance provenance_ = Provenance::approximate;
};

}  // namespace kappanet

#endif  // KAPPANET_PLAUSIBLE_SET_HPP_
