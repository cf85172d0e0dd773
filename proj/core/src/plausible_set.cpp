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

#include "kappanet/plausible_set.hpp"

#include <algorithm>
#include <cassert>

namespace kappanet {

PlausibleSetMap PlausibleSetMap::empty_sets(const NetworkStructure& structure) {
  PlausibleSetMap map;
  map.mask_.resize(structure.variable_count());
  for (int v = 0; v < structure.variable_count(); ++v) {
    map.mask_[v].assign(structure.domain_size(v), 0);
  }
  return map;
}

void PlausibleSetMap::assign_singleton(int v, int value) {
  std::fill(mask_[v].begin(), mask_[v].end(), 0);
  mask_[v][value] = 1;
}

int PlausibleSetMap::count(int v) const {
  return static_cast<int>(std::count(mask_[v].begin(), mask_[v].end(), 1));
}

std::optional<int> PlausibleSetMap::singleton(int v) const {
  int found = -1;
  for (int i = 0; i < domain_size(v); ++i) {
    if (!mask_[v][i]) continue;
    if (found >= 0) return std::nullopt;
    found = i;
  }
  if (found < 0) return std::nullopt;
  return found;
}

void PlausibleSetMap::unite(const PlausibleSetMap& other) {
  assert(mask_.size() == other.mask_.size());
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    for (std::size_t i = 0; i < mask_[v].size(); ++i) {
      mask_[v][i] = mask_[v][i] || other.mask_[v][i];
    }
  }
}

void PlausibleSetMap::intersect(const PlausibleSetMap& other) {
  assert(mask_.size() == other.mask_.size());
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    for (std::size_t i = 0; i < mask_[v].size(); ++i) {
      mask_[v][i] = mask_[v][i] && other.mask_[v][i];
    }
  }
}

bool PlausibleSetMap::subset_of(const PlausibleSetMap& other) const {
  assert(mask_.size() == other.mask_.size());
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    for (std::size_t i = 0; i < mask_[v].size(); ++i) {
      if (mask_[v][i] && !other.mask_[v][i]) return false;
    }
  }
  return true;
}

std::map<std::string, std::vector<std::string>> PlausibleSetMap::named(
    const NetworkStructure& structure) const {
  std::map<std::string, std::vector<std::string>> result;
  for (int v = 0; v < variable_count(); ++v) {
    std::vector<std::string> values;
    for (int i = 0; i < domain_size(v); ++i) {
      if (mask_[v][i]) values.push_back(structure.variable(v).values[i]);
    }
    result[structure.variable(v).name] = std::move(values);
  }
  return result;
}

}  // namespace kappanet
