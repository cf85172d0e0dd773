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

#include "kappanet/predict.hpp"

#include "kappanet/errors.hpp"

namespace kappanet {

namespace {

// Enumerates parent instantiations restricted to each parent's current
// plausible set and marks child values with local rank 0.
void sweep_family(const NetworkStructure& structure, const KappaTable& table,
                  PlausibleSetMap& plsets, OpCounter& ops) {
  int child = table.child;
  int dom = structure.domain_size(child);
  std::size_t parent_count = table.parents.size();
  ops.edge_visits += parent_count;

  // Current choice per parent: an index into that parent's plausible values.
  std::vector<std::vector<int>> plausible_values(parent_count);
  for (std::size_t i = 0; i < parent_count; ++i) {
    int p = table.parents[i];
    for (int value = 0; value < structure.domain_size(p); ++value) {
      if (plsets.contains(p, value)) plausible_values[i].push_back(value);
    }
  }

  std::vector<std::size_t> choice(parent_count, 0);
  std::vector<int> parent_values(parent_count);
  while (true) {
    for (std::size_t i = 0; i < parent_count; ++i) {
      parent_values[i] = plausible_values[i][choice[i]];
    }
    std::size_t row = table_row_index(structure, table.parents, parent_values);
    for (int value = 0; value < dom; ++value) {
      ++ops.table_lookups;
      if (table.rows[row][value].is_zero()) plsets.insert(child, value);
    }

    std::size_t i = parent_count;
    while (i-- > 0) {
      if (++choice[i] < plausible_values[i].size()) break;
      choice[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
}

}  // namespace

PredictResult predict(const KappaNetwork& net, const Evidence& evidence, const ActionSet& actions,
                      const ClampSet& clamps) {
  const KappaNetwork modified = apply_actions(net, actions);
  const NetworkStructure& structure = modified.structure();

  std::vector<int> observed(structure.variable_count(), -1);
  for (const auto& [v, value] : resolve_assignment(structure, evidence)) {
    if (!structure.is_root(v)) {
      throw InferenceError("evidence on non-root variable '" + structure.variable(v).name + "'");
    }
    observed[v] = value;
  }

  std::vector<int> clamped(structure.variable_count(), -1);
  for (const auto& [v, value] : resolve_assignment(structure, clamps)) {
    if (observed[v] >= 0 && observed[v] != value) {
      throw InferenceError("clamp on '" + structure.variable(v).name +
                           "' conflicts with evidence");
    }
    clamped[v] = value;
  }

  PredictResult result{PlausibleSetMap::empty_sets(structure), OpCounter{}};
  PlausibleSetMap& plsets = result.plsets;

  for (int v : structure.topological_order_indices()) {
    if (clamped[v] >= 0) {
      plsets.assign_singleton(v, clamped[v]);
      continue;
    }
    if (structure.is_root(v)) {
      const std::vector<Kappa>& row = modified.table(v).rows[0];
      if (observed[v] >= 0) {
        ++result.ops.table_lookups;
        if (row[observed[v]].is_infinite()) {
          throw InferenceError("evidence '" + structure.variable(v).name + " = " +
                               structure.variable(v).values[observed[v]] +
                               "' has rank infinity (inconsistent evidence)");
        }
        plsets.assign_singleton(v, observed[v]);
        continue;
      }
      for (int value = 0; value < structure.domain_size(v); ++value) {
        ++result.ops.table_lookups;
        if (row[value].is_zero()) plsets.insert(v, value);
      }
      continue;
    }
    sweep_family(structure, modified.table(v), plsets, result.ops);
  }

  plsets.set_provenance(Provenance::approximate);
  return result;
}

std::vector<std::pair<std::string, std::string>> believed_nodes(
    const PlausibleSetMap& plsets, const NetworkStructure& structure) {
  std::vector<std::pair<std::string, std::string>> result;
  for (int v = 0; v < structure.variable_count(); ++v) {
    if (auto value = plsets.singleton(v)) {
      result.emplace_back(structure.variable(v).name, structure.variable(v).values[*value]);
    }
  }
  return result;
}

}  // namespace kappanet
