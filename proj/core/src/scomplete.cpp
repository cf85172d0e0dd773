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

#include "kappanet/scomplete.hpp"

#include <algorithm>
#include <deque>

#include "kappanet/errors.hpp"

namespace kappanet {

namespace {

struct ReducedIndices {
  std::vector<int> nodes;                      // surviving variable indices
  std::vector<std::pair<int, int>> edges;      // surviving (parent, child)
};

ReducedIndices isolate_loops_indices(const NetworkStructure& structure,
                                     const std::vector<char>& removed) {
  int n = structure.variable_count();
  std::vector<char> alive(n, 1);
  for (int v = 0; v < n; ++v) alive[v] = !removed[v];

  std::vector<char> edge_alive(structure.edges().size(), 1);
  std::vector<int> degree(n, 0);
  std::vector<std::vector<std::pair<int, int>>> incident(n);  // (other endpoint, edge index)
  for (std::size_t e = 0; e < structure.edges().size(); ++e) {
    const auto& [p, c] = structure.edges()[e];
    if (!alive[p] || !alive[c]) {
      edge_alive[e] = 0;
      continue;
    }
    ++degree[p];
    ++degree[c];
    incident[p].emplace_back(c, static_cast<int>(e));
    incident[c].emplace_back(p, static_cast<int>(e));
  }

  // Strip nodes with at most one undirected neighbor until fixpoint.
  std::deque<int> pending;
  for (int v = 0; v < n; ++v) {
    if (alive[v] && degree[v] <= 1) pending.push_back(v);
  }
  while (!pending.empty()) {
    int v = pending.front();
    pending.pop_front();
    if (!alive[v] || degree[v] > 1) continue;
    alive[v] = 0;
    for (const auto& [other, e] : incident[v]) {
      if (!edge_alive[e] || !alive[other]) continue;
      edge_alive[e] = 0;
      if (--degree[other] <= 1) pending.push_back(other);
    }
  }

  ReducedIndices reduced;
  for (int v = 0; v < n; ++v) {
    if (alive[v]) reduced.nodes.push_back(v);
  }
  for (std::size_t e = 0; e < structure.edges().size(); ++e) {
    if (edge_alive[e]) reduced.edges.push_back(structure.edges()[e]);
  }
  return reduced;
}

std::vector<int> reduced_roots(const ReducedIndices& reduced) {
  std::set<int> with_incoming;
  for (const auto& [p, c] : reduced.edges) with_incoming.insert(c);
  std::vector<int> roots;
  for (int v : reduced.nodes) {
    if (!with_incoming.count(v)) roots.push_back(v);
  }
  return roots;
}

}  // namespace

std::vector<std::string> ReducedGraph::roots() const {
  std::set<std::string> with_incoming;
  for (const auto& [p, c] : edges) with_incoming.insert(c);
  std::vector<std::string> result;
  for (const std::string& node : nodes) {
    if (!with_incoming.count(node)) result.push_back(node);
  }
  return result;
}

ReducedGraph isolate_loops(const NetworkStructure& structure,
                           const std::set<std::string>& removed) {
  std::vector<char> removed_mask(structure.variable_count(), 0);
  for (const std::string& name : removed) {
    removed_mask[structure.require_variable(name)] = 1;
  }
  ReducedIndices reduced = isolate_loops_indices(structure, removed_mask);

  ReducedGraph graph;
  for (int v : reduced.nodes) graph.nodes.push_back(structure.variable(v).name);
  for (const auto& [p, c] : reduced.edges) {
    graph.edges.emplace_back(structure.variable(p).name, structure.variable(c).name);
  }
  return graph;
}

ScompleteResult scomplete(const KappaNetwork& net, const Evidence& evidence,
                          const ActionSet& actions, const ScompleteOptions& options) {
  // Surgery once up front; every sweep below runs on the modified network.
  const KappaNetwork modified = apply_actions(net, actions);
  const NetworkStructure& structure = modified.structure();
  int n = structure.variable_count();

  ScompleteResult result;
  result.plsets = predict(modified, evidence).plsets;

  std::vector<char> bset(n, 0);
  auto absorb_believed = [&]() {
    for (int v = 0; v < n; ++v) {
      if (result.plsets.singleton(v)) bset[v] = 1;
    }
  };
  absorb_believed();

  std::vector<int> blocking;  // cumulative CS, in selection order
  std::vector<char> in_blocking(n, 0);

  while (true) {
    ReducedIndices reduced = isolate_loops_indices(structure, bset);
    if (reduced.nodes.empty()) {
      result.plsets.set_provenance(Provenance::complete_certified);
      return result;
    }

    for (int v : reduced_roots(reduced)) {
      if (!in_blocking[v]) {
        in_blocking[v] = 1;
        blocking.push_back(v);
      }
    }

    // Plausible instantiations of the blocking set, decided componentwise
    // from the current map.
    std::vector<std::vector<int>> candidate_values(blocking.size());
    std::uint64_t instantiations = 1;
    for (std::size_t i = 0; i < blocking.size(); ++i) {
      for (int value = 0; value < structure.domain_size(blocking[i]); ++value) {
        if (result.plsets.contains(blocking[i], value)) {
          candidate_values[i].push_back(value);
        }
      }
      instantiations *= candidate_values[i].size();
      if (instantiations > options.cs_instantiation_cap) {
        result.capped = true;
        return result;  // sound but not certified
      }
    }

    ScompleteStage stage;
    for (int v : blocking) stage.blocking_set.push_back(structure.variable(v).name);

    PlausibleSetMap merged = PlausibleSetMap::empty_sets(structure);
    std::vector<std::size_t> choice(blocking.size(), 0);
    ClampSet clamps;
    while (true) {
      clamps.clear();
      for (std::size_t i = 0; i < blocking.size(); ++i) {
        const Variable& var = structure.variable(blocking[i]);
        clamps[var.name] = var.values[candidate_values[i][choice[i]]];
      }
      merged.unite(predict(modified, evidence, {}, clamps).plsets);
      ++stage.sweeps;

      std::size_t i = blocking.size();
      while (i-- > 0) {
        if (++choice[i] < candidate_values[i].size()) break;
        choice[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }

    // Conditioning on a finer blocking set never loses exact values, so the
    // merge of this stage can only tighten the previous map.
    merged.intersect(result.plsets);
    result.plsets = merged;
    absorb_believed();
    for (int v : blocking) bset[v] = 1;

    stage.plsets = result.plsets;
    result.stages.push_back(std::move(stage));
  }
}

}  // namespace kappanet
