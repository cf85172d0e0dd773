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

#include "kappanet/completeness.hpp"

#include <algorithm>
#include <deque>

#include "kappanet/errors.hpp"

namespace kappanet {

namespace {

// Read off the cycle closed by cross-edge (u, v): both breadth-first tree
// paths up to the lowest common ancestor.
std::vector<int> cycle_through(const std::vector<int>& tree_parent, int u, int v) {
  std::vector<int> u_path;  // u up to its root
  for (int x = u; x >= 0; x = tree_parent[x]) u_path.push_back(x);

  std::vector<char> on_u_path(tree_parent.size(), 0);
  for (int x : u_path) on_u_path[x] = 1;

  std::vector<int> v_path;  // v up to the first node shared with u_path
  int meet = v;
  while (!on_u_path[meet]) {
    v_path.push_back(meet);
    meet = tree_parent[meet];
  }

  std::vector<int> cycle;
  for (int x : u_path) {
    cycle.push_back(x);
    if (x == meet) break;
  }
  std::reverse(v_path.begin(), v_path.end());
  cycle.insert(cycle.end(), v_path.begin(), v_path.end());
  return cycle;
}

}  // namespace

CompletenessCertificate check_complete(const NetworkStructure& structure,
                                       const std::vector<std::string>& believed) {
  CompletenessCertificate cert;
  int n = structure.variable_count();

  std::vector<char> blocked(n, 0);
  for (const std::string& name : believed) {
    blocked[structure.require_variable(name)] = 1;
  }

  // Undirected adjacency over the surviving edges; entries carry the edge
  // id so the breadth-first search can skip its own tree edge without
  // confusing it with a parallel connection.
  std::vector<std::vector<std::pair<int, int>>> adjacent(n);
  int edge_id = 0;
  for (const auto& [p, c] : structure.edges()) {
    ++cert.edge_visits;
    if (blocked[p]) continue;  // believed nodes lose outgoing edges
    adjacent[p].emplace_back(c, edge_id);
    adjacent[c].emplace_back(p, edge_id);
    ++edge_id;
  }

  std::vector<int> tree_parent(n, -1);
  std::vector<int> tree_edge(n, -1);
  std::vector<char> visited(n, 0);

  for (int start = 0; start < n; ++start) {
    if (visited[start]) continue;
    visited[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const auto& [w, id] : adjacent[u]) {
        ++cert.edge_visits;
        if (id == tree_edge[u]) continue;
        if (visited[w]) {
          // Cross-edge: an undirected cycle through u and w.
          std::vector<int> cycle = cycle_through(tree_parent, u, w);
          for (int x : cycle) cert.witness_cycle.push_back(structure.variable(x).name);
          cert.complete = false;
          return cert;
        }
        visited[w] = 1;
        tree_parent[w] = u;
        tree_edge[w] = id;
        queue.push_back(w);
      }
    }
  }

  cert.complete = true;
  return cert;
}

bool is_definite(const KappaNetwork& net) {
  for (const KappaTable& table : net.tables()) {
    for (const auto& row : table.rows) {
      int zeros = 0;
      for (Kappa k : row) {
        if (k.is_zero()) ++zeros;
      }
      if (zeros != 1) return false;
    }
  }
  return true;
}

}  // namespace kappanet
