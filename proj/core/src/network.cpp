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

#include "kappanet/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "kappanet/errors.hpp"

namespace kappanet {

namespace {

void check_label(const std::string& label, const std::string& what) {
  if (label.empty()) {
    throw ValidationError(what + " must not be empty");
  }
  if (label.find(',') != std::string::npos || label.find('=') != std::string::npos) {
    throw ValidationError(what + " '" + label + "' must not contain ',' or '='");
  }
}

}  // namespace

NetworkStructure::NetworkStructure(std::vector<Variable> variables,
                                   std::vector<std::pair<std::string, std::string>> edges)
    : variables_(std::move(variables)) {
  for (int v = 0; v < variable_count(); ++v) {
    const Variable& var = variables_[v];
    check_label(var.name, "variable name");
    if (!index_.emplace(var.name, v).second) {
      throw ValidationError("duplicate variable '" + var.name + "'");
    }
    if (var.values.size() < 2) {
      throw ValidationError("variable '" + var.name + "' needs at least two values");
    }
    std::set<std::string> seen;
    for (const std::string& label : var.values) {
      check_label(label, "value label of variable '" + var.name + "'");
      if (!seen.insert(label).second) {
        throw ValidationError("variable '" + var.name + "' has duplicate value '" + label + "'");
      }
    }
  }

  parents_.resize(variables_.size());
  children_.resize(variables_.size());
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& [parent_name, child_name] : edges) {
    int p = require_variable(parent_name);
    int c = require_variable(child_name);
    if (p == c) {
      throw ValidationError("self edge on '" + parent_name + "'");
    }
    if (!seen_edges.emplace(p, c).second) {
      throw ValidationError("duplicate edge " + parent_name + " -> " + child_name);
    }
    edges_.emplace_back(p, c);
    parents_[c].push_back(p);
    children_[p].push_back(c);
  }

  // Acyclicity: Kahn's algorithm must consume every node.
  std::vector<int> order = topological_order_indices();
  if (static_cast<int>(order.size()) != variable_count()) {
    std::vector<char> in_order(variables_.size(), 0);
    for (int v : order) in_order[v] = 1;
    for (int v = 0; v < variable_count(); ++v) {
      if (!in_order[v]) {
        throw ValidationError("cycle detected through variable '" + variables_[v].name + "'");
      }
    }
  }
}

int NetworkStructure::index_of(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int NetworkStructure::require_variable(std::string_view name) const {
  int v = index_of(name);
  if (v < 0) {
    throw ValidationError("unknown variable '" + std::string(name) + "'");
  }
  return v;
}

int NetworkStructure::value_index(int v, std::string_view label) const {
  const auto& values = variables_[v].values;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (values[i] == label) return i;
  }
  return -1;
}

int NetworkStructure::require_value(int v, std::string_view label) const {
  int i = value_index(v, label);
  if (i < 0) {
    throw ValidationError("variable '" + variables_[v].name + "' has no value '" +
                          std::string(label) + "'");
  }
  return i;
}

std::vector<int> NetworkStructure::roots() const {
  std::vector<int> result;
  for (int v = 0; v < variable_count(); ++v) {
    if (is_root(v)) result.push_back(v);
  }
  return result;
}

std::vector<int> NetworkStructure::topological_order_indices() const {
  std::vector<int> indegree(variables_.size(), 0);
  for (const auto& [p, c] : edges_) indegree[c]++;

  // Ready set kept sorted by declaration index for deterministic ties.
  std::set<int> ready;
  for (int v = 0; v < variable_count(); ++v) {
    if (indegree[v] == 0) ready.insert(v);
  }

  std::vector<int> order;
  order.reserve(variables_.size());
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (int c : children_[v]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  return order;
}

std::vector<std::string> topological_order(const NetworkStructure& structure) {
  std::vector<std::string> names;
  for (int v : structure.topological_order_indices()) {
    names.push_back(structure.variable(v).name);
  }
  return names;
}

std::size_t table_row_count(const NetworkStructure& structure, std::span<const int> parents) {
  std::size_t count = 1;
  for (int p : parents) count *= static_cast<std::size_t>(structure.domain_size(p));
  return count;
}

std::size_t table_row_index(const NetworkStructure& structure, std::span<const int> parents,
                            std::span<const int> parent_values) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    index = index * static_cast<std::size_t>(structure.domain_size(parents[i])) +
            static_cast<std::size_t>(parent_values[i]);
  }
  return index;
}

void table_row_assignment(const NetworkStructure& structure, std::span<const int> parents,
                          std::size_t row, std::vector<int>& out) {
  out.assign(parents.size(), 0);
  for (std::size_t i = parents.size(); i-- > 0;) {
    std::size_t radix = static_cast<std::size_t>(structure.domain_size(parents[i]));
    out[i] = static_cast<int>(row % radix);
    row /= radix;
  }
}

namespace {

// Shared shape validation for both quantifications; returns tables
// re-ordered so that tables[v] describes variable v.
template <typename Entry>
std::vector<ConditionalTable<Entry>> index_tables(const NetworkStructure& structure,
                                                  std::vector<ConditionalTable<Entry>> tables) {
  if (tables.size() != static_cast<std::size_t>(structure.variable_count())) {
    throw ValidationError("expected one table per variable, got " +
                          std::to_string(tables.size()));
  }
  std::vector<ConditionalTable<Entry>> by_child(structure.variable_count());
  std::vector<char> present(structure.variable_count(), 0);
  for (auto& table : tables) {
    int child = table.child;
    if (child < 0 || child >= structure.variable_count()) {
      throw ValidationError("table references unknown variable index");
    }
    const std::string& name = structure.variable(child).name;
    if (present[child]) {
      throw ValidationError("duplicate table for variable '" + name + "'");
    }
    present[child] = 1;

    std::set<int> declared(table.parents.begin(), table.parents.end());
    std::set<int> graph(structure.parents(child).begin(), structure.parents(child).end());
    if (declared.size() != table.parents.size()) {
      throw ValidationError("table for '" + name + "' lists a parent twice");
    }
    if (declared != graph) {
      throw ValidationError("table for '" + name + "' does not match its graph parents");
    }

    std::size_t rows = table_row_count(structure, table.parents);
    if (table.rows.size() != rows) {
      throw ValidationError("table for '" + name + "' has " + std::to_string(table.rows.size()) +
                            " rows, expected " + std::to_string(rows));
    }
    std::size_t dom = static_cast<std::size_t>(structure.domain_size(child));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (table.rows[r].size() != dom) {
        throw ValidationError("table for '" + name + "', row " + std::to_string(r) +
                              ": expected " + std::to_string(dom) + " entries");
      }
    }
    by_child[child] = std::move(table);
  }
  return by_child;
}

std::string row_location(const NetworkStructure& structure, const std::vector<int>& parents,
                         std::size_t row) {
  std::vector<int> values;
  table_row_assignment(structure, parents, row, values);
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (i) out << ",";
    out << structure.variable(parents[i]).values[values[i]];
  }
  out << ")";
  return out.str();
}

}  // namespace

KappaNetwork::KappaNetwork(NetworkStructure structure, std::vector<KappaTable> tables)
    : structure_(std::move(structure)), tables_(index_tables(structure_, std::move(tables))) {
  for (const KappaTable& table : tables_) {
    const std::string& name = structure_.variable(table.child).name;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      Kappa lowest = Kappa::infinity();
      for (Kappa k : table.rows[r]) lowest = min(lowest, k);
      if (!lowest.is_zero()) {
        throw ValidationError("kappa table for '" + name + "', parent instantiation " +
                              row_location(structure_, table.parents, r) +
                              ": minimum rank must be 0");
      }
    }
  }
}

ProbNetwork::ProbNetwork(NetworkStructure structure, std::vector<ProbTable> tables)
    : structure_(std::move(structure)), tables_(index_tables(structure_, std::move(tables))) {
  for (const ProbTable& table : tables_) {
    const std::string& name = structure_.variable(table.child).name;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      double sum = 0.0;
      for (double p : table.rows[r]) {
        if (!(p >= 0.0) || p > 1.0) {
          throw ValidationError("probability table for '" + name + "', parent instantiation " +
                                row_location(structure_, table.parents, r) +
                                ": entries must lie in [0,1]");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw ValidationError("probability table for '" + name + "', parent instantiation " +
                              row_location(structure_, table.parents, r) + ": row sums to " +
                              std::to_string(sum) + ", expected 1");
      }
    }
  }
}

std::vector<std::pair<int, int>> resolve_assignment(
    const NetworkStructure& structure, const std::map<std::string, std::string>& assignment) {
  std::vector<std::pair<int, int>> resolved;
  resolved.reserve(assignment.size());
  for (const auto& [name, label] : assignment) {
    int v = structure.require_variable(name);
    resolved.emplace_back(v, structure.require_value(v, label));
  }
  std::sort(resolved.begin(), resolved.end());
  return resolved;
}

namespace {

template <typename Net, typename Entry>
Net apply_actions_impl(const Net& net, const ActionSet& actions, Entry forced, Entry blocked) {
  if (actions.empty()) return net;

  const NetworkStructure& structure = net.structure();
  auto resolved = resolve_assignment(structure, actions);
  std::vector<int> forced_value(structure.variable_count(), -1);
  for (const auto& [v, value] : resolved) forced_value[v] = value;

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, c] : structure.edges()) {
    if (forced_value[c] >= 0) continue;  // acted-on variables lose incoming edges
    edges.emplace_back(structure.variable(p).name, structure.variable(c).name);
  }

  NetworkStructure modified(structure.variables(), std::move(edges));
  std::vector<ConditionalTable<Entry>> tables;
  tables.reserve(net.tables().size());
  for (const auto& table : net.tables()) {
    int v = table.child;
    if (forced_value[v] < 0) {
      tables.push_back(table);
      continue;
    }
    ConditionalTable<Entry> unconditional;
    unconditional.child = v;
    unconditional.rows.emplace_back(structure.domain_size(v), blocked);
    unconditional.rows[0][forced_value[v]] = forced;
    tables.push_back(std::move(unconditional));
  }
  return Net(std::move(modified), std::move(tables));
}

}  // namespace

KappaNetwork apply_actions(const KappaNetwork& net, const ActionSet& actions) {
  return apply_actions_impl(net, actions, kappa_zero, Kappa::infinity());
}

ProbNetwork apply_actions(const ProbNetwork& net, const ActionSet& actions) {
  return apply_actions_impl(net, actions, 1.0, 0.0);
}

}  // namespace kappanet
