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

#include "kappanet/oracle.hpp"

#include <algorithm>

#include "kappanet/errors.hpp"

namespace kappanet {

namespace {

// Iterates every world of the joint space as a vector of value indices,
// after checking the cap.  f is called with a span valid only for the call.
template <typename F>
void for_each_world(const NetworkStructure& structure, const OracleOptions& options, F&& f) {
  checked_world_count(structure, options);
  int n = structure.variable_count();
  std::vector<int> values(n, 0);
  while (true) {
    f(std::span<const int>(values));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++values[i] < structure.domain_size(i)) break;
      values[i] = 0;
    }
    if (i < 0) break;
  }
}

// Fixed (variable, value) constraints as a dense lookup, -1 = free.
std::vector<int> constraint_vector(const NetworkStructure& structure,
                                   const std::map<std::string, std::string>& assignment) {
  std::vector<int> fixed(structure.variable_count(), -1);
  for (const auto& [v, value] : resolve_assignment(structure, assignment)) {
    fixed[v] = value;
  }
  return fixed;
}

bool satisfies(std::span<const int> world, const std::vector<int>& fixed) {
  for (std::size_t v = 0; v < fixed.size(); ++v) {
    if (fixed[v] >= 0 && world[v] != fixed[v]) return false;
  }
  return true;
}

}  // namespace

std::uint64_t checked_world_count(const NetworkStructure& structure,
                                  const OracleOptions& options) {
  std::uint64_t count = 1;
  for (int v = 0; v < structure.variable_count(); ++v) {
    std::uint64_t dom = static_cast<std::uint64_t>(structure.domain_size(v));
    if (count > options.max_worlds / dom) {
      throw CapExceededError("joint space exceeds the oracle world cap of " +
                             std::to_string(options.max_worlds) + " worlds");
    }
    count *= dom;
  }
  return count;
}

Kappa joint_kappa(const KappaNetwork& net, std::span<const int> world_values) {
  const NetworkStructure& structure = net.structure();
  Kappa total = kappa_zero;
  for (int v = 0; v < structure.variable_count(); ++v) {
    const KappaTable& table = net.table(v);
    std::vector<int> parent_values;
    parent_values.reserve(table.parents.size());
    for (int p : table.parents) parent_values.push_back(world_values[p]);
    std::size_t row = table_row_index(structure, table.parents, parent_values);
    total += table.rows[row][world_values[v]];
    if (total.is_infinite()) return total;
  }
  return total;
}

Kappa joint_kappa(const KappaNetwork& net, const World& w) {
  const NetworkStructure& structure = net.structure();
  if (static_cast<int>(w.size()) != structure.variable_count()) {
    throw ValidationError("world must assign every variable");
  }
  std::vector<int> values = constraint_vector(structure, w);
  return joint_kappa(net, values);
}

Kappa marginal_kappa(const KappaNetwork& net, const std::map<std::string, std::string>& partial,
                     const std::map<std::string, std::string>& given,
                     const OracleOptions& options) {
  const NetworkStructure& structure = net.structure();
  std::vector<int> want = constraint_vector(structure, partial);
  std::vector<int> condition = constraint_vector(structure, given);
  for (int v = 0; v < structure.variable_count(); ++v) {
    if (want[v] >= 0 && condition[v] >= 0 && want[v] != condition[v]) {
      throw ValidationError("partial assignment conflicts with the conditioning event on '" +
                            structure.variable(v).name + "'");
    }
  }

  Kappa joint_min = Kappa::infinity();   // kappa(partial & given)
  Kappa given_min = Kappa::infinity();   // kappa(given)
  for_each_world(structure, options, [&](std::span<const int> world) {
    if (!satisfies(world, condition)) return;
    Kappa k = joint_kappa(net, world);
    given_min = min(given_min, k);
    if (satisfies(world, want)) joint_min = min(joint_min, k);
  });

  if (given_min.is_infinite()) {
    throw InferenceError("conditioning on an impossible event (rank infinity)");
  }
  if (joint_min.is_infinite()) return Kappa::infinity();
  return Kappa::finite(joint_min.value() - given_min.value());
}

std::set<std::string> exact_plausible_set(const KappaNetwork& net, const std::string& variable,
                                          const std::map<std::string, std::string>& given,
                                          const OracleOptions& options) {
  const NetworkStructure& structure = net.structure();
  int v = structure.require_variable(variable);
  PlausibleSetMap map = exact_plausible_sets(net, given, options);
  std::set<std::string> result;
  for (int i = 0; i < structure.domain_size(v); ++i) {
    if (map.contains(v, i)) result.insert(structure.variable(v).values[i]);
  }
  return result;
}

PlausibleSetMap exact_plausible_sets(const KappaNetwork& net,
                                     const std::map<std::string, std::string>& given,
                                     const OracleOptions& options) {
  const NetworkStructure& structure = net.structure();
  std::vector<int> condition = constraint_vector(structure, given);

  std::vector<std::vector<Kappa>> value_min(structure.variable_count());
  for (int v = 0; v < structure.variable_count(); ++v) {
    value_min[v].assign(structure.domain_size(v), Kappa::infinity());
  }
  Kappa given_min = Kappa::infinity();

  for_each_world(structure, options, [&](std::span<const int> world) {
    if (!satisfies(world, condition)) return;
    Kappa k = joint_kappa(net, world);
    given_min = min(given_min, k);
    for (int v = 0; v < structure.variable_count(); ++v) {
      value_min[v][world[v]] = min(value_min[v][world[v]], k);
    }
  });

  if (given_min.is_infinite()) {
    throw InferenceError("conditioning on an impossible event (rank infinity)");
  }

  PlausibleSetMap map = PlausibleSetMap::empty_sets(structure);
  for (int v = 0; v < structure.variable_count(); ++v) {
    for (int i = 0; i < structure.domain_size(v); ++i) {
      if (value_min[v][i] == given_min) map.insert(v, i);
    }
  }
  map.set_provenance(Provenance::complete_certified);
  return map;
}

bool is_irrelevant(const KappaNetwork& net, const std::vector<std::string>& variables,
                   const OracleOptions& options) {
  const NetworkStructure& structure = net.structure();
  if (variables.size() < 2) {
    throw ValidationError("irrelevance needs at least two variables");
  }
  std::vector<int> vars;
  for (const std::string& name : variables) vars.push_back(structure.require_variable(name));
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
    throw ValidationError("irrelevance variables must be distinct");
  }

  // Single pass: per-variable value minima and per-instantiation joint
  // minima over the selected variables.
  std::vector<std::vector<Kappa>> value_min(vars.size());
  std::size_t instantiations = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    value_min[i].assign(structure.domain_size(vars[i]), Kappa::infinity());
    instantiations *= static_cast<std::size_t>(structure.domain_size(vars[i]));
  }
  std::vector<Kappa> joint_min(instantiations, Kappa::infinity());

  for_each_world(structure, options, [&](std::span<const int> world) {
    Kappa k = joint_kappa(net, world);
    std::size_t index = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      value_min[i][world[vars[i]]] = min(value_min[i][world[vars[i]]], k);
      index = index * static_cast<std::size_t>(structure.domain_size(vars[i])) +
              static_cast<std::size_t>(world[vars[i]]);
    }
    joint_min[index] = min(joint_min[index], k);
  });

  // For every instantiation whose per-variable marginals are all zero, the
  // joint rank must be zero as well.
  for (std::size_t index = 0; index < instantiations; ++index) {
    std::size_t rest = index;
    bool all_marginals_zero = true;
    for (std::size_t i = vars.size(); i-- > 0;) {
      std::size_t dom = static_cast<std::size_t>(structure.domain_size(vars[i]));
      std::size_t value = rest % dom;
      rest /= dom;
      if (!value_min[i][value].is_zero()) {
        all_marginals_zero = false;
        break;
      }
    }
    if (all_marginals_zero && !joint_min[index].is_zero()) return false;
  }
  return true;
}

}  // namespace kappanet
