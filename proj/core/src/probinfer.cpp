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

#include "kappanet/probinfer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <queue>

#include "kappanet/completeness.hpp"
#include "kappanet/errors.hpp"
#include "kappanet/predict.hpp"

namespace kappanet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double joint_probability(const ProbNetwork& net, std::span<const int> world) {
  const NetworkStructure& structure = net.structure();
  double p = 1.0;
  std::vector<int> parent_values;
  for (int v = 0; v < structure.variable_count(); ++v) {
    const ProbTable& table = net.table(v);
    parent_values.clear();
    for (int parent : table.parents) parent_values.push_back(world[parent]);
    p *= table.rows[table_row_index(structure, table.parents, parent_values)][world[v]];
    if (p == 0.0) return 0.0;
  }
  return p;
}

// Iterates worlds consistent with `fixed` (-1 = free), checking the cap on
// the number of free combinations.
template <typename F>
void for_each_constrained_world(const NetworkStructure& structure, const std::vector<int>& fixed,
                                const OracleOptions& options, F&& f) {
  std::uint64_t combinations = 1;
  for (int v = 0; v < structure.variable_count(); ++v) {
    if (fixed[v] >= 0) continue;
    std::uint64_t dom = static_cast<std::uint64_t>(structure.domain_size(v));
    if (combinations > options.max_worlds / dom) {
      throw CapExceededError("restricted joint space exceeds the world cap of " +
                             std::to_string(options.max_worlds));
    }
    combinations *= dom;
  }

  int n = structure.variable_count();
  std::vector<int> world(n);
  for (int v = 0; v < n; ++v) world[v] = std::max(fixed[v], 0);
  while (true) {
    f(std::span<const int>(world));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (fixed[i] >= 0) continue;
      if (++world[i] < structure.domain_size(i)) break;
      world[i] = 0;
    }
    if (i < 0) break;
  }
}

std::vector<int> fixed_from_pairs(const NetworkStructure& structure,
                                  const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> fixed(structure.variable_count(), -1);
  for (const auto& [v, value] : pairs) {
    if (fixed[v] >= 0 && fixed[v] != value) {
      throw ValidationError("conflicting values for '" + structure.variable(v).name + "'");
    }
    fixed[v] = value;
  }
  return fixed;
}

// Resolves a query against a structure: target conjuncts (validated
// distinct) and evidence merged into index form.
struct ResolvedQuery {
  std::vector<std::pair<int, int>> target;
  std::vector<std::pair<int, int>> evidence;
};

ResolvedQuery resolve_query(const NetworkStructure& structure, const Query& query) {
  ResolvedQuery resolved;
  if (query.target.empty()) throw ValidationError("query needs at least one target");
  std::vector<char> seen(structure.variable_count(), 0);
  for (const auto& [name, label] : query.target) {
    int v = structure.require_variable(name);
    if (seen[v]) throw ValidationError("duplicate query target '" + name + "'");
    seen[v] = 1;
    resolved.target.emplace_back(v, structure.require_value(v, label));
  }
  for (const auto& [v, value] : resolve_assignment(structure, query.evidence)) {
    if (seen[v]) {
      throw ValidationError("evidence overlaps query target '" + structure.variable(v).name +
                            "'");
    }
    resolved.evidence.emplace_back(v, value);
  }
  return resolved;
}

bool world_satisfies(std::span<const int> world, const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [v, value] : pairs) {
    if (world[v] != value) return false;
  }
  return true;
}

}  // namespace

Query parse_query(const std::string& text) {
  Query query;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string part =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    std::size_t equals = part.find('=');
    if (part.empty() || equals == std::string::npos || equals == 0 ||
        equals + 1 == part.size()) {
      throw ValidationError("bad query term '" + part + "' (expected var=value)");
    }
    query.target.emplace_back(part.substr(0, equals), part.substr(equals + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return query;
}

double exact_query(const ProbNetwork& net, const Query& query, const OracleOptions& options) {
  const NetworkStructure& structure = net.structure();
  ResolvedQuery resolved = resolve_query(structure, query);

  std::vector<int> fixed(structure.variable_count(), -1);
  double evidence_mass = 0.0;
  double joint_mass = 0.0;
  for_each_constrained_world(structure, fixed, options, [&](std::span<const int> world) {
    if (!world_satisfies(world, resolved.evidence)) return;
    double p = joint_probability(net, world);
    evidence_mass += p;
    if (world_satisfies(world, resolved.target)) joint_mass += p;
  });

  if (evidence_mass <= 0.0) {
    throw InferenceError("evidence has probability zero");
  }
  return joint_mass / evidence_mass;
}

std::vector<std::string> find_cutset(const NetworkStructure& structure) {
  std::vector<std::string> cutset;
  std::vector<int> undirected_degree(structure.variable_count(), 0);
  for (const auto& [p, c] : structure.edges()) {
    ++undirected_degree[p];
    ++undirected_degree[c];
  }

  while (true) {
    CompletenessCertificate cert = check_complete(structure, cutset);
    if (cert.complete) return cutset;

    // Pick, from the witness cycle, a node whose outgoing-edge removal
    // actually breaks that cycle: one with an outgoing edge on the cycle.
    const auto& cycle = cert.witness_cycle;
    std::vector<char> on_cycle(structure.variable_count(), 0);
    for (const std::string& name : cycle) on_cycle[structure.require_variable(name)] = 1;

    int best = -1;
    for (const std::string& name : cycle) {
      int v = structure.require_variable(name);
      bool outgoing_on_cycle = false;
      for (int c : structure.children(v)) {
        if (on_cycle[c]) {
          outgoing_on_cycle = true;
          break;
        }
      }
      if (!outgoing_on_cycle) continue;
      if (best < 0 || undirected_degree[v] > undirected_degree[best] ||
          (undirected_degree[v] == undirected_degree[best] && v < best)) {
        best = v;
      }
    }
    cutset.push_back(structure.variable(best).name);
  }
}

LossOfMass loss_of_mass(const std::map<std::string, std::map<std::string, double>>& approx) {
  LossOfMass lm;
  double sum = 0.0;
  for (const auto& [variable, masses] : approx) {
    double total = 0.0;
    for (const auto& [value, p] : masses) {
      if (!(p >= 0.0) || p > 1.0 + kRowSumTolerance) {
        throw ValidationError("mass entry for '" + variable + "=" + value + "' out of [0,1]");
      }
      total += p;
    }
    if (total > 1.0 + kRowSumTolerance) {
      throw ValidationError("variable '" + variable + "' carries mass " + std::to_string(total) +
                            " > 1");
    }
    double lost = std::max(0.0, 1.0 - total);
    lm.per_variable[variable] = lost;
    sum += lost;
  }
  lm.average = approx.empty() ? 0.0 : sum / static_cast<double>(approx.size());
  return lm;
}

std::vector<std::vector<Kappa>> approx_value_ranks(const KappaNetwork& net) {
  const NetworkStructure& structure = net.structure();
  std::vector<std::vector<Kappa>> rank(structure.variable_count());
  std::vector<int> parent_values;
  for (int v : structure.topological_order_indices()) {
    const KappaTable& table = net.table(v);
    rank[v].assign(structure.domain_size(v), Kappa::infinity());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      table_row_assignment(structure, table.parents, r, parent_values);
      Kappa context = kappa_zero;
      for (std::size_t i = 0; i < table.parents.size(); ++i) {
        context += rank[table.parents[i]][parent_values[i]];
      }
      for (int value = 0; value < structure.domain_size(v); ++value) {
        rank[v][value] = min(rank[v][value], context + table.rows[r][value]);
      }
    }
  }
  return rank;
}

BoundedConditioningResult bounded_conditioning(
    const ProbNetwork& net, const Query& query, Epsilon eps, const BudgetOptions& budget,
    const OracleOptions& options, const std::optional<std::vector<std::string>>& cutset_override) {
  const auto start = Clock::now();
  const NetworkStructure& structure = net.structure();
  ResolvedQuery resolved = resolve_query(structure, query);

  // The anytime envelope brackets the joint mass of target and evidence.
  std::vector<std::pair<int, int>> goal = resolved.target;
  goal.insert(goal.end(), resolved.evidence.begin(), resolved.evidence.end());

  BoundedConditioningResult result;
  result.cutset = cutset_override ? *cutset_override : find_cutset(structure);
  std::vector<int> cutset_vars;
  for (const std::string& name : result.cutset) {
    int v = structure.require_variable(name);
    if (std::find(cutset_vars.begin(), cutset_vars.end(), v) != cutset_vars.end()) {
      throw ValidationError("cutset lists '" + name + "' twice");
    }
    cutset_vars.push_back(v);
  }

  // Rank-based pruning masks from the eps abstraction.
  KappaNetwork abstraction = epsilon_omp(net, eps).network;
  PlausibleSetMap plsets = predict(abstraction).plsets;
  std::vector<std::vector<Kappa>> ranks = approx_value_ranks(abstraction);

  // Enumerate the instance space in declaration (mixed-radix) order.
  std::uint64_t instance_count = 1;
  for (int v : cutset_vars) {
    std::uint64_t dom = static_cast<std::uint64_t>(structure.domain_size(v));
    if (instance_count > options.max_worlds / dom) {
      throw CapExceededError("cutset instance space exceeds the world cap");
    }
    instance_count *= dom;
  }

  struct Candidate {
    std::vector<int> values;
    std::uint64_t order = 0;     // mixed-radix index: the declaration tie-break
    std::uint64_t stratum = 0;   // estimated rank of the instance
    std::size_t record = 0;      // index into result.instances
  };
  std::vector<Candidate> survivors;

  std::vector<int> values(cutset_vars.size(), 0);
  for (std::uint64_t index = 0; index < instance_count; ++index) {
    CutsetInstance record;
    bool pruned = false;
    Kappa stratum = kappa_zero;
    for (std::size_t i = 0; i < cutset_vars.size(); ++i) {
      int v = cutset_vars[i];
      record.values.push_back(structure.variable(v).values[values[i]]);
      if (!plsets.contains(v, values[i])) pruned = true;
      stratum += ranks[v][values[i]];
    }
    record.status = pruned ? InstanceStatus::pruned : InstanceStatus::unprocessed;
    result.instances.push_back(std::move(record));
    if (!pruned) {
      Candidate candidate;
      candidate.values = values;
      candidate.order = index;
      candidate.stratum = stratum.is_infinite() ? std::numeric_limits<std::uint64_t>::max()
                                                : stratum.value();
      candidate.record = result.instances.size() - 1;
      survivors.push_back(std::move(candidate));
    }

    std::size_t i = cutset_vars.size();
    while (i-- > 0) {
      if (++values[i] < structure.domain_size(cutset_vars[i])) break;
      values[i] = 0;
    }
  }

  if (survivors.empty()) {
    result.warnings.push_back("all cutset instances pruned; bounds are vacuous");
  }

  // Most probable first: ascending estimated rank, then declaration order.
  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.stratum != b.stratum) return a.stratum < b.stratum;
                     return a.order < b.order;
                   });

  for (const auto& [v, value] : goal) {
    for (std::size_t i = 0; i < cutset_vars.size(); ++i) {
      if (cutset_vars[i] == v && !plsets.contains(v, value)) {
        result.warnings.push_back("query value '" + structure.variable(v).name + "=" +
                                  structure.variable(v).values[value] +
                                  "' was pruned from the cutset; lower bound may stay 0");
      }
    }
  }

  for (int v = 0; v < structure.variable_count(); ++v) {
    auto& slot = result.approx_marginals[structure.variable(v).name];
    for (const std::string& label : structure.variable(v).values) slot[label] = 0.0;
  }

  double processed_mass = 0.0;
  double goal_mass = 0.0;
  auto emit = [&](std::uint64_t step) {
    result.bounds.lower = goal_mass;
    result.bounds.residual = std::max(0.0, 1.0 - processed_mass);
    result.bounds.upper = goal_mass + result.bounds.residual;
    result.bounds.processed = step;
    result.trace.push_back({step, result.bounds.lower, result.bounds.upper,
                            seconds_since(start)});
  };
  emit(0);

  std::uint64_t step = 0;
  for (const Candidate& candidate : survivors) {
    if (step >= budget.max_subproblems || seconds_since(start) > budget.max_seconds) break;

    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < cutset_vars.size(); ++i) {
      pairs.emplace_back(cutset_vars[i], candidate.values[i]);
    }
    std::vector<int> fixed = fixed_from_pairs(structure, pairs);

    double instance_mass = 0.0;
    double instance_goal = 0.0;
    std::vector<std::vector<double>> value_mass(structure.variable_count());
    for (int v = 0; v < structure.variable_count(); ++v) {
      value_mass[v].assign(structure.domain_size(v), 0.0);
    }
    for_each_constrained_world(structure, fixed, options, [&](std::span<const int> world) {
      double p = joint_probability(net, world);
      if (p == 0.0) return;
      instance_mass += p;
      if (world_satisfies(world, goal)) instance_goal += p;
      for (int v = 0; v < structure.variable_count(); ++v) value_mass[v][world[v]] += p;
    });

    result.instances[candidate.record].status = InstanceStatus::processed;
    result.instances[candidate.record].weight = instance_mass;
    processed_mass += instance_mass;
    goal_mass += instance_goal;
    for (int v = 0; v < structure.variable_count(); ++v) {
      auto& slot = result.approx_marginals[structure.variable(v).name];
      for (int value = 0; value < structure.domain_size(v); ++value) {
        slot[structure.variable(v).values[value]] += value_mass[v][value];
      }
    }
    emit(++step);
  }

  result.lm = loss_of_mass(result.approx_marginals);
  return result;
}

PooleSearchResult poole_search(const ProbNetwork& net, const Query& query, Epsilon eps,
                               const BudgetOptions& budget, SearchStrategy strategy) {
  const auto start = Clock::now();
  const NetworkStructure& structure = net.structure();
  ResolvedQuery resolved = resolve_query(structure, query);
  std::vector<std::pair<int, int>> goal = resolved.target;
  goal.insert(goal.end(), resolved.evidence.begin(), resolved.evidence.end());

  const std::vector<int> order = structure.topological_order_indices();
  const int n = structure.variable_count();
  std::vector<int> position_of(n);
  for (int i = 0; i < n; ++i) position_of[order[i]] = i;

  PooleSearchResult result;

  // Value masks and the clamped-sweep context for the pruning strategies.
  std::vector<std::vector<char>> allowed(n);
  for (int v = 0; v < n; ++v) allowed[v].assign(structure.domain_size(v), 1);
  std::optional<KappaNetwork> abstraction;
  if (strategy != SearchStrategy::none) {
    abstraction = epsilon_omp(net, eps).network;
    PlausibleSetMap plsets = predict(*abstraction).plsets;
    for (int v = 0; v < n; ++v) {
      for (int value = 0; value < structure.domain_size(v); ++value) {
        allowed[v][value] = plsets.contains(v, value);
      }
    }
    result.warnings.push_back(
        "pruning keeps its mass in the residual; the lower bound is informative only when "
        "the query mass exceeds eps");
  }

  struct Node {
    double mass = 1.0;
    std::uint64_t seq = 0;
    std::vector<int> values;  // values of order[0..depth)
  };
  struct NodeLess {
    bool operator()(const Node& a, const Node& b) const {
      if (a.mass != b.mass) return a.mass < b.mass;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Node, std::vector<Node>, NodeLess> queue;
  queue.push(Node{});
  double queue_mass = 1.0;
  double pruned_mass = 0.0;
  double goal_mass = 0.0;
  std::uint64_t seq = 0;
  std::uint64_t pops = 0;

  auto emit = [&](std::uint64_t step) {
    // Pruned prefixes stay in the residual: they were skipped, not
    // evaluated, so the envelope must keep covering their mass.
    double live = queue.empty() ? 0.0 : queue_mass;
    result.bounds.lower = goal_mass;
    result.bounds.residual = std::max(0.0, live + pruned_mass);
    result.bounds.upper = goal_mass + result.bounds.residual;
    result.bounds.processed = result.stats.leaves;
    result.stats.pruned_mass = pruned_mass;
    result.trace.push_back({step, result.bounds.lower, result.bounds.upper,
                            seconds_since(start)});
  };
  emit(0);

  std::vector<int> world(n);
  ClampSet clamps;
  while (!queue.empty()) {
    if (pops >= budget.max_subproblems || seconds_since(start) > budget.max_seconds) {
      break;
    }
    Node node = queue.top();
    queue.pop();
    queue_mass -= node.mass;
    ++pops;

    int depth = static_cast<int>(node.values.size());
    if (depth == n) {
      ++result.stats.leaves;
      for (int i = 0; i < n; ++i) world[order[i]] = node.values[i];
      if (world_satisfies(world, goal)) goal_mass += node.mass;
      emit(pops);
      continue;
    }
    ++result.stats.expansions;

    int v = order[depth];
    const ProbTable& table = net.table(v);
    std::vector<int> parent_values;
    for (int parent : table.parents) {
      // Topological order guarantees the parent is already instantiated.
      parent_values.push_back(node.values[position_of[parent]]);
    }
    std::size_t row = table_row_index(structure, table.parents, parent_values);

    for (int value = 0; value < structure.domain_size(v); ++value) {
      double p = node.mass * table.rows[row][value];
      if (p == 0.0) continue;  // zero-mass branch, never part of any bound
      if (!allowed[v][value]) {
        ++result.stats.pruned_values;
        pruned_mass += p;
        continue;
      }
      if (strategy == SearchStrategy::lookahead) {
        if (p < eps.value()) {
          ++result.stats.pruned_nodes;
          pruned_mass += p;
          continue;
        }
        clamps.clear();
        for (int i = 0; i < depth; ++i) {
          clamps[structure.variable(order[i]).name] =
              structure.variable(order[i]).values[node.values[i]];
        }
        clamps[structure.variable(v).name] = structure.variable(v).values[value];
        PlausibleSetMap clamped = predict(*abstraction, {}, {}, clamps).plsets;
        bool goal_plausible = true;
        for (const auto& [gv, gvalue] : goal) {
          if (!clamped.contains(gv, gvalue)) {
            goal_plausible = false;
            break;
          }
        }
        if (!goal_plausible) {
          ++result.stats.pruned_nodes;
          pruned_mass += p;
          continue;
        }
      }
      Node child;
      child.mass = p;
      child.seq = ++seq;
      child.values = node.values;
      child.values.push_back(value);
      queue_mass += child.mass;
      queue.push(std::move(child));
    }
    emit(pops);
  }

  return result;
}

}  // namespace kappanet
