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

#ifndef KAPPANET_NETWORK_HPP_
#define KAPPANET_NETWORK_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kappanet/kappa.hpp"

namespace kappanet {

// A discrete variable: a name plus an ordered list of at least two value
// labels.  Declaration order of variables and values is significant; all
// deterministic tie-breaking in the library follows it.
struct Variable {
  std::string name;
  std::vector<std::string> values;

  bool operator==(const Variable&) const = default;
};

// Directed acyclic graph over discrete variables.  The skeleton shared by
// kappa-quantified and probability-quantified networks.  Immutable after
// construction; construction validates name uniqueness, edge endpoints,
// duplicate edges, and acyclicity.
class NetworkStructure {
 public:
  NetworkStructure(std::vector<Variable> variables,
                   std::vector<std::pair<std::string, std::string>> edges);

  int variable_count() const { return static_cast<int>(variables_.size()); }
  const Variable& variable(int v) const { return variables_[v]; }
  const std::vector<Variable>& variables() const { return variables_; }

  // Index of a variable by name, or -1 when unknown.
  int index_of(std::string_view name) const;
  // Same, but throws ValidationError naming the offender.
  int require_variable(std::string_view name) const;

  int domain_size(int v) const { return static_cast<int>(variables_[v].values.size()); }
  int value_index(int v, std::string_view label) const;
  int require_value(int v, std::string_view label) const;

  // Edges as (parent, child) index pairs, in declaration order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<int>& parents(int v) const { return parents_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  bool is_root(int v) const { return parents_[v].empty(); }
  std::vector<int> roots() const;

  // Every parent precedes each of its children; ties broken by declaration
  // order, so the result is deterministic.
  std::vector<int> topological_order_indices() const;

  bool operator==(const NetworkStructure& other) const {
    return variables_ == other.variables_ && edges_ == other.edges_;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::map<std::string, int, std::less<>> index_;
};

// topological_order by variable name, for callers that speak names.
std::vector<std::string> topological_order(const NetworkStructure& structure);

// Conditional table for one child variable.  Rows are indexed by a
// mixed-radix encoding of the parent instantiation: the first parent in
// `parents` varies slowest.  Each row holds one entry per child value.
template <typename Entry>
struct ConditionalTable {
  int child = -1;
  std::vector<int> parents;
  std::vector<std::vector<Entry>> rows;

  bool operator==(const ConditionalTable&) const = default;
};

using KappaTable = ConditionalTable<Kappa>;
using ProbTable = ConditionalTable<double>;

std::size_t table_row_count(const NetworkStructure& structure, std::span<const int> parents);
std::size_t table_row_index(const NetworkStructure& structure, std::span<const int> parents,
                            std::span<const int> parent_values);
// Inverse of table_row_index; writes one value index per parent into `out`.
void table_row_assignment(const NetworkStructure& structure, std::span<const int> parents,
                          std::size_t row, std::vector<int>& out);

// Kappa-quantified network.  Construction validates that tables cover the
// graph (one per variable, parent sets equal graph parent sets, one row per
// parent instantiation) and that every row has minimum rank zero, which in
// turn guarantees at least one world of joint rank zero.
class KappaNetwork {
 public:
  KappaNetwork(NetworkStructure structure, std::vector<KappaTable> tables);

  const NetworkStructure& structure() const { return structure_; }
  const KappaTable& table(int v) const { return tables_[v]; }
  const std::vector<KappaTable>& tables() const { return tables_; }

  bool operator==(const KappaNetwork& other) const {
    return structure_ == other.structure_ && tables_ == other.tables_;
  }

 private:
  NetworkStructure structure_;
  std::vector<KappaTable> tables_;  // indexed by child variable
};

// Probability-quantified network; rows must sum to one within 1e-9.
class ProbNetwork {
 public:
  ProbNetwork(NetworkStructure structure, std::vector<ProbTable> tables);

  const NetworkStructure& structure() const { return structure_; }
  const ProbTable& table(int v) const { return tables_[v]; }
  const std::vector<ProbTable>& tables() const { return tables_; }

  bool operator==(const ProbNetwork& other) const {
    return structure_ == other.structure_ && tables_ == other.tables_;
  }

 private:
  NetworkStructure structure_;
  std::vector<ProbTable> tables_;
};

inline constexpr double kRowSumTolerance = 1e-9;

// Observed values, keyed by variable name.  For Predict-facing use every
// evidenced variable must be a root of the post-surgery graph; that is
// checked by predict(), not here.
using Evidence = std::map<std::string, std::string>;

// Forced values for actions and decisions, keyed by variable name.
using ActionSet = std::map<std::string, std::string>;

// Resolves a name-keyed partial assignment against a structure, throwing
// ValidationError on unknown variables or out-of-domain values.  Result is
// sorted by variable index.
std::vector<std::pair<int, int>> resolve_assignment(const NetworkStructure& structure,
                                                    const std::map<std::string, std::string>& assignment);

// Graph surgery for actions: each acted-on variable loses its incoming
// edges and its table becomes unconditional, ranking the forced value 0
// (probability 1) and every other value infinity (probability 0).
KappaNetwork apply_actions(const KappaNetwork& net, const ActionSet& actions);
ProbNetwork apply_actions(const ProbNetwork& net, const ActionSet& actions);

}  // namespace kappanet

#endif  // KAPPANET_NETWORK_HPP_
