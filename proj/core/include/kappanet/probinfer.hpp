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

#ifndef KAPPANET_PROBINFER_HPP_
#define KAPPANET_PROBINFER_HPP_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kappanet/abstraction.hpp"
#include "kappanet/network.hpp"
#include "kappanet/oracle.hpp"

namespace kappanet {

// A query: a conjunction of (variable, value) targets plus optional
// evidence.  exact_query conditions on the evidence; the anytime
// algorithms bound the joint mass of target and evidence together (the
// classic bounds are stated for unconditional queries).
struct Query {
  std::vector<std::pair<std::string, std::string>> target;
  Evidence evidence;
};

// Parses "var=val[,var=val]" into a conjunction of targets.
Query parse_query(const std::string& text);

// Exact conditional probability by enumeration of the factored joint.
// Desk-scale only; guarded by the oracle world cap.
double exact_query(const ProbNetwork& net, const Query& query,
                   const OracleOptions& options = {});

// Deterministic loop-cutset heuristic: grows a node set until removing its
// outgoing edges leaves no undirected cycle (verified with the spanning
// forest check).  Returns the set in selection order.
std::vector<std::string> find_cutset(const NetworkStructure& structure);

// Anytime envelope on a query probability.  For bounded conditioning,
// upper - lower always equals the unprocessed cutset-instance mass.
struct AnytimeBounds {
  double lower = 0.0;
  double upper = 1.0;
  std::uint64_t processed = 0;  // subproblems fully evaluated
  double residual = 1.0;        // probability mass not yet accounted for
};

struct TraceRow {
  std::uint64_t step = 0;
  double lower = 0.0;
  double upper = 1.0;
  double elapsed_sec = 0.0;
};

// Per-variable probability mass missing from a pruned computation, and its
// average: if a run returns P'(x) = p then p <= P(x) <= p + LM.
struct LossOfMass {
  std::map<std::string, double> per_variable;
  double average = 0.0;
};

// Lost mass of partial per-variable distributions.  Throws when a variable
// carries more than unit mass.
LossOfMass loss_of_mass(const std::map<std::string, std::map<std::string, double>>& approx);

struct BudgetOptions {
  std::uint64_t max_subproblems = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
};

enum class InstanceStatus { processed, pruned, unprocessed };

// One cutset instantiation; weight is P(w) once computed (NaN before).
struct CutsetInstance {
  std::vector<std::string> values;  // one per cutset node, in cutset order
  InstanceStatus status = InstanceStatus::unprocessed;
  double weight = std::numeric_limits<double>::quiet_NaN();
};

struct BoundedConditioningResult {
  std::vector<std::string> cutset;
  AnytimeBounds bounds;
  LossOfMass lm;
  std::vector<TraceRow> trace;
  std::vector<CutsetInstance> instances;
  std::map<std::string, std::map<std::string, double>> approx_marginals;
  std::vector<std::string> warnings;
};

// Bounded conditioning with rank-based pruning: abstracts the network at
// eps, runs the plausibility sweep, drops every cutset value outside its
// plausible set, orders the surviving instances by their estimated rank
// stratum (most probable first), and evaluates subproblems until the
// budget runs out.  Bounds follow the partial-sum envelope; pruned and
// unevaluated instances stay in the residual, so the envelope is always
// valid.
//
// The decomposition is correct for conditioning on any node set, so an
// explicit cutset may replace the heuristic one (useful to condition a
// singly connected network on its roots).
BoundedConditioningResult bounded_conditioning(
    const ProbNetwork& net, const Query& query, Epsilon eps, const BudgetOptions& budget = {},
    const OracleOptions& options = {},
    const std::optional<std::vector<std::string>>& cutset_override = std::nullopt);

// Pruning strategies for the search-based algorithm.  preprune drops child
// values implausible in the eps abstraction; lookahead additionally drops
// a partial instantiation when a clamped sweep reports the query target
// implausible or the prefix probability falls below eps.  Pruning can cut
// worlds that satisfy the query, so the upper bound is only trustworthy
// when the query mass exceeds eps; a warning records that caveat.
enum class SearchStrategy { none, preprune, lookahead };

struct SearchStats {
  std::uint64_t expansions = 0;      // interior nodes expanded
  std::uint64_t leaves = 0;          // complete worlds enumerated
  std::uint64_t pruned_values = 0;   // children dropped by value masks
  std::uint64_t pruned_nodes = 0;    // children dropped by lookahead
  double pruned_mass = 0.0;          // prefix mass cut from the search
};

struct PooleSearchResult {
  AnytimeBounds bounds;
  std::vector<TraceRow> trace;
  SearchStats stats;
  std::vector<std::string> warnings;
};

// Best-first search over variable instantiations in topological order.
// Lower bound: mass of enumerated worlds satisfying the query; upper
// bound: lower plus the residual, which keeps both the queue mass and any
// pruned prefix mass, so the envelope stays valid even when pruning cuts
// worlds that satisfy the query.
PooleSearchResult poole_search(const ProbNetwork& net, const Query& query, Epsilon eps,
                               const BudgetOptions& budget = {},
                               SearchStrategy strategy = SearchStrategy::none);

// Approximate per-value ranks from one min-sum sweep of the abstraction;
// the instance-ordering key for bounded conditioning.  Sound at rank zero
// (it reproduces the plausibility sweep) but magnitudes above zero are
// estimates.
std::vector<std::vector<Kappa>> approx_value_ranks(const KappaNetwork& net);

}  // namespace kappanet

#endif  // KAPPANET_PROBINFER_HPP_
