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

#include "kappanet/abstraction.hpp"

#include <cmath>

#include "kappanet/errors.hpp"

namespace kappanet {

Epsilon::Epsilon(double value) : value_(value) {
  if (!(value > 0.0) || !(value < 1.0)) {
    throw ValidationError("epsilon must lie strictly between 0 and 1");
  }
}

Kappa probability_rank(double p, Epsilon eps) {
  if (p == 0.0) return Kappa::infinity();
  if (!(p > 0.0) || p > 1.0) {
    throw ValidationError("probability out of [0,1]");
  }
  const double e = eps.value();

  // Log-space candidate, snapped to the nearest integer when p sits on an
  // exact power of eps, then verified against the bracket directly so that
  // floating-point drift in the logarithm cannot misclassify a boundary.
  double scaled = std::log(p) / std::log(e);
  double nearest = std::round(scaled);
  std::int64_t k;
  if (std::abs(scaled - nearest) <= 1e-12 * std::max(1.0, std::abs(nearest))) {
    k = static_cast<std::int64_t>(nearest);
  } else {
    k = static_cast<std::int64_t>(std::floor(scaled));
  }
  if (k < 0) k = 0;

  while (!(p <= std::pow(e, static_cast<double>(k)))) --k;
  while (!(std::pow(e, static_cast<double>(k + 1)) < p)) ++k;
  return Kappa::finite(static_cast<std::uint64_t>(k));
}

AbstractionResult epsilon_omp(const ProbNetwork& net, Epsilon eps) {
  const NetworkStructure& structure = net.structure();
  std::vector<KappaTable> tables;
  std::vector<RowShift> shifts;
  tables.reserve(net.tables().size());

  for (const ProbTable& source : net.tables()) {
    KappaTable table;
    table.child = source.child;
    table.parents = source.parents;
    table.rows.reserve(source.rows.size());
    for (std::size_t r = 0; r < source.rows.size(); ++r) {
      std::vector<Kappa> row;
      row.reserve(source.rows[r].size());
      Kappa lowest = Kappa::infinity();
      for (double p : source.rows[r]) {
        Kappa k = probability_rank(p, eps);
        lowest = min(lowest, k);
        row.push_back(k);
      }
      // Rows must keep at least one rank-zero value; a row sums to 1, so
      // its minimum rank is always finite.
      if (!lowest.is_zero()) {
        for (Kappa& k : row) {
          if (k.is_finite()) k = Kappa::finite(k.value() - lowest.value());
        }
        shifts.push_back({structure.variable(source.child).name, r, lowest.value()});
      }
      table.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(table));
  }
  return {KappaNetwork(structure, std::move(tables)), std::move(shifts)};
}

ProbNetwork generate_chain(int length, Epsilon eps) {
  if (length < 1) throw ValidationError("chain length must be at least 1");
  const double e = eps.value();

  std::vector<Variable> variables;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= length; ++i) {
    variables.push_back({"x" + std::to_string(i), {"t", "f"}});
    if (i > 1) edges.emplace_back("x" + std::to_string(i - 1), "x" + std::to_string(i));
  }
  NetworkStructure structure(std::move(variables), std::move(edges));

  std::vector<ProbTable> tables;
  for (int v = 0; v < length; ++v) {
    ProbTable table;
    table.child = v;
    if (v == 0) {
      table.rows = {{1.0 - e, e}};
    } else {
      table.parents = {v - 1};
      table.rows = {{1.0 - e, e}, {e, 1.0 - e}};  // given parent t, then f
    }
    tables.push_back(std::move(table));
  }
  return ProbNetwork(std::move(structure), std::move(tables));
}

ProbNetwork generate_and(int fan_in, Epsilon eps) {
  if (fan_in < 1) throw ValidationError("fan-in must be at least 1");
  const double e = eps.value();

  std::vector<Variable> variables;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= fan_in; ++i) {
    variables.push_back({"x" + std::to_string(i), {"t", "f"}});
    edges.emplace_back("x" + std::to_string(i), "y");
  }
  variables.push_back({"y", {"t", "f"}});
  NetworkStructure structure(std::move(variables), std::move(edges));

  std::vector<ProbTable> tables;
  for (int v = 0; v < fan_in; ++v) {
    ProbTable table;
    table.child = v;
    table.rows = {{1.0 - e, e}};
    tables.push_back(std::move(table));
  }
  ProbTable gate;
  gate.child = fan_in;
  for (int v = 0; v < fan_in; ++v) gate.parents.push_back(v);
  std::size_t rows = table_row_count(structure, gate.parents);
  gate.rows.assign(rows, {0.0, 1.0});
  gate.rows[0] = {1.0, 0.0};  // the all-t instantiation is row 0
  tables.push_back(std::move(gate));
  return ProbNetwork(std::move(structure), std::move(tables));
}

}  // namespace kappanet
