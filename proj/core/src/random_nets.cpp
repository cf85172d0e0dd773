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

#include "kappanet/random_nets.hpp"

#include <algorithm>
#include <string>

#include "kappanet/completeness.hpp"

namespace kappanet {

std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  // Modulo bias is negligible for the small ranges used here and keeps the
  // stream identical across standard libraries.
  return rng() % n;
}

double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

std::vector<Variable> make_variables(Rng& rng, int count, int max_values) {
  static const char* kLabels[] = {"a", "b", "c", "d", "e", "f"};
  std::vector<Variable> variables;
  for (int i = 0; i < count; ++i) {
    int dom = 2 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(max_values - 1)));
    Variable var;
    var.name = "v" + std::to_string(i);
    for (int j = 0; j < dom; ++j) var.values.push_back(kLabels[j]);
    variables.push_back(std::move(var));
  }
  return variables;
}

bool has_cycle(const NetworkStructure& structure) {
  return !check_complete(structure, {}).complete;
}

NetworkStructure random_dag(Rng& rng, const RandomNetOptions& options) {
  int span = options.max_variables - options.min_variables + 1;
  int count = options.min_variables + static_cast<int>(rand_below(rng, span));
  std::vector<Variable> variables = make_variables(rng, count, options.max_values);

  std::vector<std::pair<std::string, std::string>> edges;
  for (int child = 1; child < count; ++child) {
    int available = std::min(child, options.max_parents);
    // Skew toward multiple parents so undirected cycles are common.
    int parents = static_cast<int>(rand_below(rng, available + 1));
    if (parents == 0 && rand_below(rng, 4) != 0) parents = 1;
    std::vector<int> pool(child);
    for (int i = 0; i < child; ++i) pool[i] = i;
    for (int k = 0; k < parents; ++k) {
      std::size_t pick = rand_below(rng, pool.size());
      std::swap(pool[pick], pool.back());
      edges.emplace_back(variables[pool.back()].name, variables[child].name);
      pool.pop_back();
    }
  }
  std::sort(edges.begin(), edges.end());
  return NetworkStructure(std::move(variables), std::move(edges));
}

// Random ranks with the row minimum forced back to zero.
void fill_normalized_row(Rng& rng, std::vector<Kappa>& row, const RandomNetOptions& options) {
  for (Kappa& k : row) {
    if (rand_unit(rng) < options.infinity_prob) {
      k = Kappa::infinity();
    } else {
      k = Kappa::finite(rand_below(rng, options.max_kappa + 1));
    }
  }
  Kappa lowest = Kappa::infinity();
  for (Kappa k : row) lowest = min(lowest, k);
  if (lowest.is_infinite()) {
    row[rand_below(rng, row.size())] = kappa_zero;
  } else if (!lowest.is_zero()) {
    for (Kappa& k : row) {
      if (k.is_finite()) k = Kappa::finite(k.value() - lowest.value());
    }
  }
}

template <typename MakeStructure, typename FillRow>
KappaNetwork random_kappa_like(Rng& rng, const RandomNetOptions& options,
                               MakeStructure&& make_structure, FillRow&& fill_row) {
  NetworkStructure structure = make_structure(rng, options);
  while (options.require_cycle && !has_cycle(structure)) {
    structure = make_structure(rng, options);
  }

  std::vector<KappaTable> tables;
  for (int v = 0; v < structure.variable_count(); ++v) {
    KappaTable table;
    table.child = v;
    table.parents = structure.parents(v);
    std::size_t rows = table_row_count(structure, table.parents);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Kappa> row(structure.domain_size(v));
      fill_row(rng, row);
      table.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(table));
  }
  return KappaNetwork(std::move(structure), std::move(tables));
}

}  // namespace

NetworkStructure random_structure(Rng& rng, const RandomNetOptions& options) {
  return random_dag(rng, options);
}

NetworkStructure random_polytree_structure(Rng& rng, const RandomNetOptions& options) {
  int span = options.max_variables - options.min_variables + 1;
  int count = options.min_variables + static_cast<int>(rand_below(rng, span));
  std::vector<Variable> variables = make_variables(rng, count, options.max_values);

  // A random tree skeleton with random edge orientation stays free of
  // undirected cycles no matter how the edges point.
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i < count; ++i) {
    int other = static_cast<int>(rand_below(rng, i));
    if (rand_below(rng, 2) == 0) {
      edges.emplace_back(variables[other].name, variables[i].name);
    } else {
      edges.emplace_back(variables[i].name, variables[other].name);
    }
  }
  std::sort(edges.begin(), edges.end());
  return NetworkStructure(std::move(variables), std::move(edges));
}

KappaNetwork random_kappa_network(Rng& rng, const RandomNetOptions& options) {
  return random_kappa_like(
      rng, options, [](Rng& r, const RandomNetOptions& o) { return random_dag(r, o); },
      [&options](Rng& r, std::vector<Kappa>& row) { fill_normalized_row(r, row, options); });
}

KappaNetwork random_polytree_kappa_network(Rng& rng, const RandomNetOptions& options) {
  RandomNetOptions adjusted = options;
  adjusted.require_cycle = false;
  return random_kappa_like(
      rng, adjusted,
      [](Rng& r, const RandomNetOptions& o) { return random_polytree_structure(r, o); },
      [&options](Rng& r, std::vector<Kappa>& row) { fill_normalized_row(r, row, options); });
}

KappaNetwork random_definite_kappa_network(Rng& rng, const RandomNetOptions& options) {
  return random_kappa_like(
      rng, options, [](Rng& r, const RandomNetOptions& o) { return random_dag(r, o); },
      [&options](Rng& r, std::vector<Kappa>& row) {
        std::size_t zero = rand_below(r, row.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i == zero) {
            row[i] = kappa_zero;
          } else if (rand_unit(r) < options.infinity_prob) {
            row[i] = Kappa::infinity();
          } else {
            row[i] = Kappa::finite(1 + rand_below(r, options.max_kappa));
          }
        }
      });
}

ProbNetwork random_prob_network(Rng& rng, const RandomProbOptions& options) {
  RandomNetOptions shape;
  shape.min_variables = options.min_variables;
  shape.max_variables = options.max_variables;
  shape.max_values = options.max_values;
  shape.max_parents = options.max_parents;
  shape.require_cycle = options.require_cycle;

  NetworkStructure structure = random_dag(rng, shape);
  while (shape.require_cycle && !has_cycle(structure)) {
    structure = random_dag(rng, shape);
  }

  std::vector<ProbTable> tables;
  for (int v = 0; v < structure.variable_count(); ++v) {
    ProbTable table;
    table.child = v;
    table.parents = structure.parents(v);
    std::size_t rows = table_row_count(structure, table.parents);
    std::size_t dom = static_cast<std::size_t>(structure.domain_size(v));
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> row(dom);
      if (rand_unit(rng) < options.extreme_row_prob) {
        std::size_t dominant = rand_below(rng, dom);
        double rest = 1.0 - options.dominant_mass;
        for (std::size_t i = 0; i < dom; ++i) {
          row[i] = dominant == i ? options.dominant_mass
                                 : rest / static_cast<double>(dom - 1);
        }
      } else {
        double sum = 0.0;
        for (double& p : row) {
          p = 0.05 + rand_unit(rng);
          sum += p;
        }
        for (double& p : row) p /= sum;
      }
      table.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(table));
  }
  return ProbNetwork(std::move(structure), std::move(tables));
}

}  // namespace kappanet
