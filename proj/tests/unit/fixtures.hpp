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

#ifndef KAPPANET_TESTS_FIXTURES_HPP_
#define KAPPANET_TESTS_FIXTURES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "kappanet/network.hpp"

namespace kappanet::fixtures {

struct KappaTableSpec {
  std::string child;
  std::vector<std::string> parents;
  // Rows in mixed-radix parent order (first parent slowest).
  std::vector<std::vector<Kappa>> rows;
};

inline KappaNetwork build_kappa(std::vector<Variable> variables,
                                std::vector<std::pair<std::string, std::string>> edges,
                                std::vector<KappaTableSpec> specs) {
  NetworkStructure structure(std::move(variables), std::move(edges));
  std::vector<KappaTable> tables;
  for (KappaTableSpec& spec : specs) {
    KappaTable table;
    table.child = structure.require_variable(spec.child);
    for (const std::string& p : spec.parents) table.parents.push_back(structure.require_variable(p));
    table.rows = std::move(spec.rows);
    tables.push_back(std::move(table));
  }
  return KappaNetwork(std::move(structure), std::move(tables));
}

inline Kappa K(std::uint64_t n) { return Kappa::finite(n); }
inline Kappa KInf() { return Kappa::infinity(); }

// Rain/sprinkler/wet: both causes implausible, wet only without any cause.
// Every variable ends up believed at its negative value.
inline KappaNetwork n1() {
  return build_kappa(
      {{"rain", {"t", "f"}}, {"sprinkler", {"t", "f"}}, {"wet", {"t", "f"}}},
      {{"rain", "wet"}, {"sprinkler", "wet"}},
      {
          {"rain", {}, {{K(1), K(0)}}},
          {"sprinkler", {}, {{K(1), K(0)}}},
          {"wet",
           {"rain", "sprinkler"},
           {{K(0), K(1)}, {K(0), K(1)}, {K(0), K(1)}, {K(2), K(0)}}},
      });
}

// Diamond a -> {b,c} -> d where b and c copy a and d indicates b == c.
// The sweep cannot see that b and c always agree, so it reports both
// values of d plausible although only d = t has rank zero.
inline KappaNetwork d1() {
  return build_kappa(
      {{"a", {"t", "f"}}, {"b", {"t", "f"}}, {"c", {"t", "f"}}, {"d", {"t", "f"}}},
      {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}},
      {
          {"a", {}, {{K(0), K(0)}}},
          {"b", {"a"}, {{K(0), K(1)}, {K(1), K(0)}}},
          {"c", {"a"}, {{K(0), K(1)}, {K(1), K(0)}}},
          {"d",
           {"b", "c"},
           {{K(0), K(1)}, {K(1), K(0)}, {K(1), K(0)}, {K(0), K(1)}}},
      });
}

// Same diamond with the apex believed; its outgoing edges block the loop.
inline KappaNetwork d1_believed_apex() {
  return build_kappa(
      {{"a", {"t", "f"}}, {"b", {"t", "f"}}, {"c", {"t", "f"}}, {"d", {"t", "f"}}},
      {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}},
      {
          {"a", {}, {{K(0), K(1)}}},
          {"b", {"a"}, {{K(0), K(1)}, {K(1), K(0)}}},
          {"c", {"a"}, {{K(0), K(1)}, {K(1), K(0)}}},
          {"d",
           {"b", "c"},
           {{K(0), K(1)}, {K(1), K(0)}, {K(1), K(0)}, {K(0), K(1)}}},
      });
}

// Two diamonds in series sharing no nodes: a feeds the first, its sink e
// feeds the second diamond's apex f.
inline NetworkStructure stacked_diamonds() {
  return NetworkStructure(
      {{"a", {"t", "f"}},
       {"b", {"t", "f"}},
       {"c", {"t", "f"}},
       {"e", {"t", "f"}},
       {"f", {"t", "f"}},
       {"g", {"t", "f"}},
       {"h", {"t", "f"}},
       {"i", {"t", "f"}}},
      {{"a", "b"},
       {"a", "c"},
       {"b", "e"},
       {"c", "e"},
       {"e", "f"},
       {"f", "g"},
       {"f", "h"},
       {"g", "i"},
       {"h", "i"}});
}

}  // namespace kappanet::fixtures

#endif  // KAPPANET_TESTS_FIXTURES_HPP_
