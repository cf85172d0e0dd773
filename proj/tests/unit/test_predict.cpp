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

#include "kappanet/predict.hpp"

#include <doctest.h>

#include "kappanet/errors.hpp"
#include "kappanet/oracle.hpp"
#include "kappanet/random_nets.hpp"
#include "fixtures.hpp"

namespace kappanet {

namespace {

using fixtures::K;
using fixtures::KInf;

std::vector<std::string> plset_of(const PredictResult& result, const NetworkStructure& s,
                                  const std::string& name) {
  return result.plsets.named(s).at(name);
}

}  // namespace

TEST_CASE("rain network: every node believed at its negative value") {
  KappaNetwork net = fixtures::n1();
  PredictResult result = predict(net);
  auto named = result.plsets.named(net.structure());
  CHECK(named.at("rain") == std::vector<std::string>{"f"});
  CHECK(named.at("sprinkler") == std::vector<std::string>{"f"});
  CHECK(named.at("wet") == std::vector<std::string>{"f"});

  auto believed = believed_nodes(result.plsets, net.structure());
  REQUIRE(believed.size() == 3);
  CHECK(believed[0] == std::pair<std::string, std::string>{"rain", "f"});
  CHECK(believed[2] == std::pair<std::string, std::string>{"wet", "f"});
}

TEST_CASE("diamond: the documented incompleteness") {
  KappaNetwork net = fixtures::d1();
  PredictResult result = predict(net);
  auto named = result.plsets.named(net.structure());
  // The sweep sees both values of d as plausible...
  CHECK(named.at("d") == std::vector<std::string>{"t", "f"});
  // ...although the exact semantics believe d.
  CHECK(exact_plausible_set(net, "d") == std::set<std::string>{"t"});
  CHECK(believed_nodes(result.plsets, net.structure()).empty());
}

TEST_CASE("single-root network") {
  KappaNetwork net =
      fixtures::build_kappa({{"x", {"t", "f"}}}, {}, {{"x", {}, {{K(0), K(2)}}}});
  PredictResult result = predict(net);
  CHECK(plset_of(result, net.structure(), "x") == std::vector<std::string>{"t"});
}

TEST_CASE("root evidence") {
  KappaNetwork net = fixtures::n1();

  SUBCASE("observing a surprising value renormalizes the root") {
    PredictResult result = predict(net, {{"rain", "t"}});
    auto named = result.plsets.named(net.structure());
    CHECK(named.at("rain") == std::vector<std::string>{"t"});
    // With rain observed, wet becomes plausible through the (t, f) row.
    CHECK(named.at("wet") == std::vector<std::string>{"t"});
  }

  SUBCASE("observing the already-plausible value is an intersection") {
    PredictResult result = predict(net, {{"rain", "f"}});
    CHECK(plset_of(result, net.structure(), "rain") == std::vector<std::string>{"f"});
  }

  SUBCASE("evidence on a non-root is rejected") {
    CHECK_THROWS_AS(predict(net, {{"wet", "t"}}), InferenceError);
  }

  SUBCASE("evidence with infinite rank is inconsistent") {
    KappaNetwork hard = fixtures::build_kappa({{"x", {"t", "f"}}}, {},
                                              {{"x", {}, {{K(0), KInf()}}}});
    CHECK_THROWS_AS(predict(hard, {{"x", "f"}}), InferenceError);
  }
}

TEST_CASE("actions make their targets evidencable roots") {
  KappaNetwork net = fixtures::n1();
  // wet is not a root, but after forcing it the graph has no edge into it.
  PredictResult result = predict(net, {{"wet", "t"}}, {{"wet", "t"}});
  auto named = result.plsets.named(net.structure());
  CHECK(named.at("wet") == std::vector<std::string>{"t"});
  CHECK(named.at("rain") == std::vector<std::string>{"f"});
}

TEST_CASE("clamps override tables and conflict with evidence") {
  KappaNetwork net = fixtures::d1();
  PredictResult result = predict(net, {}, {}, {{"a", "f"}});
  auto named = result.plsets.named(net.structure());
  CHECK(named.at("a") == std::vector<std::string>{"f"});
  CHECK(named.at("b") == std::vector<std::string>{"f"});
  CHECK(named.at("d") == std::vector<std::string>{"t"});

  KappaNetwork root = fixtures::build_kappa({{"x", {"t", "f"}}}, {},
                                            {{"x", {}, {{K(0), K(0)}}}});
  CHECK_THROWS_AS(predict(root, {{"x", "t"}}, {}, {{"x", "f"}}), InferenceError);
}

TEST_CASE("soundness against the oracle on random networks") {
  Rng rng(101);
  RandomNetOptions options;
  options.max_variables = 7;
  for (int i = 0; i < 100; ++i) {
    KappaNetwork net = random_kappa_network(rng, options);
    PlausibleSetMap exact = exact_plausible_sets(net);
    PredictResult result = predict(net);
    CHECK(exact.subset_of(result.plsets));
    for (int v = 0; v < net.structure().variable_count(); ++v) {
      CHECK(result.plsets.count(v) >= 1);
    }
  }
}

TEST_CASE("lookup counter is bounded by plausible-parent products") {
  Rng rng(55);
  RandomNetOptions options;
  options.max_variables = 7;
  for (int i = 0; i < 30; ++i) {
    KappaNetwork net = random_kappa_network(rng, options);
    const NetworkStructure& s = net.structure();
    PredictResult result = predict(net);
    std::uint64_t bound = 0;
    for (int v = 0; v < s.variable_count(); ++v) {
      std::uint64_t combinations = 1;
      for (int p : s.parents(v)) {
        combinations *= static_cast<std::uint64_t>(result.plsets.count(p));
      }
      bound += combinations * static_cast<std::uint64_t>(s.domain_size(v));
    }
    CHECK(result.ops.table_lookups <= bound);
    CHECK(result.ops.edge_visits == static_cast<std::uint64_t>(s.edge_count()));
  }
}

TEST_CASE("doubling a chain doubles the work") {
  auto chain = [](int n) {
    std::vector<Variable> vars;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<fixtures::KappaTableSpec> tables;
    for (int i = 0; i < n; ++i) {
      std::string name = "x" + std::to_string(i);
      vars.push_back({name, {"t", "f"}});
      if (i == 0) {
        tables.push_back({name, {}, {{K(0), K(1)}}});
      } else {
        std::string prev = "x" + std::to_string(i - 1);
        edges.emplace_back(prev, name);
        tables.push_back({name, {prev}, {{K(0), K(1)}, {K(1), K(0)}}});
      }
    }
    return fixtures::build_kappa(std::move(vars), std::move(edges), std::move(tables));
  };

  std::uint64_t small = predict(chain(40)).ops.total();
  std::uint64_t large = predict(chain(80)).ops.total();
  double ratio = static_cast<double>(large) / static_cast<double>(small);
  CHECK(ratio > 1.8);
  CHECK(ratio < 2.2);
}

}  // namespace kappanet
