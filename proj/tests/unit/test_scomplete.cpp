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

#include "kappanet/scomplete.hpp"

#include <doctest.h>

#include "kappanet/oracle.hpp"
#include "kappanet/random_nets.hpp"
#include "fixtures.hpp"

namespace kappanet {

TEST_CASE("isolate_loops") {
  SUBCASE("polytrees strip to nothing") {
    Rng rng(29);
    RandomNetOptions options;
    options.max_variables = 8;
    for (int i = 0; i < 10; ++i) {
      NetworkStructure s = random_polytree_structure(rng, options);
      CHECK(isolate_loops(s, {}).empty());
    }
  }
  SUBCASE("the diamond survives whole") {
    ReducedGraph reduced = isolate_loops(fixtures::d1().structure(), {});
    CHECK(reduced.nodes == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(reduced.edges.size() == 4);
    CHECK(reduced.roots() == std::vector<std::string>{"a"});
  }
  SUBCASE("removing the apex clears the diamond") {
    CHECK(isolate_loops(fixtures::d1().structure(), {"a"}).empty());
  }
}

TEST_CASE("the diamond is corrected in one stage") {
  KappaNetwork net = fixtures::d1();
  ScompleteResult result = scomplete(net);
  auto named = result.plsets.named(net.structure());
  CHECK(named.at("a") == std::vector<std::string>{"t", "f"});
  CHECK(named.at("b") == std::vector<std::string>{"t", "f"});
  CHECK(named.at("c") == std::vector<std::string>{"t", "f"});
  CHECK(named.at("d") == std::vector<std::string>{"t"});
  CHECK(result.plsets.provenance() == Provenance::complete_certified);
  REQUIRE(result.stages.size() == 1);
  CHECK(result.stages[0].blocking_set == std::vector<std::string>{"a"});
  CHECK(result.stages[0].sweeps == 2);
  CHECK_FALSE(result.capped);
}

TEST_CASE("polytrees finish in zero stages") {
  Rng rng(31);
  RandomNetOptions options;
  options.max_variables = 7;
  for (int i = 0; i < 15; ++i) {
    KappaNetwork net = random_polytree_kappa_network(rng, options);
    ScompleteResult result = scomplete(net);
    CHECK(result.stages.empty());
    CHECK(result.plsets.same_sets(predict(net).plsets));
    CHECK(result.plsets.provenance() == Provenance::complete_certified);
  }
}

TEST_CASE("a believed apex needs no stages") {
  KappaNetwork net = fixtures::d1_believed_apex();
  ScompleteResult result = scomplete(net);
  CHECK(result.stages.empty());
  CHECK(result.plsets.same_sets(predict(net).plsets));
}

TEST_CASE("agreement with the oracle on random cyclic networks") {
  Rng rng(37);
  RandomNetOptions options;
  options.max_variables = 7;
  options.require_cycle = true;
  for (int i = 0; i < 80; ++i) {
    KappaNetwork net = random_kappa_network(rng, options);
    PlausibleSetMap exact = exact_plausible_sets(net);
    ScompleteResult result = scomplete(net);
    REQUIRE_FALSE(result.capped);
    CHECK(result.plsets.same_sets(exact));

    // Stagewise: sound at every stage, and never looser than the stage
    // before.
    const PlausibleSetMap* previous = nullptr;
    for (const ScompleteStage& stage : result.stages) {
      CHECK(exact.subset_of(stage.plsets));
      if (previous) CHECK(stage.plsets.subset_of(*previous));
      previous = &stage.plsets;
    }
  }
}

TEST_CASE("evidence and actions pass through the stages") {
  Rng rng(41);
  RandomNetOptions options;
  options.max_variables = 6;
  options.require_cycle = true;
  for (int i = 0; i < 40; ++i) {
    KappaNetwork net = random_kappa_network(rng, options);
    const NetworkStructure& s = net.structure();

    // Force one variable, then observe one (possibly different) root of
    // the modified graph with a finitely-ranked value.
    int forced = static_cast<int>(rand_below(rng, s.variable_count()));
    ActionSet actions{{s.variable(forced).name, s.variable(forced).values[0]}};
    KappaNetwork modified = apply_actions(net, actions);

    Evidence evidence;
    std::vector<int> roots = modified.structure().roots();
    int root = roots[rand_below(rng, roots.size())];
    const KappaTable& table = modified.table(root);
    for (int value = 0; value < modified.structure().domain_size(root); ++value) {
      if (table.rows[0][value].is_finite()) {
        evidence[s.variable(root).name] = s.variable(root).values[value];
        break;
      }
    }

    ScompleteResult result = scomplete(net, evidence, actions);
    REQUIRE_FALSE(result.capped);
    CHECK(result.plsets.same_sets(exact_plausible_sets(modified, evidence)));
  }
}

TEST_CASE("the instantiation cap reports a sound partial result") {
  ScompleteOptions options;
  options.cs_instantiation_cap = 1;
  KappaNetwork net = fixtures::d1();
  ScompleteResult result = scomplete(net, {}, {}, options);
  CHECK(result.capped);
  CHECK(result.plsets.provenance() == Provenance::approximate);
  CHECK(exact_plausible_sets(net).subset_of(result.plsets));
}

}  // namespace kappanet
