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

#include <doctest.h>

#include <cmath>

#include "kappanet/completeness.hpp"
#include "kappanet/errors.hpp"
#include "kappanet/predict.hpp"
#include "kappanet/random_nets.hpp"
#include "fixtures.hpp"

namespace kappanet {

namespace {

Query q(std::initializer_list<std::pair<std::string, std::string>> target,
        Evidence evidence = {}) {
  Query query;
  for (const auto& pair : target) query.target.push_back(pair);
  query.evidence = std::move(evidence);
  return query;
}

// Diamond-shaped probability network with strictly positive rows.
ProbNetwork diamond_prob() {
  NetworkStructure structure(
      {{"a", {"t", "f"}}, {"b", {"t", "f"}}, {"c", {"t", "f"}}, {"d", {"t", "f"}}},
      {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  std::vector<ProbTable> tables(4);
  tables[0] = {0, {}, {{0.6, 0.4}}};
  tables[1] = {1, {0}, {{0.9, 0.1}, {0.2, 0.8}}};
  tables[2] = {2, {0}, {{0.7, 0.3}, {0.35, 0.65}}};
  tables[3] = {3, {1, 2}, {{0.95, 0.05}, {0.4, 0.6}, {0.5, 0.5}, {0.05, 0.95}}};
  return ProbNetwork(std::move(structure), std::move(tables));
}

double brute_force(const ProbNetwork& net, const Query& query) {
  // Definition-level re-derivation over raw worlds.
  const NetworkStructure& s = net.structure();
  std::vector<int> world(s.variable_count(), 0);
  double joint = 0.0, evidence = 0.0;
  auto value_of = [&](const std::string& name) { return world[s.require_variable(name)]; };
  while (true) {
    double p = 1.0;
    for (int v = 0; v < s.variable_count(); ++v) {
      const ProbTable& table = net.table(v);
      std::vector<int> pv;
      for (int parent : table.parents) pv.push_back(world[parent]);
      p *= table.rows[table_row_index(s, table.parents, pv)][world[v]];
    }
    bool sat_e = true;
    for (const auto& [name, label] : query.evidence) {
      if (value_of(name) != s.require_value(s.require_variable(name), label)) sat_e = false;
    }
    if (sat_e) {
      evidence += p;
      bool sat_t = true;
      for (const auto& [name, label] : query.target) {
        if (value_of(name) != s.require_value(s.require_variable(name), label)) sat_t = false;
      }
      if (sat_t) joint += p;
    }
    int i = s.variable_count() - 1;
    for (; i >= 0; --i) {
      if (++world[i] < s.domain_size(i)) break;
      world[i] = 0;
    }
    if (i < 0) break;
  }
  return joint / evidence;
}

void check_trace(const std::vector<TraceRow>& trace, double exact, bool bracket_upper) {
  double previous_lower = -1.0;
  double previous_upper = 2.0;
  for (const TraceRow& row : trace) {
    CHECK(row.lower <= exact + 1e-9);
    if (bracket_upper) CHECK(row.upper >= exact - 1e-9);
    CHECK(row.lower >= previous_lower - 1e-12);
    CHECK(row.upper <= previous_upper + 1e-12);
    previous_lower = row.lower;
    previous_upper = row.upper;
  }
}

}  // namespace

TEST_CASE("query parsing") {
  Query query = parse_query("a=t,b=f");
  REQUIRE(query.target.size() == 2);
  CHECK(query.target[0] == std::pair<std::string, std::string>{"a", "t"});
  CHECK(query.target[1] == std::pair<std::string, std::string>{"b", "f"});
  CHECK_THROWS_AS(parse_query("a"), ValidationError);
  CHECK_THROWS_AS(parse_query("a=,b=t"), ValidationError);
  CHECK_THROWS_AS(parse_query(""), ValidationError);
}

TEST_CASE("exact queries") {
  SUBCASE("chain marginal") {
    ProbNetwork net = generate_chain(3, Epsilon(0.1));
    CHECK(exact_query(net, q({{"x3", "t"}})) == doctest::Approx(0.756).epsilon(1e-12));
  }
  SUBCASE("AND root product") {
    CHECK(exact_query(generate_and(2, Epsilon(0.1)), q({{"y", "t"}})) ==
          doctest::Approx(0.81).epsilon(1e-12));
  }
  SUBCASE("a root prior is its table entry") {
    CHECK(exact_query(diamond_prob(), q({{"a", "t"}})) == doctest::Approx(0.6));
  }
  SUBCASE("conditioning matches the definition") {
    ProbNetwork net = diamond_prob();
    Query query = q({{"d", "t"}}, {{"a", "f"}});
    CHECK(exact_query(net, query) == doctest::Approx(brute_force(net, query)).epsilon(1e-12));
  }
  SUBCASE("impossible evidence") {
    ProbNetwork net = generate_and(2, Epsilon(0.1));
    // y = t is impossible once a parent is false.
    CHECK_THROWS_AS(exact_query(net, q({{"x2", "t"}}, {{"x1", "f"}, {"y", "t"}})),
                    InferenceError);
  }
  SUBCASE("validation") {
    ProbNetwork net = diamond_prob();
    CHECK_THROWS_AS(exact_query(net, q({{"a", "t"}, {"a", "f"}})), ValidationError);
    CHECK_THROWS_AS(exact_query(net, q({{"a", "t"}}, {{"a", "f"}})), ValidationError);
    CHECK_THROWS_AS(exact_query(net, q({})), ValidationError);
  }
}

TEST_CASE("cutset construction") {
  SUBCASE("polytrees need no cutset") {
    Rng rng(61);
    RandomNetOptions options;
    options.max_variables = 8;
    for (int i = 0; i < 10; ++i) {
      CHECK(find_cutset(random_polytree_structure(rng, options)).empty());
    }
  }
  SUBCASE("the diamond cuts at its apex") {
    CHECK(find_cutset(fixtures::d1().structure()) == std::vector<std::string>{"a"});
  }
  SUBCASE("stacked diamonds cut at both apexes") {
    std::vector<std::string> cutset = find_cutset(fixtures::stacked_diamonds());
    CHECK(cutset.size() == 2);
    CHECK(check_complete(fixtures::stacked_diamonds(), cutset).complete);
  }
  SUBCASE("removal always passes the forest check") {
    Rng rng(67);
    RandomNetOptions options;
    options.max_variables = 10;
    for (int i = 0; i < 50; ++i) {
      NetworkStructure s = random_structure(rng, options);
      CHECK(check_complete(s, find_cutset(s)).complete);
    }
  }
}

TEST_CASE("loss of mass") {
  SUBCASE("complete distributions lose nothing") {
    LossOfMass lm = loss_of_mass({{"x", {{"t", 0.25}, {"f", 0.75}}}});
    CHECK(lm.per_variable.at("x") == doctest::Approx(0.0));
    CHECK(lm.average == doctest::Approx(0.0));
  }
  SUBCASE("partial maps report the gap") {
    LossOfMass lm = loss_of_mass({{"x", {{"t", 0.7}}}, {"y", {{"t", 0.4}, {"f", 0.4}}}});
    CHECK(lm.per_variable.at("x") == doctest::Approx(0.3));
    CHECK(lm.per_variable.at("y") == doctest::Approx(0.2));
    CHECK(lm.average == doctest::Approx(0.25));
  }
  SUBCASE("overweight variables are rejected") {
    CHECK_THROWS_AS(loss_of_mass({{"x", {{"t", 0.7}, {"f", 0.7}}}}), ValidationError);
  }
}

TEST_CASE("approximate value ranks agree with the sweep at rank zero") {
  Rng rng(71);
  RandomNetOptions options;
  options.max_variables = 7;
  for (int i = 0; i < 40; ++i) {
    KappaNetwork net = random_kappa_network(rng, options);
    std::vector<std::vector<Kappa>> ranks = approx_value_ranks(net);
    PlausibleSetMap plsets = predict(net).plsets;
    for (int v = 0; v < net.structure().variable_count(); ++v) {
      for (int value = 0; value < net.structure().domain_size(v); ++value) {
        CHECK(plsets.contains(v, value) == ranks[v][value].is_zero());
      }
    }
  }
}

TEST_CASE("bounded conditioning") {
  SUBCASE("polytree: the empty cutset collapses to the exact value") {
    ProbNetwork net = generate_chain(4, Epsilon(0.1));
    Query query = q({{"x4", "t"}});
    BoundedConditioningResult result = bounded_conditioning(net, query, Epsilon(1e-6));
    CHECK(result.cutset.empty());
    CHECK(result.instances.size() == 1);
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower == doctest::Approx(exact).epsilon(1e-9));
    CHECK(result.bounds.upper == doctest::Approx(exact).epsilon(1e-9));
    CHECK(result.lm.average == doctest::Approx(0.0));
  }

  SUBCASE("diamond with a tiny eps prunes nothing and is exact") {
    ProbNetwork net = diamond_prob();
    Query query = q({{"d", "t"}});
    BoundedConditioningResult result = bounded_conditioning(net, query, Epsilon(1e-9));
    CHECK(result.cutset == std::vector<std::string>{"a"});
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower == doctest::Approx(exact).epsilon(1e-9));
    CHECK(result.bounds.upper == doctest::Approx(exact).epsilon(1e-9));
    for (const CutsetInstance& instance : result.instances) {
      CHECK(instance.status == InstanceStatus::processed);
    }
    check_trace(result.trace, exact, true);
  }

  SUBCASE("pruned mass is accounted exactly") {
    // Condition the AND gate on its roots; at eps = 0.2 the f values rank 1
    // and every instance containing one is pruned.
    ProbNetwork net = generate_and(3, Epsilon(0.2));
    Query query = q({{"y", "t"}});
    BoundedConditioningResult result =
        bounded_conditioning(net, query, Epsilon(0.2), {}, {},
                             std::vector<std::string>{"x1", "x2", "x3"});
    std::uint64_t pruned = 0;
    double pruned_weight = 0.0;
    for (const CutsetInstance& instance : result.instances) {
      if (instance.status != InstanceStatus::pruned) continue;
      ++pruned;
      // Weight of the instance re-derived independently: product of root
      // priors.
      double w = 1.0;
      for (const std::string& value : instance.values) w *= value == "t" ? 0.8 : 0.2;
      pruned_weight += w;
    }
    CHECK(pruned == 7);
    CHECK(pruned_weight == doctest::Approx(1.0 - 0.8 * 0.8 * 0.8).epsilon(1e-12));
    CHECK(result.lm.average == doctest::Approx(pruned_weight).epsilon(1e-9));
    for (const auto& [variable, lost] : result.lm.per_variable) {
      CHECK(lost == doctest::Approx(pruned_weight).epsilon(1e-9));
    }
    // The envelope stays valid: pruned mass lives in the residual.
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower <= exact + 1e-9);
    CHECK(result.bounds.upper >= exact - 1e-9);
    CHECK(result.bounds.upper - result.bounds.lower ==
          doctest::Approx(pruned_weight).epsilon(1e-9));
  }

  SUBCASE("per-variable bracket") {
    ProbNetwork net = generate_and(3, Epsilon(0.2));
    BoundedConditioningResult result =
        bounded_conditioning(net, q({{"y", "t"}}), Epsilon(0.2), {}, {},
                             std::vector<std::string>{"x1", "x2", "x3"});
    for (const auto& [variable, masses] : result.approx_marginals) {
      for (const auto& [value, p] : masses) {
        double exact = exact_query(net, q({{variable, value}}));
        CHECK(p <= exact + 1e-9);
        CHECK(exact <= p + result.lm.per_variable.at(variable) + 1e-9);
      }
    }
  }

  SUBCASE("budget cuts off processing but keeps the envelope") {
    ProbNetwork net = diamond_prob();
    Query query = q({{"d", "t"}});
    BudgetOptions budget;
    budget.max_subproblems = 1;
    BoundedConditioningResult result = bounded_conditioning(net, query, Epsilon(1e-9), budget);
    CHECK(result.bounds.processed == 1);
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower <= exact + 1e-9);
    CHECK(result.bounds.upper >= exact - 1e-9);
    CHECK(result.bounds.upper - result.bounds.lower ==
          doctest::Approx(result.bounds.residual));
  }

  SUBCASE("instance order: rank strata first, declaration order on ties") {
    ProbNetwork net = diamond_prob();
    BudgetOptions budget;
    budget.max_subproblems = 1;
    BoundedConditioningResult result =
        bounded_conditioning(net, q({{"d", "t"}}), Epsilon(0.3), budget);
    // Both values of a survive at eps = 0.3 and tie at stratum zero, so
    // a = t runs first and happens to carry the larger weight.
    REQUIRE(result.instances.size() == 2);
    CHECK(result.instances[0].values == std::vector<std::string>{"t"});
    CHECK(result.instances[0].status == InstanceStatus::processed);
    CHECK(result.instances[0].weight == doctest::Approx(0.6));
    CHECK(result.instances[1].status == InstanceStatus::unprocessed);
  }
}

TEST_CASE("poole search") {
  SUBCASE("exhaustive search equals enumeration") {
    ProbNetwork net = diamond_prob();
    Query query = q({{"d", "t"}});
    PooleSearchResult result = poole_search(net, query, Epsilon(0.1));
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower == doctest::Approx(exact).epsilon(1e-9));
    CHECK(result.bounds.upper == doctest::Approx(exact).epsilon(1e-9));
    CHECK(result.stats.leaves == 16);
    check_trace(result.trace, exact, true);
  }

  SUBCASE("single-root network settles within domain-many expansions") {
    ProbNetwork net(NetworkStructure({{"x", {"a", "b", "c"}}}, {}),
                    {{0, {}, {{0.5, 0.3, 0.2}}}});
    Query query = q({{"x", "b"}});
    PooleSearchResult result = poole_search(net, query, Epsilon(0.1));
    CHECK(result.bounds.lower == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(result.bounds.upper == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(result.stats.expansions <= 3);
  }

  SUBCASE("preprune on the chain visits one leaf yet keeps the envelope") {
    ProbNetwork net = generate_chain(5, Epsilon(0.1));
    Query query = q({{"x5", "t"}});
    PooleSearchResult result =
        poole_search(net, query, Epsilon(0.1), {}, SearchStrategy::preprune);
    CHECK(result.stats.leaves < 32);
    CHECK(result.stats.leaves == 1);
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower <= exact + 1e-9);
    CHECK(result.bounds.upper >= exact - 1e-9);
    CHECK_FALSE(result.warnings.empty());
    check_trace(result.trace, exact, true);
  }

  SUBCASE("lookahead prunes at least as hard as preprune") {
    ProbNetwork net = diamond_prob();
    Query query = q({{"d", "t"}});
    PooleSearchResult preprune =
        poole_search(net, query, Epsilon(0.05), {}, SearchStrategy::preprune);
    PooleSearchResult lookahead =
        poole_search(net, query, Epsilon(0.05), {}, SearchStrategy::lookahead);
    CHECK(lookahead.stats.leaves <= preprune.stats.leaves);
    double exact = exact_query(net, query);
    CHECK(lookahead.bounds.lower <= exact + 1e-9);
    CHECK(lookahead.bounds.upper >= exact - 1e-9);
  }

  SUBCASE("budget exhaustion returns the envelope as-is") {
    ProbNetwork net = diamond_prob();
    Query query = q({{"d", "t"}});
    BudgetOptions budget;
    budget.max_subproblems = 3;
    PooleSearchResult result = poole_search(net, query, Epsilon(0.1), budget);
    double exact = exact_query(net, query);
    CHECK(result.bounds.lower <= exact + 1e-9);
    CHECK(result.bounds.upper >= exact - 1e-9);
    CHECK(result.bounds.upper - result.bounds.lower > 1e-6);
  }
}

TEST_CASE("anytime envelopes on random networks") {
  Rng rng(73);
  RandomProbOptions options;
  options.max_variables = 6;
  for (int i = 0; i < 25; ++i) {
    ProbNetwork net = random_prob_network(rng, options);
    const NetworkStructure& s = net.structure();
    int target = static_cast<int>(rand_below(rng, s.variable_count()));
    Query query = q({{s.variable(target).name, s.variable(target).values[0]}});
    double exact = exact_query(net, query);

    BoundedConditioningResult bounded = bounded_conditioning(net, query, Epsilon(0.15));
    check_trace(bounded.trace, exact, true);

    PooleSearchResult search = poole_search(net, query, Epsilon(0.15));
    check_trace(search.trace, exact, true);
    CHECK(search.bounds.lower == doctest::Approx(exact).epsilon(1e-9));

    PooleSearchResult pruned =
        poole_search(net, query, Epsilon(0.15), {}, SearchStrategy::preprune);
    check_trace(pruned.trace, exact, true);
  }
}

}  // namespace kappanet
