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

#include <doctest.h>

#include <cmath>

#include "kappanet/errors.hpp"
#include "kappanet/predict.hpp"
#include "kappanet/probinfer.hpp"
#include "kappanet/random_nets.hpp"

namespace kappanet {

namespace {

// Independent bracket search: the largest K with p <= eps^K, found by a
// linear scan from zero.
std::uint64_t scan_rank(double p, double eps) {
  std::uint64_t k = 0;
  while (std::pow(eps, static_cast<double>(k + 1)) >= p) ++k;
  return k;
}

}  // namespace

TEST_CASE("rank of boundary and interior probabilities") {
  Epsilon tenth(0.1);
  CHECK(probability_rank(0.99, tenth) == Kappa::finite(0));
  CHECK(probability_rank(0.05, tenth) == Kappa::finite(1));
  CHECK(probability_rank(0.0, tenth).is_infinite());
  CHECK(probability_rank(1.0, tenth) == Kappa::finite(0));
  // Upper bound is inclusive: p = eps^1 maps to 1.
  CHECK(probability_rank(0.5, Epsilon(0.5)) == Kappa::finite(1));
  CHECK(probability_rank(0.25, Epsilon(0.5)) == Kappa::finite(2));
}

TEST_CASE("epsilon domain is validated") {
  CHECK_THROWS_AS(Epsilon(0.0), ValidationError);
  CHECK_THROWS_AS(Epsilon(1.0), ValidationError);
  CHECK_THROWS_AS(Epsilon(-0.2), ValidationError);
  CHECK_THROWS_AS(probability_rank(1.5, Epsilon(0.5)), ValidationError);
}

TEST_CASE("bracketing against the scan oracle") {
  Rng rng(43);
  for (int i = 0; i < 20000; ++i) {
    double eps = 0.05 + 0.9 * rand_unit(rng);
    double p = std::pow(10.0, -9.0 * rand_unit(rng));  // (1e-9, 1]
    Kappa k = probability_rank(p, Epsilon(eps));
    REQUIRE(k.is_finite());
    CHECK(k.value() == scan_rank(p, eps));
    // The bracket itself, as computed.
    CHECK(p <= std::pow(eps, static_cast<double>(k.value())));
    CHECK(std::pow(eps, static_cast<double>(k.value() + 1)) < p);
  }
}

TEST_CASE("exact powers map to their exponent") {
  Rng rng(47);
  for (int i = 0; i < 2000; ++i) {
    double eps = 0.05 + 0.9 * rand_unit(rng);
    std::uint64_t exponent = rand_below(rng, 12);
    double p = std::pow(eps, static_cast<double>(exponent));
    CHECK(probability_rank(p, Epsilon(eps)) == Kappa::finite(exponent));
  }
}

TEST_CASE("ranking is antitone in the probability") {
  Rng rng(53);
  for (int i = 0; i < 5000; ++i) {
    double eps = 0.05 + 0.9 * rand_unit(rng);
    double p = rand_unit(rng);
    double q = rand_unit(rng);
    if (p == 0.0 || q == 0.0) continue;
    if (p > q) std::swap(p, q);
    CHECK(probability_rank(p, Epsilon(eps)) >= probability_rank(q, Epsilon(eps)));
  }
}

TEST_CASE("chain generator") {
  SUBCASE("length one is a bare root") {
    ProbNetwork net = generate_chain(1, Epsilon(0.25));
    CHECK(net.structure().variable_count() == 1);
    CHECK(net.table(0).rows[0][0] == doctest::Approx(0.75));
  }
  SUBCASE("the three-node marginal follows the two-state recursion") {
    ProbNetwork net = generate_chain(3, Epsilon(0.1));
    // p_k = p_{k-1}(1 - eps) + (1 - p_{k-1}) eps, p_1 = 0.9.
    double p = 0.9;
    for (int k = 2; k <= 3; ++k) p = p * 0.9 + (1.0 - p) * 0.1;
    CHECK(p == doctest::Approx(0.756).epsilon(1e-12));
    Query query;
    query.target = {{"x3", "t"}};
    CHECK(exact_query(net, query) == doctest::Approx(p).epsilon(1e-12));
  }
  SUBCASE("its abstraction at the same eps has the two-stratum pattern") {
    AbstractionResult result = epsilon_omp(generate_chain(3, Epsilon(0.1)), Epsilon(0.1));
    CHECK(result.shifted_rows.empty());
    const KappaNetwork& net = result.network;
    CHECK(net.table(0).rows[0][0].is_zero());            // x1 = t
    CHECK(net.table(0).rows[0][1] == Kappa::finite(1));  // x1 = f
    for (int v = 1; v < 3; ++v) {
      CHECK(net.table(v).rows[0][0].is_zero());
      CHECK(net.table(v).rows[0][1] == Kappa::finite(1));
      CHECK(net.table(v).rows[1][0] == Kappa::finite(1));
      CHECK(net.table(v).rows[1][1].is_zero());
    }
  }
}

TEST_CASE("AND generator") {
  SUBCASE("fan-in one") {
    ProbNetwork net = generate_and(1, Epsilon(0.1));
    Query query;
    query.target = {{"y", "t"}};
    CHECK(exact_query(net, query) == doctest::Approx(0.9).epsilon(1e-12));
  }
  SUBCASE("fan-in two is the product of independents") {
    Query query;
    query.target = {{"y", "t"}};
    CHECK(exact_query(generate_and(2, Epsilon(0.1)), query) ==
          doctest::Approx(0.81).epsilon(1e-12));
  }
  SUBCASE("the closed form matches enumeration at fan-in ten") {
    Query query;
    query.target = {{"y", "t"}};
    double enumerated = exact_query(generate_and(10, Epsilon(0.1)), query);
    CHECK(enumerated == doctest::Approx(std::pow(0.9, 10)).epsilon(1e-12));
  }
  SUBCASE("accumulation gap: plausible in the abstraction, below eps in fact") {
    // (1 - eps)^n sinks below eps while every local rank stays 0.
    double exact = std::pow(0.9, 22);
    CHECK(exact < 0.1);
    KappaNetwork abstraction = epsilon_omp(generate_and(22, Epsilon(0.1)), Epsilon(0.1)).network;
    PredictResult result = predict(abstraction);
    int y = abstraction.structure().require_variable("y");
    CHECK(result.plsets.contains(y, 0));
  }
}

TEST_CASE("rows whose minimum rank is positive are shifted back to zero") {
  // A uniform binary row at eps = 0.5 ranks both values 1.
  ProbNetwork net(
      NetworkStructure({{"x", {"t", "f"}}}, {}),
      {[] {
        ProbTable table;
        table.child = 0;
        table.rows = {{0.5, 0.5}};
        return table;
      }()});
  AbstractionResult result = epsilon_omp(net, Epsilon(0.5));
  REQUIRE(result.shifted_rows.size() == 1);
  CHECK(result.shifted_rows[0].child == "x");
  CHECK(result.shifted_rows[0].shift == 1);
  CHECK(result.network.table(0).rows[0][0].is_zero());
  CHECK(result.network.table(0).rows[0][1].is_zero());
}

TEST_CASE("generator argument validation") {
  CHECK_THROWS_AS(generate_chain(0, Epsilon(0.1)), ValidationError);
  CHECK_THROWS_AS(generate_and(0, Epsilon(0.1)), ValidationError);
}

}  // namespace kappanet
