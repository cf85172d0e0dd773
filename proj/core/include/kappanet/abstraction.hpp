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

#ifndef KAPPANET_ABSTRACTION_HPP_
#define KAPPANET_ABSTRACTION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kappanet/network.hpp"

namespace kappanet {

// The stratification parameter: a real epsilon strictly between 0 and 1.
class Epsilon {
 public:
  explicit Epsilon(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// The rank of probability p: the unique integer K with
// eps^(K+1) < p <= eps^K.  p = 0 has no finite rank and maps to infinity.
Kappa probability_rank(double p, Epsilon eps);

// A table row whose minimum rank came out above zero and was shifted back
// down to zero.  Stratification at coarse epsilons produces such rows
// (e.g. a uniform binary row at eps = 0.5); the shift preserves the rank
// differences inside the row.
struct RowShift {
  std::string child;
  std::size_t row = 0;
  std::uint64_t shift = 0;
};

struct AbstractionResult {
  KappaNetwork network;
  std::vector<RowShift> shifted_rows;
};

// Order-of-magnitude abstraction of a probability network: every table
// entry is replaced by its rank at eps, then rows are re-normalized to
// minimum rank zero (reported in shifted_rows).
AbstractionResult epsilon_omp(const ProbNetwork& net, Epsilon eps);

// The error-analysis generators: a binary chain x1 -> ... -> xn with
// P(x1 = t) = 1 - eps, P(t|t) = 1 - eps, P(t|f) = eps, and an AND gate y
// over n independent binary roots with P(t) = 1 - eps.
ProbNetwork generate_chain(int length, Epsilon eps);
ProbNetwork generate_and(int fan_in, Epsilon eps);

}  // namespace kappanet

#endif  // KAPPANET_ABSTRACTION_HPP_
