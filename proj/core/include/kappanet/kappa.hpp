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

#ifndef KAPPANET_KAPPA_HPP_
#define KAPPANET_KAPPA_HPP_

#include <cassert>
#include <compare>
#include <cstdint>
#include <string>

namespace kappanet {

// A ranking value: an integer degree of disbelief, or infinity for an
// impossible event.  Closed under addition and min with the sentinel rules
// inf + k = inf and min(inf, k) = k.
class Kappa {
 public:
  constexpr Kappa() = default;

  static constexpr Kappa finite(std::uint64_t n) {
    assert(n < kInfinity);
    return Kappa(n);
  }

  static constexpr Kappa infinity() { return Kappa(kInfinity); }

  constexpr bool is_infinite() const { return raw_ == kInfinity; }
  constexpr bool is_finite() const { return raw_ != kInfinity; }
  constexpr bool is_zero() const { return raw_ == 0; }

  // Finite magnitude; must not be called on the infinite value.
  constexpr std::uint64_t value() const {
    assert(is_finite());
    return raw_;
  }

  friend constexpr Kappa operator+(Kappa a, Kappa b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Kappa(a.raw_ + b.raw_);
  }

  Kappa& operator+=(Kappa other) {
    *this = *this + other;
    return *this;
  }

  friend constexpr Kappa min(Kappa a, Kappa b) { return a.raw_ < b.raw_ ? a : b; }

  // Infinity compares greater than every finite rank.
  friend constexpr auto operator<=>(Kappa a, Kappa b) = default;

  std::string to_string() const {
    return is_infinite() ? "inf" : std::to_string(raw_);
  }

 private:
  static constexpr std::uint64_t kInfinity = ~std::uint64_t{0};

  explicit constexpr Kappa(std::uint64_t raw) : raw_(raw) {}

  std::uint64_t raw_ = 0;
};

inline constexpr Kappa kappa_zero = Kappa::finite(0);

}  // namespace kappanet

#endif  // KAPPANET_KAPPA_HPP_
