/*
 * Copyright 2026 The probstream Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "probstream/certified.h"
#include "probstream/numerics.h"

namespace probstream {

/// Exact powers whose numerator or denominator would exceed this many bits
/// are refused; callers fall back to decimal rendering.
inline constexpr std::uint64_t kExactPowerBitCap = std::uint64_t{1} << 20;

/// A value in [0, 1] held either as an exact rational or symbolically as
/// base^exponent with base in (0, 1) and exponent >= 0.  The symbolic form
/// lets approximation outputs such as (1 - 1e-6)^(10^11) be compared,
/// bucketed and rendered without materializing them.
class ProbabilityValue {
 public:
  ProbabilityValue() = default;

  static ProbabilityValue exact(Rational x);
  static ProbabilityValue power(Rational base, BigInt exponent);

  bool is_zero() const;
  bool is_power() const noexcept { return is_power_; }

  /// The exact rational; for a power form only when it fits under `bit_cap`.
  /// Throws std::overflow_error when it does not.
  Rational to_exact(std::uint64_t bit_cap = kExactPowerBitCap) const;
  bool fits_exact(std::uint64_t bit_cap = kExactPowerBitCap) const;

  /// Only meaningful for power forms.
  const Rational& base() const noexcept { return base_; }
  const BigInt& exponent() const noexcept { return exponent_; }

  /// Enclosure of ln(value); the value must be nonzero.
  certified::Enclosure ln(mpfr_prec_t precision) const;

  /// Correctly rounded decimal with `digits` significant digits.
  std::string decimal(int digits) const;

  /// "r/s" for exact values, "(r/s)^e" for power forms.
  std::string to_string() const;

 private:
  bool is_power_ = false;
  Rational exact_;  // zero by default
  Rational base_;
  BigInt exponent_;
};

/// Total order on values, certified by interval arithmetic with an exact
/// fallback on ties.
std::strong_ordering compare(const ProbabilityValue& x, const ProbabilityValue& y);
std::strong_ordering compare(const ProbabilityValue& x, const Rational& y);

/// x > t * y for y > 0.
bool ratio_exceeds(const ProbabilityValue& x, const ProbabilityValue& y, const Rational& t);

/// (1 - eps) * p < x < p / (1 - eps), for p > 0.
bool within_band(const ProbabilityValue& x, const Rational& p, const Rational& eps);

}  // namespace probstream
