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

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace probstream {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

/// Number of binary digits of x; 0 for x = 0. x must be nonnegative.
std::uint64_t bit_length(const BigInt& x);

/// ⌈log2 x⌉ computed exactly for an integer x >= 1 (0 for x = 1).
std::uint64_t ceil_log2(const BigInt& x);

/// Smallest integer w with 2^w >= x, for a rational x > 0. May be negative.
std::int64_t ceil_log2(const Rational& x);

/// 2^e as an exact integer.
BigInt pow2(std::uint64_t e);

/// x^e for a rational x, computed by exact repeated squaring on numerator and
/// denominator independently.  Negative exponents invert x (x must be nonzero).
Rational pow(const Rational& x, std::int64_t e);

/// Renders a rational as "r/s" (always with a denominator, "0/1" for zero).
std::string to_string(const Rational& x);

/// Parses "r/s" with nonnegative decimal digits on both sides (s >= 1).
/// Throws std::invalid_argument on anything else, including "0.5".
Rational parse_fraction(const std::string& text);

/// A reduced fraction r/s with 0 <= r <= s and s >= 1.
class Probability {
 public:
  /// Zero, stored canonically as 0/1.
  Probability() = default;

  /// Throws std::invalid_argument when s = 0 or r > s.
  static Probability make(const BigInt& r, const BigInt& s);
  /// Throws std::invalid_argument when x lies outside [0, 1].
  static Probability from_rational(const Rational& x);
  static Probability one();

  const Rational& value() const noexcept { return value_; }
  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  std::string to_string() const;

  friend bool operator==(const Probability& a, const Probability& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Probability& a,
                                          const Probability& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  explicit Probability(Rational v) : value_(std::move(v)) {}

  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const Probability& q);

/// max(⌈log2 r⌉, ⌈log2 s⌉) for the reduced fraction; 0 for zero.
std::uint64_t bit_size(const Probability& q);
std::uint64_t bit_size(const Rational& x);

/// Maximum stream length n and maximum per-element bit size b.
struct StreamParameters {
  std::uint64_t n = 1;
  std::uint64_t b = 1;

  /// Throws std::invalid_argument unless n >= 1 and b >= 1.
  static StreamParameters make(std::uint64_t n, std::uint64_t b);

  /// Throws std::invalid_argument if bit_size(q) > b.
  void check_element(const Probability& q) const;
};

/// The first K primes in ascending order, addressed 1-based as p_1 = 2.
class PrimeTable {
 public:
  PrimeTable() = default;
  explicit PrimeTable(std::vector<std::uint64_t> primes);

  std::size_t size() const noexcept { return primes_.size(); }
  /// p_k for 1 <= k <= size(); throws std::out_of_range otherwise.
  std::uint64_t nth(std::size_t k) const;
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }

 private:
  std::vector<std::uint64_t> primes_;
};

/// Exactly `count` primes starting at 2. The sieve limit comes from
/// p_k <= k(ln k + ln ln k) (k >= 6) plus a safety margin.
PrimeTable first_primes(std::size_t count);

/// All primes p <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Certified check of p <= k(ln k + ln ln k) for k >= 6.
bool prime_bound_holds(std::uint64_t k, std::uint64_t p);

/// Exact reduced product of the stream; the empty product is 1.
Rational exact_product(std::span<const Probability> stream);

}  // namespace probstream
