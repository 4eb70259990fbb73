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

// Threshold queries: is the product of the stream strictly below a
// threshold that arrives as the first element?  Two exact algorithms:
// store every element, or keep the signed exponent of each prime up to 2^b.
// The second one stops tracking once so many factors of at most (B-1)/B
// arrived (B = 2^b) that the product must be below any threshold >= 1/B.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "probstream/automaton.h"
#include "probstream/bits.h"
#include "probstream/numerics.h"

namespace probstream {

enum class TppMode { store_all, prime_vector };

/// Largest b the prime-exponent algorithm accepts (it tracks pi(2^b) primes).
inline constexpr std::uint64_t kMaxPrimeVectorBits = 24;

class TppConfig {
 public:
  /// n bounds the elements after the threshold.  Throws std::invalid_argument
  /// on n = 0, b = 0, or b > kMaxPrimeVectorBits in prime_vector mode.
  static TppConfig make(std::uint64_t n, std::uint64_t b, TppMode mode);

  const StreamParameters& stream() const noexcept { return stream_; }
  TppMode mode() const noexcept { return mode_; }
  /// Primes up to 2^b (prime_vector mode only).
  const std::vector<std::uint64_t>& primes() const { return *primes_; }
  /// ceil(B ln B), the small factor count that triggers the early exit.
  const BigInt& exit_count() const noexcept { return exit_count_; }

 private:
  StreamParameters stream_;
  TppMode mode_ = TppMode::store_all;
  std::shared_ptr<const std::vector<std::uint64_t>> primes_;
  BigInt exit_count_;
};

/// ceil(2^b * ln 2^b), certified.
BigInt early_exit_count(std::uint64_t b);

/// Sparse prime -> exponent map.  Zero exponents are never stored.
class PrimeExponentVector {
 public:
  void add(std::uint64_t prime, const BigInt& delta);
  void add(const PrimeExponentVector& other);
  BigInt exponent(std::uint64_t prime) const;
  const std::map<std::uint64_t, BigInt>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  void clear() { entries_.clear(); }

  /// The product of p^e over positive exponents, and over negated negative ones.
  BigInt positive_part() const;
  BigInt negative_part() const;

  friend bool operator==(const PrimeExponentVector&, const PrimeExponentVector&) = default;

 private:
  std::map<std::uint64_t, BigInt> entries_;
};

/// Exponents of q = r/s over the primes; numerator primes count positive.
/// Throws std::invalid_argument for q = 0 or bit_size(q) > b.
PrimeExponentVector factor_over_primes(const Probability& q, std::uint64_t b);

struct ThresholdState {
  Probability threshold;
  std::vector<Probability> stored;   // store_all
  PrimeExponentVector vector;        // prime_vector
  BigInt small_factor_count = 0;
  std::uint64_t count = 0;           // elements after the threshold
  bool early_exit = false;
  bool saw_zero = false;

  friend bool operator==(const ThresholdState&, const ThresholdState&) = default;
};

/// Throws std::invalid_argument if the threshold has bit size above b.
ThresholdState tpp_init(const TppConfig& cfg, const Probability& threshold);

/// Throws std::length_error past n elements and std::invalid_argument for
/// oversized elements.
ThresholdState tpp_step(const TppConfig& cfg, const ThresholdState& state, const Probability& q);

/// Whether the product after the threshold is strictly below it.
bool tpp_decide(const TppConfig& cfg, const ThresholdState& state);

BitString tpp_serialize(const TppConfig& cfg, const ThresholdState& state);
ThresholdState tpp_deserialize(const TppConfig& cfg, const BitString& bits);

struct TppSpaceReport {
  std::uint64_t state_bits = 0;
  /// store_all: 2(n+1)b.
  std::uint64_t store_all_bound = 0;
  /// prime_vector: tracked primes, exponent magnitude bound n b, and the
  /// element count after which the algorithm stops tracking.
  std::uint64_t tracked_primes = 0;
  std::uint64_t exponent_bound = 0;
  BigInt effective_count_cap = 0;
};

TppSpaceReport tpp_space_report(const TppConfig& cfg, const ThresholdState& state);

/// Streams the threshold first, then the elements.  The state before the
/// threshold serializes to the empty string.
class TppAutomaton final : public DecisionAutomaton {
 public:
  explicit TppAutomaton(TppConfig cfg) : cfg_(std::move(cfg)) {}

  void step(const Probability& q) override;
  bool output() const override;
  BitString serialize_state() const override;
  void load_state(const BitString& bits) override;

  const std::optional<ThresholdState>& state() const noexcept { return state_; }
  const TppConfig& config() const noexcept { return cfg_; }

 private:
  TppConfig cfg_;
  std::optional<ThresholdState> state_;
};

DecisionFactory tpp_factory(const TppConfig& cfg);

}  // namespace probstream
