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

// Hard instance families.
//
// Bucket streams: over a three-letter alphabet, for each j up to y a stream
// of length <= 2n whose product lands in ((1-eps)^(j+1), (1-eps)^j].  Taking
// every third (or fifth) bucket gives products no single output can
// approximate two of.
//
// Prime family: n blocks of B = 2^b ratios of consecutive primes.  The B^n
// words have pairwise distinct products, and each word has a suffix that
// brings its product exactly onto the threshold.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probstream/automaton.h"
#include "probstream/numerics.h"

namespace probstream {

using Stream = std::vector<Probability>;

/// Smallest k >= 3 with k <= 2^b and 1/k <= eps <= 1/(k-1).
/// Throws std::invalid_argument when there is none.
std::uint64_t choose_k(const Rational& epsilon, std::uint64_t b);

struct BucketStreamConfig {
  Rational epsilon;
  std::uint64_t b = 1;
  std::uint64_t n = 1;
  std::uint64_t k = 3;
  /// (k-1)/k, (k-2)/(k-1), 2^-b.
  Probability step_large;
  Probability step_small;
  Probability power_step;
  /// floor(n b / -log2(1 - eps)).
  BigInt y;

  Rational base() const { return 1 - epsilon; }
  std::vector<Probability> alphabet() const { return {step_large, step_small, power_step}; }
};

/// Throws std::invalid_argument naming the violated inequality unless
/// 2^-b <= eps and 2^b < (1 - eps)^-n.
BucketStreamConfig make_bucket_stream_config(const Rational& epsilon, std::uint64_t b,
                                             std::uint64_t n);

/// floor(j * -log2(1 - eps) / b): the number of leading 2^-b elements.
BigInt leading_power_count(const BucketStreamConfig& cfg, const BigInt& j);

/// A stream over the alphabet with product in bucket j of base 1 - eps.
/// Throws std::out_of_range unless 0 <= j <= y.
Stream gen_bucket_stream(const BucketStreamConfig& cfg, const BigInt& j);

struct FoolingStream {
  BigInt bucket;
  Stream stream;
  Rational product;
};

/// One stream for each bucket stride*j, j = 0..floor(y/stride).
std::vector<FoolingStream> gen_app_fooling_streams(const BucketStreamConfig& cfg,
                                                   std::uint64_t stride);

/// First pair i < j violating a_j/(1-eps) < (1-eps) a_i, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_separation_violation(
    const std::vector<FoolingStream>& streams, const Rational& epsilon);

/// A word of the prime family: choice[i] picks element choice[i] of block i.
using FamilyWord = std::vector<std::uint64_t>;

class PrimeFoolingFamily {
 public:
  /// Throws std::invalid_argument for n = 0, b = 0, b >= 32 or a
  /// nonpositive gamma.  Words are ranked only when B^n <= enumeration_cap.
  static PrimeFoolingFamily make(std::uint64_t n, std::uint64_t b, const Rational& gamma,
                                 std::uint64_t enumeration_cap = std::uint64_t{1} << 16);

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t b() const noexcept { return b_; }
  std::uint64_t block_size() const noexcept { return block_size_; }
  const Rational& gamma() const noexcept { return gamma_; }
  const PrimeTable& primes() const noexcept { return primes_; }
  const std::vector<std::vector<Probability>>& blocks() const noexcept { return blocks_; }
  const Probability& threshold() const noexcept { return threshold_; }
  const std::vector<Probability>& suffix_numbers() const noexcept { return suffix_numbers_; }

  /// Largest bit size of any threshold, block element or suffix element.
  std::uint64_t max_bit_size() const noexcept { return max_bit_size_; }
  /// Whether ceil(2 log2 p_last) <= (2 + gamma)(log2 n + b) holds.
  bool bit_gate_holds() const noexcept { return bit_gate_holds_; }

  /// B^n, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept { return size_; }
  bool enumerable() const noexcept { return !ranked_.empty(); }

  /// Word of the given rank; larger rank means strictly smaller product.
  /// Throws std::out_of_range for a bad rank and std::length_error when the
  /// family was too large to rank.
  Stream word(std::uint64_t rank) const;
  FamilyWord word_choice(std::uint64_t rank) const;
  Rational word_product(std::uint64_t rank) const;

  /// The elements s_i / r_i.  Throws std::invalid_argument if `word` is
  /// not in the family.
  Stream suffix(const Stream& word) const;

 private:
  std::uint64_t n_ = 0;
  std::uint64_t b_ = 0;
  std::uint64_t block_size_ = 0;
  Rational gamma_;
  PrimeTable primes_;
  std::vector<std::vector<Probability>> blocks_;
  Probability threshold_;
  std::vector<Probability> suffix_numbers_;
  std::uint64_t max_bit_size_ = 0;
  bool bit_gate_holds_ = false;
  std::uint64_t size_ = 0;
  std::vector<FamilyWord> ranked_;
  std::vector<Rational> ranked_products_;
};

PrimeFoolingFamily gen_prime_family(std::uint64_t n, std::uint64_t b, const Rational& gamma,
                                    std::uint64_t enumeration_cap = std::uint64_t{1} << 16);

struct FoolingVerdict {
  std::uint64_t pairs = 0;
  /// Pairs whose states after t u and t v serialize identically.
  std::uint64_t collisions = 0;
  /// Runs where the automaton answered the threshold query wrongly.
  std::uint64_t wrong_outputs = 0;
  std::uint64_t distinct_states = 0;
  std::uint64_t max_state_bits = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_collision;

  bool clean() const noexcept { return collisions == 0 && wrong_outputs == 0; }
};

/// For every pair of ranks u > v (so product(u) < product(v)), runs t u w_v
/// and t v w_v, where w_v is v's suffix, and the continuation starts from a
/// fresh automaton loaded with the serialized prefix state.
FoolingVerdict fooling_check(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                             std::uint64_t seed = 0);

}  // namespace probstream
