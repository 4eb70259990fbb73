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

// One-way protocols built from streaming automata.  Alice runs the
// automaton on her part and sends the serialized state; Bob sees only that
// message and his own input.  The alice_* / bob_* split keeps it that way.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "probstream/adversary.h"
#include "probstream/automaton.h"
#include "probstream/bits.h"
#include "probstream/buckets.h"
#include "probstream/numerics.h"

namespace probstream {

struct ProtocolTranscript {
  std::string protocol;
  std::string alice_input;
  std::string bob_input;
  BitString message;
  std::vector<std::string> bob_outputs;
  bool decision = false;
  bool expected = false;
  std::vector<std::pair<std::string, std::string>> details;

  std::uint64_t message_bits() const noexcept { return message.size(); }
  bool correct() const noexcept { return decision == expected; }
  /// One line, space separated key=value pairs.
  std::string to_log_line() const;
};

// Greater-than from product approximation.  Indices run over buckets
// 0, 5, 10, ... of base 1 - eps; the automaton must accept streams of length
// 2n (the bucket streams' length bound).

struct GtAppInstance {
  BucketStreamConfig streams;
  std::vector<FoolingStream> fooling;  // stride 5

  std::uint64_t max_index() const { return fooling.size() - 1; }
};

GtAppInstance make_gt_app_instance(const Rational& epsilon, std::uint64_t b, std::uint64_t n);

BitString gt_app_alice(const ApproxFactory& factory, const GtAppInstance& inst, std::uint64_t i,
                       std::uint64_t seed);

struct GtAppBobResult {
  ProbabilityValue alice_value;
  ProbabilityValue bob_value;
  BigInt alice_bucket;
  BigInt bob_bucket;
  bool decision = false;
};

/// Declares i > j iff bucket(r_i) - bucket(r_j) >= 3 under base 1 - eps.
GtAppBobResult gt_app_bob(const ApproxFactory& factory, const GtAppInstance& inst,
                          const BitString& message, std::uint64_t j, std::uint64_t seed);

/// Throws std::out_of_range for an index above max_index().
ProtocolTranscript gt_from_app(const ApproxFactory& factory, const GtAppInstance& inst,
                               std::uint64_t i, std::uint64_t j, std::uint64_t seed = 0);

// Greater-than from the threshold problem over the prime family.

BitString gt_tpp_alice(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                       std::uint64_t i, std::uint64_t seed);
bool gt_tpp_bob(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                const BitString& message, std::uint64_t j, std::uint64_t seed);

/// Ranks run 1..B^n.  Throws std::out_of_range otherwise.
ProtocolTranscript gt_from_tpp(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                               std::uint64_t i, std::uint64_t j, std::uint64_t seed = 0);

// Index-greater-than from the sliding window.

struct IgtReductionConfig {
  Rational epsilon;
  std::uint64_t m = 1;
  std::uint64_t b = 1;
  /// Smallest integer with 2^alpha >= (1 - eps)^-4, i.e. ceil(4 delta).
  std::uint64_t alpha = 1;
  /// floor(b / alpha).
  std::uint64_t c = 1;
  /// 2^(-i alpha) for i = 0..c-1.
  std::vector<Probability> alphabet;
};

/// Throws std::invalid_argument if b < alpha (empty alphabet).
IgtReductionConfig make_igt_config(const Rational& epsilon, std::uint64_t m, std::uint64_t b);

BitString igt_alice(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                    const std::vector<Probability>& word, std::uint64_t seed);

struct IgtBobResult {
  ProbabilityValue kept;     // window a_i .. a_m
  ProbabilityValue shifted;  // window a_(i+1) .. a_m a
  bool decision = false;
};

/// Declares a_i > a iff kept / shifted > 1/(1 - eps)^2.
IgtBobResult igt_bob(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                     const BitString& message, std::uint64_t index, const Probability& a,
                     std::uint64_t seed);

/// Throws std::invalid_argument for letters outside the alphabet or a word
/// of the wrong length, std::out_of_range for an index outside 1..m.
ProtocolTranscript igt_from_swapp(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                                  const std::vector<Probability>& word, std::uint64_t index,
                                  const Probability& a, std::uint64_t seed = 0);

struct SweepReport {
  std::string protocol;
  std::uint64_t instances = 0;
  std::uint64_t correct = 0;
  /// gt-app only: every measured bucket distance matched its case.
  bool trichotomy_holds = true;
  std::uint64_t max_message_bits = 0;
  double mean_message_bits = 0;
  /// log2(floor(y/5) + 1), n b, or m log2 c.  Display only.
  double reference_bits = 0;
  std::string reference_name;
  std::vector<std::string> failures;

  bool all_correct() const noexcept { return correct == instances && trichotomy_holds; }
};

SweepReport gt_app_sweep(const ApproxFactory& factory, const GtAppInstance& inst,
                         std::uint64_t seed = 0);
SweepReport gt_tpp_sweep(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                         std::uint64_t seed = 0);
SweepReport igt_sweep(const ApproxFactory& factory, const IgtReductionConfig& cfg,
                      std::uint64_t seed = 0);

}  // namespace probstream
