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

// Product approximation over a stream of at most n probabilities of bit
// size at most b.  Each element is replaced by its bucket index under base
// 1 - eps/n and only the sum of indices is kept; the output is the base
// raised to that sum.

#include <cstdint>
#include <memory>
#include <span>

#include "probstream/automaton.h"
#include "probstream/bits.h"
#include "probstream/buckets.h"
#include "probstream/numerics.h"
#include "probstream/value.h"

namespace probstream {

struct AppConfig {
  StreamParameters stream;
  ApproxParams approx;  // divisor = stream.n
};

/// Throws std::invalid_argument for n = 0, b = 0 or eps outside (0, 1/2].
AppConfig make_app_config(std::uint64_t n, std::uint64_t b, const Rational& epsilon);

struct ProductApproxState {
  BigInt index_sum = 0;
  std::uint64_t count = 0;
  bool saw_zero = false;
  /// Largest single bucket index seen so far.  Bookkeeping only.
  BigInt max_index = 0;

  friend bool operator==(const ProductApproxState&, const ProductApproxState&) = default;
};

ProductApproxState app_init(const AppConfig& cfg);

/// Throws std::length_error once n elements were consumed and
/// std::invalid_argument for an element with bit size above b.
ProductApproxState app_step(const AppConfig& cfg, const ProductApproxState& state,
                            const Probability& q);

ProductApproxState app_run(const AppConfig& cfg, ProductApproxState state,
                           std::span<const Probability> stream);

/// 0 after a zero element, otherwise (1 - eps/n)^index_sum.
ProbabilityValue app_output(const AppConfig& cfg, const ProductApproxState& state);

/// The zero state is the single bit 0.  Any other state is the minimal
/// binary form of index_sum, which never starts with 0 and is empty for a
/// sum of 0.  count is not part of the memory.
BitString app_serialize(const ProductApproxState& state);
/// Inverse of app_serialize; count and max_index come back as 0.
ProductApproxState app_deserialize(const BitString& bits);

struct AppSpaceReport {
  std::uint64_t state_bits = 0;
  std::uint64_t index_bits = 0;
  /// ceil(log2(n^2 b / eps)).
  std::int64_t formula_bound_bits = 0;
  /// n b / eps and n^2 b / eps.
  Rational element_index_bound;
  Rational sum_bound;
  bool within_bounds = true;
};

AppSpaceReport app_space_report(const AppConfig& cfg, const ProductApproxState& state);

class AppAutomaton final : public ApproxAutomaton {
 public:
  explicit AppAutomaton(AppConfig cfg) : cfg_(std::move(cfg)), state_(app_init(cfg_)) {}

  void step(const Probability& q) override { state_ = app_step(cfg_, state_, q); }
  ProbabilityValue output() const override { return app_output(cfg_, state_); }
  BitString serialize_state() const override { return app_serialize(state_); }
  void load_state(const BitString& bits) override { state_ = app_deserialize(bits); }

  const ProductApproxState& state() const noexcept { return state_; }
  const AppConfig& config() const noexcept { return cfg_; }

 private:
  AppConfig cfg_;
  ProductApproxState state_;
};

ApproxFactory app_factory(const AppConfig& cfg);

}  // namespace probstream
