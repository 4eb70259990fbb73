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

// Product of the last m elements.  Positions before the stream start count
// as 1.  The bucketed variant keeps one bucket index per position under base
// 1 - eps/m; the naive one keeps the elements themselves.

#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "probstream/automaton.h"
#include "probstream/bits.h"
#include "probstream/buckets.h"
#include "probstream/numerics.h"
#include "probstream/value.h"

namespace probstream {

struct WindowParams {
  std::uint64_t m = 1;
  std::uint64_t b = 1;
  ApproxParams approx;  // divisor = m

  /// Throws std::invalid_argument on m = 0, b = 0 or eps outside (0, 1/2].
  static WindowParams make(std::uint64_t m, std::uint64_t b, const Rational& epsilon);

  /// Width of one encoded slot: ceil(log2(2 m b / eps)).
  std::uint64_t slot_width() const;
};

struct WindowSlot {
  bool zero = false;
  BigInt index = 0;

  friend bool operator==(const WindowSlot&, const WindowSlot&) = default;
};

struct WindowState {
  std::vector<WindowSlot> slots;  // ring, slots[head] is the oldest
  std::size_t head = 0;
  BigInt index_sum = 0;
  std::uint64_t zero_count = 0;

  /// Slot contents from oldest to newest.
  std::vector<WindowSlot> ordered() const;
};

WindowState swapp_init(const WindowParams& params);
/// Throws std::invalid_argument for an element with bit size above b.
WindowState swapp_step(const WindowParams& params, const WindowState& state, const Probability& q);
/// 0 while a zero is inside the window, otherwise (1 - eps/m)^index_sum.
ProbabilityValue swapp_output(const WindowParams& params, const WindowState& state);

/// Each slot oldest first in slot_width() bits; a zero element is the
/// all-ones word, which no bucket index reaches.
BitString swapp_serialize(const WindowParams& params, const WindowState& state);
WindowState swapp_deserialize(const WindowParams& params, const BitString& bits);

struct WindowSpaceReport {
  std::uint64_t state_bits = 0;
  /// m * slot_width().
  std::uint64_t bound_bits = 0;
  /// m b / eps.
  Rational slot_index_bound;
  bool within_bounds = true;
};

WindowSpaceReport swapp_space_report(const WindowParams& params, const WindowState& state);

struct NaiveWindowState {
  std::deque<Probability> elements;  // exactly m, oldest first
};

NaiveWindowState swapp_naive_init(const WindowParams& params);
NaiveWindowState swapp_naive_step(const WindowParams& params, const NaiveWindowState& state,
                                  const Probability& q);
Rational swapp_naive_output(const NaiveWindowState& state);
/// 2b bits per element: the numerator and the denominator minus one.
BitString swapp_naive_serialize(const WindowParams& params, const NaiveWindowState& state);
NaiveWindowState swapp_naive_deserialize(const WindowParams& params, const BitString& bits);

class WindowAutomaton final : public ApproxAutomaton {
 public:
  explicit WindowAutomaton(WindowParams params)
      : params_(std::move(params)), state_(swapp_init(params_)) {}

  void step(const Probability& q) override { state_ = swapp_step(params_, state_, q); }
  ProbabilityValue output() const override { return swapp_output(params_, state_); }
  BitString serialize_state() const override { return swapp_serialize(params_, state_); }
  void load_state(const BitString& bits) override { state_ = swapp_deserialize(params_, bits); }

  const WindowState& state() const noexcept { return state_; }

 private:
  WindowParams params_;
  WindowState state_;
};

class NaiveWindowAutomaton final : public ApproxAutomaton {
 public:
  explicit NaiveWindowAutomaton(WindowParams params)
      : params_(std::move(params)), state_(swapp_naive_init(params_)) {}

  void step(const Probability& q) override { state_ = swapp_naive_step(params_, state_, q); }
  ProbabilityValue output() const override {
    return ProbabilityValue::exact(swapp_naive_output(state_));
  }
  BitString serialize_state() const override { return swapp_naive_serialize(params_, state_); }
  void load_state(const BitString& bits) override {
    state_ = swapp_naive_deserialize(params_, bits);
  }

 private:
  WindowParams params_;
  NaiveWindowState state_;
};

ApproxFactory window_factory(const WindowParams& params);
ApproxFactory naive_window_factory(const WindowParams& params);

}  // namespace probstream
