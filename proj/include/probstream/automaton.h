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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "probstream/bits.h"
#include "probstream/numerics.h"
#include "probstream/value.h"

namespace probstream {

/// A streaming algorithm for one input slice: a current memory state, a
/// transition on each incoming probability, and an output function.  The
/// serialized state is the memory the algorithm keeps; load_state() must
/// accept anything serialize_state() produced for the same parameters.
template <typename Output>
class StreamingAutomaton {
 public:
  using output_type = Output;

  virtual ~StreamingAutomaton() = default;

  virtual void step(const Probability& q) = 0;
  virtual Output output() const = 0;
  virtual BitString serialize_state() const = 0;
  virtual void load_state(const BitString& state) = 0;

  void run(std::span<const Probability> stream) {
    for (const auto& q : stream) step(q);
  }
};

/// Builds an automaton in its initial state.  Randomized automata draw only
/// from a generator seeded with `seed`; deterministic ones ignore it.
template <typename Output>
using AutomatonFactory = std::function<std::unique_ptr<StreamingAutomaton<Output>>(std::uint64_t seed)>;

using ApproxAutomaton = StreamingAutomaton<ProbabilityValue>;
using DecisionAutomaton = StreamingAutomaton<bool>;
using ApproxFactory = AutomatonFactory<ProbabilityValue>;
using DecisionFactory = AutomatonFactory<bool>;

enum class AmplifierMode { median, majority };

struct AmplifierConfig {
  std::uint64_t copies = 1;
  AmplifierMode mode = AmplifierMode::median;
  /// The error target the copy count was chosen for.  Not used in computation.
  Rational target_error = Rational(1, 3);

  /// Throws std::invalid_argument for an even or zero copy count.
  void validate() const {
    if (copies == 0 || copies % 2 == 0) {
      throw std::invalid_argument("amplifier needs an odd number of copies");
    }
  }
};

/// Runs independent copies side by side and reports the median (values) or
/// majority (decisions) of their outputs.
template <typename Output>
class AmplifiedAutomaton final : public StreamingAutomaton<Output> {
 public:
  AmplifiedAutomaton(const AutomatonFactory<Output>& inner, AmplifierConfig cfg, std::uint64_t seed)
      : cfg_(cfg) {
    cfg_.validate();
    if constexpr (!std::is_same_v<Output, bool>) {
      if (cfg_.mode == AmplifierMode::majority) {
        throw std::invalid_argument("majority vote needs boolean outputs");
      }
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::vector<std::uint32_t> words(2 * cfg_.copies);
    seq.generate(words.begin(), words.end());
    copies_.reserve(cfg_.copies);
    for (std::uint64_t i = 0; i < cfg_.copies; ++i) {
      const std::uint64_t s = (std::uint64_t{words[2 * i]} << 32) | words[2 * i + 1];
      copies_.push_back(inner(s));
    }
  }

  void step(const Probability& q) override {
    for (auto& c : copies_) c->step(q);
  }

  Output output() const override {
    std::vector<Output> outs;
    outs.reserve(copies_.size());
    for (const auto& c : copies_) outs.push_back(c->output());
    if constexpr (std::is_same_v<Output, bool>) {
      // The median of booleans is the majority vote.
      const auto yes = std::count(outs.begin(), outs.end(), true);
      return static_cast<std::size_t>(yes) * 2 > outs.size();
    } else {
      auto mid = outs.begin() + static_cast<std::ptrdiff_t>(outs.size() / 2);
      std::nth_element(outs.begin(), mid, outs.end(), [](const Output& a, const Output& b) {
        return compare(a, b) == std::strong_ordering::less;
      });
      return *mid;
    }
  }

  /// Each copy's state, prefixed by its length in 32 bits.
  BitString serialize_state() const override {
    BitString out;
    for (const auto& c : copies_) {
      const BitString s = c->serialize_state();
      out.append_uint(big(s.size()), 32);
      out.append(s);
    }
    return out;
  }

  void load_state(const BitString& state) override {
    BitReader reader(state);
    for (auto& c : copies_) {
      const auto len = reader.read_u64(32);
      BitString part;
      for (std::uint64_t i = 0; i < len; ++i) part.push_back(reader.read_bit());
      c->load_state(part);
    }
    if (!reader.done()) throw std::invalid_argument("trailing bits in amplified state");
  }

 private:
  AmplifierConfig cfg_;
  std::vector<std::unique_ptr<StreamingAutomaton<Output>>> copies_;
};

/// Wraps a factory so that each built automaton is an amplified ensemble.
template <typename Output>
AutomatonFactory<Output> amplify(AutomatonFactory<Output> inner, AmplifierConfig cfg) {
  cfg.validate();
  return [inner = std::move(inner), cfg](std::uint64_t seed) {
    return std::unique_ptr<StreamingAutomaton<Output>>(
        std::make_unique<AmplifiedAutomaton<Output>>(inner, cfg, seed));
  };
}

}  // namespace probstream
