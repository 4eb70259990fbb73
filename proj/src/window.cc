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

#include "probstream/window.h"

#include <stdexcept>

namespace probstream {

WindowParams WindowParams::make(std::uint64_t m, std::uint64_t b, const Rational& epsilon) {
  if (m == 0) throw std::invalid_argument("window size m must be >= 1");
  if (b == 0) throw std::invalid_argument("bit size bound b must be >= 1");
  return WindowParams{m, b, ApproxParams::make(epsilon, m)};
}

std::uint64_t WindowParams::slot_width() const {
  const Rational bound = Rational(2 * big(m) * big(b)) / approx.epsilon();
  return static_cast<std::uint64_t>(ceil_log2(bound));
}

std::vector<WindowSlot> WindowState::ordered() const {
  std::vector<WindowSlot> out;
  out.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) out.push_back(slots[(head + i) % slots.size()]);
  return out;
}

WindowState swapp_init(const WindowParams& params) {
  WindowState s;
  s.slots.assign(params.m, WindowSlot{});
  return s;
}

WindowState swapp_step(const WindowParams& params, const WindowState& state,
                       const Probability& q) {
  StreamParameters{1, params.b}.check_element(q);
  WindowState next = state;
  WindowSlot& oldest = next.slots[next.head];
  if (oldest.zero) {
    next.zero_count -= 1;
  } else {
    next.index_sum -= oldest.index;
  }
  if (q.is_zero()) {
    oldest = WindowSlot{true, 0};
    next.zero_count += 1;
  } else {
    oldest = WindowSlot{false, q.is_one() ? BigInt(0) : bucket_index(q, params.approx.base()).value};
    next.index_sum += oldest.index;
  }
  next.head = (next.head + 1) % next.slots.size();
  return next;
}

ProbabilityValue swapp_output(const WindowParams& params, const WindowState& state) {
  if (state.zero_count > 0) return ProbabilityValue::exact(Rational(0));
  return bucket_boundary(state.index_sum, params.approx.base());
}

BitString swapp_serialize(const WindowParams& params, const WindowState& state) {
  const std::uint64_t w = params.slot_width();
  const BigInt sentinel = pow2(w) - 1;
  BitString out;
  for (const auto& slot : state.ordered()) {
    out.append_uint(slot.zero ? sentinel : slot.index, w);
  }
  return out;
}

WindowState swapp_deserialize(const WindowParams& params, const BitString& bits) {
  const std::uint64_t w = params.slot_width();
  const BigInt sentinel = pow2(w) - 1;
  if (bits.size() != params.m * w) throw std::invalid_argument("window state has the wrong length");
  BitReader in(bits);
  WindowState s = swapp_init(params);
  for (auto& slot : s.slots) {
    BigInt v = in.read_uint(w);
    if (v == sentinel) {
      slot = WindowSlot{true, 0};
      s.zero_count += 1;
    } else {
      slot = WindowSlot{false, v};
      s.index_sum += v;
    }
  }
  return s;
}

WindowSpaceReport swapp_space_report(const WindowParams& params, const WindowState& state) {
  WindowSpaceReport r;
  r.state_bits = swapp_serialize(params, state).size();
  r.bound_bits = params.m * params.slot_width();
  r.slot_index_bound = Rational(big(params.m) * big(params.b)) / params.approx.epsilon();
  r.within_bounds = r.state_bits <= r.bound_bits;
  for (const auto& slot : state.slots) {
    if (Rational(slot.index) > r.slot_index_bound) r.within_bounds = false;
  }
  return r;
}

NaiveWindowState swapp_naive_init(const WindowParams& params) {
  NaiveWindowState s;
  s.elements.assign(params.m, Probability::one());
  return s;
}

NaiveWindowState swapp_naive_step(const WindowParams& params, const NaiveWindowState& state,
                                  const Probability& q) {
  StreamParameters{1, params.b}.check_element(q);
  NaiveWindowState next = state;
  next.elements.pop_front();
  next.elements.push_back(q);
  return next;
}

Rational swapp_naive_output(const NaiveWindowState& state) {
  std::vector<Probability> v(state.elements.begin(), state.elements.end());
  return exact_product(v);
}

BitString swapp_naive_serialize(const WindowParams& params, const NaiveWindowState& state) {
  BitString out;
  for (const auto& q : state.elements) {
    out.append_uint(q.numerator(), params.b);
    out.append_uint(q.denominator() - 1, params.b);
  }
  return out;
}

NaiveWindowState swapp_naive_deserialize(const WindowParams& params, const BitString& bits) {
  if (bits.size() != 2 * params.m * params.b) {
    throw std::invalid_argument("naive window state has the wrong length");
  }
  BitReader in(bits);
  NaiveWindowState s;
  for (std::uint64_t i = 0; i < params.m; ++i) {
    BigInt r = in.read_uint(params.b);
    BigInt d = in.read_uint(params.b) + 1;
    s.elements.push_back(Probability::make(r, d));
  }
  return s;
}

ApproxFactory window_factory(const WindowParams& params) {
  return [params](std::uint64_t) -> std::unique_ptr<ApproxAutomaton> {
    return std::make_unique<WindowAutomaton>(params);
  };
}

ApproxFactory naive_window_factory(const WindowParams& params) {
  return [params](std::uint64_t) -> std::unique_ptr<ApproxAutomaton> {
    return std::make_unique<NaiveWindowAutomaton>(params);
  };
}

}  // namespace probstream
