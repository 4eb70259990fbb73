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

#include "probstream/streaming.h"

#include <stdexcept>

namespace probstream {

AppConfig make_app_config(std::uint64_t n, std::uint64_t b, const Rational& epsilon) {
  const auto stream = StreamParameters::make(n, b);
  return AppConfig{stream, ApproxParams::make(epsilon, n)};
}

ProductApproxState app_init(const AppConfig&) { return ProductApproxState{}; }

ProductApproxState app_step(const AppConfig& cfg, const ProductApproxState& state,
                            const Probability& q) {
  if (state.count >= cfg.stream.n) {
    throw std::length_error("stream longer than n = " + std::to_string(cfg.stream.n));
  }
  cfg.stream.check_element(q);
  ProductApproxState next = state;
  next.count += 1;
  if (q.is_zero()) {
    next.saw_zero = true;
    return next;
  }
  if (q.is_one() || state.saw_zero) return next;
  const BucketIndex a = bucket_index(q, cfg.approx.base());
  next.index_sum += a.value;
  if (a.value > next.max_index) next.max_index = a.value;
  return next;
}

ProductApproxState app_run(const AppConfig& cfg, ProductApproxState state,
                           std::span<const Probability> stream) {
  for (const auto& q : stream) state = app_step(cfg, state, q);
  return state;
}

ProbabilityValue app_output(const AppConfig& cfg, const ProductApproxState& state) {
  if (state.saw_zero) return ProbabilityValue::exact(Rational(0));
  return bucket_boundary(state.index_sum, cfg.approx.base());
}

BitString app_serialize(const ProductApproxState& state) {
  BitString out;
  if (state.saw_zero) {
    out.push_back(false);
    return out;
  }
  out.append_minimal(state.index_sum);
  return out;
}

ProductApproxState app_deserialize(const BitString& bits) {
  ProductApproxState s;
  if (bits.size() == 1 && !bits[0]) {
    s.saw_zero = true;
    return s;
  }
  if (!bits.empty() && !bits[0]) throw std::invalid_argument("malformed product state");
  BitReader reader(bits);
  s.index_sum = reader.read_uint(bits.size());
  return s;
}

AppSpaceReport app_space_report(const AppConfig& cfg, const ProductApproxState& state) {
  AppSpaceReport r;
  r.state_bits = app_serialize(state).size();
  r.index_bits = bit_length(state.index_sum);
  const Rational nb = Rational(big(cfg.stream.n) * big(cfg.stream.b));
  r.element_index_bound = nb / cfg.approx.epsilon();
  r.sum_bound = r.element_index_bound * Rational(big(cfg.stream.n));
  r.formula_bound_bits = ceil_log2(r.sum_bound);
  r.within_bounds = Rational(state.index_sum) <= r.sum_bound &&
                    Rational(state.max_index) <= r.element_index_bound &&
                    static_cast<std::int64_t>(r.state_bits) <= r.formula_bound_bits;
  return r;
}

ApproxFactory app_factory(const AppConfig& cfg) {
  return [cfg](std::uint64_t) -> std::unique_ptr<ApproxAutomaton> {
    return std::make_unique<AppAutomaton>(cfg);
  };
}

}  // namespace probstream
