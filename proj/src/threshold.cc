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

#include "probstream/threshold.h"

#include <algorithm>
#include <stdexcept>

#include "probstream/certified.h"

namespace probstream {

BigInt early_exit_count(std::uint64_t b) {
  const BigInt B = pow2(b);
  auto c = certified::escalate([&](mpfr_prec_t p) -> std::optional<BigInt> {
    // B ln B = B * b * ln 2, irrational for b >= 1.
    const auto e = certified::mul(certified::ln2(p), BigInt(B * big(b)));
    return certified::ceil_if_certain(e);
  });
  if (!c) throw std::runtime_error("early exit count did not resolve");
  return *c;
}

TppConfig TppConfig::make(std::uint64_t n, std::uint64_t b, TppMode mode) {
  TppConfig cfg;
  cfg.stream_ = StreamParameters::make(n, b);
  cfg.mode_ = mode;
  if (mode == TppMode::prime_vector) {
    if (b > kMaxPrimeVectorBits) {
      throw std::invalid_argument("prime vector mode supports b <= " +
                                  std::to_string(kMaxPrimeVectorBits));
    }
    cfg.primes_ = std::make_shared<const std::vector<std::uint64_t>>(
        primes_up_to(std::uint64_t{1} << b));
    cfg.exit_count_ = early_exit_count(b);
  }
  return cfg;
}

void PrimeExponentVector::add(std::uint64_t prime, const BigInt& delta) {
  if (sgn(delta) == 0) return;
  auto [it, inserted] = entries_.try_emplace(prime, delta);
  if (inserted) return;
  it->second += delta;
  if (sgn(it->second) == 0) entries_.erase(it);
}

void PrimeExponentVector::add(const PrimeExponentVector& other) {
  for (const auto& [p, e] : other.entries_) add(p, e);
}

BigInt PrimeExponentVector::exponent(std::uint64_t prime) const {
  auto it = entries_.find(prime);
  return it == entries_.end() ? BigInt(0) : it->second;
}

namespace {

BigInt prime_power_product(const std::map<std::uint64_t, BigInt>& entries, int sign) {
  BigInt out = 1;
  for (const auto& [p, e] : entries) {
    if (sgn(e) != sign) continue;
    BigInt term;
    const BigInt mag = abs(e);
    mpz_ui_pow_ui(term.get_mpz_t(), p, mag.get_ui());
    out *= term;
  }
  return out;
}

void factor_into(std::uint64_t x, int sign, PrimeExponentVector& out) {
  for (std::uint64_t d = 2; d * d <= x; d += (d == 2 ? 1 : 2)) {
    std::uint64_t e = 0;
    while (x % d == 0) {
      x /= d;
      ++e;
    }
    if (e > 0) out.add(d, BigInt(sign) * big(e));
  }
  if (x > 1) out.add(x, BigInt(sign));
}

void append_fraction(BitString& out, const Probability& q, std::uint64_t b) {
  out.append_uint(q.numerator(), b);
  out.append_uint(q.denominator() - 1, b);
}

Probability read_fraction(BitReader& in, std::uint64_t b) {
  BigInt r = in.read_uint(b);
  BigInt s = in.read_uint(b) + 1;
  return Probability::make(r, s);
}

std::uint64_t exponent_width(const TppConfig& cfg) {
  return bit_length(big(cfg.stream().n) * big(cfg.stream().b)) + 1;
}

}  // namespace

BigInt PrimeExponentVector::positive_part() const { return prime_power_product(entries_, 1); }
BigInt PrimeExponentVector::negative_part() const { return prime_power_product(entries_, -1); }

PrimeExponentVector factor_over_primes(const Probability& q, std::uint64_t b) {
  if (q.is_zero()) throw std::invalid_argument("0 has no prime factorization");
  StreamParameters::make(1, b).check_element(q);
  if (b > 63) throw std::invalid_argument("factorization supports b <= 63");
  PrimeExponentVector v;
  factor_into(q.numerator().get_ui(), 1, v);
  factor_into(q.denominator().get_ui(), -1, v);
  return v;
}

ThresholdState tpp_init(const TppConfig& cfg, const Probability& threshold) {
  cfg.stream().check_element(threshold);
  ThresholdState s;
  s.threshold = threshold;
  return s;
}

ThresholdState tpp_step(const TppConfig& cfg, const ThresholdState& state, const Probability& q) {
  if (state.count >= cfg.stream().n) {
    throw std::length_error("stream longer than n = " + std::to_string(cfg.stream().n));
  }
  cfg.stream().check_element(q);
  ThresholdState next = state;
  next.count += 1;
  if (q.is_one()) return next;
  if (cfg.mode() == TppMode::store_all) {
    next.stored.push_back(q);
    if (q.is_zero()) next.saw_zero = true;
    return next;
  }
  if (next.saw_zero || next.early_exit) return next;
  if (q.is_zero()) {
    next.saw_zero = true;
    next.vector.clear();
    return next;
  }
  next.vector.add(factor_over_primes(q, cfg.stream().b));
  const BigInt B = pow2(cfg.stream().b);
  // q <= (B-1)/B
  if (q.numerator() * B <= (B - 1) * q.denominator()) {
    next.small_factor_count += 1;
    if (next.small_factor_count >= cfg.exit_count()) {
      next.early_exit = true;
      next.vector.clear();
    }
  }
  return next;
}

bool tpp_decide(const TppConfig& cfg, const ThresholdState& state) {
  const Probability& t = state.threshold;
  if (t.is_zero()) return false;
  if (state.saw_zero || state.early_exit) return true;
  BigInt num;
  BigInt den;
  if (cfg.mode() == TppMode::store_all) {
    const Rational p = exact_product(state.stored);
    num = p.get_num();
    den = p.get_den();
  } else {
    num = state.vector.positive_part();
    den = state.vector.negative_part();
  }
  return num * t.denominator() < t.numerator() * den;
}

BitString tpp_serialize(const TppConfig& cfg, const ThresholdState& state) {
  const std::uint64_t b = cfg.stream().b;
  BitString out;
  append_fraction(out, state.threshold, b);
  if (cfg.mode() == TppMode::store_all) {
    for (const auto& q : state.stored) append_fraction(out, q, b);
    return out;
  }
  out.push_back(state.saw_zero);
  out.push_back(state.early_exit);
  out.append_uint(state.small_factor_count, bit_length(cfg.exit_count()));
  const std::uint64_t width = exponent_width(cfg);
  for (std::uint64_t p : cfg.primes()) {
    const BigInt e = state.vector.exponent(p);
    out.push_back(sgn(e) < 0);
    out.append_uint(abs(e), width - 1);
  }
  return out;
}

ThresholdState tpp_deserialize(const TppConfig& cfg, const BitString& bits) {
  const std::uint64_t b = cfg.stream().b;
  BitReader in(bits);
  ThresholdState s;
  s.threshold = read_fraction(in, b);
  if (cfg.mode() == TppMode::store_all) {
    while (!in.done()) {
      s.stored.push_back(read_fraction(in, b));
      if (s.stored.back().is_zero()) s.saw_zero = true;
    }
    return s;
  }
  s.saw_zero = in.read_bit();
  s.early_exit = in.read_bit();
  s.small_factor_count = in.read_uint(bit_length(cfg.exit_count()));
  const std::uint64_t width = exponent_width(cfg);
  for (std::uint64_t p : cfg.primes()) {
    const bool negative = in.read_bit();
    BigInt e = in.read_uint(width - 1);
    s.vector.add(p, negative ? BigInt(-e) : e);
  }
  if (!in.done()) throw std::invalid_argument("trailing bits in threshold state");
  return s;
}

TppSpaceReport tpp_space_report(const TppConfig& cfg, const ThresholdState& state) {
  TppSpaceReport r;
  r.state_bits = tpp_serialize(cfg, state).size();
  r.store_all_bound = 2 * (cfg.stream().n + 1) * cfg.stream().b;
  r.exponent_bound = cfg.stream().n * cfg.stream().b;
  if (cfg.mode() == TppMode::prime_vector) {
    r.tracked_primes = cfg.primes().size();
    r.effective_count_cap = cfg.exit_count();
  }
  return r;
}

void TppAutomaton::step(const Probability& q) {
  if (!state_) {
    state_ = tpp_init(cfg_, q);
  } else {
    state_ = tpp_step(cfg_, *state_, q);
  }
}

bool TppAutomaton::output() const {
  if (!state_) throw std::logic_error("no threshold was streamed");
  return tpp_decide(cfg_, *state_);
}

BitString TppAutomaton::serialize_state() const {
  if (!state_) return BitString{};
  return tpp_serialize(cfg_, *state_);
}

void TppAutomaton::load_state(const BitString& bits) {
  if (bits.empty()) {
    state_.reset();
  } else {
    state_ = tpp_deserialize(cfg_, bits);
  }
}

DecisionFactory tpp_factory(const TppConfig& cfg) {
  return [cfg](std::uint64_t) -> std::unique_ptr<DecisionAutomaton> {
    return std::make_unique<TppAutomaton>(cfg);
  };
}

}  // namespace probstream
