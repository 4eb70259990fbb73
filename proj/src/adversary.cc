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

#include "probstream/adversary.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "probstream/buckets.h"
#include "probstream/certified.h"

namespace probstream {

namespace {

// Enclosure of -ln(1 - eps) * scale / (divisor * ln 2), i.e. scale * delta / divisor.
certified::Enclosure scaled_delta(const Rational& epsilon, const BigInt& scale,
                                  const BigInt& divisor, mpfr_prec_t p) {
  using namespace certified;
  const Enclosure neg_ln = ln(Rational(1) / (1 - epsilon), p);
  return div(mul(neg_ln, scale), mul(ln2(p), divisor));
}

// Enclosure of scale / delta.
certified::Enclosure scaled_inverse_delta(const Rational& epsilon, const BigInt& scale,
                                          mpfr_prec_t p) {
  using namespace certified;
  const Enclosure neg_ln = ln(Rational(1) / (1 - epsilon), p);
  return div(mul(ln2(p), scale), neg_ln);
}

}  // namespace

std::uint64_t choose_k(const Rational& epsilon, std::uint64_t b) {
  check_epsilon(epsilon);
  // ceil(1/eps) is the smallest k with 1/k <= eps, and it also satisfies
  // eps <= 1/(k-1).
  const Rational inv = Rational(1) / epsilon;
  BigInt k = inv.get_num() / inv.get_den();
  if (k * inv.get_den() < inv.get_num()) k += 1;
  if (k < 3) k = 3;
  if (b < 63 && k > pow2(b)) {
    throw std::invalid_argument("no k with 3 <= k <= 2^b and 1/k <= eps <= 1/(k-1): eps = " +
                                to_string(epsilon) + " is below 2^-b");
  }
  const Rational kq(k);
  if (!(Rational(1) / kq <= epsilon && epsilon <= Rational(1) / (kq - 1))) {
    throw std::logic_error("chosen k violates 1/k <= eps <= 1/(k-1)");
  }
  return k.get_ui();
}

BucketStreamConfig make_bucket_stream_config(const Rational& epsilon, std::uint64_t b,
                                             std::uint64_t n) {
  check_epsilon(epsilon);
  if (b == 0 || n == 0) throw std::invalid_argument("b and n must be >= 1");
  if (b > 4096) throw std::invalid_argument("b above 4096 is not supported");
  const BigInt two_b = pow2(b);
  if (Rational(two_b) * epsilon < 1) {
    throw std::invalid_argument("precondition -log2(eps) <= b fails: 2^b * eps < 1");
  }
  if (Rational(two_b) * pow(1 - epsilon, static_cast<std::int64_t>(n)) >= 1) {
    throw std::invalid_argument(
        "precondition b < -log2(1 - eps) * n fails: 2^b * (1 - eps)^n >= 1");
  }
  BucketStreamConfig cfg;
  cfg.epsilon = epsilon;
  cfg.b = b;
  cfg.n = n;
  cfg.k = choose_k(epsilon, b);
  const BigInt k = big(cfg.k);
  cfg.step_large = Probability::make(k - 1, k);
  cfg.step_small = Probability::make(k - 2, k - 1);
  cfg.power_step = Probability::make(BigInt(1), two_b);
  for (const auto& q : cfg.alphabet()) {
    if (bit_size(q) > b) throw std::logic_error("alphabet element above b bits");
  }
  // Cases 1 and 2 cover every product when eps >= 1/(k-1)^2.
  if (epsilon < Rational(1) / Rational((k - 1) * (k - 1))) {
    throw std::logic_error("eps < 1/(k-1)^2: the two cases leave a gap");
  }
  const BigInt nb = big(n) * big(b);
  const Rational base = cfg.base();
  cfg.y = certified::certified_floor(
      [&](mpfr_prec_t p) { return scaled_inverse_delta(epsilon, nb, p); },
      [&](const BigInt& c) {
        // c <= nb / delta  <=>  2^(nb) (1 - eps)^c >= 1
        return Rational(pow2(nb.get_ui())) * pow(base, c.get_si()) >= 1;
      });
  return cfg;
}

BigInt leading_power_count(const BucketStreamConfig& cfg, const BigInt& j) {
  if (sgn(j) == 0) return BigInt(0);
  const Rational base = cfg.base();
  return certified::certified_floor(
      [&](mpfr_prec_t p) { return scaled_delta(cfg.epsilon, j, big(cfg.b), p); },
      [&](const BigInt& m) {
        // m <= j delta / b  <=>  2^(b m) (1 - eps)^j <= 1
        if (sgn(m) < 0) return true;
        return Rational(pow2(cfg.b * m.get_ui())) * pow(base, j.get_si()) <= 1;
      });
}

Stream gen_bucket_stream(const BucketStreamConfig& cfg, const BigInt& j) {
  if (sgn(j) < 0 || j > cfg.y) {
    throw std::out_of_range("bucket " + j.get_str() + " outside 0.." + cfg.y.get_str());
  }
  const Rational base = cfg.base();
  const BigInt m = leading_power_count(cfg, j);
  if (m > big(cfg.n)) throw std::logic_error("more than n leading powers");
  Stream out(m.get_ui(), cfg.power_step);
  Rational product = pow(cfg.power_step.value(), m.get_si());
  const BigInt s = bucket_of_value(product, base).value;
  if (s > j || j - s > big(cfg.n)) throw std::logic_error("leading product in an unexpected bucket");

  const Rational k(big(cfg.k));
  const Rational case1_factor = k / (k - 1);
  const Rational case2_factor = (k - 1) / (k - 2);
  Rational upper = pow(base, s.get_si() + 1);  // (1 - eps)^(s + d + 1)
  const BigInt steps = j - s;
  for (BigInt d = 0; d < steps; d += 1) {
    const Rational lower = upper * base;  // (1 - eps)^(s + d + 2)
    const Probability* q = nullptr;
    if (product <= case1_factor * upper) {
      q = &cfg.step_large;
    } else if (product > case2_factor * lower) {
      q = &cfg.step_small;
    } else {
      throw std::logic_error("product falls in neither case");
    }
    product *= q->value();
    out.push_back(*q);
    if (!(lower < product && product <= upper)) {
      throw std::logic_error("multiplier step missed the next bucket");
    }
    upper = lower;
  }
  if (out.size() > 2 * cfg.n) throw std::logic_error("bucket stream longer than 2n");
  return out;
}

std::vector<FoolingStream> gen_app_fooling_streams(const BucketStreamConfig& cfg,
                                                   std::uint64_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be >= 1");
  const BigInt count = cfg.y / big(stride) + 1;
  std::vector<FoolingStream> out;
  out.reserve(count.get_ui());
  for (BigInt j = 0; j < count; j += 1) {
    const BigInt bucket = j * big(stride);
    Stream s = gen_bucket_stream(cfg, bucket);
    Rational p = exact_product(s);
    out.push_back(FoolingStream{bucket, std::move(s), std::move(p)});
  }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> find_separation_violation(
    const std::vector<FoolingStream>& streams, const Rational& epsilon) {
  const Rational keep = 1 - epsilon;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    const Rational shrunk = keep * streams[i].product;
    for (std::size_t j = i + 1; j < streams.size(); ++j) {
      if (!(streams[j].product / keep < shrunk)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

PrimeFoolingFamily PrimeFoolingFamily::make(std::uint64_t n, std::uint64_t b,
                                            const Rational& gamma,
                                            std::uint64_t enumeration_cap) {
  if (n == 0 || b == 0) throw std::invalid_argument("n and b must be >= 1");
  if (b >= 32) throw std::invalid_argument("prime family supports b < 32");
  if (sgn(gamma) <= 0) throw std::invalid_argument("gamma must be positive");
  PrimeFoolingFamily fam;
  fam.n_ = n;
  fam.b_ = b;
  fam.gamma_ = gamma;
  const std::uint64_t B = std::uint64_t{1} << b;
  fam.block_size_ = B;
  const std::uint64_t total = n * (B + 1) + 1;
  fam.primes_ = first_primes(total);
  const auto p = [&](std::uint64_t k) { return big(fam.primes_.nth(k)); };

  std::set<Rational> seen;
  for (std::uint64_t i = 1; i <= n; ++i) {
    std::vector<Probability> block;
    for (std::uint64_t j = (i - 1) * (B + 1) + 1; j <= i * (B + 1) - 1; ++j) {
      block.push_back(Probability::make(p(j), p(j + 1)));
      if (!seen.insert(block.back().value()).second) {
        throw std::logic_error("blocks are not disjoint");
      }
    }
    fam.blocks_.push_back(std::move(block));
    fam.suffix_numbers_.push_back(Probability::make(p((i - 1) * (B + 1) + 1), p(i * (B + 1) + 1)));
  }
  fam.threshold_ = Probability::make(p(1), p(total));
  if (exact_product(fam.suffix_numbers_) != fam.threshold_.value()) {
    throw std::logic_error("suffix numbers do not multiply to the threshold");
  }

  fam.max_bit_size_ = bit_size(fam.threshold_);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (const auto& r : fam.blocks_[i]) {
      fam.max_bit_size_ = std::max(fam.max_bit_size_, bit_size(r));
      const Rational ratio = fam.suffix_numbers_[i].value() / r.value();
      if (ratio > 1) throw std::logic_error("suffix element above 1");
      fam.max_bit_size_ = std::max(fam.max_bit_size_, bit_size(ratio));
    }
  }

  // ceil(2 log2 p_last) <= (2 + gamma)(log2 n + b), with 2 + gamma = g/h:
  // L h <= g log2(n 2^b)  <=>  2^(L h) <= (n 2^b)^g.
  const BigInt last = p(total);
  const std::uint64_t L = ceil_log2(BigInt(last * last));
  const Rational g = 2 + gamma;
  const BigInt lhs_exp = big(L) * g.get_den();
  if (g.get_num() > 4096 || lhs_exp > 1 << 20) {
    throw std::invalid_argument("gamma too finely specified for the bit gate check");
  }
  BigInt rhs;
  const BigInt n2b = big(n) * pow2(b);
  mpz_pow_ui(rhs.get_mpz_t(), n2b.get_mpz_t(), g.get_num().get_ui());
  fam.bit_gate_holds_ = pow2(lhs_exp.get_ui()) <= rhs;
  if (fam.bit_gate_holds_ && fam.max_bit_size_ > L) {
    throw std::logic_error("family element exceeds ceil(2 log2 p_last) bits");
  }

  // B^n with saturation.
  std::uint64_t size = 1;
  bool saturated = false;
  for (std::uint64_t i = 0; i < n && !saturated; ++i) {
    if (size > UINT64_MAX / B) {
      saturated = true;
    } else {
      size *= B;
    }
  }
  fam.size_ = saturated ? UINT64_MAX : size;
  if (saturated || size > enumeration_cap) return fam;

  std::vector<std::pair<Rational, FamilyWord>> all;
  all.reserve(size);
  FamilyWord choice(n, 0);
  for (std::uint64_t w = 0; w < size; ++w) {
    std::uint64_t rest = w;
    Rational prod = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      choice[i] = rest % B;
      rest /= B;
      prod *= fam.blocks_[i][choice[i]].value();
    }
    all.emplace_back(prod, choice);
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i - 1].first == all[i].first) throw std::logic_error("two words share a product");
  }
  for (auto& [prod, word] : all) {
    fam.ranked_products_.push_back(prod);
    fam.ranked_.push_back(std::move(word));
  }
  return fam;
}

FamilyWord PrimeFoolingFamily::word_choice(std::uint64_t rank) const {
  if (ranked_.empty()) throw std::length_error("family exceeds the enumeration cap");
  if (rank == 0 || rank > ranked_.size()) {
    throw std::out_of_range("rank " + std::to_string(rank) + " outside 1.." +
                            std::to_string(ranked_.size()));
  }
  return ranked_[rank - 1];
}

Stream PrimeFoolingFamily::word(std::uint64_t rank) const {
  const FamilyWord choice = word_choice(rank);
  Stream out;
  for (std::uint64_t i = 0; i < n_; ++i) out.push_back(blocks_[i][choice[i]]);
  return out;
}

Rational PrimeFoolingFamily::word_product(std::uint64_t rank) const {
  word_choice(rank);
  return ranked_products_[rank - 1];
}

Stream PrimeFoolingFamily::suffix(const Stream& word) const {
  if (word.size() != n_) throw std::invalid_argument("word length differs from n");
  Stream out;
  for (std::uint64_t i = 0; i < n_; ++i) {
    const auto& block = blocks_[i];
    if (std::find(block.begin(), block.end(), word[i]) == block.end()) {
      throw std::invalid_argument("element " + word[i].to_string() + " is not in block " +
                                  std::to_string(i + 1));
    }
    out.push_back(Probability::from_rational(suffix_numbers_[i].value() / word[i].value()));
  }
  return out;
}

PrimeFoolingFamily gen_prime_family(std::uint64_t n, std::uint64_t b, const Rational& gamma,
                                    std::uint64_t enumeration_cap) {
  return PrimeFoolingFamily::make(n, b, gamma, enumeration_cap);
}

FoolingVerdict fooling_check(const DecisionFactory& factory, const PrimeFoolingFamily& fam,
                             std::uint64_t seed) {
  if (!fam.enumerable()) throw std::length_error("family exceeds the enumeration cap");
  const std::uint64_t N = fam.size();
  FoolingVerdict v;
  std::vector<BitString> prefix(N + 1);
  std::set<std::string> distinct;
  for (std::uint64_t r = 1; r <= N; ++r) {
    auto a = factory(seed);
    a->step(fam.threshold());
    a->run(fam.word(r));
    prefix[r] = a->serialize_state();
    distinct.insert(prefix[r].to_string());
    v.max_state_bits = std::max<std::uint64_t>(v.max_state_bits, prefix[r].size());
  }
  v.distinct_states = distinct.size();

  auto continue_from = [&](const BitString& state, const Stream& w) {
    auto a = factory(seed);
    a->load_state(state);
    a->run(w);
    return a->output();
  };
  for (std::uint64_t vr = 1; vr <= N; ++vr) {
    const Stream w = fam.suffix(fam.word(vr));
    // t v w lands exactly on the threshold: the answer is 0.
    const bool equal_case_wrong = continue_from(prefix[vr], w);
    for (std::uint64_t ur = vr + 1; ur <= N; ++ur) {
      v.pairs += 1;
      if (prefix[ur] == prefix[vr]) {
        v.collisions += 1;
        if (!v.first_collision) v.first_collision = std::make_pair(ur, vr);
      }
      if (!continue_from(prefix[ur], w)) v.wrong_outputs += 1;
      if (equal_case_wrong) v.wrong_outputs += 1;
    }
  }
  return v;
}

}  // namespace probstream
