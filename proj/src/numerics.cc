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

#include "probstream/numerics.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "probstream/certified.h"

namespace probstream {

std::uint64_t bit_length(const BigInt& x) {
  if (sgn(x) < 0) throw std::invalid_argument("bit_length of a negative integer");
  if (sgn(x) == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::uint64_t ceil_log2(const BigInt& x) {
  if (x < 1) throw std::invalid_argument("ceil_log2 requires x >= 1");
  if (x == 1) return 0;
  return bit_length(BigInt(x - 1));
}

std::int64_t ceil_log2(const Rational& x) {
  if (sgn(x) <= 0) throw std::invalid_argument("ceil_log2 requires x > 0");
  const BigInt& num = x.get_num();
  const BigInt& den = x.get_den();
  // 2^(L-1) <= num/den < 2^(L+1) for L = bitlen(num) - bitlen(den).
  std::int64_t w = static_cast<std::int64_t>(bit_length(num)) -
                   static_cast<std::int64_t>(bit_length(den)) - 1;
  auto at_least = [&](std::int64_t e) {
    // 2^e >= num/den
    if (e >= 0) return pow2(static_cast<std::uint64_t>(e)) * den >= num;
    return den >= num * pow2(static_cast<std::uint64_t>(-e));
  };
  while (!at_least(w)) ++w;
  while (at_least(w - 1)) --w;
  return w;
}

BigInt pow2(std::uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Rational pow(const Rational& x, std::int64_t e) {
  if (e < 0) {
    if (sgn(x) == 0) throw std::domain_error("zero to a negative power");
    return pow(Rational(1) / x, -e);
  }
  const auto ue = static_cast<unsigned long>(e);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), ue);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), ue);
  // Powers of coprime integers stay coprime, so r is already reduced.
  return r;
}

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };
  if (slash == std::string::npos) {
    throw std::invalid_argument("expected a fraction r/s, got '" + text + "'");
  }
  const std::string r = text.substr(0, slash);
  const std::string s = text.substr(slash + 1);
  if (!all_digits(r) || !all_digits(s)) {
    throw std::invalid_argument("expected a fraction r/s, got '" + text + "'");
  }
  BigInt num(r, 10);
  BigInt den(s, 10);
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Probability Probability::make(const BigInt& r, const BigInt& s) {
  if (sgn(s) <= 0) throw std::invalid_argument("denominator must be positive");
  if (sgn(r) < 0) throw std::invalid_argument("numerator must be nonnegative");
  if (r > s) {
    throw std::invalid_argument("not a probability: " + r.get_str() + "/" +
                                s.get_str());
  }
  Rational v(r, s);
  v.canonicalize();
  return Probability(std::move(v));
}

Probability Probability::from_rational(const Rational& x) {
  if (sgn(x) < 0 || x > 1) {
    throw std::invalid_argument("not a probability: " + probstream::to_string(x));
  }
  return Probability(x);
}

Probability Probability::one() { return Probability(Rational(1)); }

std::string Probability::to_string() const { return probstream::to_string(value_); }

std::ostream& operator<<(std::ostream& os, const Probability& q) {
  return os << q.to_string();
}

std::uint64_t bit_size(const Rational& x) {
  if (sgn(x) == 0) return 0;
  const BigInt num = abs(x.get_num());
  return std::max(ceil_log2(num), ceil_log2(x.get_den()));
}

std::uint64_t bit_size(const Probability& q) { return bit_size(q.value()); }

StreamParameters StreamParameters::make(std::uint64_t n, std::uint64_t b) {
  if (n == 0) throw std::invalid_argument("stream length bound n must be >= 1");
  if (b == 0) throw std::invalid_argument("bit size bound b must be >= 1");
  return StreamParameters{n, b};
}

void StreamParameters::check_element(const Probability& q) const {
  const auto size = bit_size(q);
  if (size > b) {
    throw std::invalid_argument("element " + q.to_string() + " has bit size " +
                                std::to_string(size) + " > b = " +
                                std::to_string(b));
  }
}

PrimeTable::PrimeTable(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {}

std::uint64_t PrimeTable::nth(std::size_t k) const {
  if (k == 0 || k > primes_.size()) {
    throw std::out_of_range("prime index " + std::to_string(k) + " outside 1.." +
                            std::to_string(primes_.size()));
  }
  return primes_[k - 1];
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  // Odd-only sieve: slot i stands for 2i + 1.
  const std::uint64_t slots = limit / 2 + 1;
  std::vector<bool> composite(slots, false);
  out.push_back(2);
  for (std::uint64_t i = 1; i < slots; ++i) {
    const std::uint64_t p = 2 * i + 1;
    if (p > limit) break;
    if (composite[i]) continue;
    out.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
  }
  return out;
}

PrimeTable first_primes(std::size_t count) {
  if (count == 0) throw std::invalid_argument("first_primes requires count >= 1");
  std::uint64_t limit = 13;
  if (count >= 6) {
    const double k = static_cast<double>(count);
    limit = static_cast<std::uint64_t>(k * (std::log(k) + std::log(std::log(k)))) + 2;
  }
  auto primes = primes_up_to(limit);
  while (primes.size() < count) {
    limit *= 2;
    primes = primes_up_to(limit);
  }
  primes.resize(count);
  return PrimeTable(std::move(primes));
}

bool prime_bound_holds(std::uint64_t k, std::uint64_t p) {
  if (k < 6) throw std::invalid_argument("the prime bound is stated for k >= 6");
  const BigInt kk = big(k);
  const BigInt pp = big(p);
  auto verdict = certified::escalate([&](mpfr_prec_t prec) -> std::optional<bool> {
    using namespace certified;
    const Enclosure lnk = ln(Rational(kk), prec);
    // ln ln k: lnk > 0 for k >= 6, so log is monotone on the enclosure.
    Enclosure lnlnk(prec);
    mpfr_log(lnlnk.lo.get(), lnk.lo.get(), MPFR_RNDD);
    mpfr_log(lnlnk.hi.get(), lnk.hi.get(), MPFR_RNDU);
    const Enclosure bound = mul(add(lnk, lnlnk), kk);
    const auto c = compare_if_certain(bound, pp);
    if (!c) return std::nullopt;
    return *c >= 0;
  });
  // The bound is transcendental, so it never equals an integer exactly.
  if (!verdict) throw std::runtime_error("prime bound check did not resolve");
  return *verdict;
}

namespace {

BigInt product_tree(std::vector<BigInt>& values, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return BigInt(1);
  if (hi - lo == 1) return values[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(values, lo, mid) * product_tree(values, mid, hi);
}

}  // namespace

Rational exact_product(std::span<const Probability> stream) {
  std::vector<BigInt> nums;
  std::vector<BigInt> dens;
  nums.reserve(stream.size());
  dens.reserve(stream.size());
  for (const auto& q : stream) {
    if (q.is_zero()) return Rational(0);
    if (q.is_one()) continue;
    nums.push_back(q.numerator());
    dens.push_back(q.denominator());
  }
  Rational r;
  r.get_num() = product_tree(nums, 0, nums.size());
  r.get_den() = product_tree(dens, 0, dens.size());
  r.canonicalize();
  return r;
}

}  // namespace probstream
