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

#include "probstream/buckets.h"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "probstream/certified.h"

namespace probstream {

void check_epsilon(const Rational& epsilon) {
  if (sgn(epsilon) <= 0 || epsilon > Rational(1, 2)) {
    throw std::invalid_argument("eps must lie in (0, 1/2], got " + to_string(epsilon));
  }
}

ApproxParams ApproxParams::make(const Rational& epsilon, std::uint64_t divisor) {
  check_epsilon(epsilon);
  if (divisor == 0) throw std::invalid_argument("eps divisor must be >= 1");
  ApproxParams p;
  p.epsilon_ = epsilon;
  p.divisor_ = divisor;
  p.epsilon_prime_ = epsilon / Rational(big(divisor));
  p.base_ = 1 - p.epsilon_prime_;
  return p;
}

double ApproxParams::delta() const { return -std::log2(one_minus_epsilon().get_d()); }

namespace {

void check_base(const Rational& base) {
  if (sgn(base) <= 0 || base >= 1) {
    throw std::invalid_argument("bucket base must lie in (0, 1), got " + to_string(base));
  }
}

// Exact probes up to this size are cheaper than another interval round.
constexpr std::uint64_t kCheapProbeBits = std::uint64_t{1} << 16;

bool power_fits(const BigInt& a, const Rational& base, std::uint64_t cap) {
  return a * big(bit_length(base.get_den())) <= big(cap);
}

// base^a >= x, i.e. a <= log_base(x).
bool power_at_least(const BigInt& a, const Rational& base, const Rational& x) {
  return pow(base, a.get_si()) >= x;
}

BigInt floor_of(const certified::Real& x) {
  certified::Real f(x.precision());
  mpfr_floor(f.get(), x.get());
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), f.get(), MPFR_RNDD);
  return out;
}

// ln(base) for the most recent base and precision; streams reuse one base.
const certified::Enclosure& ln_base(const Rational& base, mpfr_prec_t precision) {
  struct Entry {
    Rational base;
    mpfr_prec_t precision;
    certified::Enclosure value;
  };
  thread_local std::vector<Entry> cache;
  for (const auto& e : cache) {
    if (e.precision == precision && e.base == base) return e.value;
  }
  if (cache.size() >= 16) cache.erase(cache.begin());
  cache.push_back(Entry{base, precision, certified::ln(base, precision)});
  return cache.back().value;
}

// floor(ln x / ln base) where ln_x(precision) encloses ln x.  `exact_x`
// yields x itself for exact tie-breaking when it is available.
BucketIndex certify_index(const std::function<certified::Enclosure(mpfr_prec_t)>& ln_x,
                          const Rational& base,
                          const std::function<std::optional<Rational>()>& exact_x) {
  using namespace certified;
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    const Enclosure quotient = div(ln_x(p), ln_base(base, p));
    if (auto f = floor_if_certain(quotient)) {
      if (sgn(*f) < 0) return BucketIndex{BigInt(0)};
      return BucketIndex{*f};
    }
    const BigInt lo_floor = floor_of(quotient.lo);
    const BigInt hi_floor = floor_of(quotient.hi);
    // The quotient is never negative for x in (0, 1].
    if (sgn(hi_floor) == 0) return BucketIndex{BigInt(0)};
    // Straddling exactly one integer: one exact probe decides it.
    if (lo_floor + 1 == hi_floor && sgn(hi_floor) > 0 &&
        power_fits(hi_floor, base, kCheapProbeBits)) {
      if (auto x = exact_x()) {
        return BucketIndex{power_at_least(hi_floor, base, *x) ? hi_floor : lo_floor};
      }
    }
  }
  auto x = exact_x();
  if (!x) throw std::runtime_error("bucket index did not resolve");
  return bucket_index_exact_search(*x, base);
}

}  // namespace

BucketIndex bucket_index_exact_search(const Rational& x, const Rational& base) {
  check_base(base);
  if (sgn(x) <= 0 || x > 1) {
    throw std::invalid_argument("bucket index needs a value in (0, 1], got " + to_string(x));
  }
  // Invariant: base^lo >= x > base^hi.
  BigInt lo = 0;
  BigInt hi = 1;
  while (true) {
    if (!power_fits(hi, base, kExactPowerBitCap)) {
      throw std::overflow_error("exact bucket search exceeds the power cap");
    }
    if (!power_at_least(hi, base, x)) break;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (power_at_least(mid, base, x)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return BucketIndex{lo};
}

BucketIndex bucket_of_value(const Rational& x, const Rational& base) {
  check_base(base);
  if (sgn(x) <= 0) throw std::invalid_argument("0 belongs to no bucket");
  if (x > 1) throw std::invalid_argument("bucket of a value above 1: " + to_string(x));
  if (x == 1) return BucketIndex{BigInt(0)};
  return certify_index([&](mpfr_prec_t p) { return certified::ln(x, p); }, base,
                       [&]() -> std::optional<Rational> { return x; });
}

BucketIndex bucket_index(const Probability& q, const Rational& base) {
  if (q.is_zero()) throw std::invalid_argument("0 belongs to no bucket");
  return bucket_of_value(q.value(), base);
}

BucketIndex bucket_of_value(const ProbabilityValue& x, const Rational& base) {
  check_base(base);
  if (x.is_zero()) throw std::invalid_argument("0 belongs to no bucket");
  if (!x.is_power()) return bucket_of_value(x.to_exact(), base);
  if (x.base() == base) return BucketIndex{x.exponent()};
  if (sgn(x.exponent()) == 0) return BucketIndex{BigInt(0)};
  return certify_index([&](mpfr_prec_t p) { return x.ln(p); }, base,
                       [&]() -> std::optional<Rational> {
                         if (!x.fits_exact()) return std::nullopt;
                         return x.to_exact();
                       });
}

ProbabilityValue bucket_boundary(const BigInt& a, const Rational& base) {
  check_base(base);
  return ProbabilityValue::power(base, a);
}

Rational bucket_boundary_exact(const BigInt& a, const Rational& base) {
  return bucket_boundary(a, base).to_exact();
}

std::string bucket_boundary_decimal(const BigInt& a, const Rational& base, int digits) {
  return bucket_boundary(a, base).decimal(digits);
}

}  // namespace probstream
