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

#include "probstream/value.h"

#include <stdexcept>

namespace probstream {

namespace {

std::strong_ordering to_ordering(int c) {
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Values small enough that exact arithmetic beats interval escalation.
constexpr std::uint64_t kCheapExactBits = 4096;

}  // namespace

ProbabilityValue ProbabilityValue::exact(Rational x) {
  if (sgn(x) < 0 || x > 1) {
    throw std::invalid_argument("value outside [0, 1]: " + probstream::to_string(x));
  }
  ProbabilityValue v;
  v.exact_ = std::move(x);
  return v;
}

ProbabilityValue ProbabilityValue::power(Rational base, BigInt exponent) {
  if (sgn(base) <= 0 || base >= 1) {
    throw std::invalid_argument("power base outside (0, 1): " + probstream::to_string(base));
  }
  if (sgn(exponent) < 0) throw std::invalid_argument("negative exponent");
  ProbabilityValue v;
  v.is_power_ = true;
  v.base_ = std::move(base);
  v.exponent_ = std::move(exponent);
  return v;
}

bool ProbabilityValue::is_zero() const { return !is_power_ && sgn(exact_) == 0; }

bool ProbabilityValue::fits_exact(std::uint64_t bit_cap) const {
  if (!is_power_) return true;
  const BigInt bits = exponent_ * big(bit_length(base_.get_den()));
  return bits <= big(bit_cap);
}

Rational ProbabilityValue::to_exact(std::uint64_t bit_cap) const {
  if (!is_power_) return exact_;
  if (!fits_exact(bit_cap)) {
    throw std::overflow_error("exact power " + to_string() + " exceeds the " +
                              std::to_string(bit_cap) + "-bit cap");
  }
  return pow(base_, exponent_.get_si());
}

certified::Enclosure ProbabilityValue::ln(mpfr_prec_t precision) const {
  if (is_zero()) throw std::domain_error("ln(0)");
  if (!is_power_) return certified::ln(exact_, precision);
  return certified::mul(certified::ln(base_, precision), exponent_);
}

std::string ProbabilityValue::decimal(int digits) const {
  if (is_zero()) return "0";
  std::optional<std::string> out;
  if (!is_power_ || fits_exact(kCheapExactBits)) {
    const Rational x = to_exact();
    out = certified::escalate([&](mpfr_prec_t p) {
      return certified::decimal_if_certain(certified::enclose(x, p), digits);
    });
  } else {
    // base^e is increasing in base for e > 0, so rounding base outward and
    // the power outward in the same direction encloses the value.
    const auto extra = static_cast<mpfr_prec_t>(bit_length(exponent_));
    out = certified::escalate([&](mpfr_prec_t p) {
      const mpfr_prec_t prec = p + extra;
      certified::Enclosure base = certified::enclose(base_, prec);
      certified::Enclosure e(prec);
      mpfr_pow_z(e.lo.get(), base.lo.get(), exponent_.get_mpz_t(), MPFR_RNDD);
      mpfr_pow_z(e.hi.get(), base.hi.get(), exponent_.get_mpz_t(), MPFR_RNDU);
      return certified::decimal_if_certain(e, digits);
    });
  }
  if (!out) throw std::runtime_error("decimal rendering of " + to_string() + " did not resolve");
  return *out;
}

std::string ProbabilityValue::to_string() const {
  if (!is_power_) return probstream::to_string(exact_);
  return "(" + probstream::to_string(base_) + ")^" + exponent_.get_str();
}

std::strong_ordering compare(const ProbabilityValue& x, const ProbabilityValue& y) {
  if (x.is_zero() || y.is_zero()) {
    return to_ordering(static_cast<int>(!x.is_zero()) - static_cast<int>(!y.is_zero()));
  }
  if (x.is_power() && y.is_power() && x.base() == y.base()) {
    // base < 1: the larger exponent is the smaller value.
    return to_ordering(cmp(y.exponent(), x.exponent()));
  }
  if (x.fits_exact(kCheapExactBits) && y.fits_exact(kCheapExactBits)) {
    return to_ordering(cmp(x.to_exact(), y.to_exact()));
  }
  auto sign = certified::escalate([&](mpfr_prec_t p) {
    return certified::sign_if_certain(certified::sub(x.ln(p), y.ln(p)));
  });
  if (sign) return to_ordering(*sign);
  return to_ordering(cmp(x.to_exact(), y.to_exact()));
}

std::strong_ordering compare(const ProbabilityValue& x, const Rational& y) {
  return compare(x, ProbabilityValue::exact(y));
}

bool ratio_exceeds(const ProbabilityValue& x, const ProbabilityValue& y, const Rational& t) {
  if (y.is_zero()) throw std::domain_error("ratio with a zero denominator");
  if (sgn(t) <= 0) throw std::invalid_argument("ratio threshold must be positive");
  if (x.is_zero()) return false;
  if (x.is_power() && y.is_power() && x.base() == y.base()) {
    // x / y = base^(ex - ey).
    const BigInt d = x.exponent() - y.exponent();
    const BigInt bits = abs(d) * big(bit_length(x.base().get_den()));
    if (bits <= big(kExactPowerBitCap)) {
      return pow(x.base(), d.get_si()) > t;
    }
    auto sign = certified::escalate([&](mpfr_prec_t p) {
      const auto lhs = certified::mul(certified::ln(x.base(), p), d);
      return certified::sign_if_certain(certified::sub(lhs, certified::ln(t, p)));
    });
    if (!sign) throw std::runtime_error("ratio comparison did not resolve");
    return *sign > 0;
  }
  if (x.fits_exact(kCheapExactBits) && y.fits_exact(kCheapExactBits)) {
    return x.to_exact() > t * y.to_exact();
  }
  auto sign = certified::escalate([&](mpfr_prec_t p) {
    using namespace certified;
    return sign_if_certain(sub(sub(x.ln(p), y.ln(p)), certified::ln(t, p)));
  });
  if (sign) return *sign > 0;
  return x.to_exact() > t * y.to_exact();
}

bool within_band(const ProbabilityValue& x, const Rational& p, const Rational& eps) {
  if (sgn(p) <= 0) throw std::invalid_argument("band centre must be positive");
  const Rational keep = 1 - eps;
  const Rational lower = keep * p;
  const Rational upper = p / keep;
  if (x.is_zero()) return false;
  if (compare(x, ProbabilityValue::exact(lower)) != std::strong_ordering::greater) return false;
  // Every value is <= 1.
  if (upper > 1) return true;
  return compare(x, ProbabilityValue::exact(upper)) == std::strong_ordering::less;
}

}  // namespace probstream
