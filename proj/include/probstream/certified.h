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

// Outward-rounded interval arithmetic on top of MPFR.  Every Enclosure
// produced here satisfies lo <= x <= hi for the exact real x it stands for;
// callers that need a discrete answer (a floor, a sign, a decimal string)
// accept it only when both endpoints agree and otherwise retry at a higher
// precision or fall back to exact rational arithmetic.

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "probstream/numerics.h"

namespace probstream::certified {

inline constexpr mpfr_prec_t kStartPrecision = 64;
inline constexpr mpfr_prec_t kMaxPrecision = 8192;

/// Owning RAII handle for an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = kStartPrecision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

struct Enclosure {
  Real lo;
  Real hi;

  explicit Enclosure(mpfr_prec_t precision) : lo(precision), hi(precision) {}
  mpfr_prec_t precision() const noexcept { return lo.precision(); }
  double midpoint() const;
};

Enclosure enclose(const Rational& x, mpfr_prec_t precision);
Enclosure enclose(const BigInt& x, mpfr_prec_t precision);

/// ln x for a rational x > 0.
Enclosure ln(const Rational& x, mpfr_prec_t precision);
/// The constant ln 2.
Enclosure ln2(mpfr_prec_t precision);

Enclosure add(const Enclosure& a, const Enclosure& b);
Enclosure sub(const Enclosure& a, const Enclosure& b);
Enclosure mul(const Enclosure& a, const Enclosure& b);
Enclosure mul(const Enclosure& a, const BigInt& k);
/// Throws std::domain_error if b contains zero.
Enclosure div(const Enclosure& a, const Enclosure& b);

/// floor(x) when lo and hi share the same floor.
std::optional<BigInt> floor_if_certain(const Enclosure& e);
/// ceil(x) when lo and hi share the same ceiling.
std::optional<BigInt> ceil_if_certain(const Enclosure& e);
/// -1, 0 or +1 when the sign is decided by the enclosure.
std::optional<int> sign_if_certain(const Enclosure& e);
/// Sign of x - k for an integer k.
std::optional<int> compare_if_certain(const Enclosure& e, const BigInt& k);

/// Correctly rounded `digits`-significant-digit decimal in scientific form
/// ("3.1640625e-1"), when both endpoints round to the same string.
std::optional<std::string> decimal_if_certain(const Enclosure& e, int digits);

/// Runs `attempt(precision)` at doubling precisions until it yields a value
/// or kMaxPrecision is exceeded.
template <typename Attempt>
auto escalate(Attempt&& attempt) -> decltype(attempt(kStartPrecision)) {
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    if (auto r = attempt(p)) return r;
  }
  return std::nullopt;
}

/// floor(x) for a real x given by `enclosure(precision)`, with `at_most(k)`
/// deciding k <= x exactly when the enclosure cannot.
template <typename EnclosureFn, typename AtMost>
BigInt certified_floor(EnclosureFn&& enclosure, AtMost&& at_most) {
  std::optional<Enclosure> e;
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    e.emplace(enclosure(p));
    if (auto f = floor_if_certain(*e)) return *f;
  }
  // The enclosure straddles an integer; test the candidate exactly.
  Real top(e->precision());
  mpfr_floor(top.get(), e->hi.get());
  BigInt candidate;
  mpfr_get_z(candidate.get_mpz_t(), top.get(), MPFR_RNDD);
  while (!at_most(candidate)) candidate -= 1;
  return candidate;
}

}  // namespace probstream::certified
