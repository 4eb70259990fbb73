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

#include "probstream/certified.h"

#include <cstdlib>
#include <stdexcept>

namespace probstream::certified {

Real::Real(mpfr_prec_t precision) { mpfr_init2(value_, precision); }

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

double Enclosure::midpoint() const {
  return 0.5 * (lo.to_double() + hi.to_double());
}

Enclosure enclose(const Rational& x, mpfr_prec_t precision) {
  Enclosure e(precision);
  mpfr_set_q(e.lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e.hi.get(), x.get_mpq_t(), MPFR_RNDU);
  return e;
}

Enclosure enclose(const BigInt& x, mpfr_prec_t precision) {
  Enclosure e(precision);
  mpfr_set_z(e.lo.get(), x.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(e.hi.get(), x.get_mpz_t(), MPFR_RNDU);
  return e;
}

Enclosure ln(const Rational& x, mpfr_prec_t precision) {
  if (sgn(x) <= 0) throw std::domain_error("ln of a nonpositive number");
  Enclosure e(precision);
  if (x == 1) {
    mpfr_set_zero(e.lo.get(), 1);
    mpfr_set_zero(e.hi.get(), 1);
    return e;
  }
  // One correctly rounded log instead of two directed ones.  With
  // x' = RN(x) and l = RN(ln x'):  |ln x' - ln x| <= 2^(1-p)  and
  // |l - ln x'| <= ulp(l)/2 = 2^(EXP(l)-p-1).  The error term below
  // dominates both.
  Real rounded(precision);
  mpfr_set_q(rounded.get(), x.get_mpq_t(), MPFR_RNDN);
  Real l(precision);
  mpfr_log(l.get(), rounded.get(), MPFR_RNDN);
  if (mpfr_zero_p(l.get())) {
    // x rounded to 1: |ln x| <= 2^(1-p).
    mpfr_set_si_2exp(e.lo.get(), -1, 1 - precision, MPFR_RNDD);
    mpfr_set_si_2exp(e.hi.get(), 1, 1 - precision, MPFR_RNDU);
    return e;
  }
  Real err(precision);
  Real term(precision);
  mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(l.get()) - precision, MPFR_RNDU);
  mpfr_set_ui_2exp(term.get(), 1, 2 - precision, MPFR_RNDU);
  mpfr_add(err.get(), err.get(), term.get(), MPFR_RNDU);
  mpfr_sub(e.lo.get(), l.get(), err.get(), MPFR_RNDD);
  mpfr_add(e.hi.get(), l.get(), err.get(), MPFR_RNDU);
  return e;
}

Enclosure ln2(mpfr_prec_t precision) {
  Enclosure e(precision);
  mpfr_const_log2(e.lo.get(), MPFR_RNDD);
  mpfr_const_log2(e.hi.get(), MPFR_RNDU);
  return e;
}

Enclosure add(const Enclosure& a, const Enclosure& b) {
  Enclosure e(std::max(a.precision(), b.precision()));
  mpfr_add(e.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(e.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return e;
}

Enclosure sub(const Enclosure& a, const Enclosure& b) {
  Enclosure e(std::max(a.precision(), b.precision()));
  mpfr_sub(e.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(e.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
  return e;
}

namespace {

using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Min and max over the four endpoint combinations, each rounded outward.
Enclosure corners(const Enclosure& a, const Enclosure& b, BinaryOp op) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision());
  Enclosure e(p);
  Real t(p);
  mpfr_srcptr xs[2] = {a.lo.get(), a.hi.get()};
  mpfr_srcptr ys[2] = {b.lo.get(), b.hi.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      op(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), e.lo.get())) mpfr_set(e.lo.get(), t.get(), MPFR_RNDD);
      op(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), e.hi.get())) mpfr_set(e.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return e;
}

}  // namespace

Enclosure mul(const Enclosure& a, const Enclosure& b) { return corners(a, b, mpfr_mul); }

Enclosure mul(const Enclosure& a, const BigInt& k) {
  Enclosure e(a.precision());
  if (sgn(k) >= 0) {
    mpfr_mul_z(e.lo.get(), a.lo.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(e.hi.get(), a.hi.get(), k.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(e.lo.get(), a.hi.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(e.hi.get(), a.lo.get(), k.get_mpz_t(), MPFR_RNDU);
  }
  return e;
}

Enclosure div(const Enclosure& a, const Enclosure& b) {
  if (mpfr_sgn(b.lo.get()) <= 0 && mpfr_sgn(b.hi.get()) >= 0) {
    throw std::domain_error("interval division by an enclosure containing zero");
  }
  return corners(a, b, mpfr_div);
}

std::optional<BigInt> floor_if_certain(const Enclosure& e) {
  Real fl(e.precision());
  Real fh(e.precision());
  mpfr_floor(fl.get(), e.lo.get());
  mpfr_floor(fh.get(), e.hi.get());
  if (!mpfr_equal_p(fl.get(), fh.get())) return std::nullopt;
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), fl.get(), MPFR_RNDD);
  return out;
}

std::optional<BigInt> ceil_if_certain(const Enclosure& e) {
  Real cl(e.precision());
  Real ch(e.precision());
  mpfr_ceil(cl.get(), e.lo.get());
  mpfr_ceil(ch.get(), e.hi.get());
  if (!mpfr_equal_p(cl.get(), ch.get())) return std::nullopt;
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), cl.get(), MPFR_RNDU);
  return out;
}

std::optional<int> sign_if_certain(const Enclosure& e) {
  if (mpfr_sgn(e.lo.get()) > 0) return 1;
  if (mpfr_sgn(e.hi.get()) < 0) return -1;
  if (mpfr_zero_p(e.lo.get()) && mpfr_zero_p(e.hi.get())) return 0;
  return std::nullopt;
}

std::optional<int> compare_if_certain(const Enclosure& e, const BigInt& k) {
  if (mpfr_cmp_z(e.lo.get(), k.get_mpz_t()) > 0) return 1;
  if (mpfr_cmp_z(e.hi.get(), k.get_mpz_t()) < 0) return -1;
  if (mpfr_cmp_z(e.lo.get(), k.get_mpz_t()) == 0 && mpfr_cmp_z(e.hi.get(), k.get_mpz_t()) == 0) {
    return 0;
  }
  return std::nullopt;
}

namespace {

std::string scientific(mpfr_srcptr x, int digits) {
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), x, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

}  // namespace

std::optional<std::string> decimal_if_certain(const Enclosure& e, int digits) {
  if (digits < 1) throw std::invalid_argument("decimal rendering needs digits >= 1");
  std::string lo = scientific(e.lo.get(), digits);
  std::string hi = scientific(e.hi.get(), digits);
  if (lo != hi) return std::nullopt;
  return lo;
}

}  // namespace probstream::certified
