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

#include <doctest.h>

#include <random>

#include "probstream/buckets.h"
#include "test_support.h"

using namespace probstream;

namespace {

BigInt idx(const Rational& x, const Rational& base) { return bucket_of_value(x, base).value; }

}  // namespace

TEST_CASE("bucket index examples") {
  CHECK(bucket_index(Probability::one(), Rational(1, 2)).value == 0);
  CHECK(idx(Rational(1, 4), Rational(1, 2)) == 2);
  CHECK(idx(Rational(1, 2), Rational(3, 4)) == 2);
  CHECK(idx(Rational(4, 9), Rational(2, 3)) == 2);
  CHECK(idx(Rational(8, 27) + Rational(1, 1000), Rational(2, 3)) == 2);
  CHECK(idx(Rational(8, 27), Rational(2, 3)) == 3);
}

TEST_CASE("bucket index rejects bad inputs") {
  CHECK_THROWS_AS(bucket_index(Probability(), Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(idx(Rational(1, 2), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(idx(Rational(1, 2), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(ApproxParams::make(Rational(3, 4), 1), std::invalid_argument);
  CHECK_THROWS_AS(ApproxParams::make(Rational(0), 1), std::invalid_argument);
  CHECK_NOTHROW(ApproxParams::make(Rational(1, 2), 1));
}

TEST_CASE("bucket index matches a linear scan") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 1000; ++t) {
    const auto q = testing::random_probability(rng, 1 + t % 8, false);
    const Rational base(static_cast<unsigned long>(1 + rng() % 9), 10);
    const Rational eps(1, static_cast<unsigned long>(2 + rng() % 20));
    const Rational fine = 1 - eps;
    CHECK(bucket_index(q, base).value == testing::linear_scan_bucket(q.value(), base));
    CHECK(bucket_index(q, fine).value == testing::linear_scan_bucket(q.value(), fine));
  }
}

TEST_CASE("bucket soundness and monotonicity at fine bases") {
  std::mt19937_64 rng(23);
  const Rational base = 1 - Rational(1, 1000);
  for (int t = 0; t < 200; ++t) {
    const auto q = testing::random_probability(rng, 12, false);
    const auto r = testing::random_probability(rng, 12, false);
    const BigInt a = bucket_index(q, base).value;
    // base^(a+1) < q <= base^a, checked in log form via certified compare.
    CHECK(compare(bucket_boundary(a, base), q.value()) != std::strong_ordering::less);
    CHECK(compare(bucket_boundary(a + 1, base), q.value()) == std::strong_ordering::less);
    if (q.value() <= r.value()) CHECK(a >= bucket_index(r, base).value);
    CHECK(bucket_index_exact_search(q.value(), base).value == a);
  }
}

TEST_CASE("boundaries land in their own bucket") {
  for (const Rational base : {Rational(1, 2), Rational(2, 3), Rational(99, 100)}) {
    for (unsigned long a = 0; a < 60; ++a) {
      const Rational x = bucket_boundary_exact(BigInt(a), base);
      CHECK(idx(x, base) == a);
      CHECK(bucket_index_exact_search(x, base).value == a);
    }
  }
}

TEST_CASE("bucket boundary forms") {
  CHECK(bucket_boundary_exact(BigInt(4), Rational(3, 4)) == Rational(81, 256));
  CHECK(bucket_boundary(BigInt(4), Rational(3, 4)).to_exact() == Rational(81, 256));
  CHECK(bucket_boundary_decimal(BigInt(4), Rational(3, 4), 8) == "3.1640625e-1");
  CHECK_THROWS_AS(bucket_boundary_exact(BigInt("10000000000"), Rational(99, 100)), std::overflow_error);
}

TEST_CASE("log ratio of eps to delta lies in its interval") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const unsigned long den = 3 + rng() % 1000000;
    const unsigned long num = 1 + rng() % ((den - 1) / 2);
    const Rational eps(num, den);
    if (eps >= Rational(1, 2)) continue;
    CHECK(testing::log_ratio_in_interval(eps));
  }
}
