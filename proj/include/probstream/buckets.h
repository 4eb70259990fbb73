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

// Buckets over a base c in (0, 1):  B_a = (c^(a+1), c^a].  Every x in (0, 1]
// lies in exactly one of them.  With c = 1 - eps/n the bucket index of each
// stream element is what the product and window sketches accumulate.

#include <cstdint>
#include <string>

#include "probstream/numerics.h"
#include "probstream/value.h"

namespace probstream {

/// The approximation ratio eps together with the per-element ratio
/// eps' = eps / divisor (divisor is the stream bound n or the window size m).
class ApproxParams {
 public:
  /// Throws std::invalid_argument unless 0 < eps <= 1/2 and divisor >= 1.
  static ApproxParams make(const Rational& epsilon, std::uint64_t divisor);

  const Rational& epsilon() const noexcept { return epsilon_; }
  const Rational& epsilon_prime() const noexcept { return epsilon_prime_; }
  std::uint64_t divisor() const noexcept { return divisor_; }
  /// 1 - eps', the base of the per-element buckets.
  const Rational& base() const noexcept { return base_; }
  Rational one_minus_epsilon() const { return 1 - epsilon_; }

  /// -log2(1 - eps) as a double.  Display only; exact paths never use it.
  double delta() const;

 private:
  Rational epsilon_;
  Rational epsilon_prime_;
  Rational base_;
  std::uint64_t divisor_ = 1;
};

/// Throws std::invalid_argument unless 0 < eps <= 1/2.
void check_epsilon(const Rational& epsilon);

struct BucketIndex {
  BigInt value;

  friend bool operator==(const BucketIndex& a, const BucketIndex& b) {
    return a.value == b.value;
  }
};

/// The unique a with base^(a+1) < q <= base^a.  Throws std::invalid_argument
/// for q = 0 or a base outside (0, 1).
BucketIndex bucket_index(const Probability& q, const Rational& base);

/// Same contract for an arbitrary rational in (0, 1], e.g. a full product.
BucketIndex bucket_of_value(const Rational& x, const Rational& base);
BucketIndex bucket_of_value(const ProbabilityValue& x, const Rational& base);

/// Reference search using only exact comparisons: exponential search for the
/// first power below x, then binary search.  Throws std::overflow_error if a
/// probed power would exceed kExactPowerBitCap.
BucketIndex bucket_index_exact_search(const Rational& x, const Rational& base);

/// base^a as a symbolic value.
ProbabilityValue bucket_boundary(const BigInt& a, const Rational& base);
/// base^a exactly; throws std::overflow_error above kExactPowerBitCap.
Rational bucket_boundary_exact(const BigInt& a, const Rational& base);
/// base^a as a correctly rounded decimal with `digits` significant digits.
std::string bucket_boundary_decimal(const BigInt& a, const Rational& base, int digits);

}  // namespace probstream
