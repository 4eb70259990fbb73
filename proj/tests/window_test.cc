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

#include "probstream/window.h"
#include "test_support.h"

using namespace probstream;

namespace {

Probability pr(long r, long s) { return Probability::make(BigInt(r), BigInt(s)); }

std::vector<BigInt> indices(const WindowState& st) {
  std::vector<BigInt> out;
  for (const auto& s : st.ordered()) out.push_back(s.zero ? BigInt(-1) : s.index);
  return out;
}

// Recomputes the last-m product from scratch.
Rational window_product(const std::vector<Probability>& s, std::size_t end, std::uint64_t m) {
  Rational p = 1;
  for (std::size_t i = end > m ? end - m : 0; i < end; ++i) p *= s[i].value();
  return p;
}

bool sum_consistent(const WindowState& st) {
  BigInt sum = 0;
  std::uint64_t zeros = 0;
  for (const auto& s : st.ordered()) {
    if (s.zero) {
      ++zeros;
    } else {
      sum += s.index;
    }
  }
  return sum == st.index_sum && zeros == st.zero_count;
}

// Checks the guarantee at every prefix of s.
bool guarantee_holds(const WindowParams& p, const std::vector<Probability>& s) {
  auto st = swapp_init(p);
  auto naive = swapp_naive_init(p);
  for (std::size_t t = 0; t < s.size(); ++t) {
    st = swapp_step(p, st, s[t]);
    naive = swapp_naive_step(p, naive, s[t]);
    const Rational w = window_product(s, t + 1, p.m);
    if (swapp_naive_output(naive) != w) return false;
    if (!sum_consistent(st)) return false;
    const auto out = swapp_output(p, st);
    if (sgn(w) == 0) {
      if (!out.is_zero()) return false;
    } else if (!testing::band_oracle(out, w, p.approx.epsilon())) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("window init") {
  const auto p2 = WindowParams::make(2, 1, Rational(1, 2));
  CHECK(indices(swapp_init(p2)) == std::vector<BigInt>{0, 0});
  const auto p1 = WindowParams::make(1, 1, Rational(1, 2));
  CHECK(indices(swapp_init(p1)) == std::vector<BigInt>{0});
  CHECK(swapp_output(p2, swapp_init(p2)).to_exact() == 1);
  CHECK_THROWS_AS(WindowParams::make(0, 1, Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(WindowParams::make(2, 1, Rational(2, 3)), std::invalid_argument);
}

TEST_CASE("window step examples") {
  const auto p = WindowParams::make(2, 1, Rational(1, 2));
  auto st = swapp_step(p, swapp_init(p), pr(1, 2));
  CHECK(indices(st) == std::vector<BigInt>{0, 2});
  CHECK(st.index_sum == 2);
  st = swapp_step(p, st, pr(1, 2));
  CHECK(indices(st) == std::vector<BigInt>{2, 2});
  CHECK(st.index_sum == 4);
  st = swapp_step(p, st, Probability::one());
  CHECK(indices(st) == std::vector<BigInt>{2, 0});
  CHECK(st.index_sum == 2);
  CHECK(swapp_output(p, st).to_exact() == Rational(9, 16));
  CHECK_THROWS_AS(swapp_step(p, st, pr(1, 3)), std::invalid_argument);
}

TEST_CASE("window zeros drop out after eviction") {
  const auto p = WindowParams::make(2, 2, Rational(1, 4));
  auto st = swapp_step(p, swapp_init(p), Probability());
  CHECK(swapp_output(p, st).is_zero());
  st = swapp_step(p, st, pr(3, 4));
  CHECK(swapp_output(p, st).is_zero());
  st = swapp_step(p, st, pr(3, 4));
  CHECK_FALSE(swapp_output(p, st).is_zero());
  CHECK(st.zero_count == 0);
}

TEST_CASE("naive window examples") {
  const auto p2 = WindowParams::make(2, 1, Rational(1, 2));
  auto n2 = swapp_naive_init(p2);
  for (const auto& q : {pr(1, 2), pr(1, 2), pr(1, 1)}) n2 = swapp_naive_step(p2, n2, q);
  CHECK(swapp_naive_output(n2) == Rational(1, 2));
  const auto p3 = WindowParams::make(3, 2, Rational(1, 2));
  const auto n3 = swapp_naive_step(p3, swapp_naive_init(p3), pr(2, 3));
  CHECK(n3.elements.size() == 3);
  CHECK(swapp_naive_output(n3) == Rational(2, 3));
  const auto p4 = WindowParams::make(2, 4, Rational(1, 2));
  auto n4 = swapp_naive_step(p4, swapp_naive_init(p4), pr(15, 16));
  const auto bits = swapp_naive_serialize(p4, n4);
  CHECK(bits.size() <= 16);
  CHECK(swapp_naive_output(swapp_naive_deserialize(p4, bits)) == Rational(15, 16));
}

TEST_CASE("window guarantee on random streams") {
  for (const std::uint64_t m : {1u, 3u, 8u}) {
    for (const Rational& eps : {Rational(1, 10), Rational(1, 2)}) {
      const auto p = WindowParams::make(m, 6, eps);
      std::mt19937_64 rng(m * 5 + 1);
      for (int t = 0; t < 150; ++t) {
        const auto s = testing::random_stream(rng, 1 + rng() % (4 * m), 6, t % 9 == 0);
        CHECK(guarantee_holds(p, s));
      }
    }
  }
}

TEST_CASE("window guarantee on every short stream over a small alphabet") {
  const std::vector<Probability> alphabet{pr(1, 4), pr(2, 3), Probability()};
  for (const std::uint64_t m : {1u, 2u, 3u}) {
    const auto p = WindowParams::make(m, 2, Rational(1, 3));
    for (std::size_t len = 1; len <= 6; ++len) {
      for (const auto& w : testing::all_words(alphabet, len)) CHECK(guarantee_holds(p, w));
    }
  }
}

TEST_CASE("window serialization and space") {
  const auto p = WindowParams::make(4, 8, Rational(1, 3));
  std::mt19937_64 rng(77);
  auto st = swapp_init(p);
  for (int t = 0; t < 200; ++t) {
    st = swapp_step(p, st, testing::random_probability(rng, 8, t % 11 == 0));
    const auto bits = swapp_serialize(p, st);
    CHECK(bits.size() == 4 * p.slot_width());
    const auto back = swapp_deserialize(p, bits);
    CHECK(back.ordered() == st.ordered());
    CHECK(back.index_sum == st.index_sum);
    CHECK(swapp_output(p, back).to_string() == swapp_output(p, st).to_string());
    const auto rep = swapp_space_report(p, st);
    CHECK(rep.within_bounds);
    CHECK(rep.state_bits <= rep.bound_bits);
    for (const auto& s : st.ordered()) {
      if (!s.zero) CHECK(Rational(s.index) <= rep.slot_index_bound);
    }
  }
}
