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

#include <cstdint>
#include <string>
#include <vector>

#include "probstream/numerics.h"

namespace probstream {

/// An append-only sequence of bits, used as the wire form of automaton
/// states.  Its length is the message cost in the protocol simulator.
class BitString {
 public:
  BitString() = default;
  /// Parses a string of '0' and '1' characters.
  static BitString from_string(const std::string& digits);

  void push_back(bool bit) { bits_.push_back(bit); }
  /// Appends `value` in exactly `width` bits, most significant first.
  /// Throws std::overflow_error if it does not fit.
  void append_uint(const BigInt& value, std::uint64_t width);
  /// Appends the minimal binary form of `value` (no bits for 0).
  void append_minimal(const BigInt& value);
  void append(const BitString& other);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_.at(i); }
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

/// Sequential reader over a BitString; throws std::out_of_range on underrun.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  bool read_bit();
  BigInt read_uint(std::uint64_t width);
  std::uint64_t read_u64(std::uint64_t width);
  std::size_t remaining() const noexcept { return bits_.size() - pos_; }
  bool done() const noexcept { return remaining() == 0; }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

}  // namespace probstream
