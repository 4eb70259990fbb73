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

#include "probstream/bits.h"

#include <stdexcept>

namespace probstream {

BitString BitString::from_string(const std::string& digits) {
  BitString out;
  for (char c : digits) {
    if (c != '0' && c != '1') throw std::invalid_argument("not a bit string: " + digits);
    out.push_back(c == '1');
  }
  return out;
}

void BitString::append_uint(const BigInt& value, std::uint64_t width) {
  if (sgn(value) < 0) throw std::invalid_argument("cannot encode a negative value");
  if (bit_length(value) > width) {
    throw std::overflow_error(value.get_str() + " does not fit in " + std::to_string(width) +
                              " bits");
  }
  for (std::uint64_t i = width; i-- > 0;) {
    bits_.push_back(mpz_tstbit(value.get_mpz_t(), i) != 0);
  }
}

void BitString::append_minimal(const BigInt& value) { append_uint(value, bit_length(value)); }

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

bool BitReader::read_bit() {
  if (pos_ >= bits_.size()) throw std::out_of_range("bit string underrun");
  return bits_[pos_++];
}

BigInt BitReader::read_uint(std::uint64_t width) {
  if (width > remaining()) throw std::out_of_range("bit string underrun");
  BigInt out = 0;
  for (std::uint64_t i = 0; i < width; ++i) {
    out <<= 1;
    if (read_bit()) out += 1;
  }
  return out;
}

std::uint64_t BitReader::read_u64(std::uint64_t width) {
  if (width > 64) throw std::invalid_argument("read_u64 width above 64");
  const BigInt v = read_uint(width);
  return mpz_get_ui(v.get_mpz_t());
}

}  // namespace probstream
