// Copyright 2026 The lfmark Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <stdexcept>

#include "lfmark/rng.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark {

namespace {

int nibble_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitMessage BitMessage::random(int k, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<bool> bits(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) bits[i] = (rng.next() >> 63) != 0;
  return BitMessage(std::move(bits));
}

BitMessage BitMessage::from_hex(std::string_view hex, int k) {
  if (k <= 0) throw std::invalid_argument("BitMessage::from_hex: k must be positive");
  const std::size_t want = (static_cast<std::size_t>(k) + 3) / 4;
  if (hex.size() != want) {
    throw std::invalid_argument("message hex must have " + std::to_string(want) +
                                " nibbles for " + std::to_string(k) + " bits, got " +
                                std::to_string(hex.size()));
  }
  BitMessage msg(k);
  for (std::size_t n = 0; n < hex.size(); ++n) {
    const int v = nibble_value(hex[n]);
    if (v < 0) throw std::invalid_argument("message hex contains a non-hex character");
    for (int b = 0; b < 4; ++b) {
      const bool bit = (v >> (3 - b)) & 1;
      const std::size_t pos = n * 4 + b;
      if (pos < static_cast<std::size_t>(k)) {
        msg.set(static_cast<int>(pos), bit);
      } else if (bit) {
        throw std::invalid_argument("message hex sets padding bits beyond k");
      }
    }
  }
  return msg;
}

std::string BitMessage::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nibbles = (bits_.size() + 3) / 4;
  std::string out(nibbles, '0');
  for (std::size_t n = 0; n < nibbles; ++n) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t pos = n * 4 + b;
      v = (v << 1) | (pos < bits_.size() && bits_[pos] ? 1 : 0);
    }
    out[n] = kDigits[v];
  }
  return out;
}

BitMessage BitMessage::complement() const {
  std::vector<bool> flipped(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) flipped[i] = !bits_[i];
  return BitMessage(std::move(flipped));
}

}  // namespace lfmark
