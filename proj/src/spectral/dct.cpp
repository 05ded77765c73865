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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lfmark/spectral.hpp"

namespace lfmark {

namespace {

// basis[k][n] = c(k) cos((2n + 1) k pi / 16), c(0) = sqrt(1/8), else sqrt(2/8).
const std::array<std::array<double, 8>, 8>& dct_basis() {
  static const auto table = [] {
    std::array<std::array<double, 8>, 8> t{};
    for (int k = 0; k < 8; ++k) {
      const double c = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int n = 0; n < 8; ++n) {
        t[k][n] = c * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

Block8 dct2_block(std::span<const double> block, Direction dir) {
  if (block.size() != 64) {
    throw std::invalid_argument("dct2_block: expected an 8x8 block (64 values), got " +
                                std::to_string(block.size()));
  }
  const auto& b = dct_basis();
  Block8 tmp{};
  Block8 out{};
  if (dir == Direction::kForward) {
    // rows: tmp[y][u] = sum_x b[u][x] in[y][x]; cols: out[v][u] = sum_y b[v][y] tmp[y][u]
    for (int y = 0; y < 8; ++y)
      for (int u = 0; u < 8; ++u) {
        double acc = 0.0;
        for (int x = 0; x < 8; ++x) acc += b[u][x] * block[y * 8 + x];
        tmp[y * 8 + u] = acc;
      }
    for (int v = 0; v < 8; ++v)
      for (int u = 0; u < 8; ++u) {
        double acc = 0.0;
        for (int y = 0; y < 8; ++y) acc += b[v][y] * tmp[y * 8 + u];
        out[v * 8 + u] = acc;
      }
  } else {
    for (int v = 0; v < 8; ++v)
      for (int x = 0; x < 8; ++x) {
        double acc = 0.0;
        for (int u = 0; u < 8; ++u) acc += b[u][x] * block[v * 8 + u];
        tmp[v * 8 + x] = acc;
      }
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) {
        double acc = 0.0;
        for (int v = 0; v < 8; ++v) acc += b[v][y] * tmp[v * 8 + x];
        out[y * 8 + x] = acc;
      }
  }
  return out;
}

}  // namespace lfmark
