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

#include <algorithm>

#include "blocks.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark::detail {

namespace {

// Mid-band pair (u=2, v=1) and (u=1, v=2).
constexpr int kCoefA = 1 * 8 + 2;
constexpr int kCoefB = 2 * 8 + 1;

}  // namespace

ImageBuf dwt_dct_embed(const ImageBuf& rgb, const BitMessage& msg, const WatermarkKey& key) {
  const int k = msg.size();
  const double margin = key.delta;
  HaarBands bands = haar_dwt2(luminance(rgb));
  const int blocks = block_count(bands.hl);
  const auto order = block_order(key.seed, blocks);
  for (int t = 0; t < blocks; ++t) {
    const int b = order[t];
    Block8 coef = dct2_block(read_block(bands.hl, b), Direction::kForward);
    const double sign = msg[t % k] ? 1.0 : -1.0;
    const double diff = coef[kCoefA] - coef[kCoefB];
    if (sign * diff >= margin) continue;
    const double mean = 0.5 * (coef[kCoefA] + coef[kCoefB]);
    coef[kCoefA] = mean + sign * margin / 2.0;
    coef[kCoefB] = mean - sign * margin / 2.0;
    write_block(bands.hl, b, dct2_block(coef, Direction::kInverse));
  }
  return replace_luma(rgb, haar_idwt2(bands));
}

Extraction dwt_dct_extract(const ImageBuf& rgb, const WatermarkKey& key, int k) {
  const HaarBands bands = haar_dwt2(luminance(rgb));
  const int blocks = block_count(bands.hl);
  const auto order = block_order(key.seed, blocks);
  std::vector<std::vector<double>> margins(static_cast<std::size_t>(k));
  for (int t = 0; t < blocks; ++t) {
    const Block8 coef = dct2_block(read_block(bands.hl, order[t]), Direction::kForward);
    const double diff = coef[kCoefA] - coef[kCoefB];
    margins[t % k].push_back(std::clamp(diff / key.delta, -1.0, 1.0));
  }
  Extraction out{BitMessage(k), std::vector<double>(static_cast<std::size_t>(k))};
  for (int i = 0; i < k; ++i) {
    bool bit = false;
    decide_bit(margins[i], bit, out.soft[i]);
    out.bits.set(i, bit);
  }
  return out;
}

}  // namespace lfmark::detail
