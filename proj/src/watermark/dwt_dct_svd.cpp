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

#include "blocks.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark::detail {

namespace {

Matrix to_matrix(const Block8& blk) {
  Matrix m(8, 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) m(r, c) = blk[r * 8 + c];
  }
  return m;
}

}  // namespace

ImageBuf dwt_dct_svd_embed(const ImageBuf& rgb, const BitMessage& msg,
                           const WatermarkKey& key) {
  const int k = msg.size();
  const double step = key.delta;
  HaarBands bands = haar_dwt2(luminance(rgb));
  const int blocks = block_count(bands.ll);
  const auto order = block_order(key.seed, blocks);
  for (int t = 0; t < blocks; ++t) {
    const int b = order[t];
    Block8 blk = read_block(bands.ll, b);
    const SvdResult svd = svd_small(to_matrix(blk));
    const double s1 = svd.s[0];
    double q = qim_quantize(s1, step, msg[t % k]);
    // The modified value must stay the largest singular value.
    while (q < svd.s[1]) q += step;
    const double d = q - s1;
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) blk[r * 8 + c] += d * svd.u(r, 0) * svd.v(c, 0);
    }
    write_block(bands.ll, b, blk);
  }
  return replace_luma(rgb, haar_idwt2(bands));
}

Extraction dwt_dct_svd_extract(const ImageBuf& rgb, const WatermarkKey& key, int k) {
  const HaarBands bands = haar_dwt2(luminance(rgb));
  const int blocks = block_count(bands.ll);
  const auto order = block_order(key.seed, blocks);
  std::vector<std::vector<double>> margins(static_cast<std::size_t>(k));
  for (int t = 0; t < blocks; ++t) {
    const SvdResult svd = svd_small(to_matrix(read_block(bands.ll, order[t])));
    margins[t % k].push_back(qim_margin(svd.s[0], key.delta));
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
