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

#ifndef LFMARK_WATERMARK_BLOCKS_HPP_
#define LFMARK_WATERMARK_BLOCKS_HPP_

#include "lfmark/spectral.hpp"

namespace lfmark::detail {

// 8x8 tiles of a single-channel sub-band, numbered row-major.
inline int block_columns(const ImageBuf& band) { return band.width() / 8; }
inline int block_count(const ImageBuf& band) {
  return (band.width() / 8) * (band.height() / 8);
}

inline Block8 read_block(const ImageBuf& band, int index) {
  const int bx = (index % block_columns(band)) * 8;
  const int by = (index / block_columns(band)) * 8;
  Block8 out{};
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) out[r * 8 + c] = band.at(bx + c, by + r);
  }
  return out;
}

inline void write_block(ImageBuf& band, int index, const Block8& blk) {
  const int bx = (index % block_columns(band)) * 8;
  const int by = (index / block_columns(band)) * 8;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) band.at(bx + c, by + r) = blk[r * 8 + c];
  }
}

}  // namespace lfmark::detail

#endif  // LFMARK_WATERMARK_BLOCKS_HPP_
