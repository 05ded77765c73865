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
#include <cmath>
#include <stdexcept>

#include "lfmark/attacks.hpp"
#include "lfmark/spectral.hpp"

namespace lfmark {

namespace {

// ITU-T T.81 Annex K, tables K.1 and K.2 (natural row-major order).
constexpr std::array<int, 64> kLumaBase = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

constexpr std::array<int, 64> kChromaBase = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

std::array<double, 64> scaled_table(const std::array<int, 64>& base, int quality) {
  std::array<double, 64> t{};
  for (int i = 0; i < 64; ++i) t[i] = scaled_quant_step(base[i], quality);
  return t;
}

// Plane with dimensions padded to a multiple of `m` by edge replication.
struct Plane {
  int w;
  int h;
  std::vector<double> v;
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; }
  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }
};

void quantize_blocks(Plane& p, const std::array<double, 64>& table) {
  Block8 blk{};
  for (int by = 0; by < p.h; by += 8) {
    for (int bx = 0; bx < p.w; bx += 8) {
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) blk[y * 8 + x] = p.at(bx + x, by + y) - 128.0;
      Block8 coef = dct2_block(blk, Direction::kForward);
      for (int i = 0; i < 64; ++i) coef[i] = std::round(coef[i] / table[i]) * table[i];
      const Block8 rec = dct2_block(coef, Direction::kInverse);
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) p.at(bx + x, by + y) = rec[y * 8 + x] + 128.0;
    }
  }
}

}  // namespace

int scaled_quant_step(int base, int quality) {
  if (quality < 1 || quality > 100) {
    throw std::invalid_argument("JPEG quality must be in [1, 100], got " +
                                std::to_string(quality));
  }
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  return std::clamp((base * scale + 50) / 100, 1, 255);
}

ImageBuf jpeg_roundtrip(const ImageBuf& img, int quality) {
  if (img.colorspace() != ColorSpace::kRgb) {
    throw std::invalid_argument("jpeg_roundtrip: expected RGB input");
  }
  const auto luma_q = scaled_table(kLumaBase, quality);
  const auto chroma_q = scaled_table(kChromaBase, quality);

  const int w = img.width();
  const int h = img.height();
  const int pw = (w + 15) / 16 * 16;
  const int ph = (h + 15) / 16 * 16;
  Plane y{pw, ph, std::vector<double>(static_cast<std::size_t>(pw) * ph)};
  Plane cb = y;
  Plane cr = y;
  for (int j = 0; j < ph; ++j) {
    const int sy = std::min(j, h - 1);
    for (int i = 0; i < pw; ++i) {
      const int sx = std::min(i, w - 1);
      const double r = img.at(sx, sy, 0) * 255.0;
      const double g = img.at(sx, sy, 1) * 255.0;
      const double b = img.at(sx, sy, 2) * 255.0;
      y.at(i, j) = 0.299 * r + 0.587 * g + 0.114 * b;
      cb.at(i, j) = -0.168736 * r - 0.331264 * g + 0.5 * b + 128.0;
      cr.at(i, j) = 0.5 * r - 0.418688 * g - 0.081312 * b + 128.0;
    }
  }

  // 4:2:0 by 2x2 box averaging.
  auto subsample = [&](const Plane& full) {
    Plane half{pw / 2, ph / 2, std::vector<double>(static_cast<std::size_t>(pw / 2) * (ph / 2))};
    for (int j = 0; j < half.h; ++j)
      for (int i = 0; i < half.w; ++i)
        half.at(i, j) = 0.25 * (full.at(2 * i, 2 * j) + full.at(2 * i + 1, 2 * j) +
                                full.at(2 * i, 2 * j + 1) + full.at(2 * i + 1, 2 * j + 1));
    return half;
  };
  Plane cb_half = subsample(cb);
  Plane cr_half = subsample(cr);

  quantize_blocks(y, luma_q);
  quantize_blocks(cb_half, chroma_q);
  quantize_blocks(cr_half, chroma_q);

  auto upsample = [&](const Plane& half) {
    ImageBuf small(half.w, half.h, ColorSpace::kGray, half.v);
    return resize_bilinear(small, pw, ph);
  };
  const ImageBuf cb_up = upsample(cb_half);
  const ImageBuf cr_up = upsample(cr_half);

  ImageBuf out(w, h, ColorSpace::kRgb);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const double yy = y.at(i, j);
      const double u = cb_up.at(i, j) - 128.0;
      const double v = cr_up.at(i, j) - 128.0;
      out.at(i, j, 0) = (yy + 1.402 * v) / 255.0;
      out.at(i, j, 1) = (yy - 0.344136 * u - 0.714136 * v) / 255.0;
      out.at(i, j, 2) = (yy + 1.772 * u) / 255.0;
    }
  }
  out.clamp(0.0, 1.0);
  return out;
}

}  // namespace lfmark
