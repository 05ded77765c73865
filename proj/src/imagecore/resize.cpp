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
#include <vector>

#include "lfmark/image.hpp"

namespace lfmark {

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Half-pixel-centred source coordinates, clamped to the edge samples.
std::vector<Tap> make_taps(int in, int out) {
  std::vector<Tap> taps(out);
  const double scale = static_cast<double>(in) / out;
  for (int i = 0; i < out; ++i) {
    double src = (i + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in - 1));
    const int lo = static_cast<int>(std::floor(src));
    const int hi = std::min(lo + 1, in - 1);
    taps[i] = {lo, hi, src - lo};
  }
  return taps;
}

}  // namespace

ImageBuf resize_bilinear(const ImageBuf& img, int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("resize_bilinear: target dimensions must be >= 1");
  }
  if (img.empty()) throw std::invalid_argument("resize_bilinear: empty image");
  if (width == img.width() && height == img.height()) return img;

  const auto xt = make_taps(img.width(), width);
  const auto yt = make_taps(img.height(), height);
  ImageBuf out(width, height, img.colorspace());
  for (int c = 0; c < img.channels(); ++c) {
    auto src = img.plane(c);
    auto dst = out.plane(c);
    std::vector<double> tmp(static_cast<std::size_t>(img.height()) * width);
    for (int y = 0; y < img.height(); ++y) {
      const double* s = src.data() + static_cast<std::size_t>(y) * img.width();
      double* t = tmp.data() + static_cast<std::size_t>(y) * width;
      for (int x = 0; x < width; ++x) {
        const Tap& tp = xt[x];
        t[x] = s[tp.lo] + tp.frac * (s[tp.hi] - s[tp.lo]);
      }
    }
    for (int y = 0; y < height; ++y) {
      const Tap& tp = yt[y];
      const double* a = tmp.data() + static_cast<std::size_t>(tp.lo) * width;
      const double* b = tmp.data() + static_cast<std::size_t>(tp.hi) * width;
      double* d = dst.data() + static_cast<std::size_t>(y) * width;
      for (int x = 0; x < width; ++x) d[x] = a[x] + tp.frac * (b[x] - a[x]);
    }
  }
  return out;
}

}  // namespace lfmark
