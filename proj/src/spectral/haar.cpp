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

#include "lfmark/spectral.hpp"

namespace lfmark {

HaarBands haar_dwt2(const ImageBuf& gray) {
  if (gray.channels() != 1) throw std::invalid_argument("haar_dwt2: expected one channel");
  if (gray.width() % 2 != 0 || gray.height() % 2 != 0) {
    throw std::invalid_argument("haar_dwt2: width and height must be even");
  }
  const int hw = gray.width() / 2;
  const int hh = gray.height() / 2;
  HaarBands out{ImageBuf(hw, hh, ColorSpace::kGray), ImageBuf(hw, hh, ColorSpace::kGray),
                ImageBuf(hw, hh, ColorSpace::kGray), ImageBuf(hw, hh, ColorSpace::kGray)};
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double a = gray.at(2 * x, 2 * y);
      const double b = gray.at(2 * x + 1, 2 * y);
      const double c = gray.at(2 * x, 2 * y + 1);
      const double d = gray.at(2 * x + 1, 2 * y + 1);
      out.ll.at(x, y) = 0.5 * (a + b + c + d);
      out.lh.at(x, y) = 0.5 * (a - b + c - d);
      out.hl.at(x, y) = 0.5 * (a + b - c - d);
      out.hh.at(x, y) = 0.5 * (a - b - c + d);
    }
  }
  return out;
}

ImageBuf haar_idwt2(const HaarBands& bands) {
  const int hw = bands.ll.width();
  const int hh = bands.ll.height();
  for (const ImageBuf* b : {&bands.lh, &bands.hl, &bands.hh}) {
    if (b->width() != hw || b->height() != hh || b->channels() != 1) {
      throw std::invalid_argument("haar_idwt2: sub-band shape mismatch");
    }
  }
  ImageBuf out(2 * hw, 2 * hh, ColorSpace::kGray);
  for (int y = 0; y < hh; ++y) {
    for (int x = 0; x < hw; ++x) {
      const double ll = bands.ll.at(x, y);
      const double lh = bands.lh.at(x, y);
      const double hl = bands.hl.at(x, y);
      const double h2 = bands.hh.at(x, y);
      out.at(2 * x, 2 * y) = 0.5 * (ll + lh + hl + h2);
      out.at(2 * x + 1, 2 * y) = 0.5 * (ll - lh + hl - h2);
      out.at(2 * x, 2 * y + 1) = 0.5 * (ll + lh - hl - h2);
      out.at(2 * x + 1, 2 * y + 1) = 0.5 * (ll - lh - hl + h2);
    }
  }
  return out;
}

}  // namespace lfmark
