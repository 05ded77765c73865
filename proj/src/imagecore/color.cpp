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

#include "lfmark/image.hpp"

namespace lfmark {

namespace {

constexpr double kWr = 0.299;
constexpr double kWg = 0.587;
constexpr double kWb = 0.114;
constexpr double kU = 0.492;
constexpr double kV = 0.877;

}  // namespace

ImageBuf to_yuv(const ImageBuf& rgb) {
  if (rgb.colorspace() != ColorSpace::kRgb) {
    throw std::invalid_argument("to_yuv: expected RGB input, got " +
                                std::string(to_string(rgb.colorspace())));
  }
  ImageBuf out(rgb.width(), rgb.height(), ColorSpace::kYuv);
  auto r = rgb.plane(0), g = rgb.plane(1), b = rgb.plane(2);
  auto y = out.plane(0), u = out.plane(1), v = out.plane(2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double luma = kWr * r[i] + kWg * g[i] + kWb * b[i];
    y[i] = luma;
    u[i] = kU * (b[i] - luma);
    v[i] = kV * (r[i] - luma);
  }
  return out;
}

ImageBuf from_yuv(const ImageBuf& yuv) {
  if (yuv.colorspace() != ColorSpace::kYuv) {
    throw std::invalid_argument("from_yuv: expected YUV input, got " +
                                std::string(to_string(yuv.colorspace())));
  }
  ImageBuf out(yuv.width(), yuv.height(), ColorSpace::kRgb);
  auto y = yuv.plane(0), u = yuv.plane(1), v = yuv.plane(2);
  auto r = out.plane(0), g = out.plane(1), b = out.plane(2);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double rr = y[i] + v[i] / kV;
    const double bb = y[i] + u[i] / kU;
    r[i] = rr;
    b[i] = bb;
    g[i] = (y[i] - kWr * rr - kWb * bb) / kWg;
  }
  return out;
}

ImageBuf luminance(const ImageBuf& img) {
  switch (img.colorspace()) {
    case ColorSpace::kGray:
      return img;
    case ColorSpace::kYuv:
      return img.channel(0);
    case ColorSpace::kRgb:
      break;
  }
  ImageBuf out(img.width(), img.height(), ColorSpace::kGray);
  auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
  auto y = out.plane(0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = kWr * r[i] + kWg * g[i] + kWb * b[i];
  }
  return out;
}

}  // namespace lfmark
