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

#include "lfmark/image.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lfmark {

int channel_count(ColorSpace cs) { return cs == ColorSpace::kGray ? 1 : 3; }

std::string_view to_string(ColorSpace cs) {
  switch (cs) {
    case ColorSpace::kRgb:
      return "RGB";
    case ColorSpace::kYuv:
      return "YUV";
    case ColorSpace::kGray:
      return "GRAY";
  }
  return "?";
}

ImageBuf::ImageBuf(int width, int height, ColorSpace cs, double fill)
    : width_(width), height_(height), channels_(channel_count(cs)), cs_(cs) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("ImageBuf: dimensions must be positive");
  }
  data_.assign(plane_size() * channels_, fill);
}

ImageBuf::ImageBuf(int width, int height, ColorSpace cs, std::vector<double> data)
    : width_(width), height_(height), channels_(channel_count(cs)), cs_(cs),
      data_(std::move(data)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("ImageBuf: dimensions must be positive");
  }
  if (data_.size() != plane_size() * channels_) {
    std::ostringstream msg;
    msg << "ImageBuf: data length " << data_.size() << " does not match "
        << width << "x" << height << "x" << channels_;
    throw std::invalid_argument(msg.str());
  }
}

std::span<double> ImageBuf::plane(int c) {
  return std::span<double>(data_).subspan(c * plane_size(), plane_size());
}

std::span<const double> ImageBuf::plane(int c) const {
  return std::span<const double>(data_).subspan(c * plane_size(), plane_size());
}

ImageBuf ImageBuf::channel(int c) const {
  if (c < 0 || c >= channels_) {
    throw std::out_of_range("ImageBuf::channel: index out of range");
  }
  auto p = plane(c);
  return ImageBuf(width_, height_, ColorSpace::kGray,
                  std::vector<double>(p.begin(), p.end()));
}

void ImageBuf::set_channel(int c, const ImageBuf& gray) {
  if (c < 0 || c >= channels_) {
    throw std::out_of_range("ImageBuf::set_channel: index out of range");
  }
  if (gray.channels() != 1 || gray.width() != width_ || gray.height() != height_) {
    throw std::invalid_argument("ImageBuf::set_channel: plane shape mismatch");
  }
  std::ranges::copy(gray.plane(0), plane(c).begin());
}

ImageBuf ImageBuf::with_colorspace(ColorSpace cs) const {
  if (channel_count(cs) != channels_) {
    throw std::invalid_argument("ImageBuf::with_colorspace: channel count mismatch");
  }
  ImageBuf out = *this;
  out.cs_ = cs;
  return out;
}

void ImageBuf::clamp(double lo, double hi) {
  for (double& v : data_) v = std::clamp(v, lo, hi);
}

bool ImageBuf::all_finite() const {
  return std::ranges::all_of(data_, [](double v) { return std::isfinite(v); });
}

}  // namespace lfmark
