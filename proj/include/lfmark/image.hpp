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

#ifndef LFMARK_IMAGE_HPP_
#define LFMARK_IMAGE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lfmark {

enum class ColorSpace { kRgb, kYuv, kGray };

int channel_count(ColorSpace cs);
std::string_view to_string(ColorSpace cs);

/// Planar floating-point raster. Sample (x, y) of channel c lives at
/// data()[(c * height + y) * width + x]. Stored images use the nominal range
/// [0, 1]; YUV chroma planes are zero-centred.
class ImageBuf {
 public:
  ImageBuf() = default;
  ImageBuf(int width, int height, ColorSpace cs, double fill = 0.0);
  ImageBuf(int width, int height, ColorSpace cs, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  ColorSpace colorspace() const { return cs_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<double> plane(int c);
  std::span<const double> plane(int c) const;

  /// Copy of channel `c` as a GRAY image.
  ImageBuf channel(int c) const;
  void set_channel(int c, const ImageBuf& gray);

  /// Reinterprets the colour tag without touching samples. Channel counts
  /// must agree.
  ImageBuf with_colorspace(ColorSpace cs) const;

  bool same_shape(const ImageBuf& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  void clamp(double lo, double hi);
  bool all_finite() const;

  friend bool operator==(const ImageBuf& a, const ImageBuf& b) {
    return a.same_shape(b) && a.cs_ == b.cs_ && a.data_ == b.data_;
  }

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  ColorSpace cs_ = ColorSpace::kGray;
  std::vector<double> data_;
};

// Colour transforms. BT.601 full range, chroma centred at zero:
//   Y = 0.299 R + 0.587 G + 0.114 B,  U = 0.492 (B - Y),  V = 0.877 (R - Y)
ImageBuf to_yuv(const ImageBuf& rgb);
ImageBuf from_yuv(const ImageBuf& yuv);
/// Y plane of an RGB image (GRAY images are returned unchanged).
ImageBuf luminance(const ImageBuf& img);

/// Separable bilinear resampling with half-pixel-centred coordinates
/// (src = (dst + 0.5) * in / out - 0.5, clamped at the borders).
ImageBuf resize_bilinear(const ImageBuf& img, int width, int height);

/// 10 log10(1 / MSE) over all samples; +infinity when the images are equal.
double psnr(const ImageBuf& a, const ImageBuf& b);

/// Mean SSIM on the luminance channel: 11x11 Gaussian window, sigma 1.5,
/// K1 = 0.01, K2 = 0.03, dynamic range 1.
double ssim(const ImageBuf& a, const ImageBuf& b);

/// Unweighted MSE between to_yuv(a) and to_yuv(b) over all Y, U, V samples.
double mse_yuv(const ImageBuf& a, const ImageBuf& b);

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& reason);
  const std::filesystem::path& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::filesystem::path path_;
  std::string reason_;
};

/// Loads an 8-bit PNG or binary PPM (P6) as RGB with samples v / 255. The
/// format is detected from the file signature.
ImageBuf load_image(const std::filesystem::path& path);

/// Saves RGB or GRAY as 8-bit, quantising with round-half-up and clamping.
/// The format follows the extension: ".ppm" writes P6 (RGB only), anything
/// else writes PNG.
void save_image(const std::filesystem::path& path, const ImageBuf& img);

/// round(v * 255) clamped to [0, 255], halves rounded up.
unsigned char quantize_sample(double v);

}  // namespace lfmark

#endif  // LFMARK_IMAGE_HPP_
