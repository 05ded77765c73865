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

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lfmark/image.hpp"
#include "lfmark/numeric.hpp"

namespace lfmark {

namespace {

void require_same_shape(const ImageBuf& a, const ImageBuf& b, const char* who) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(who) + ": shape mismatch (" +
                                std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + "x" +
                                std::to_string(a.channels()) + " vs " +
                                std::to_string(b.width()) + "x" +
                                std::to_string(b.height()) + "x" +
                                std::to_string(b.channels()) + ")");
  }
}

double mse(std::span<const double> a, std::span<const double> b) {
  KahanSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc.add(d * d);
  }
  return acc.mean();
}

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;

std::array<double, kWindow> gaussian_window() {
  std::array<double, kWindow> w{};
  double total = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    w[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

// Separable "valid" Gaussian filtering; output is (W-10) x (H-10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::array<double, kWindow>& k) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y) {
    const double* s = src.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[i] * s[x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) {
        acc += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double psnr(const ImageBuf& a, const ImageBuf& b) {
  require_same_shape(a, b, "psnr");
  const double err = mse(a.data(), b.data());
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / err);
}

double ssim(const ImageBuf& a, const ImageBuf& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("ssim: dimension mismatch");
  }
  if (a.width() < kWindow || a.height() < kWindow) {
    throw std::invalid_argument("ssim: image smaller than the 11x11 window");
  }
  const ImageBuf ya = luminance(a);
  const ImageBuf yb = luminance(b);
  const int w = a.width();
  const int h = a.height();
  const std::size_t n = ya.size();

  std::vector<double> x(ya.data().begin(), ya.data().end());
  std::vector<double> y(yb.data().begin(), yb.data().end());
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto k = gaussian_window();
  const auto mx = filter_valid(x, w, h, k);
  const auto my = filter_valid(y, w, h, k);
  const auto sxx = filter_valid(xx, w, h, k);
  const auto syy = filter_valid(yy, w, h, k);
  const auto sxy = filter_valid(xy, w, h, k);

  constexpr double c1 = (0.01 * 1.0) * (0.01 * 1.0);
  constexpr double c2 = (0.03 * 1.0) * (0.03 * 1.0);
  KahanSum acc;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2);
    const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2);
    acc.add(num / den);
  }
  return acc.mean();
}

double mse_yuv(const ImageBuf& a, const ImageBuf& b) {
  require_same_shape(a, b, "mse_yuv");
  return mse(to_yuv(a).data(), to_yuv(b).data());
}

}  // namespace lfmark
