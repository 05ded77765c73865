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
#include <numeric>
#include <stdexcept>

#include "lfmark/rng.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark {

namespace detail {

std::vector<int> block_order(std::uint64_t seed, int blocks) {
  std::vector<int> order(static_cast<std::size_t>(blocks));
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(derive_seed(seed, 0xB10C));
  rng.shuffle(order);
  return order;
}

ImageBuf replace_luma(const ImageBuf& rgb, const ImageBuf& new_y) {
  // Y' = Y + d with U, V fixed maps to R, G, B each shifted by d.
  const ImageBuf old_y = luminance(rgb);
  ImageBuf out = rgb;
  auto y0 = old_y.plane(0);
  auto y1 = new_y.plane(0);
  for (int c = 0; c < 3; ++c) {
    auto p = out.plane(c);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += y1[i] - y0[i];
  }
  out.clamp(0.0, 1.0);
  return out;
}

double qim_quantize(double value, double step, bool bit) {
  const double offset = bit ? step / 2.0 : 0.0;
  return std::round((value - offset) / step) * step + offset;
}

double qim_margin(double value, double step) {
  const double e0 = std::abs(value - qim_quantize(value, step, false));
  const double e1 = std::abs(value - qim_quantize(value, step, true));
  return std::clamp((e0 - e1) / (step / 2.0), -1.0, 1.0);
}

void decide_bit(const std::vector<double>& margins, bool& bit, double& soft) {
  int votes = 0;
  double sum = 0.0;
  for (double m : margins) {
    votes += (m > 0.0) - (m < 0.0);
    sum += m;
  }
  const double mean = margins.empty() ? 0.0 : sum / static_cast<double>(margins.size());
  bit = votes != 0 ? votes > 0 : mean > 0.0;
  soft = bit ? mean : -mean;
}

}  // namespace detail

double Extraction::score_against(const BitMessage& truth) const {
  if (truth.size() != bits.size()) {
    throw std::invalid_argument("score_against: length mismatch");
  }
  if (bits.size() == 0) return 0.0;
  double acc = 0.0;
  for (int i = 0; i < bits.size(); ++i) {
    acc += bits[i] == truth[i] ? soft[i] : -soft[i];
  }
  return acc / bits.size();
}

namespace {

void check_native(const ImageBuf& img, const WatermarkKey& key, const char* who) {
  if (img.colorspace() != ColorSpace::kRgb) {
    throw std::invalid_argument(std::string(who) + ": expected an RGB image");
  }
  if (img.width() != key.native_width || img.height() != key.native_height) {
    throw std::invalid_argument(std::string(who) + ": wrong resolution " +
                                std::to_string(img.width()) + "x" +
                                std::to_string(img.height()) + ", key expects " +
                                std::to_string(key.native_width) + "x" +
                                std::to_string(key.native_height));
  }
}

}  // namespace

ImageBuf embed(MethodId method, const ImageBuf& img, const BitMessage& msg,
               const WatermarkKey& key) {
  check_native(img, key, "embed");
  if (msg.size() != capacity(method)) {
    throw std::invalid_argument("embed: message has " + std::to_string(msg.size()) +
                                " bits, " + std::string(to_string(method)) + " carries " +
                                std::to_string(capacity(method)));
  }
  validate_key(method, key, msg.size());
  switch (method) {
    case MethodId::kLfqim:
      return detail::lfqim_embed(img, msg, key);
    case MethodId::kDwtDct:
      return detail::dwt_dct_embed(img, msg, key);
    case MethodId::kDwtDctSvd:
      return detail::dwt_dct_svd_embed(img, msg, key);
  }
  throw std::invalid_argument("embed: unknown method");
}

Extraction extract(MethodId method, const ImageBuf& img, const WatermarkKey& key) {
  check_native(img, key, "extract");
  const int k = capacity(method);
  validate_key(method, key, k);
  switch (method) {
    case MethodId::kLfqim:
      return detail::lfqim_extract(img, key, k);
    case MethodId::kDwtDct:
      return detail::dwt_dct_extract(img, key, k);
    case MethodId::kDwtDctSvd:
      return detail::dwt_dct_svd_extract(img, key, k);
  }
  throw std::invalid_argument("extract: unknown method");
}

ImageBuf scaled_embed(MethodId method, const ImageBuf& img, const BitMessage& msg,
                      const WatermarkKey& key) {
  if (img.width() < 8 || img.height() < 8) {
    throw std::invalid_argument("scaled_embed: input must be at least 8x8");
  }
  // Both resizes are identities at the native resolution.
  if (img.width() == key.native_width && img.height() == key.native_height) {
    return embed(method, img, msg, key);
  }
  const int h = img.height();
  const int w = img.width();

  // Work in [-1, 1].
  ImageBuf x = img;
  for (double& v : x.data()) v = 2.0 * v - 1.0;
  const ImageBuf x_native = resize_bilinear(x, key.native_width, key.native_height);

  ImageBuf probe = x_native;
  for (double& v : probe.data()) v = 0.5 * (v + 1.0);
  const ImageBuf encoded = embed(method, probe, msg, key);

  ImageBuf residual = encoded;
  auto rd = residual.data();
  auto xn = x_native.data();
  for (std::size_t i = 0; i < rd.size(); ++i) rd[i] = (2.0 * rd[i] - 1.0) - xn[i];
  const ImageBuf r_full = resize_bilinear(residual, w, h);

  ImageBuf out = x;
  auto od = out.data();
  auto rf = r_full.data();
  for (std::size_t i = 0; i < od.size(); ++i) {
    od[i] = 0.5 * (std::clamp(od[i] + rf[i], -1.0, 1.0) + 1.0);
  }
  return out;
}

Extraction scaled_extract(MethodId method, const ImageBuf& img, const WatermarkKey& key) {
  if (img.width() == key.native_width && img.height() == key.native_height) {
    return extract(method, img, key);
  }
  return extract(method, resize_bilinear(img, key.native_width, key.native_height), key);
}

}  // namespace lfmark
