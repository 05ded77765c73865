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

#include <cmath>
#include <stdexcept>

#include "lfmark/rng.hpp"
#include "lfmark/spectral.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark::detail {

namespace {

std::size_t mirror_index(int u, int v, int w, int h) {
  return static_cast<std::size_t>((h - v) % h) * w + static_cast<std::size_t>((w - u) % w);
}

// One representative per conjugate pair; self-conjugate bins are skipped
// because their magnitude cannot move independently of a real image.
std::vector<Bin> half_plane_bins(const WatermarkKey& key) {
  const int w = key.native_width;
  const int h = key.native_height;
  std::vector<Bin> bins;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const std::size_t idx = static_cast<std::size_t>(v) * w + u;
      if (idx >= mirror_index(u, v, w, h)) continue;
      if (in_annulus(radial_fraction(u, v, w, h), key.r_low, key.r_high)) {
        bins.push_back({u, v});
      }
    }
  }
  return bins;
}

}  // namespace

std::size_t lfqim_available_bins(const WatermarkKey& key) {
  return half_plane_bins(key).size();
}

std::vector<Bin> lfqim_positions(const WatermarkKey& key, int k) {
  std::vector<Bin> bins = half_plane_bins(key);
  const std::size_t need = static_cast<std::size_t>(k) * key.redundancy;
  if (bins.size() < need) {
    throw std::invalid_argument("capacity overflow: annulus holds " +
                                std::to_string(bins.size()) + " bins, need " +
                                std::to_string(need));
  }
  SplitMix64 rng(derive_seed(key.seed, 0x1F91));
  rng.shuffle(bins);
  bins.resize(need);
  return bins;
}

ImageBuf lfqim_embed(const ImageBuf& rgb, const BitMessage& msg, const WatermarkKey& key) {
  const int w = rgb.width();
  const int h = rgb.height();
  const int m = key.redundancy;
  const double step = key.delta * w * h;
  const auto pos = lfqim_positions(key, msg.size());

  Spectrum spec = fft2(luminance(rgb));
  for (int i = 0; i < msg.size(); ++i) {
    for (int j = 0; j < m; ++j) {
      const Bin b = pos[static_cast<std::size_t>(i) * m + j];
      Complex& f = spec.at(b.u, b.v);
      const double mag = std::abs(f);
      double q = qim_quantize(mag, step, msg[i]);
      if (q < 0.0) q += step;
      const Complex unit = mag > 0.0 ? f / mag : Complex(1.0, 0.0);
      f = q * unit;
      spec.at((w - b.u) % w, (h - b.v) % h) = std::conj(f);
    }
  }
  return replace_luma(rgb, ifft2(spec, ColorSpace::kGray));
}

Extraction lfqim_extract(const ImageBuf& rgb, const WatermarkKey& key, int k) {
  const int m = key.redundancy;
  const double step = key.delta * rgb.width() * rgb.height();
  const auto pos = lfqim_positions(key, k);
  const Spectrum spec = fft2(luminance(rgb));

  Extraction out{BitMessage(k), std::vector<double>(static_cast<std::size_t>(k))};
  std::vector<double> margins(static_cast<std::size_t>(m));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      const Bin b = pos[static_cast<std::size_t>(i) * m + j];
      margins[j] = qim_margin(std::abs(spec.at(b.u, b.v)), step);
    }
    bool bit = false;
    decide_bit(margins, bit, out.soft[i]);
    out.bits.set(i, bit);
  }
  return out;
}

}  // namespace lfmark::detail
