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
#include <sstream>
#include <stdexcept>

#include "lfmark/numeric.hpp"
#include "lfmark/spectral.hpp"

namespace lfmark {

namespace {

int signed_freq(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

std::string_view to_string(Band band) {
  switch (band) {
    case Band::kLow:
      return "low";
    case Band::kMid:
      return "mid";
    case Band::kHigh:
      return "high";
  }
  return "?";
}

Band parse_band(std::string_view name) {
  if (name == "low") return Band::kLow;
  if (name == "mid") return Band::kMid;
  if (name == "high") return Band::kHigh;
  throw std::invalid_argument("unknown band '" + std::string(name) + "'");
}

BandSpec BandSpec::defaults(Band band) {
  switch (band) {
    case Band::kLow:
      return {Band::kLow, 0.0, 0.125};
    case Band::kMid:
      return {Band::kMid, 0.125, 0.375};
    case Band::kHigh:
      return {Band::kHigh, 0.375, 1.0};
  }
  throw std::invalid_argument("BandSpec::defaults: bad band");
}

void BandSpec::validate() const {
  if (!(r_low >= 0.0 && r_low < r_high && r_high <= 1.0)) {
    std::ostringstream msg;
    msg << "BandSpec: need 0 <= r_low < r_high <= 1, got [" << r_low << ", " << r_high << ")";
    throw std::invalid_argument(msg.str());
  }
}

double radial_fraction(int u, int v, int width, int height) {
  const double fu = signed_freq(u, width) / (width / 2.0);
  const double fv = signed_freq(v, height) / (height / 2.0);
  return std::sqrt(fu * fu + fv * fv);
}

bool in_annulus(double r, double r_low, double r_high) {
  return r >= r_low && (r < r_high || r_high >= 1.0);
}

std::size_t BinMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BinMask band_mask(int width, int height, const BandSpec& band) {
  band.validate();
  BinMask mask(width, height);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      if (u == 0 && v == 0) continue;
      mask.set(u, v, in_annulus(radial_fraction(u, v, width, height), band.r_low, band.r_high));
    }
  }
  return mask;
}

Spectrum ring_pattern(int width, int height, double r_low, double r_high, double amplitude) {
  if (!(amplitude > 0.0)) throw std::invalid_argument("ring_pattern: amplitude must be > 0");
  if (!(r_low >= 0.0 && r_high <= 1.0) || r_high <= r_low) {
    throw std::invalid_argument("ring_pattern: empty annulus");
  }
  Spectrum out(width, height, 1);
  std::size_t selected = 0;
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      if (u == 0 && v == 0) continue;
      if (in_annulus(radial_fraction(u, v, width, height), r_low, r_high)) {
        out.at(u, v) = Complex(amplitude, 0.0);
        ++selected;
      }
    }
  }
  if (selected == 0) throw std::invalid_argument("ring_pattern: empty annulus");
  return out;
}

MagnitudeMap MagnitudeMap::channel_mean() const {
  MagnitudeMap out(width_, height_, 1);
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  for (int c = 0; c < channels_; ++c)
    for (std::size_t i = 0; i < n; ++i) out.data_[i] += data_[c * n + i];
  for (double& v : out.data_) v /= channels_;
  return out;
}

MagnitudeMap magnitude(const Spectrum& spec) {
  MagnitudeMap out(spec.width(), spec.height(), spec.channels());
  auto src = spec.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::abs(src[i]);
  return out;
}

MagnitudeMap spectral_diff(const ImageBuf& a, const ImageBuf& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("spectral_diff: shape mismatch");
  const Spectrum fa = fft2(a);
  const Spectrum fb = fft2(b);
  MagnitudeMap out(a.width(), a.height(), a.channels());
  auto sa = fa.data();
  auto sb = fb.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::abs(sa[i] - sb[i]);
  return out;
}

std::vector<double> log_magnitude_centered(const MagnitudeMap& map) {
  const MagnitudeMap mean = map.channels() == 1 ? map : map.channel_mean();
  const int w = mean.width();
  const int h = mean.height();
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int v = 0; v < h; ++v) {
    const int y = (v + h / 2) % h;
    for (int u = 0; u < w; ++u) {
      const int x = (u + w / 2) % w;
      out[static_cast<std::size_t>(y) * w + x] = std::log1p(mean.at(u, v));
    }
  }
  return out;
}

double band_energy(const MagnitudeMap& map, const BandSpec& band) {
  const BinMask mask = band_mask(map.width(), map.height(), band);
  KahanSum total;
  for (int c = 0; c < map.channels(); ++c)
    for (int v = 0; v < map.height(); ++v)
      for (int u = 0; u < map.width(); ++u)
        if (mask(u, v)) {
          const double m = map.at(u, v, c);
          total += m * m;
        }
  return total.sum();
}

}  // namespace lfmark
