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
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lfmark/attacks.hpp"
#include "lfmark/rng.hpp"

namespace lfmark {

namespace {

// Symmetric reflection including the edge sample: ... c b a | a b c ... .
int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

struct Tap2 {
  int dx;
  int dy;
  double w;
};

ImageBuf convolve2d(const ImageBuf& img, const std::vector<Tap2>& taps) {
  ImageBuf out(img.width(), img.height(), img.colorspace());
  const int w = img.width();
  const int h = img.height();
  std::vector<int> xi(w), yi(h);
  for (int c = 0; c < img.channels(); ++c) {
    auto src = img.plane(c);
    auto dst = out.plane(c);
    for (const Tap2& t : taps) {
      for (int x = 0; x < w; ++x) xi[x] = reflect(x + t.dx, w);
      for (int y = 0; y < h; ++y) {
        const double* row = src.data() + static_cast<std::size_t>(reflect(y + t.dy, h)) * w;
        double* d = dst.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) d[x] += t.w * row[xi[x]];
      }
    }
  }
  return out;
}

ImageBuf convolve_separable(const ImageBuf& img, const std::vector<double>& k) {
  const int r = static_cast<int>(k.size()) / 2;
  const int w = img.width();
  const int h = img.height();
  ImageBuf tmp(w, h, img.colorspace());
  ImageBuf out(w, h, img.colorspace());
  for (int c = 0; c < img.channels(); ++c) {
    auto src = img.plane(c);
    auto mid = tmp.plane(c);
    auto dst = out.plane(c);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i)
          acc += k[i + r] * src[static_cast<std::size_t>(y) * w + reflect(x + i, w)];
        mid[static_cast<std::size_t>(y) * w + x] = acc;
      }
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i)
          acc += k[i + r] * mid[static_cast<std::size_t>(reflect(y + i, h)) * w + x];
        dst[static_cast<std::size_t>(y) * w + x] = acc;
      }
  }
  return out;
}

ImageBuf gauss_blur(const ImageBuf& img, const GaussKernel& p) {
  if (p.kernel < 1 || p.kernel % 2 == 0 || !(p.sigma > 0.0)) {
    throw std::invalid_argument("gauss_blur: kernel must be odd and sigma positive");
  }
  std::vector<double> k(p.kernel);
  const int r = p.kernel / 2;
  double total = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-(i * i) / (2.0 * p.sigma * p.sigma));
    total += k[i + r];
  }
  for (double& v : k) v /= total;
  return convolve_separable(img, k);
}

ImageBuf defocus_blur(const ImageBuf& img, const DiskRadius& p) {
  if (p.radius < 0) throw std::invalid_argument("defocus_blur: negative radius");
  std::vector<Tap2> taps;
  for (int dy = -p.radius; dy <= p.radius; ++dy)
    for (int dx = -p.radius; dx <= p.radius; ++dx)
      if (dx * dx + dy * dy <= p.radius * p.radius) taps.push_back({dx, dy, 1.0});
  for (Tap2& t : taps) t.w = 1.0 / static_cast<double>(taps.size());
  return convolve2d(img, taps);
}

// Line kernel through the origin at a seed-chosen angle; points are splatted
// bilinearly onto the integer grid.
ImageBuf motion_blur(const ImageBuf& img, const MotionLength& p, std::uint64_t seed) {
  if (p.length < 1) throw std::invalid_argument("motion_blur: length must be >= 1");
  const double angle = std::numbers::pi * CounterRng(seed).uniform(0);
  const int half = p.length / 2 + 1;
  const int side = 2 * half + 1;
  std::vector<double> grid(static_cast<std::size_t>(side) * side, 0.0);
  for (int i = 0; i < p.length; ++i) {
    const double t = i - (p.length - 1) / 2.0;
    const double fx = t * std::cos(angle) + half;
    const double fy = t * std::sin(angle) + half;
    const int x0 = static_cast<int>(std::floor(fx));
    const int y0 = static_cast<int>(std::floor(fy));
    const double ax = fx - x0;
    const double ay = fy - y0;
    grid[y0 * side + x0] += (1 - ax) * (1 - ay);
    grid[y0 * side + x0 + 1] += ax * (1 - ay);
    grid[(y0 + 1) * side + x0] += (1 - ax) * ay;
    grid[(y0 + 1) * side + x0 + 1] += ax * ay;
  }
  std::vector<Tap2> taps;
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) {
      const double v = grid[y * side + x];
      if (v > 1e-12) taps.push_back({x - half, y - half, v / p.length});
    }
  return convolve2d(img, taps);
}

double sample_bilinear(std::span<const double> plane, int w, int h, double sx, double sy) {
  sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
  sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = sx - x0;
  const double fy = sy - y0;
  auto at = [&](int x, int y) { return plane[static_cast<std::size_t>(y) * w + x]; };
  const double top = at(x0, y0) + fx * (at(x1, y0) - at(x0, y0));
  const double bot = at(x0, y1) + fx * (at(x1, y1) - at(x0, y1));
  return top + fy * (bot - top);
}

// Mean of the image zoomed about its centre at `steps` scales spaced evenly
// in [1, max_scale].
ImageBuf zoom_blur(const ImageBuf& img, const ZoomScale& p) {
  if (p.steps < 1 || !(p.max_scale >= 1.0)) {
    throw std::invalid_argument("zoom_blur: need steps >= 1 and max_scale >= 1");
  }
  const int w = img.width();
  const int h = img.height();
  const double cx = w / 2.0;
  const double cy = h / 2.0;
  ImageBuf out(w, h, img.colorspace());
  for (int s = 0; s < p.steps; ++s) {
    const double scale =
        p.steps == 1 ? 1.0 : 1.0 + (p.max_scale - 1.0) * s / static_cast<double>(p.steps - 1);
    for (int c = 0; c < img.channels(); ++c) {
      auto src = img.plane(c);
      auto dst = out.plane(c);
      for (int y = 0; y < h; ++y) {
        const double sy = cy + (y + 0.5 - cy) / scale - 0.5;
        for (int x = 0; x < w; ++x) {
          const double sx = cx + (x + 0.5 - cx) / scale - 0.5;
          dst[static_cast<std::size_t>(y) * w + x] += sample_bilinear(src, w, h, sx, sy);
        }
      }
    }
  }
  for (double& v : out.data()) v /= p.steps;
  return out;
}

ImageBuf pixelate(const ImageBuf& img, const PixelBlock& p) {
  if (p.block < 1) throw std::invalid_argument("pixelate: block must be >= 1");
  if (p.block == 1) return img;
  ImageBuf out(img.width(), img.height(), img.colorspace());
  const int w = img.width();
  const int h = img.height();
  for (int c = 0; c < img.channels(); ++c) {
    for (int by = 0; by < h; by += p.block) {
      for (int bx = 0; bx < w; bx += p.block) {
        const int ex = std::min(bx + p.block, w);
        const int ey = std::min(by + p.block, h);
        double acc = 0.0;
        for (int y = by; y < ey; ++y)
          for (int x = bx; x < ex; ++x) acc += img.at(x, y, c);
        acc /= static_cast<double>((ex - bx) * (ey - by));
        for (int y = by; y < ey; ++y)
          for (int x = bx; x < ex; ++x) out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

// Blend towards the luminance (saturation) or the global mean luminance
// (contrast); both scale chroma/offsets by `factor`.
ImageBuf scale_saturation(const ImageBuf& img, double factor) {
  const ImageBuf y = luminance(img);
  ImageBuf out = img;
  for (int c = 0; c < 3; ++c) {
    auto d = out.plane(c);
    auto l = y.plane(0);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = l[i] + factor * (d[i] - l[i]);
  }
  return out;
}

ImageBuf scale_contrast(const ImageBuf& img, double factor) {
  const ImageBuf y = luminance(img);
  double mean = 0.0;
  for (double v : y.data()) mean += v;
  mean /= static_cast<double>(y.size());
  ImageBuf out = img;
  for (double& v : out.data()) v = mean + factor * (v - mean);
  return out;
}

double poisson_small(const CounterRng& rng, std::uint64_t i, double lambda) {
  const double u = rng.uniform(i);
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

// Hormann's transformed rejection (PTRS), lambda >= 10.
double poisson_ptrs(const CounterRng& rng, std::uint64_t i, double lambda) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (std::uint64_t j = 0;; j += 2) {
    const double u = rng.uniform(i, j) - 0.5;
    const double v = rng.uniform(i, j + 1);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return k;
    }
  }
}

ImageBuf add_noise(const ImageBuf& img, AttackKind kind, const AttackParams& params,
                   std::uint64_t seed) {
  const CounterRng rng(seed);
  ImageBuf out = img;
  auto d = out.data();
  switch (kind) {
    case AttackKind::kGaussNoise: {
      const double s = std::get<NoiseSigma>(params).sigma;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += s * rng.normal(i);
      break;
    }
    case AttackKind::kSpeckleNoise: {
      const double s = std::get<NoiseSigma>(params).sigma;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += d[i] * s * rng.normal(i);
      break;
    }
    case AttackKind::kShotNoise: {
      const double n = std::get<PhotonCount>(params).photons;
      if (!(n > 0.0)) throw std::invalid_argument("shot_noise: photon count must be > 0");
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double lambda = std::max(d[i], 0.0) * n;
        if (lambda <= 0.0) continue;
        d[i] = (lambda < 10.0 ? poisson_small(rng, i, lambda) : poisson_ptrs(rng, i, lambda)) / n;
      }
      break;
    }
    case AttackKind::kImpulseNoise: {
      const double p = std::get<ImpulseFraction>(params).fraction;
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double u = rng.uniform(i);
        if (u < p / 2.0) {
          d[i] = 0.0;
        } else if (u < p) {
          d[i] = 1.0;
        }
      }
      break;
    }
    default:
      throw std::logic_error("add_noise: not a noise kind");
  }
  return out;
}

bool params_match(AttackKind kind, const AttackParams& params) {
  switch (kind) {
    case AttackKind::kSaturation:
    case AttackKind::kContrast:
    case AttackKind::kBrightness:
      return std::holds_alternative<ColorFactor>(params);
    case AttackKind::kJpeg:
      return std::holds_alternative<JpegQuality>(params);
    case AttackKind::kGaussNoise:
    case AttackKind::kSpeckleNoise:
      return std::holds_alternative<NoiseSigma>(params);
    case AttackKind::kShotNoise:
      return std::holds_alternative<PhotonCount>(params);
    case AttackKind::kImpulseNoise:
      return std::holds_alternative<ImpulseFraction>(params);
    case AttackKind::kPixelate:
      return std::holds_alternative<PixelBlock>(params);
    case AttackKind::kDefocusBlur:
      return std::holds_alternative<DiskRadius>(params);
    case AttackKind::kZoomBlur:
      return std::holds_alternative<ZoomScale>(params);
    case AttackKind::kGaussBlur:
      return std::holds_alternative<GaussKernel>(params);
    case AttackKind::kMotionBlur:
      return std::holds_alternative<MotionLength>(params);
  }
  return false;
}

}  // namespace

ImageBuf apply_attack(const ImageBuf& img, const AttackSpec& spec) {
  spec.validate();
  return apply_attack(img, spec.kind, severity_params(spec.kind, spec.severity), spec.seed);
}

ImageBuf apply_attack(const ImageBuf& img, AttackKind kind, const AttackParams& params,
                      std::uint64_t seed) {
  if (img.colorspace() != ColorSpace::kRgb) {
    throw std::invalid_argument("apply_attack: expected RGB input");
  }
  if (!params_match(kind, params)) {
    throw std::invalid_argument("apply_attack: parameters do not match attack kind " +
                                std::string(to_string(kind)));
  }
  ImageBuf out;
  switch (kind) {
    case AttackKind::kSaturation:
      out = scale_saturation(img, std::get<ColorFactor>(params).factor);
      break;
    case AttackKind::kContrast:
      out = scale_contrast(img, std::get<ColorFactor>(params).factor);
      break;
    case AttackKind::kBrightness: {
      out = img;
      const double f = std::get<ColorFactor>(params).factor;
      for (double& v : out.data()) v *= f;
      break;
    }
    case AttackKind::kJpeg:
      return jpeg_roundtrip(img, std::get<JpegQuality>(params).quality);
    case AttackKind::kGaussNoise:
    case AttackKind::kShotNoise:
    case AttackKind::kImpulseNoise:
    case AttackKind::kSpeckleNoise:
      out = add_noise(img, kind, params, seed);
      break;
    case AttackKind::kPixelate:
      out = pixelate(img, std::get<PixelBlock>(params));
      break;
    case AttackKind::kDefocusBlur:
      out = defocus_blur(img, std::get<DiskRadius>(params));
      break;
    case AttackKind::kZoomBlur:
      out = zoom_blur(img, std::get<ZoomScale>(params));
      break;
    case AttackKind::kGaussBlur:
      out = gauss_blur(img, std::get<GaussKernel>(params));
      break;
    case AttackKind::kMotionBlur:
      out = motion_blur(img, std::get<MotionLength>(params), seed);
      break;
  }
  out.clamp(0.0, 1.0);
  return out;
}

}  // namespace lfmark
