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

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "lfmark/spectral.hpp"

namespace lfmark {

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer alloc_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer(p);
}

// FFTW's planner is not reentrant; executing an existing plan on new
// (fftw_malloc-aligned) arrays is. Plans are created once per shape under a
// lock and never destroyed.
class PlanCache {
 public:
  fftw_plan get(int width, int height, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_tuple(width, height, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t n = static_cast<std::size_t>(width) * height;
    FftwBuffer in = alloc_buffer(n);
    FftwBuffer out = alloc_buffer(n);
    fftw_plan plan =
        fftw_plan_dft_2d(height, width, in.get(), out.get(), sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fft2: FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void transform_plane(std::span<const Complex> src, std::span<Complex> dst, int width,
                     int height, int sign) {
  const std::size_t n = src.size();
  FftwBuffer in = alloc_buffer(n);
  FftwBuffer out = alloc_buffer(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = src[i].real();
    in[i][1] = src[i].imag();
  }
  fftw_execute_dft(plan_cache().get(width, height, sign), in.get(), out.get());
  for (std::size_t i = 0; i < n; ++i) dst[i] = Complex(out[i][0], out[i][1]);
}

}  // namespace

Spectrum::Spectrum(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels),
      data_(static_cast<std::size_t>(width) * height * channels) {
  if (width <= 0 || height <= 0 || channels <= 0) {
    throw std::invalid_argument("Spectrum: dimensions must be positive");
  }
}

double Spectrum::hermitian_defect() const {
  double worst = 0.0;
  for (int c = 0; c < channels_; ++c) {
    for (int v = 0; v < height_; ++v) {
      const int vm = (height_ - v) % height_;
      for (int u = 0; u < width_; ++u) {
        const int um = (width_ - u) % width_;
        worst = std::max(worst, std::abs(at(u, v, c) - std::conj(at(um, vm, c))));
      }
    }
  }
  return worst;
}

Spectrum fft2(const ImageBuf& img) {
  if (img.empty()) throw std::invalid_argument("fft2: empty image");
  Spectrum out(img.width(), img.height(), img.channels());
  std::vector<Complex> tmp(img.plane_size());
  for (int c = 0; c < img.channels(); ++c) {
    auto p = img.plane(c);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = Complex(p[i], 0.0);
    transform_plane(tmp, out.plane(c), img.width(), img.height(), FFTW_FORWARD);
  }
  return out;
}

Spectrum ifft2_complex(const Spectrum& spec) {
  Spectrum out(spec.width(), spec.height(), spec.channels());
  const double scale = 1.0 / static_cast<double>(spec.plane_size());
  for (int c = 0; c < spec.channels(); ++c) {
    transform_plane(spec.plane(c), out.plane(c), spec.width(), spec.height(), FFTW_BACKWARD);
    for (Complex& z : out.plane(c)) z *= scale;
  }
  return out;
}

ImageBuf ifft2(const Spectrum& spec, ColorSpace cs) {
  if (channel_count(cs) != spec.channels()) {
    throw std::invalid_argument("ifft2: colour space does not match channel count");
  }
  const Spectrum z = ifft2_complex(spec);
  ImageBuf out(spec.width(), spec.height(), cs);
  double worst = 0.0;
  auto dst = out.data();
  auto src = z.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = src[i].real();
    worst = std::max(worst, std::abs(src[i].imag()));
  }
  if (worst > kMaxImagResidual) {
    throw std::domain_error("ifft2: spectrum is not Hermitian (imaginary residue " +
                            std::to_string(worst) + ")");
  }
  return out;
}

}  // namespace lfmark
