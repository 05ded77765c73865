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

#include "lfmark/bench.hpp"

namespace lfmark {

namespace {

MagnitudeMap diff_map(const ImageBuf& a, const ImageBuf& b) {
  return spectral_diff(a, b).channel_mean();
}

void accumulate(MagnitudeMap& acc, const MagnitudeMap& map, double scale) {
  auto dst = acc.data();
  auto src = map.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
}

}  // namespace

double ring_amplitude_for_psnr(int width, int height, const BandSpec& band, double psnr_db) {
  const double bins = static_cast<double>(band_mask(width, height, band).count());
  if (bins == 0.0) throw std::invalid_argument("ring_amplitude_for_psnr: empty annulus");
  const double mse = std::pow(10.0, -psnr_db / 10.0);
  return static_cast<double>(width) * height * std::sqrt(mse / bins);
}

SpectralReport frequency_analysis(const Corpus& corpus, const BandSpec& band,
                                  const std::optional<AttackSpec>& attack, double amplitude) {
  if (corpus.empty()) throw std::invalid_argument("frequency_analysis: empty corpus");
  band.validate();
  if (attack) attack->validate();
  const int w = corpus.images.front().width();
  const int h = corpus.images.front().height();
  for (const auto& img : corpus.images) {
    if (img.width() != w || img.height() != h || img.channels() != 3) {
      throw std::invalid_argument("frequency_analysis: corpus images must share one RGB size");
    }
  }

  const ImageBuf pattern =
      ifft2(ring_pattern(w, h, band.r_low, band.r_high, amplitude), ColorSpace::kGray);
  auto pat = pattern.plane(0);

  SpectralReport rep;
  rep.band = band;
  rep.attack = attack;
  rep.amplitude = amplitude;
  rep.n_images = static_cast<int>(corpus.size());
  rep.corpus_hash = corpus.digest();
  rep.mean_pre_map = MagnitudeMap(w, h, 1);
  rep.mean_diff_map = MagnitudeMap(w, h, 1);

  const double inv_n = 1.0 / static_cast<double>(corpus.size());
  for (const auto& x_o : corpus.images) {
    ImageBuf x_w = x_o;
    for (int c = 0; c < 3; ++c) {
      auto p = x_w.plane(c);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += pat[i];
    }
    x_w.clamp(0.0, 1.0);

    const MagnitudeMap pre = diff_map(x_w, x_o);
    const double e_pre = band_energy(pre, band);
    if (!(e_pre > 0.0)) {
      throw std::runtime_error("frequency_analysis: pattern vanished after clamping");
    }
    const double scale = inv_n / std::sqrt(e_pre);
    accumulate(rep.mean_pre_map, pre, scale);
    if (attack) {
      accumulate(rep.mean_diff_map,
                 diff_map(apply_attack(x_w, *attack), apply_attack(x_o, *attack)), scale);
    } else {
      accumulate(rep.mean_diff_map, pre, scale);
    }
  }

  const double denom = band_energy(rep.mean_pre_map, band);
  for (Band b : {Band::kLow, Band::kMid, Band::kHigh}) {
    rep.retention[static_cast<int>(b)] =
        band_energy(rep.mean_diff_map, BandSpec::defaults(b)) / denom;
  }
  return rep;
}

}  // namespace lfmark
