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

#ifndef LFMARK_ATTACKS_HPP_
#define LFMARK_ATTACKS_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "lfmark/image.hpp"

namespace lfmark {

enum class AttackKind {
  kSaturation,
  kContrast,
  kBrightness,
  kJpeg,
  kGaussNoise,
  kShotNoise,
  kImpulseNoise,
  kSpeckleNoise,
  kPixelate,
  kDefocusBlur,
  kZoomBlur,
  kGaussBlur,
  kMotionBlur,
};

inline constexpr std::array<AttackKind, 13> kAllAttackKinds = {
    AttackKind::kSaturation,   AttackKind::kContrast,    AttackKind::kBrightness,
    AttackKind::kJpeg,         AttackKind::kGaussNoise,  AttackKind::kShotNoise,
    AttackKind::kImpulseNoise, AttackKind::kSpeckleNoise, AttackKind::kPixelate,
    AttackKind::kDefocusBlur,  AttackKind::kZoomBlur,    AttackKind::kGaussBlur,
    AttackKind::kMotionBlur,
};

/// Bumped whenever a ladder entry changes; recorded benchmarks are only
/// comparable under the same version.
inline constexpr int kLadderVersion = 1;

std::string_view to_string(AttackKind kind);
AttackKind parse_attack_kind(std::string_view name);
bool is_stochastic(AttackKind kind);

struct AttackSpec {
  AttackKind kind = AttackKind::kGaussBlur;
  int severity = 1;
  std::uint64_t seed = 0;

  void validate() const;
  std::string label() const;  // e.g. "gauss_blur@3"
};

// Per-kind parameter records.
struct ColorFactor {
  double factor;
};
struct JpegQuality {
  int quality;
};
struct NoiseSigma {
  double sigma;
};
struct PhotonCount {
  double photons;
};
struct ImpulseFraction {
  double fraction;
};
struct PixelBlock {
  int block;
};
struct DiskRadius {
  int radius;
};
struct GaussKernel {
  int kernel;
  double sigma;
};
struct MotionLength {
  int length;
};
struct ZoomScale {
  double max_scale;
  int steps;
};

using AttackParams = std::variant<ColorFactor, JpegQuality, NoiseSigma, PhotonCount,
                                  ImpulseFraction, PixelBlock, DiskRadius, GaussKernel,
                                  MotionLength, ZoomScale>;

/// Ladder lookup; severity 1 is mild, 5 severe.
AttackParams severity_params(AttackKind kind, int severity);

nlohmann::json params_to_json(const AttackParams& params);

/// The full ladder as JSON: {"ladder_version": N, "kinds": {name: [5 records]}}.
nlohmann::json ladder_json();

/// Applies the ladder entry for `spec`. Output is RGB clamped to [0, 1];
/// stochastic kinds are a pure function of (img, spec.seed).
ImageBuf apply_attack(const ImageBuf& img, const AttackSpec& spec);

/// Applies explicit parameters (bypasses the ladder). The parameter record
/// must match `kind`.
ImageBuf apply_attack(const ImageBuf& img, AttackKind kind, const AttackParams& params,
                      std::uint64_t seed = 0);

/// In-memory baseline JPEG model: YCbCr, 4:2:0 subsampling, 8x8 DCT,
/// quantisation with the Annex K tables under libjpeg quality scaling,
/// dequantisation, inverse DCT, bilinear chroma upsampling. Entropy coding is
/// lossless and therefore omitted.
ImageBuf jpeg_roundtrip(const ImageBuf& img, int quality);

/// libjpeg quality scaling of a base table entry, clamped to [1, 255].
int scaled_quant_step(int base, int quality);

}  // namespace lfmark

#endif  // LFMARK_ATTACKS_HPP_
