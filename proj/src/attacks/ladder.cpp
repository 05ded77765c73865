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

#include <sstream>
#include <stdexcept>

#include "lfmark/attacks.hpp"

namespace lfmark {

namespace {

struct KindName {
  AttackKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 13> kNames = {{
    {AttackKind::kSaturation, "saturation"},
    {AttackKind::kContrast, "contrast"},
    {AttackKind::kBrightness, "brightness"},
    {AttackKind::kJpeg, "jpeg"},
    {AttackKind::kGaussNoise, "gauss_noise"},
    {AttackKind::kShotNoise, "shot_noise"},
    {AttackKind::kImpulseNoise, "impulse_noise"},
    {AttackKind::kSpeckleNoise, "speckle_noise"},
    {AttackKind::kPixelate, "pixelate"},
    {AttackKind::kDefocusBlur, "defocus_blur"},
    {AttackKind::kZoomBlur, "zoom_blur"},
    {AttackKind::kGaussBlur, "gauss_blur"},
    {AttackKind::kMotionBlur, "motion_blur"},
}};

constexpr int kZoomSteps = 8;

}  // namespace

std::string_view to_string(AttackKind kind) {
  for (const auto& kn : kNames)
    if (kn.kind == kind) return kn.name;
  return "?";
}

AttackKind parse_attack_kind(std::string_view name) {
  for (const auto& kn : kNames)
    if (kn.name == name) return kn.kind;
  throw std::invalid_argument("unknown attack kind '" + std::string(name) + "'");
}

bool is_stochastic(AttackKind kind) {
  switch (kind) {
    case AttackKind::kGaussNoise:
    case AttackKind::kShotNoise:
    case AttackKind::kImpulseNoise:
    case AttackKind::kSpeckleNoise:
    case AttackKind::kMotionBlur:  // the blur direction is drawn from the seed
      return true;
    default:
      return false;
  }
}

void AttackSpec::validate() const {
  if (severity < 1 || severity > 5) {
    throw std::invalid_argument("attack severity must be in [1, 5], got " +
                                std::to_string(severity));
  }
}

std::string AttackSpec::label() const {
  return std::string(to_string(kind)) + "@" + std::to_string(severity);
}

AttackParams severity_params(AttackKind kind, int severity) {
  AttackSpec{kind, severity, 0}.validate();
  const int i = severity - 1;
  switch (kind) {
    case AttackKind::kSaturation: {
      constexpr double f[] = {0.9, 0.8, 0.7, 0.6, 0.5};
      return ColorFactor{f[i]};
    }
    case AttackKind::kContrast: {
      constexpr double f[] = {0.9, 0.8, 0.7, 0.6, 0.5};
      return ColorFactor{f[i]};
    }
    case AttackKind::kBrightness: {
      constexpr double f[] = {1.1, 1.2, 1.3, 1.4, 1.5};
      return ColorFactor{f[i]};
    }
    case AttackKind::kJpeg: {
      constexpr int q[] = {80, 60, 40, 25, 15};
      return JpegQuality{q[i]};
    }
    case AttackKind::kGaussNoise: {
      constexpr double s[] = {0.02, 0.05, 0.08, 0.12, 0.18};
      return NoiseSigma{s[i]};
    }
    case AttackKind::kShotNoise: {
      constexpr double p[] = {500, 250, 100, 50, 25};
      return PhotonCount{p[i]};
    }
    case AttackKind::kImpulseNoise: {
      constexpr double p[] = {0.01, 0.03, 0.06, 0.10, 0.15};
      return ImpulseFraction{p[i]};
    }
    case AttackKind::kSpeckleNoise: {
      constexpr double s[] = {0.05, 0.10, 0.15, 0.20, 0.30};
      return NoiseSigma{s[i]};
    }
    case AttackKind::kPixelate: {
      constexpr int b[] = {2, 4, 8, 12, 16};
      return PixelBlock{b[i]};
    }
    case AttackKind::kDefocusBlur: {
      constexpr int r[] = {1, 2, 3, 5, 7};
      return DiskRadius{r[i]};
    }
    case AttackKind::kZoomBlur: {
      constexpr double z[] = {1.02, 1.06, 1.10, 1.16, 1.22};
      return ZoomScale{z[i], kZoomSteps};
    }
    case AttackKind::kGaussBlur: {
      constexpr int k[] = {3, 5, 9, 13, 17};
      constexpr double s[] = {0.5, 1.0, 2.0, 3.0, 4.0};
      return GaussKernel{k[i], s[i]};
    }
    case AttackKind::kMotionBlur: {
      constexpr int l[] = {3, 5, 9, 13, 17};
      return MotionLength{l[i]};
    }
  }
  throw std::invalid_argument("severity_params: unknown attack kind");
}

nlohmann::json params_to_json(const AttackParams& params) {
  return std::visit(
      [](const auto& p) -> nlohmann::json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ColorFactor>) {
          return {{"factor", p.factor}};
        } else if constexpr (std::is_same_v<T, JpegQuality>) {
          return {{"quality", p.quality}};
        } else if constexpr (std::is_same_v<T, NoiseSigma>) {
          return {{"sigma", p.sigma}};
        } else if constexpr (std::is_same_v<T, PhotonCount>) {
          return {{"photons", p.photons}};
        } else if constexpr (std::is_same_v<T, ImpulseFraction>) {
          return {{"fraction", p.fraction}};
        } else if constexpr (std::is_same_v<T, PixelBlock>) {
          return {{"block", p.block}};
        } else if constexpr (std::is_same_v<T, DiskRadius>) {
          return {{"radius", p.radius}};
        } else if constexpr (std::is_same_v<T, GaussKernel>) {
          return {{"kernel", p.kernel}, {"sigma", p.sigma}};
        } else if constexpr (std::is_same_v<T, MotionLength>) {
          return {{"length", p.length}};
        } else {
          return {{"max_scale", p.max_scale}, {"steps", p.steps}};
        }
      },
      params);
}

nlohmann::json ladder_json() {
  nlohmann::json kinds = nlohmann::json::object();
  for (AttackKind kind : kAllAttackKinds) {
    nlohmann::json levels = nlohmann::json::array();
    for (int s = 1; s <= 5; ++s) levels.push_back(params_to_json(severity_params(kind, s)));
    kinds[std::string(to_string(kind))] = levels;
  }
  return {{"ladder_version", kLadderVersion}, {"kinds", kinds}};
}

}  // namespace lfmark
