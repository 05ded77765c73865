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

#include "lfmark/watermark.hpp"

namespace lfmark {

std::string_view to_string(MethodId id) {
  switch (id) {
    case MethodId::kLfqim:
      return "lfqim";
    case MethodId::kDwtDct:
      return "dwt_dct";
    case MethodId::kDwtDctSvd:
      return "dwt_dct_svd";
  }
  return "?";
}

MethodId parse_method(std::string_view name) {
  if (name == "lfqim") return MethodId::kLfqim;
  if (name == "dwt_dct" || name == "dwtdct") return MethodId::kDwtDct;
  if (name == "dwt_dct_svd" || name == "dwtdctsvd") return MethodId::kDwtDctSvd;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

int capacity(MethodId id) { return id == MethodId::kLfqim ? 100 : 30; }

nlohmann::ordered_json WatermarkKey::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["delta"] = delta;
  j["r_low"] = r_low;
  j["r_high"] = r_high;
  j["m"] = redundancy;
  j["native"] = {native_width, native_height};
  return j;
}

WatermarkKey WatermarkKey::from_json(const nlohmann::json& j) {
  WatermarkKey key;
  try {
    key.seed = j.at("seed").get<std::uint64_t>();
    key.delta = j.at("delta").get<double>();
    key.r_low = j.value("r_low", 0.0);
    key.r_high = j.value("r_high", 0.0);
    key.redundancy = j.value("m", 1);
    const auto& native = j.at("native");
    if (!native.is_array() || native.size() != 2) {
      throw std::invalid_argument("key field 'native' must be [u, v]");
    }
    key.native_width = native[0].get<int>();
    key.native_height = native[1].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed watermark key: ") + e.what());
  }
  return key;
}

WatermarkKey default_key(MethodId id, std::uint64_t seed) {
  WatermarkKey key;
  key.seed = seed;
  switch (id) {
    case MethodId::kLfqim:
      key.delta = 8e-4;
      key.r_low = 0.02;
      key.r_high = 0.25;
      key.redundancy = 9;
      break;
    case MethodId::kDwtDct:
      key.delta = 0.1;
      break;
    case MethodId::kDwtDctSvd:
      key.delta = 0.4;
      break;
  }
  return key;
}

void validate_key(MethodId method, const WatermarkKey& key, int k) {
  if (!(key.delta > 0.0) || !std::isfinite(key.delta)) {
    throw std::invalid_argument("watermark key: delta must be positive");
  }
  if (key.native_width < 8 || key.native_height < 8) {
    throw std::invalid_argument("watermark key: native resolution must be at least 8x8");
  }
  if (k < 1) throw std::invalid_argument("watermark key: message must not be empty");
  if (method == MethodId::kLfqim) {
    if (key.redundancy < 3 || key.redundancy % 2 == 0) {
      throw std::invalid_argument("watermark key: redundancy m must be odd and >= 3");
    }
    if (!(key.r_low >= 0.0 && key.r_low < key.r_high && key.r_high <= 1.0)) {
      throw std::invalid_argument("watermark key: need 0 <= r_low < r_high <= 1");
    }
    const std::size_t need = static_cast<std::size_t>(k) * key.redundancy;
    const std::size_t have = detail::lfqim_available_bins(key);
    if (have < need) {
      throw std::invalid_argument("capacity overflow: annulus holds " + std::to_string(have) +
                                  " bins, need k*m = " + std::to_string(need));
    }
  } else {
    if (key.native_width % 16 != 0 || key.native_height % 16 != 0) {
      throw std::invalid_argument("watermark key: native resolution must be a multiple of 16");
    }
    const int blocks = (key.native_width / 16) * (key.native_height / 16);
    if (blocks < k) {
      throw std::invalid_argument("capacity overflow: " + std::to_string(blocks) +
                                  " blocks for " + std::to_string(k) + " bits");
    }
  }
}

}  // namespace lfmark
