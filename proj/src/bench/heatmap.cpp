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
#include <stdexcept>

#include "lfmark/bench.hpp"

namespace lfmark {

void render_heatmap(const MagnitudeMap& map, const std::filesystem::path& path) {
  if (map.empty()) throw std::invalid_argument("render_heatmap: empty map");
  const std::vector<double> vals = log_magnitude_centered(map);
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  const double range = *hi - *lo;
  ImageBuf img(map.width(), map.height(), ColorSpace::kGray);
  auto dst = img.plane(0);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    dst[i] = range > 0.0 ? (vals[i] - *lo) / range : 0.0;
  }
  save_image(path, img);
}

}  // namespace lfmark
