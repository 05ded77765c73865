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
#include <stdexcept>

#include "lfmark/bench.hpp"

namespace lfmark {

EmpiricalDetection empirical_detection(const std::vector<double>& scores_w,
                                       const std::vector<double>& scores_null,
                                       const std::vector<double>& fprs) {
  if (scores_w.empty() || scores_null.empty()) {
    throw std::invalid_argument("empirical_detection: score sets must be nonempty");
  }
  std::vector<double> null_sorted = scores_null;
  std::sort(null_sorted.begin(), null_sorted.end());

  // Mann-Whitney count: for each positive, nulls strictly below plus half the ties.
  double wins = 0.0;
  for (double s : scores_w) {
    const auto lo = std::lower_bound(null_sorted.begin(), null_sorted.end(), s);
    const auto hi = std::upper_bound(lo, null_sorted.end(), s);
    wins += static_cast<double>(lo - null_sorted.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  EmpiricalDetection out;
  out.auroc = wins / (static_cast<double>(scores_w.size()) * null_sorted.size());

  const std::size_t n = null_sorted.size();
  for (double fpr : fprs) {
    if (!(fpr > 0.0 && fpr < 1.0)) {
      throw std::invalid_argument("empirical_detection: fpr must lie in (0, 1)");
    }
    // Higher-rank quantile: the threshold is a null score, never interpolated
    // below it, so at most floor(fpr * n) nulls exceed it.
    const double pos = (1.0 - fpr) * static_cast<double>(n - 1);
    const double threshold = null_sorted[static_cast<std::size_t>(std::ceil(pos))];
    const auto hits = std::count_if(scores_w.begin(), scores_w.end(),
                                    [threshold](double s) { return s > threshold; });
    out.tpr_at_fpr[fpr] = static_cast<double>(hits) / static_cast<double>(scores_w.size());
  }
  return out;
}

}  // namespace lfmark
