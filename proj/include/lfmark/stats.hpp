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

#ifndef LFMARK_STATS_HPP_
#define LFMARK_STATS_HPP_

#include "lfmark/watermark.hpp"

namespace lfmark {

/// Number of positions where `a` and `b` agree. Throws std::invalid_argument
/// on a length mismatch.
int matching_bits(const BitMessage& a, const BitMessage& b);

/// Regularised incomplete beta function I_p(a, b) by Lentz's continued
/// fraction. Throws std::domain_error outside p in [0, 1], a > 0, b > 0.
double reg_inc_beta(double p, double a, double b);

/// P(M > tau) for M ~ Binomial(k, p_o) = I_{p_o}(tau + 1, k - tau);
/// 0 at tau = k.
double fpr_at_tau(int k, int tau, double p_o);

/// Same tail under the watermarked matching probability p_w.
double tpr_at_tau(int k, int tau, double p_w);

/// Smallest tau in [0, k] with fpr_at_tau(k, tau, p_o) <= target.
int tau_for_target_fpr(int k, double p_o, double target);

struct DetectionResult {
  int matched = 0;
  int tau = 0;
  double fpr_at_tau = 0.0;
  bool decision = false;  // matched > tau
  double bit_accuracy = 0.0;
};

DetectionResult verify(const BitMessage& decoded, const BitMessage& truth, double p_o,
                       double target_fpr);

}  // namespace lfmark

#endif  // LFMARK_STATS_HPP_
