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
#include <limits>
#include <stdexcept>
#include <string>

#include "lfmark/stats.hpp"

namespace lfmark {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Continued fraction for I_p(a, b) / prefactor, modified Lentz.
double beta_cf(double p, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * p / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * p / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * p / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

void check_tail_args(int k, int tau, double p, const char* who) {
  if (k < 1) throw std::domain_error(std::string(who) + ": k must be positive");
  if (tau < 0 || tau > k) {
    throw std::domain_error(std::string(who) + ": tau must lie in [0, k]");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(who) + ": probability must lie in [0, 1]");
  }
}

}  // namespace

int matching_bits(const BitMessage& a, const BitMessage& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("matching_bits: lengths differ (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  int m = 0;
  for (int i = 0; i < a.size(); ++i) m += a[i] == b[i];
  return m;
}

double reg_inc_beta(double p, double a, double b) {
  if (!(p >= 0.0 && p <= 1.0) || !(a > 0.0) || !(b > 0.0) || !std::isfinite(a) ||
      !std::isfinite(b)) {
    throw std::domain_error("reg_inc_beta: need p in [0, 1], a > 0, b > 0");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(p) + b * std::log1p(-p);
  const double front = std::exp(log_front);
  if (p < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(p, a, b) / a;
  return 1.0 - front * beta_cf(1.0 - p, b, a) / b;
}

double fpr_at_tau(int k, int tau, double p_o) {
  check_tail_args(k, tau, p_o, "fpr_at_tau");
  if (tau == k) return 0.0;
  return reg_inc_beta(p_o, tau + 1.0, static_cast<double>(k - tau));
}

double tpr_at_tau(int k, int tau, double p_w) {
  check_tail_args(k, tau, p_w, "tpr_at_tau");
  if (tau == k) return 0.0;
  return reg_inc_beta(p_w, tau + 1.0, static_cast<double>(k - tau));
}

int tau_for_target_fpr(int k, double p_o, double target) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw std::domain_error("tau_for_target_fpr: target must lie in (0, 1]");
  }
  for (int tau = 0; tau < k; ++tau) {
    if (fpr_at_tau(k, tau, p_o) <= target) return tau;
  }
  return k;
}

DetectionResult verify(const BitMessage& decoded, const BitMessage& truth, double p_o,
                       double target_fpr) {
  DetectionResult r;
  const int k = truth.size();
  r.matched = matching_bits(decoded, truth);
  r.tau = tau_for_target_fpr(k, p_o, target_fpr);
  r.fpr_at_tau = fpr_at_tau(k, r.tau, p_o);
  r.decision = r.matched > r.tau;
  r.bit_accuracy = k > 0 ? static_cast<double>(r.matched) / k : 0.0;
  return r;
}

}  // namespace lfmark
