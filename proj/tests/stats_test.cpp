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

#include <gtest/gtest.h>

#include "lfmark/stats.hpp"
#include "oracles.hpp"

namespace lfmark {
namespace {

BitMessage flipped(const BitMessage& m, int count) {
  BitMessage out = m;
  for (int i = 0; i < count; ++i) out.set(i, !m[i]);
  return out;
}

TEST(MatchingBitsTest, Basics) {
  const BitMessage w = BitMessage::random(100, 3);
  EXPECT_EQ(matching_bits(w, w), 100);
  EXPECT_EQ(matching_bits(w, w.complement()), 0);
  EXPECT_EQ(matching_bits(w, flipped(w, 27)), 73);
  EXPECT_THROW(matching_bits(w, BitMessage(30)), std::invalid_argument);
}

TEST(RegIncBetaTest, Identities) {
  for (double a : {0.5, 1.0, 3.0, 17.5, 101.0}) {
    EXPECT_NEAR(reg_inc_beta(0.5, a, a), 0.5, 1e-12) << a;
  }
  for (double p : {0.0, 0.1, 0.37, 0.9, 1.0}) EXPECT_NEAR(reg_inc_beta(p, 1, 1), p, 1e-14);
  EXPECT_EQ(reg_inc_beta(0.0, 2, 3), 0.0);
  EXPECT_EQ(reg_inc_beta(1.0, 2, 3), 1.0);
  for (double p : {0.05, 0.3, 0.71}) {
    for (auto [a, b] : {std::pair{2.0, 5.0}, {71.0, 30.0}, {0.7, 9.0}}) {
      EXPECT_NEAR(reg_inc_beta(p, a, b), 1.0 - reg_inc_beta(1.0 - p, b, a), 1e-12);
    }
  }
}

TEST(RegIncBetaTest, MatchesQuadrature) {
  EXPECT_NEAR(reg_inc_beta(0.3, 2, 5), oracle::inc_beta_quadrature(0.3, 2, 5), 1e-10);
  for (double p : {0.02, 0.2, 0.5, 0.66, 0.93}) {
    for (auto [a, b] : {std::pair{1.5, 2.5}, {3.0, 3.0}, {8.0, 2.0}, {20.0, 40.0}}) {
      EXPECT_NEAR(reg_inc_beta(p, a, b), oracle::inc_beta_quadrature(p, a, b), 1e-10)
          << p << " " << a << " " << b;
    }
  }
}

TEST(RegIncBetaTest, DomainErrors) {
  EXPECT_THROW(reg_inc_beta(-0.1, 1, 1), std::domain_error);
  EXPECT_THROW(reg_inc_beta(1.1, 1, 1), std::domain_error);
  EXPECT_THROW(reg_inc_beta(0.5, 0, 1), std::domain_error);
  EXPECT_THROW(reg_inc_beta(0.5, 1, -2), std::domain_error);
}

TEST(TailTest, WorkedExamples) {
  EXPECT_NEAR(fpr_at_tau(100, 70, 0.5), 1.6e-5, 0.1 * 1.6e-5);
  EXPECT_NEAR(tpr_at_tau(100, 70, 0.8), 0.99, 0.005);
  EXPECT_NEAR(tpr_at_tau(100, 87, 0.9), 0.80, 0.02);
}

TEST(TailTest, ExactRationalOracle) {
  EXPECT_NEAR(fpr_at_tau(100, 70, 0.5), oracle::binomial_tail_exact(100, 70, 1, 2), 1e-10);
  EXPECT_NEAR(tpr_at_tau(100, 70, 0.8), oracle::binomial_tail_exact(100, 70, 4, 5), 1e-10);
  EXPECT_NEAR(tpr_at_tau(100, 87, 0.9), oracle::binomial_tail_exact(100, 87, 9, 10), 1e-10);
}

TEST(TailTest, AgreesWithDirectSumForAllSmallK) {
  for (int k = 1; k <= 128; ++k) {
    for (double p : {0.5, 0.8, 0.93}) {
      double prev = 2.0;
      for (int tau = 0; tau <= k; ++tau) {
        const double f = fpr_at_tau(k, tau, p);
        ASSERT_NEAR(f, oracle::binomial_tail_sum(k, tau, p), 1e-10) << k << " " << tau;
        ASSERT_LE(f, prev + 1e-15);
        prev = f;
      }
    }
  }
}

TEST(TailTest, Edges) {
  EXPECT_EQ(fpr_at_tau(100, 100, 0.5), 0.0);
  for (int tau : {0, 50, 99}) EXPECT_NEAR(tpr_at_tau(100, tau, 1.0), 1.0, 1e-15);
  EXPECT_THROW(fpr_at_tau(100, 101, 0.5), std::domain_error);
  EXPECT_THROW(fpr_at_tau(100, -1, 0.5), std::domain_error);
  EXPECT_THROW(tpr_at_tau(100, 3, 1.5), std::domain_error);
}

TEST(TailTest, MonteCarloSmoke) {
  const auto mc = oracle::binomial_tail_mc(100, 70, 0.8, 200000, 11);
  EXPECT_NEAR(mc.estimate, tpr_at_tau(100, 70, 0.8), 3 * mc.std_error);
}

TEST(TauTest, SmallestQualifyingThreshold) {
  // fpr(100, 70, 0.5) = 1.6080e-5 sits just above 1.6e-5.
  EXPECT_EQ(tau_for_target_fpr(100, 0.5, 1.6e-5), 71);
  EXPECT_EQ(tau_for_target_fpr(100, 0.5, 1.61e-5), 70);
  EXPECT_EQ(tau_for_target_fpr(100, 0.5, 1.0), 0);
  const int t3 = tau_for_target_fpr(100, 0.5, 1e-3);
  const int t4 = tau_for_target_fpr(100, 0.5, 1e-4);
  const int t5 = tau_for_target_fpr(100, 0.5, 1e-5);
  EXPECT_LE(t3, t4);
  EXPECT_LE(t4, t5);
  for (double target : {1e-2, 1e-3, 1e-6}) {
    const int tau = tau_for_target_fpr(100, 0.5, target);
    EXPECT_LE(oracle::binomial_tail_exact(100, tau, 1, 2), target);
    EXPECT_GT(oracle::binomial_tail_exact(100, tau - 1, 1, 2), target);
  }
}

TEST(VerifyTest, Decisions) {
  const BitMessage w = BitMessage::random(100, 5);
  EXPECT_TRUE(verify(w, w, 0.5, 1e-3).decision);
  EXPECT_FALSE(verify(w.complement(), w, 0.5, 0.4).decision);

  const int tau = tau_for_target_fpr(100, 0.5, 1e-3);
  const DetectionResult at = verify(flipped(w, 100 - tau), w, 0.5, 1e-3);
  EXPECT_EQ(at.matched, tau);
  EXPECT_FALSE(at.decision);
  const DetectionResult above = verify(flipped(w, 99 - tau), w, 0.5, 1e-3);
  EXPECT_TRUE(above.decision);
  EXPECT_DOUBLE_EQ(above.fpr_at_tau, fpr_at_tau(100, tau, 0.5));
  EXPECT_DOUBLE_EQ(above.bit_accuracy, (tau + 1) / 100.0);
  EXPECT_THROW(verify(w, BitMessage(30), 0.5, 1e-3), std::invalid_argument);
}

}  // namespace
}  // namespace lfmark
