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

#include <cmath>
#include <set>

#include "lfmark/bench.hpp"
#include "lfmark/stats.hpp"
#include "lfmark/watermark.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace lfmark {
namespace {

using testing::mean_abs_diff;

constexpr MethodId kMethods[] = {MethodId::kLfqim, MethodId::kDwtDct, MethodId::kDwtDctSvd};

const Corpus& native_corpus() {
  static const Corpus c = synth_corpus(6, 256, 2024);
  return c;
}

double accuracy(const BitMessage& a, const BitMessage& b) {
  return static_cast<double>(matching_bits(a, b)) / a.size();
}

TEST(BitMessageTest, HexRoundtrip) {
  for (int k : {30, 100, 7}) {
    const BitMessage m = BitMessage::random(k, 17);
    EXPECT_EQ(m.to_hex().size(), static_cast<std::size_t>((k + 3) / 4));
    EXPECT_EQ(BitMessage::from_hex(m.to_hex(), k), m);
  }
  BitMessage m(8);
  m.set(0, true);
  m.set(7, true);
  EXPECT_EQ(m.to_hex(), "81");
  EXPECT_EQ(BitMessage::from_hex("8F", 8).to_hex(), "8f");
  EXPECT_THROW(BitMessage::from_hex("123", 8), std::invalid_argument);
  EXPECT_THROW(BitMessage::from_hex("zz", 8), std::invalid_argument);
  EXPECT_THROW(BitMessage::from_hex("ff", 6), std::invalid_argument);  // padding bits set
  EXPECT_EQ(BitMessage::random(100, 1), BitMessage::random(100, 1));
  EXPECT_NE(BitMessage::random(100, 1), BitMessage::random(100, 2));
}

TEST(KeyTest, JsonRoundtripAndValidation) {
  for (MethodId m : kMethods) {
    const WatermarkKey key = default_key(m, 99);
    EXPECT_EQ(WatermarkKey::from_json(nlohmann::json::parse(key.to_json().dump())), key);
    EXPECT_NO_THROW(validate_key(m, key, capacity(m)));
  }
  const auto j = default_key(MethodId::kLfqim).to_json();
  EXPECT_EQ(j.begin().key(), "seed");
  EXPECT_EQ(j.at("native"), nlohmann::ordered_json::array({256, 256}));
  EXPECT_THROW(WatermarkKey::from_json(nlohmann::json::parse(R"({"seed": 1})")),
               std::invalid_argument);

  WatermarkKey k = default_key(MethodId::kLfqim);
  k.redundancy = 8;
  EXPECT_THROW(validate_key(MethodId::kLfqim, k, 100), std::invalid_argument);
  k = default_key(MethodId::kLfqim);
  k.r_high = 0.05;
  try {
    validate_key(MethodId::kLfqim, k, 100);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("capacity overflow"), std::string::npos);
  }
  k = default_key(MethodId::kDwtDct);
  k.native_width = 200;
  EXPECT_THROW(validate_key(MethodId::kDwtDct, k, 30), std::invalid_argument);
  k = default_key(MethodId::kDwtDctSvd);
  k.native_width = k.native_height = 64;
  EXPECT_THROW(validate_key(MethodId::kDwtDctSvd, k, 30), std::invalid_argument);
  k.delta = 0.0;
  EXPECT_THROW(validate_key(MethodId::kDwtDctSvd, k, 30), std::invalid_argument);
}

TEST(PositionsTest, DistinctCanonicalInsideAnnulus) {
  const WatermarkKey key = default_key(MethodId::kLfqim, 5);
  const auto pos = detail::lfqim_positions(key, 100);
  ASSERT_EQ(pos.size(), 900u);
  std::set<std::pair<int, int>> seen;
  const int n = key.native_width;
  for (const auto& b : pos) {
    const double r = radial_fraction(b.u, b.v, n, n);
    EXPECT_TRUE(r >= key.r_low && r < key.r_high);
    const int mu = (n - b.u) % n, mv = (n - b.v) % n;
    EXPECT_LT(b.v * n + b.u, mv * n + mu);
    EXPECT_TRUE(seen.insert({b.u, b.v}).second);
    EXPECT_EQ(seen.count({mu, mv}), 0u);
  }
  // Brute-force count of the conjugate-pair representatives.
  std::size_t brute = 0;
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) {
      const double r = radial_fraction(u, v, n, n);
      if (r < key.r_low || r >= key.r_high) continue;
      const int mu = (n - u) % n, mv = (n - v) % n;
      if (u != mu || v != mv) ++brute;
    }
  EXPECT_EQ(detail::lfqim_available_bins(key) * 2, brute);
  EXPECT_EQ(detail::lfqim_positions(key, 100)[17].u, pos[17].u);
  const auto other = detail::lfqim_positions(default_key(MethodId::kLfqim, 6), 100);
  int same = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) same += pos[i].u == other[i].u && pos[i].v == other[i].v;
  EXPECT_LT(same, 50);
}

TEST(QimTest, LatticeAndMargins) {
  const double step = 2.0;
  for (double v : {0.0, 0.3, 1.7, 5.2, 123.456}) {
    const double q0 = detail::qim_quantize(v, step, false);
    const double q1 = detail::qim_quantize(v, step, true);
    EXPECT_NEAR(std::fmod(q0, step), 0.0, 1e-12);
    EXPECT_NEAR(std::fmod(std::abs(q1), step), 1.0, 1e-12);
    EXPECT_LE(std::abs(q0 - v), step / 2 + 1e-12);
    EXPECT_LE(std::abs(q1 - v), step / 2 + 1e-12);
    EXPECT_DOUBLE_EQ(detail::qim_margin(q0 + 1e-3, step), detail::qim_margin(q0 - 1e-3, step));
    EXPECT_NEAR(detail::qim_margin(q0, step), -1.0, 1e-12);
    EXPECT_NEAR(detail::qim_margin(std::abs(q1), step), 1.0, 1e-12);
  }
  EXPECT_NEAR(detail::qim_margin(0.5, step), 0.0, 1e-12);

  bool bit;
  double soft;
  detail::decide_bit({0.5, -0.2, 0.1}, bit, soft);
  EXPECT_TRUE(bit);
  EXPECT_NEAR(soft, 0.4 / 3, 1e-12);
  detail::decide_bit({0.1, -0.9}, bit, soft);  // vote tie, mean decides
  EXPECT_FALSE(bit);
  EXPECT_NEAR(soft, 0.4, 1e-12);
  detail::decide_bit({0.9, 0.1, -0.05, -0.05, -0.05}, bit, soft);  // vote and mean disagree
  EXPECT_FALSE(bit);
  EXPECT_LT(soft, 0.0);
}

TEST(ReplaceLumaTest, KeepsChroma) {
  const ImageBuf rgb = testing::random_image(16, 16, ColorSpace::kRgb, 4, 0.2, 0.8);
  ImageBuf y = luminance(rgb);
  for (double& v : y.data()) v += 0.05;
  const ImageBuf out = detail::replace_luma(rgb, y);
  const ImageBuf a = to_yuv(rgb), b = to_yuv(out);
  for (int x = 0; x < 16; ++x) {
    EXPECT_NEAR(b.at(x, 3, 0), a.at(x, 3, 0) + 0.05, 1e-12);
    EXPECT_NEAR(b.at(x, 3, 1), a.at(x, 3, 1), 1e-12);
    EXPECT_NEAR(b.at(x, 3, 2), a.at(x, 3, 2), 1e-12);
  }
}

TEST(EmbedTest, RoundtripEveryMethod) {
  for (MethodId m : kMethods) {
    const WatermarkKey key = default_key(m, 31);
    for (std::size_t i = 0; i < native_corpus().size(); ++i) {
      const BitMessage msg = BitMessage::random(capacity(m), 1000 + i);
      const ImageBuf marked = embed(m, native_corpus().images[i], msg, key);
      for (double v : marked.data()) ASSERT_TRUE(v >= 0.0 && v <= 1.0);
      const Extraction ex = extract(m, marked, key);
      EXPECT_EQ(ex.bits, msg) << to_string(m) << " image " << i;
      for (double s : ex.soft) EXPECT_GT(s, 0.0) << to_string(m);
      EXPECT_GT(ex.score_against(msg), 0.0);
      EXPECT_EQ(embed(m, native_corpus().images[i], msg, key), marked);
    }
  }
}

TEST(EmbedTest, ComplementChangesOutput) {
  const ImageBuf& img = native_corpus().images[0];
  for (MethodId m : kMethods) {
    const WatermarkKey key = default_key(m);
    const BitMessage msg = BitMessage::random(capacity(m), 8);
    EXPECT_GT(mean_abs_diff(embed(m, img, msg, key), embed(m, img, msg.complement(), key)), 0.0);
  }
}

TEST(EmbedTest, Errors) {
  const ImageBuf& img = native_corpus().images[0];
  const WatermarkKey key = default_key(MethodId::kLfqim);
  EXPECT_THROW(embed(MethodId::kLfqim, img, BitMessage(30), key), std::invalid_argument);
  EXPECT_THROW(embed(MethodId::kLfqim, resize_bilinear(img, 128, 128), BitMessage(100), key),
               std::invalid_argument);
  EXPECT_THROW(extract(MethodId::kDwtDct, resize_bilinear(img, 128, 128),
                       default_key(MethodId::kDwtDct)),
               std::invalid_argument);
  WatermarkKey tight = key;
  tight.r_high = 0.04;
  EXPECT_THROW(embed(MethodId::kLfqim, img, BitMessage(100), tight), std::invalid_argument);
}

TEST(ExtractTest, DegenerateInputs) {
  const ImageBuf black(256, 256, ColorSpace::kRgb, 0.0);
  for (MethodId m : kMethods) {
    const Extraction ex = extract(m, black, default_key(m));
    EXPECT_EQ(ex.bits.size(), capacity(m));
    for (double s : ex.soft) EXPECT_TRUE(std::isfinite(s));
    const Extraction tiny = scaled_extract(m, ImageBuf(16, 16, ColorSpace::kRgb, 0.5), default_key(m));
    EXPECT_EQ(tiny.bits.size(), capacity(m));
  }
}

TEST(ExtractTest, NullAndKeySeparation) {
  for (MethodId m : kMethods) {
    const int k = capacity(m);
    double sum = 0.0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      const ImageBuf& img = native_corpus().images[t % native_corpus().size()];
      const Extraction ex = extract(m, img, default_key(m, 5000 + t));
      sum += accuracy(ex.bits, BitMessage::random(k, 9000 + t));
    }
    EXPECT_NEAR(sum / trials, 0.5, 0.03) << to_string(m);

    int chance = 0;
    const int key_trials = 500;
    for (int t = 0; t < key_trials; ++t) {
      const std::size_t i = t % native_corpus().size();
      const BitMessage msg = BitMessage::random(k, 300 + t);
      const ImageBuf marked = embed(m, native_corpus().images[i], msg, default_key(m, 1));
      const double acc = accuracy(extract(m, marked, default_key(m, 2 + t)).bits, msg);
      chance += acc >= 0.4 && acc <= 0.6;
      if (t >= 60 && m != MethodId::kLfqim) break;  // baselines are slower to embed
    }
    const int done = m == MethodId::kLfqim ? key_trials : 61;
    // Probability that a fair-coin decoder lands in [0.4, 0.6].
    const int lo = static_cast<int>(std::ceil(0.4 * k)), hi = static_cast<int>(std::floor(0.6 * k));
    const double p_in = oracle::binomial_tail_exact(k, lo - 1, 1, 2) -
                        oracle::binomial_tail_exact(k, hi, 1, 2);
    const double floor_count = done * p_in - 3.0 * std::sqrt(done * p_in * (1.0 - p_in));
    EXPECT_GE(chance, floor_count) << to_string(m) << " p_in=" << p_in;
    if (m == MethodId::kLfqim) { EXPECT_GE(chance, static_cast<int>(0.95 * done)); }
  }
}

TEST(EmbedTest, EnergyStaysInAnnulus) {
  const WatermarkKey key = default_key(MethodId::kLfqim);
  const BandSpec annulus{Band::kLow, key.r_low, key.r_high};
  for (std::size_t i = 0; i < native_corpus().size(); ++i) {
    const ImageBuf& img = native_corpus().images[i];
    const ImageBuf marked = embed(MethodId::kLfqim, img, BitMessage::random(100, i), key);
    const MagnitudeMap d = spectral_diff(marked, img);
    double total = 0.0;
    for (double v : d.data()) total += v * v;
    EXPECT_GE(band_energy(d, annulus) / total, 0.8);
  }
}

TEST(ScaledTest, NativeIsSampleIdentical) {
  const ImageBuf& img = native_corpus().images[2];
  for (MethodId m : kMethods) {
    const BitMessage msg = BitMessage::random(capacity(m), 3);
    EXPECT_EQ(scaled_embed(m, img, msg, default_key(m)), embed(m, img, msg, default_key(m)));
    const ImageBuf marked = embed(m, img, msg, default_key(m));
    EXPECT_EQ(scaled_extract(m, marked, default_key(m)).bits,
              extract(m, marked, default_key(m)).bits);
  }
}

TEST(ScaledTest, LargeInputRoundtripAndQuality) {
  const Corpus big = synth_corpus(2, 512, 606);
  for (MethodId m : kMethods) {
    const WatermarkKey key = default_key(m, 12);
    for (const auto& img512 : big.images) {
      const BitMessage msg = BitMessage::random(capacity(m), 44);
      const ImageBuf marked = scaled_embed(m, img512, msg, key);
      EXPECT_EQ(scaled_extract(m, marked, key).bits, msg) << to_string(m);
      EXPECT_GE(psnr(img512, marked), 38.0) << to_string(m);

      const ImageBuf img1024 = resize_bilinear(img512, 1024, 1024);
      const ImageBuf marked1024 = scaled_embed(m, img1024, msg, key);
      EXPECT_EQ(scaled_extract(m, marked1024, key).bits, msg) << to_string(m);
    }
  }
  EXPECT_THROW(scaled_embed(MethodId::kLfqim, ImageBuf(4, 4, ColorSpace::kRgb), BitMessage(100),
                            default_key(MethodId::kLfqim)),
               std::invalid_argument);
}

TEST(ScoreTest, ScoreAgainstTruth) {
  Extraction ex{BitMessage(std::vector<bool>{true, false}), {0.5, 1.0}};
  EXPECT_NEAR(ex.score_against(BitMessage(std::vector<bool>{true, false})), 0.75, 1e-15);
  EXPECT_NEAR(ex.score_against(BitMessage(std::vector<bool>{true, true})), -0.25, 1e-15);
  EXPECT_THROW(ex.score_against(BitMessage(3)), std::invalid_argument);
}

}  // namespace
}  // namespace lfmark
