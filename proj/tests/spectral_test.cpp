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

#include <numeric>

#include "lfmark/spectral.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace lfmark {
namespace {

using testing::max_abs_diff;
using testing::random_image;

double energy(std::span<const double> v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

TEST(FftTest, MatchesNaiveDft) {
  for (auto [w, h] : {std::pair{8, 8}, {6, 10}, {7, 5}}) {
    const ImageBuf img = random_image(w, h, ColorSpace::kGray, w * 31 + h);
    const Spectrum s = fft2(img);
    const auto ref = oracle::naive_dft2({img.data().begin(), img.data().end()}, w, h);
    for (int v = 0; v < h; ++v)
      for (int u = 0; u < w; ++u)
        ASSERT_LT(std::abs(s.at(u, v) - ref[v * w + u]), 1e-9) << w << "x" << h;
  }
}

TEST(FftTest, RoundtripAndParseval) {
  for (auto [w, h] : {std::pair{64, 64}, {48, 80}, {33, 17}}) {
    const ImageBuf img = random_image(w, h, ColorSpace::kRgb, 99 + w);
    const Spectrum s = fft2(img);
    EXPECT_LT(s.hermitian_defect(), 1e-9);
    EXPECT_LE(max_abs_diff(ifft2(s, ColorSpace::kRgb), img), 1e-6);
    double spec_energy = 0.0;
    for (const Complex& c : s.data()) spec_energy += std::norm(c);
    const double pix = energy(img.data());
    EXPECT_NEAR(spec_energy / (static_cast<double>(w) * h), pix, 1e-6 * pix);
  }
}

TEST(FftTest, InverseRejectsNonHermitian) {
  Spectrum s(8, 8, 1);
  s.at(1, 2) = Complex(1.0, 0.0);
  EXPECT_THROW(ifft2(s, ColorSpace::kGray), std::domain_error);
  EXPECT_NO_THROW(ifft2_complex(s));
}

TEST(HaarTest, RoundtripAndEnergy) {
  const ImageBuf img = random_image(64, 48, ColorSpace::kGray, 5);
  const HaarBands b = haar_dwt2(img);
  EXPECT_LE(max_abs_diff(haar_idwt2(b), img), 1e-10);
  const double e = energy(b.ll.data()) + energy(b.lh.data()) + energy(b.hl.data()) +
                   energy(b.hh.data());
  EXPECT_NEAR(e, energy(img.data()), 1e-6 * energy(img.data()));
  EXPECT_THROW(haar_dwt2(random_image(7, 8, ColorSpace::kGray, 1)), std::invalid_argument);
}

TEST(HaarTest, ConstantImageHasOnlyLl) {
  const ImageBuf img(16, 16, ColorSpace::kGray, 0.25);
  const HaarBands b = haar_dwt2(img);
  for (double v : b.ll.data()) EXPECT_DOUBLE_EQ(v, 0.5);
  for (const ImageBuf* d : {&b.lh, &b.hl, &b.hh})
    for (double v : d->data()) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(DctTest, MatchesDefinitionAndRoundtrips) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> blk(64);
    for (double& v : blk) v = rng.uniform() * 2.0 - 1.0;
    const Block8 f = dct2_block(blk, Direction::kForward);
    const auto ref = oracle::naive_dct8x8(blk);
    for (int i = 0; i < 64; ++i) ASSERT_NEAR(f[i], ref[i], 1e-12);
    const Block8 back = dct2_block(f, Direction::kInverse);
    for (int i = 0; i < 64; ++i) ASSERT_NEAR(back[i], blk[i], 1e-12);
    EXPECT_NEAR(energy(f), energy(blk), 1e-6 * energy(blk));
  }
  EXPECT_THROW(dct2_block(std::vector<double>(63), Direction::kForward), std::invalid_argument);
}

TEST(DctTest, BasisIsOrthonormal) {
  std::vector<Block8> basis;
  for (int i = 0; i < 64; ++i) {
    Block8 e{};
    e[i] = 1.0;
    basis.push_back(dct2_block(e, Direction::kInverse));
  }
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const double d = std::inner_product(basis[i].begin(), basis[i].end(), basis[j].begin(), 0.0);
      ASSERT_NEAR(d, i == j ? 1.0 : 0.0, 1e-12);
    }
}

Matrix random_matrix(int n, std::uint64_t seed) {
  Matrix m(n, n);
  SplitMix64 rng(seed);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = rng.uniform() * 2.0 - 1.0;
  return m;
}

void expect_valid_svd(const Matrix& m, const SvdResult& s) {
  const int n = m.rows();
  Matrix sig(n, n);
  for (int i = 0; i < n; ++i) sig(i, i) = s.s[i];
  const Matrix rebuilt = s.u * sig * s.v.transpose();
  const Matrix utu = s.u.transpose() * s.u;
  const Matrix vtv = s.v.transpose() * s.v;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      ASSERT_NEAR(rebuilt(r, c), m(r, c), 1e-10);
      ASSERT_NEAR(utu(r, c), r == c ? 1.0 : 0.0, 1e-9);
      ASSERT_NEAR(vtv(r, c), r == c ? 1.0 : 0.0, 1e-9);
    }
  for (int i = 1; i < n; ++i) ASSERT_GE(s.s[i - 1], s.s[i]);
  ASSERT_GE(s.s[n - 1], 0.0);
}

TEST(SvdTest, MatchesEigenOracle) {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Matrix m = random_matrix(n, 100 * n + seed);
      const SvdResult s = svd_small(m);
      expect_valid_svd(m, s);
      const Matrix mtm = m.transpose() * m;
      const auto ev = oracle::symmetric_eigenvalues({mtm.data().begin(), mtm.data().end()}, n);
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(s.s[i], std::sqrt(std::max(ev[i], 0.0)), 1e-6);
      }
      const double top = oracle::power_iteration({mtm.data().begin(), mtm.data().end()}, n);
      EXPECT_NEAR(s.s[0], std::sqrt(top), 1e-6);
    }
  }
}

TEST(SvdTest, RankDeficientAndSmoothBlocks) {
  Matrix ones(8, 8, 0.7);
  const SvdResult s = svd_small(ones);
  expect_valid_svd(ones, s);
  EXPECT_NEAR(s.s[0], 5.6, 1e-12);
  for (int i = 1; i < 8; ++i) EXPECT_NEAR(s.s[i], 0.0, 1e-12);

  Matrix ramp(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) ramp(r, c) = 0.4 + 0.01 * r + 1e-9 * c;
  expect_valid_svd(ramp, svd_small(ramp));

  Matrix zero(8, 8);
  expect_valid_svd(zero, svd_small(zero));
  EXPECT_THROW(svd_small(Matrix(9, 9)), std::invalid_argument);
  EXPECT_THROW(svd_small(Matrix(3, 4)), std::invalid_argument);
}

int brute_count(int w, int h, double lo, double hi) {
  int n = 0;
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      if (u == 0 && v == 0) continue;
      const double fu = (u <= w / 2 ? u : u - w) / (w / 2.0);
      const double fv = (v <= h / 2 ? v : v - h) / (h / 2.0);
      const double r = std::hypot(fu, fv);
      n += r >= lo && (r < hi || hi >= 1.0);
    }
  return n;
}

TEST(BandTest, MasksPartitionAndMatchBruteForce) {
  for (auto [w, h] : {std::pair{64, 64}, {256, 256}, {40, 24}}) {
    std::size_t total = 0;
    for (Band b : {Band::kLow, Band::kMid, Band::kHigh}) {
      const BandSpec spec = BandSpec::defaults(b);
      const BinMask m = band_mask(w, h, spec);
      EXPECT_EQ(static_cast<int>(m.count()), brute_count(w, h, spec.r_low, spec.r_high));
      EXPECT_FALSE(m(0, 0));
      for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) ASSERT_EQ(m(u, v), m((w - u) % w, (h - v) % h));
      total += m.count();
    }
    EXPECT_EQ(total, static_cast<std::size_t>(w) * h - 1);
  }
}

TEST(BandTest, ParseAndValidate) {
  EXPECT_EQ(parse_band("mid"), Band::kMid);
  EXPECT_THROW(parse_band("ultra"), std::invalid_argument);
  EXPECT_THROW((BandSpec{Band::kLow, 0.3, 0.2}.validate()), std::invalid_argument);
  EXPECT_THROW((BandSpec{Band::kLow, 0.0, 1.5}.validate()), std::invalid_argument);
}

TEST(RingTest, RealPatternInsideAnnulus) {
  const Spectrum ring = ring_pattern(64, 64, 0.125, 0.375, 3.0);
  EXPECT_EQ(ring.hermitian_defect(), 0.0);
  const BinMask mask = band_mask(64, 64, BandSpec::defaults(Band::kMid));
  for (int v = 0; v < 64; ++v)
    for (int u = 0; u < 64; ++u) ASSERT_EQ(ring.at(u, v), Complex(mask(u, v) ? 3.0 : 0.0, 0.0));
  const ImageBuf spatial = ifft2(ring, ColorSpace::kGray);
  EXPECT_TRUE(spatial.all_finite());
  EXPECT_THROW(ring_pattern(8, 8, 0.51, 0.52, 1.0), std::invalid_argument);
  EXPECT_THROW(ring_pattern(64, 64, 0.1, 0.3, 0.0), std::invalid_argument);
}

TEST(DiffTest, SpectralDiffAndBandEnergy) {
  const ImageBuf a = random_image(32, 32, ColorSpace::kRgb, 1);
  EXPECT_EQ(band_energy(spectral_diff(a, a), BandSpec::defaults(Band::kLow)), 0.0);

  const Spectrum ring = ring_pattern(32, 32, 0.375, 1.0, 2.0);
  const ImageBuf pat = ifft2(ring, ColorSpace::kGray);
  ImageBuf b = a;
  for (int c = 0; c < 3; ++c) {
    auto p = b.plane(c);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += pat.plane(0)[i];
  }
  const MagnitudeMap d = spectral_diff(b, a).channel_mean();
  const std::size_t bins = band_mask(32, 32, BandSpec::defaults(Band::kHigh)).count();
  EXPECT_NEAR(band_energy(d, BandSpec::defaults(Band::kHigh)), 4.0 * bins, 1e-8);
  EXPECT_NEAR(band_energy(d, BandSpec::defaults(Band::kLow)), 0.0, 1e-16);
  EXPECT_THROW(spectral_diff(a, random_image(16, 32, ColorSpace::kRgb, 2)),
               std::invalid_argument);
}

TEST(DiffTest, LogMagnitudeCenteredShiftsDc) {
  MagnitudeMap m(8, 6, 1);
  m.at(0, 0) = std::exp(1.0) - 1.0;
  const auto out = log_magnitude_centered(m);
  EXPECT_NEAR(out[3 * 8 + 4], 1.0, 1e-15);
  EXPECT_NEAR(std::accumulate(out.begin(), out.end(), 0.0), 1.0, 1e-15);
}

}  // namespace
}  // namespace lfmark
