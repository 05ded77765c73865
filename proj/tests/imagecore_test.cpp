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
#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lfmark/image.hpp"
#include "test_util.hpp"

namespace lfmark {
namespace {

namespace fs = std::filesystem;
using testing::max_abs_diff;
using testing::random_image;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("lfmark_io_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

ImageBuf lattice_image(int w, int h, ColorSpace cs, std::uint64_t seed) {
  ImageBuf img(w, h, cs);
  SplitMix64 rng(seed);
  for (double& v : img.data()) v = static_cast<double>(rng.below(256)) / 255.0;
  return img;
}

void write_png16(const fs::path& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  png_init_io(png, f);
  png_set_IHDR(png, info, 2, 2, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_byte row[4] = {0x12, 0x34, 0xff, 0xff};
  png_write_row(png, row);
  png_write_row(png, row);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(f);
}

TEST(ImageBufTest, LayoutAndValidation) {
  ImageBuf img(3, 2, ColorSpace::kRgb);
  img.at(2, 1, 2) = 0.5;
  EXPECT_EQ(img.data()[(2 * 2 + 1) * 3 + 2], 0.5);
  EXPECT_EQ(img.size(), 18u);
  EXPECT_EQ(img.channel(2).at(2, 1), 0.5);
  EXPECT_THROW(ImageBuf(0, 2, ColorSpace::kGray), std::invalid_argument);
  EXPECT_THROW(ImageBuf(2, 2, ColorSpace::kRgb, std::vector<double>(4)), std::invalid_argument);
  EXPECT_THROW(img.with_colorspace(ColorSpace::kGray), std::invalid_argument);
  EXPECT_THROW(img.channel(3), std::out_of_range);
}

TEST(ColorTest, KnownColoursAndRoundtrip) {
  ImageBuf px(2, 1, ColorSpace::kRgb);
  for (int c = 0; c < 3; ++c) px.at(0, 0, c) = 1.0;
  const ImageBuf yuv = to_yuv(px);
  EXPECT_NEAR(yuv.at(0, 0, 0), 1.0, 1e-15);
  EXPECT_NEAR(yuv.at(0, 0, 1), 0.0, 1e-15);
  EXPECT_NEAR(yuv.at(0, 0, 2), 0.0, 1e-15);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(yuv.at(1, 0, c), 0.0);

  const ImageBuf img = random_image(37, 23, ColorSpace::kRgb, 4);
  EXPECT_LE(max_abs_diff(from_yuv(to_yuv(img)), img), 1e-6);
  EXPECT_THROW(to_yuv(to_yuv(img)), std::invalid_argument);
  EXPECT_THROW(from_yuv(img), std::invalid_argument);

  // Independent per-pixel evaluation of the forward transform.
  const ImageBuf y = to_yuv(img);
  for (int i = 0; i < 20; ++i) {
    const int x = i % 37, yy = i % 23;
    const double r = img.at(x, yy, 0), g = img.at(x, yy, 1), b = img.at(x, yy, 2);
    const double lum = 0.299 * r + 0.587 * g + 0.114 * b;
    EXPECT_NEAR(y.at(x, yy, 0), lum, 1e-15);
    EXPECT_NEAR(y.at(x, yy, 1), 0.492 * (b - lum), 1e-15);
    EXPECT_NEAR(y.at(x, yy, 2), 0.877 * (r - lum), 1e-15);
  }
  EXPECT_LE(max_abs_diff(luminance(img), y.channel(0)), 0.0);
}

TEST(ResizeTest, IdentityConstantAndHandValues) {
  const ImageBuf img = random_image(19, 11, ColorSpace::kRgb, 2);
  EXPECT_EQ(resize_bilinear(img, 19, 11), img);

  const ImageBuf flat(7, 5, ColorSpace::kRgb, 0.3);
  for (auto [w, h] : {std::pair{1, 1}, {3, 9}, {64, 2}}) {
    const ImageBuf r = resize_bilinear(flat, w, h);
    for (double v : r.data()) EXPECT_NEAR(v, 0.3, 1e-15);
  }

  ImageBuf two(2, 1, ColorSpace::kGray, std::vector<double>{0.0, 1.0});
  const ImageBuf up = resize_bilinear(two, 4, 1);
  // Sources at -0.25, 0.25, 0.75, 1.25 clamp to 0, 0.25, 0.75, 1.
  const double want[] = {0.0, 0.25, 0.75, 1.0};
  for (int x = 0; x < 4; ++x) EXPECT_NEAR(up.at(x, 0), want[x], 1e-15);
  EXPECT_THROW(resize_bilinear(two, 0, 1), std::invalid_argument);
}

TEST(ResizeTest, NoOvershoot) {
  const ImageBuf img = random_image(31, 17, ColorSpace::kGray, 9, 0.2, 0.7);
  const auto [lo, hi] = std::minmax_element(img.data().begin(), img.data().end());
  for (auto [w, h] : {std::pair{64, 64}, {10, 5}, {97, 3}}) {
    const ImageBuf r = resize_bilinear(img, w, h);
    for (double v : r.data()) {
      EXPECT_GE(v, *lo - 1e-15);
      EXPECT_LE(v, *hi + 1e-15);
    }
  }
}

TEST(MetricsTest, Psnr) {
  const ImageBuf a = random_image(16, 16, ColorSpace::kRgb, 1, 0.1, 0.9);
  EXPECT_TRUE(std::isinf(psnr(a, a)));
  ImageBuf b = a;
  for (double& v : b.data()) v += 1.0 / 255.0;
  EXPECT_NEAR(psnr(a, b), 20.0 * std::log10(255.0), 1e-9);
  EXPECT_NEAR(psnr(a, b), psnr(b, a), 1e-12);
  EXPECT_NEAR(psnr(ImageBuf(4, 4, ColorSpace::kRgb, 0.0), ImageBuf(4, 4, ColorSpace::kRgb, 1.0)),
              0.0, 1e-12);
  EXPECT_THROW(psnr(a, ImageBuf(8, 16, ColorSpace::kRgb)), std::invalid_argument);
}

TEST(MetricsTest, Ssim) {
  const ImageBuf a = random_image(32, 32, ColorSpace::kRgb, 3);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  ImageBuf inv = a;
  for (double& v : inv.data()) v = 1.0 - v;
  EXPECT_LT(ssim(a, inv), 0.0);
  const ImageBuf c(16, 16, ColorSpace::kRgb, 0.4);
  EXPECT_NEAR(ssim(c, c), 1.0, 1e-12);
  const ImageBuf noisy = random_image(32, 32, ColorSpace::kRgb, 4);
  const double s = ssim(a, noisy);
  EXPECT_GE(s, -1.0);
  EXPECT_LE(s, 1.0);
  EXPECT_NEAR(s, ssim(noisy, a), 1e-12);
  EXPECT_THROW(ssim(ImageBuf(10, 10, ColorSpace::kRgb), ImageBuf(10, 10, ColorSpace::kRgb)),
               std::invalid_argument);
}

TEST(MetricsTest, MseYuvMatchesNaiveLoop) {
  const ImageBuf a = random_image(12, 9, ColorSpace::kRgb, 5);
  const ImageBuf b = random_image(12, 9, ColorSpace::kRgb, 6);
  EXPECT_EQ(mse_yuv(a, a), 0.0);
  double acc = 0.0;
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 12; ++x) {
      auto yuv = [&](const ImageBuf& m) {
        const double r = m.at(x, y, 0), g = m.at(x, y, 1), bl = m.at(x, y, 2);
        const double lum = 0.299 * r + 0.587 * g + 0.114 * bl;
        return std::array<double, 3>{lum, 0.492 * (bl - lum), 0.877 * (r - lum)};
      };
      const auto p = yuv(a), q = yuv(b);
      for (int c = 0; c < 3; ++c) acc += (p[c] - q[c]) * (p[c] - q[c]);
    }
  EXPECT_NEAR(mse_yuv(a, b), acc / (12 * 9 * 3), 1e-14);
  EXPECT_NEAR(mse_yuv(a, b), mse_yuv(b, a), 1e-15);

  // Gray shift by d moves Y by d and leaves chroma untouched.
  const ImageBuf g(8, 8, ColorSpace::kRgb, 0.5);
  const ImageBuf g2(8, 8, ColorSpace::kRgb, 0.55);
  EXPECT_NEAR(mse_yuv(g, g2), 0.05 * 0.05 / 3.0, 1e-15);
}

TEST(IoTest, LatticeFixedPoint) {
  TempDir dir;
  const ImageBuf rgb = lattice_image(13, 7, ColorSpace::kRgb, 1);
  save_image(dir / "a.png", rgb);
  EXPECT_EQ(load_image(dir / "a.png"), rgb);
  save_image(dir / "a.ppm", rgb);
  EXPECT_EQ(load_image(dir / "a.ppm"), rgb);

  const ImageBuf gray = lattice_image(5, 6, ColorSpace::kGray, 2);
  save_image(dir / "g.png", gray);
  const ImageBuf back = load_image(dir / "g.png");
  ASSERT_EQ(back.colorspace(), ColorSpace::kRgb);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(back.channel(c).data()[7], gray.data()[7]);
}

TEST(IoTest, PpmWhitePixels) {
  TempDir dir;
  {
    std::ofstream f(dir / "w.ppm", std::ios::binary);
    f << "P6\n# comment\n2 2\n255\n";
    for (int i = 0; i < 12; ++i) f.put(static_cast<char>(255));
  }
  const ImageBuf img = load_image(dir / "w.ppm");
  EXPECT_EQ(img.width(), 2);
  for (double v : img.data()) EXPECT_EQ(v, 1.0);
}

TEST(IoTest, QuantizeRoundsHalfUp) {
  EXPECT_EQ(quantize_sample(0.5 / 255.0), 1);
  EXPECT_EQ(quantize_sample(-0.2), 0);
  EXPECT_EQ(quantize_sample(1.7), 255);
  EXPECT_EQ(quantize_sample(127.49 / 255.0), 127);
}

TEST(IoTest, Errors) {
  TempDir dir;
  try {
    load_image(dir / "missing.png");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.path(), dir / "missing.png");
    EXPECT_NE(e.reason().find("cannot open"), std::string::npos);
  }
  write_png16(dir / "deep.png");
  try {
    load_image(dir / "deep.png");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(e.reason().find("unsupported bit depth"), std::string::npos);
  }
  {
    std::ofstream f(dir / "deep.ppm", std::ios::binary);
    f << "P6 1 1 65535\n" << std::string(6, '\0');
  }
  try {
    load_image(dir / "deep.ppm");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(e.reason().find("unsupported bit depth"), std::string::npos);
  }
  {
    std::ofstream f(dir / "bad.ppm", std::ios::binary);
    f << "P6 x 1 255\n";
  }
  EXPECT_THROW(load_image(dir / "bad.ppm"), IoError);
  {
    std::ofstream f(dir / "trunc.ppm", std::ios::binary);
    f << "P6 4 4 255\nabc";
  }
  EXPECT_THROW(load_image(dir / "trunc.ppm"), IoError);
  {
    std::ofstream f(dir / "junk.png", std::ios::binary);
    f << "not an image at all";
  }
  EXPECT_THROW(load_image(dir / "junk.png"), IoError);
  EXPECT_THROW(save_image(dir / "nodir" / "x.png", ImageBuf(2, 2, ColorSpace::kRgb)), IoError);
  EXPECT_THROW(save_image(dir / "y.png", ImageBuf(2, 2, ColorSpace::kYuv)), IoError);
}

}  // namespace
}  // namespace lfmark
