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

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include "lfmark/image.hpp"

namespace lfmark {

namespace fs = std::filesystem;

IoError::IoError(const fs::path& path, const std::string& reason)
    : std::runtime_error(path.string() + ": " + reason), path_(path), reason_(reason) {}

unsigned char quantize_sample(double v) {
  const double q = std::floor(v * 255.0 + 0.5);
  return static_cast<unsigned char>(std::clamp(q, 0.0, 255.0));
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw IoError(path, std::string("cannot open file (") +
                            (mode[0] == 'r' ? "unreadable" : "not writable") + ")");
  }
  return f;
}

ImageBuf from_interleaved(const std::vector<unsigned char>& px, int w, int h, int ch) {
  ImageBuf img(w, h, ColorSpace::kRgb);
  for (int c = 0; c < 3; ++c) {
    auto plane = img.plane(c);
    const int src_c = ch == 1 ? 0 : c;
    for (std::size_t i = 0; i < plane.size(); ++i) {
      plane[i] = px[i * ch + src_c] / 255.0;
    }
  }
  return img;
}

std::vector<unsigned char> to_interleaved(const ImageBuf& img) {
  const int ch = img.channels();
  std::vector<unsigned char> px(img.size());
  for (int c = 0; c < ch; ++c) {
    auto plane = img.plane(c);
    for (std::size_t i = 0; i < plane.size(); ++i) {
      px[i * ch + c] = quantize_sample(plane[i]);
    }
  }
  return px;
}

// ---- PNG -------------------------------------------------------------------

struct PngError {
  std::string message;
};

void png_error_fn(png_structp png, png_const_charp msg) {
  auto* err = static_cast<PngError*>(png_get_error_ptr(png));
  if (err) err->message = msg;
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

ImageBuf load_png(const fs::path& path) {
  FilePtr f = open_file(path, "rb");
  PngError err;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warning_fn);
  if (!png) throw IoError(path, "libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError(path, "libpng initialisation failed");
  }

  std::vector<unsigned char> px;
  std::vector<png_bytep> rows;
  // Written between setjmp and a possible longjmp.
  volatile png_uint_32 w = 0, h = 0;
  volatile int channels = 0;
  std::string failure;

  if (setjmp(png_jmpbuf(png))) {
    failure = "malformed PNG: " + err.message;
  } else {
    png_init_io(png, f.get());
    png_read_info(png, info);
    w = png_get_image_width(png, info);
    h = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int type = png_get_color_type(png, info);
    if (depth == 16) {
      failure = "unsupported bit depth (16)";
    } else {
      if (type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
      if (type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
      if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
      png_set_strip_alpha(png);
      png_read_update_info(png, info);
      channels = png_get_channels(png, info);
      if (channels != 1 && channels != 3) {
        failure = "unsupported channel layout";
      } else {
        const std::size_t stride = static_cast<std::size_t>(w) * channels;
        px.resize(stride * h);
        rows.resize(h);
        for (png_uint_32 y = 0; y < h; ++y) rows[y] = px.data() + y * stride;
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
      }
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!failure.empty()) throw IoError(path, failure);
  return from_interleaved(px, static_cast<int>(w), static_cast<int>(h), channels);
}

void save_png(const fs::path& path, const ImageBuf& img) {
  const std::vector<unsigned char> px = to_interleaved(img);
  FilePtr f = open_file(path, "wb");
  PngError err;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_fn, png_warning_fn);
  if (!png) throw IoError(path, "libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError(path, "libpng initialisation failed");
  }
  const int ch = img.channels();
  std::vector<png_bytep> rows(img.height());
  for (int y = 0; y < img.height(); ++y) {
    rows[y] = const_cast<png_bytep>(px.data()) + static_cast<std::size_t>(y) * img.width() * ch;
  }
  std::string failure;
  if (setjmp(png_jmpbuf(png))) {
    failure = "PNG write failed: " + err.message;
  } else {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, img.width(), img.height(), 8,
                 ch == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
  }
  png_destroy_write_struct(&png, &info);
  if (!failure.empty()) throw IoError(path, failure);
  if (std::fflush(f.get()) != 0) throw IoError(path, "write failed");
}

// ---- PPM (P6) --------------------------------------------------------------

// Reads the next whitespace-delimited header token, skipping '#' comments.
bool next_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) break;
  }
  if (c == EOF) return false;
  tok.push_back(static_cast<char>(c));
  while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(in.get()));
  }
  return true;
}

int parse_positive(const fs::path& path, const std::string& tok, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 9) {
    throw IoError(path, std::string("malformed header (") + what + ")");
  }
  const int v = std::stoi(tok);
  if (v <= 0) throw IoError(path, std::string("malformed header (") + what + ")");
  return v;
}

ImageBuf load_ppm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open file (unreadable)");
  std::string tok;
  if (!next_token(in, tok) || tok != "P6") throw IoError(path, "malformed header (magic)");
  if (!next_token(in, tok)) throw IoError(path, "malformed header (width)");
  const int w = parse_positive(path, tok, "width");
  if (!next_token(in, tok)) throw IoError(path, "malformed header (height)");
  const int h = parse_positive(path, tok, "height");
  if (!next_token(in, tok)) throw IoError(path, "malformed header (maxval)");
  const int maxval = parse_positive(path, tok, "maxval");
  if (maxval != 255) {
    throw IoError(path, "unsupported bit depth (maxval " + std::to_string(maxval) + ")");
  }
  if (!std::isspace(in.get())) throw IoError(path, "malformed header (separator)");
  std::vector<unsigned char> px(static_cast<std::size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (in.gcount() != static_cast<std::streamsize>(px.size())) {
    throw IoError(path, "truncated pixel data");
  }
  return from_interleaved(px, w, h, 3);
}

void save_ppm(const fs::path& path, const ImageBuf& img) {
  if (img.colorspace() != ColorSpace::kRgb) {
    throw IoError(path, "PPM output requires an RGB image");
  }
  const std::vector<unsigned char> px = to_interleaved(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open file (not writable)");
  out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

ImageBuf load_image(const fs::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError(path, "cannot open file (unreadable)");
  std::array<unsigned char, 8> sig{};
  probe.read(reinterpret_cast<char*>(sig.data()), sig.size());
  const auto got = probe.gcount();
  probe.close();
  if (got >= 8 && png_sig_cmp(sig.data(), 0, 8) == 0) return load_png(path);
  if (got >= 2 && sig[0] == 'P' && sig[1] == '6') return load_ppm(path);
  if (got >= 2 && sig[0] == 'P' && sig[1] >= '1' && sig[1] <= '7') {
    throw IoError(path, "unsupported PNM variant (only binary P6 is supported)");
  }
  throw IoError(path, "unrecognised image format");
}

void save_image(const fs::path& path, const ImageBuf& img) {
  if (img.colorspace() == ColorSpace::kYuv) {
    throw IoError(path, "cannot save a YUV image; convert to RGB first");
  }
  if (img.empty()) throw IoError(path, "empty image");
  if (path.has_parent_path() && !fs::is_directory(path.parent_path())) {
    throw IoError(path, "parent directory does not exist");
  }
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  if (ext == ".ppm") {
    save_ppm(path, img);
  } else {
    save_png(path, img);
  }
}

}  // namespace lfmark
