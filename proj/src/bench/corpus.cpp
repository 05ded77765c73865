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
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

#include "lfmark/bench.hpp"
#include "lfmark/rng.hpp"

namespace lfmark {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 initialisation failed");
    }
  }
  void update(const void* data, std::size_t n) {
    EVP_DigestUpdate(ctx_.get(), data, n);
  }
  void update(const std::string& s) { update(s.data(), s.size() + 1); }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof buf, "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

void hash_image(Sha256& sha, const ImageBuf& img) {
  const std::int32_t dims[3] = {img.width(), img.height(), img.channels()};
  sha.update(dims, sizeof dims);
  std::vector<unsigned char> q(img.size());
  auto d = img.data();
  std::transform(d.begin(), d.end(), q.begin(), quantize_sample);
  sha.update(q.data(), q.size());
}

std::string image_digest(const ImageBuf& img) {
  Sha256 sha;
  hash_image(sha, img);
  return sha.hex();
}

// Zero-mean, unit-variance field with a 1/f amplitude spectrum.
std::vector<double> pink_field(int n, const CounterRng& rng, std::uint64_t stream) {
  ImageBuf white(n, n, ColorSpace::kGray);
  auto w = white.plane(0);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rng.normal(stream, 2 * i);
  Spectrum spec = fft2(white);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      const double fu = (u <= n / 2 ? u : u - n) / static_cast<double>(n);
      const double fv = (v <= n / 2 ? v : v - n) / static_cast<double>(n);
      const double f = (u == 0 && v == 0) ? 1.0 : std::sqrt(fu * fu + fv * fv);
      spec.at(u, v) /= f;
    }
  }
  const Spectrum field = ifft2_complex(spec);
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  double mean = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = field.plane(0)[i].real();
    mean += out[i];
  }
  mean /= static_cast<double>(out.size());
  double var = 0.0;
  for (double& x : out) {
    x -= mean;
    var += x * x;
  }
  const double sd = std::sqrt(var / static_cast<double>(out.size()));
  for (double& x : out) x /= sd;
  return out;
}

ImageBuf synth_image(int n, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::array<std::vector<double>, 3> fields;
  for (int c = 0; c < 3; ++c) fields[c] = pink_field(n, rng, static_cast<std::uint64_t>(c));

  SplitMix64 draws(derive_seed(seed, 7));
  double mix[3][3];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double u1 = draws.uniform();
      const double u2 = draws.uniform();
      const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      mix[r][c] = 0.3 * g + (r == c ? 1.0 : 0.0);
    }
  }
  ImageBuf img(n, n, ColorSpace::kRgb);
  double peak = 0.0;
  const std::size_t plane = img.plane_size();
  for (int c = 0; c < 3; ++c) {
    auto p = img.plane(c);
    for (std::size_t i = 0; i < plane; ++i) {
      p[i] = mix[c][0] * fields[0][i] + mix[c][1] * fields[1][i] + mix[c][2] * fields[2][i];
      peak = std::max(peak, std::abs(p[i]));
    }
  }
  for (double& v : img.data()) v = v / peak * 0.25 + 0.5;

  for (int disk = 0; disk < 6; ++disk) {
    const double cx = draws.uniform() * n;
    const double cy = draws.uniform() * n;
    const double r = n * (0.05 + 0.2 * draws.uniform());
    double col[3];
    for (double& x : col) x = 0.15 + 0.7 * draws.uniform();
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) >= r * r) continue;
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = 0.5 * img.at(x, y, c) + 0.5 * col[c];
      }
    }
  }
  img.clamp(0.0, 1.0);
  return img;
}

}  // namespace

std::uint64_t image_fingerprint(const ImageBuf& img) {
  const std::string hex = image_digest(img);
  return std::stoull(hex.substr(0, 16), nullptr, 16);
}

std::string Corpus::digest() const {
  Sha256 sha;
  for (std::size_t i = 0; i < images.size(); ++i) {
    sha.update(i < names.size() ? names[i] : std::string());
    hash_image(sha, images[i]);
  }
  return sha.hex();
}

Corpus load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError(dir, "not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (ext == ".png" || ext == ".ppm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Corpus corpus;
  for (const auto& f : files) {
    corpus.names.push_back(f.filename().string());
    corpus.images.push_back(load_image(f));
  }
  return corpus;
}

Corpus synth_corpus(int count, int size, std::uint64_t seed) {
  if (count < 1 || size < 8) throw std::invalid_argument("synth_corpus: need count >= 1, size >= 8");
  Corpus corpus;
  char name[32];
  for (int i = 0; i < count; ++i) {
    std::snprintf(name, sizeof name, "synth_%04d.png", i);
    corpus.names.emplace_back(name);
    corpus.images.push_back(synth_image(size, derive_seed(seed, static_cast<std::uint64_t>(i))));
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(dir, ec.message());
  std::ofstream manifest(dir / "manifest.txt", std::ios::binary);
  if (!manifest) throw IoError(dir / "manifest.txt", "cannot open for writing");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    save_image(dir / corpus.names[i], corpus.images[i]);
    manifest << corpus.names[i] << ' ' << image_digest(corpus.images[i]) << '\n';
  }
  manifest << "corpus " << corpus.digest() << '\n';
  if (!manifest) throw IoError(dir / "manifest.txt", "write failed");
}

Corpus resize_corpus(const Corpus& corpus, int width, int height) {
  Corpus out;
  out.names = corpus.names;
  for (const auto& img : corpus.images) {
    out.images.push_back(img.width() == width && img.height() == height
                             ? img
                             : resize_bilinear(img, width, height));
  }
  return out;
}

}  // namespace lfmark
