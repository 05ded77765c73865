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

#ifndef LFMARK_SPECTRAL_HPP_
#define LFMARK_SPECTRAL_HPP_

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lfmark/image.hpp"

namespace lfmark {

using Complex = std::complex<double>;

enum class Direction { kForward, kInverse };

/// Per-channel complex 2D frequency array, DC at (0, 0), same planar layout
/// as ImageBuf.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(int width, int height, int channels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t plane_size() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  Complex& at(int u, int v, int c = 0) { return data_[index(u, v, c)]; }
  const Complex& at(int u, int v, int c = 0) const { return data_[index(u, v, c)]; }
  std::span<Complex> plane(int c) {
    return std::span<Complex>(data_).subspan(c * plane_size(), plane_size());
  }
  std::span<const Complex> plane(int c) const {
    return std::span<const Complex>(data_).subspan(c * plane_size(), plane_size());
  }
  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  /// Largest |S(u,v) - conj(S(-u,-v))| over all bins and channels.
  double hermitian_defect() const;

 private:
  std::size_t index(int u, int v, int c) const {
    return (static_cast<std::size_t>(c) * height_ + v) * width_ + u;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<Complex> data_;
};

/// Unnormalised forward DFT of every channel.
Spectrum fft2(const ImageBuf& img);

/// Inverse DFT scaled by 1/(W*H). Imaginary residue up to
/// kMaxImagResidual is discarded; anything larger means the spectrum was not
/// Hermitian and is reported as std::domain_error.
ImageBuf ifft2(const Spectrum& spec, ColorSpace cs);

/// Inverse DFT keeping the complex result (no symmetry check).
Spectrum ifft2_complex(const Spectrum& spec);

inline constexpr double kMaxImagResidual = 1e-6;

// ---- Haar wavelet ----------------------------------------------------------

/// Single-level orthonormal Haar sub-bands. For each 2x2 block [a b; c d]:
///   LL = (a+b+c+d)/2, LH = (a-b+c-d)/2 (horizontal detail),
///   HL = (a+b-c-d)/2 (vertical detail), HH = (a-b-c+d)/2.
struct HaarBands {
  ImageBuf ll;
  ImageBuf lh;
  ImageBuf hl;
  ImageBuf hh;
};

HaarBands haar_dwt2(const ImageBuf& gray);
ImageBuf haar_idwt2(const HaarBands& bands);

// ---- 8x8 DCT ---------------------------------------------------------------

/// Row-major 8x8 block; element (row, col) at [row * 8 + col].
using Block8 = std::array<double, 64>;

/// Orthonormal type-II DCT (forward) or type-III (inverse) of an 8x8 block.
/// Coefficient (u, v) is stored at [v * 8 + u] with u the horizontal
/// frequency. Throws std::invalid_argument unless the input has 64 values.
Block8 dct2_block(std::span<const double> block, Direction dir);

// ---- small SVD -------------------------------------------------------------

/// Dense row-major matrix for the small (n <= 8) problems the DWT-DCT-SVD
/// embedder solves.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct SvdResult {
  Matrix u;
  std::vector<double> s;  // nonincreasing, >= 0
  Matrix v;
};

/// One-sided Jacobi SVD of a square matrix with n <= 8: m = U diag(S) V^T.
/// Throws std::runtime_error if 100 sweeps do not reach off-diagonal
/// tolerance 1e-12.
SvdResult svd_small(const Matrix& m);

// ---- frequency bands -------------------------------------------------------

enum class Band { kLow, kMid, kHigh };

std::string_view to_string(Band band);
Band parse_band(std::string_view name);

/// Annulus in units of the Nyquist radius. A bin is selected when its
/// centred radial distance r satisfies r_low <= r < r_high; r_high >= 1
/// extends the band to the spectrum corners.
struct BandSpec {
  Band band = Band::kLow;
  double r_low = 0.0;
  double r_high = 0.125;

  /// LOW = [0, 0.125), MID = [0.125, 0.375), HIGH = [0.375, 1].
  static BandSpec defaults(Band band);
  void validate() const;
};

/// Centred radial distance of bin (u, v) divided by the Nyquist radius; each
/// axis is normalised by its own Nyquist frequency.
double radial_fraction(int u, int v, int width, int height);

bool in_annulus(double r, double r_low, double r_high);

/// Frequency-bin selection, one byte per bin in (v * width + u) order.
class BinMask {
 public:
  BinMask(int width, int height) : width_(width), height_(height), bits_(width * height, 0) {}
  int width() const { return width_; }
  int height() const { return height_; }
  bool operator()(int u, int v) const { return bits_[v * width_ + u] != 0; }
  void set(int u, int v, bool on) { bits_[v * width_ + u] = on ? 1 : 0; }
  std::size_t count() const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Bins of `band`, DC always excluded. Symmetric under (u,v) -> (-u,-v).
BinMask band_mask(int width, int height, const BandSpec& band);

/// Real, constant-valued ring: `amplitude` on every annulus bin, zero
/// elsewhere. Single-channel Spectrum with zero imaginary parts. Throws
/// std::invalid_argument on an empty annulus or non-positive amplitude.
Spectrum ring_pattern(int width, int height, double r_low, double r_high, double amplitude);

/// Real magnitude map over frequency bins, planar like Spectrum.
class MagnitudeMap {
 public:
  MagnitudeMap() = default;
  MagnitudeMap(int width, int height, int channels)
      : width_(width), height_(height), channels_(channels),
        data_(static_cast<std::size_t>(width) * height * channels, 0.0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  double& at(int u, int v, int c = 0) {
    return data_[(static_cast<std::size_t>(c) * height_ + v) * width_ + u];
  }
  double at(int u, int v, int c = 0) const {
    return data_[(static_cast<std::size_t>(c) * height_ + v) * width_ + u];
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Single-channel map holding the mean over channels.
  MagnitudeMap channel_mean() const;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Elementwise |fft2(a) - fft2(b)| per channel.
MagnitudeMap spectral_diff(const ImageBuf& a, const ImageBuf& b);

/// |S| per bin and channel.
MagnitudeMap magnitude(const Spectrum& spec);

/// Rendering input: log1p of the channel-mean map, shifted so DC sits at
/// (width/2, height/2). Row-major, width*height values.
std::vector<double> log_magnitude_centered(const MagnitudeMap& map);

/// Sum of squared magnitudes over the band's bins (all channels).
double band_energy(const MagnitudeMap& map, const BandSpec& band);

}  // namespace lfmark

#endif  // LFMARK_SPECTRAL_HPP_
