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

#ifndef LFMARK_WATERMARK_HPP_
#define LFMARK_WATERMARK_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lfmark/image.hpp"

namespace lfmark {

enum class MethodId {
  kLfqim,      // QIM on low-frequency DFT magnitudes of Y
  kDwtDct,     // Haar HL band, DCT coefficient-pair ordering
  kDwtDctSvd,  // Haar LL band, QIM on the largest singular value of 8x8 blocks
};

std::string_view to_string(MethodId id);
MethodId parse_method(std::string_view name);

/// Payload length each method embeds.
int capacity(MethodId id);

/// Ordered k-bit payload.
class BitMessage {
 public:
  BitMessage() = default;
  explicit BitMessage(std::vector<bool> bits) : bits_(std::move(bits)) {}
  explicit BitMessage(int k) : bits_(static_cast<std::size_t>(k), false) {}

  /// Fair coin flips from a SplitMix64 stream.
  static BitMessage random(int k, std::uint64_t seed);

  /// Parses ceil(k/4) lowercase or uppercase hex nibbles, most significant
  /// bit first. Padding bits in the final nibble must be zero.
  static BitMessage from_hex(std::string_view hex, int k);
  std::string to_hex() const;

  int size() const { return static_cast<int>(bits_.size()); }
  bool operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
  void set(int i, bool v) { bits_[static_cast<std::size_t>(i)] = v; }
  BitMessage complement() const;
  const std::vector<bool>& bits() const { return bits_; }

  friend bool operator==(const BitMessage&, const BitMessage&) = default;

 private:
  std::vector<bool> bits_;
};

/// Parameters of one embedder instance. `delta` is the method strength: the
/// QIM step for LFQIM (DFT magnitude divided by W*H) and DWT-DCT-SVD
/// (singular-value units), the coefficient-pair margin for DWT-DCT. The
/// annulus fields and `redundancy` only apply to LFQIM.
struct WatermarkKey {
  std::uint64_t seed = 0;
  double delta = 0.0;
  double r_low = 0.0;
  double r_high = 0.0;
  int redundancy = 1;
  int native_width = 256;
  int native_height = 256;

  nlohmann::ordered_json to_json() const;
  static WatermarkKey from_json(const nlohmann::json& j);

  friend bool operator==(const WatermarkKey&, const WatermarkKey&) = default;
};

WatermarkKey default_key(MethodId id, std::uint64_t seed = 0x5EEDull);

/// Throws std::invalid_argument when the key cannot carry `k` bits with
/// `method` (bad strength, even/small redundancy, annulus too small,
/// native resolution not block-aligned).
void validate_key(MethodId method, const WatermarkKey& key, int k);

struct Extraction {
  BitMessage bits;
  /// Per-bit confidence in the decoded value, in [-1, 1]; negative when the
  /// majority vote and the mean margin disagree.
  std::vector<double> soft;

  /// Mean over bits of the margin signed towards `truth`; +1 when every
  /// position sits exactly on the truth lattice.
  double score_against(const BitMessage& truth) const;
};

/// Embeds at the key's native resolution. Output is RGB clamped to [0, 1].
ImageBuf embed(MethodId method, const ImageBuf& img, const BitMessage& msg,
               const WatermarkKey& key);

/// Blind extraction at the key's native resolution.
Extraction extract(MethodId method, const ImageBuf& img, const WatermarkKey& key);

/// Resolution scaling: embed at the native resolution and carry the residual
/// back to the input resolution (images in [0, 1]).
ImageBuf scaled_embed(MethodId method, const ImageBuf& img, const BitMessage& msg,
                      const WatermarkKey& key);

/// Resizes the probe to the native resolution, then extracts.
Extraction scaled_extract(MethodId method, const ImageBuf& img, const WatermarkKey& key);

namespace detail {

/// Frequency bin in the stored half-plane.
struct Bin {
  int u;
  int v;
};

/// Key-seeded assignment of k*m distinct half-plane annulus bins; bit i owns
/// entries [i*m, (i+1)*m).
std::vector<Bin> lfqim_positions(const WatermarkKey& key, int k);

/// Number of half-plane annulus bins available at the native resolution.
std::size_t lfqim_available_bins(const WatermarkKey& key);

ImageBuf lfqim_embed(const ImageBuf& rgb, const BitMessage& msg, const WatermarkKey& key);
Extraction lfqim_extract(const ImageBuf& rgb, const WatermarkKey& key, int k);
ImageBuf dwt_dct_embed(const ImageBuf& rgb, const BitMessage& msg, const WatermarkKey& key);
Extraction dwt_dct_extract(const ImageBuf& rgb, const WatermarkKey& key, int k);
ImageBuf dwt_dct_svd_embed(const ImageBuf& rgb, const BitMessage& msg, const WatermarkKey& key);
Extraction dwt_dct_svd_extract(const ImageBuf& rgb, const WatermarkKey& key, int k);

/// Key-seeded block order for the baselines: entry t carries bit t mod k.
std::vector<int> block_order(std::uint64_t seed, int blocks);

/// Replaces the Y channel of an RGB image while keeping U and V.
ImageBuf replace_luma(const ImageBuf& rgb, const ImageBuf& new_y);

/// Signed distance preference for bit 1 under a QIM lattice of step `step`:
/// +1 on the bit-1 lattice (offset step/2), -1 on the bit-0 lattice.
double qim_margin(double value, double step);
double qim_quantize(double value, double step, bool bit);

/// Majority vote with soft tie-break. `margins` are signed towards bit 1.
void decide_bit(const std::vector<double>& margins, bool& bit, double& soft);

}  // namespace detail

}  // namespace lfmark

#endif  // LFMARK_WATERMARK_HPP_
