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

#ifndef LFMARK_BENCH_HPP_
#define LFMARK_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lfmark/attacks.hpp"
#include "lfmark/image.hpp"
#include "lfmark/spectral.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark {

inline constexpr int kReportSchemaVersion = 1;

// ---- corpus ----------------------------------------------------------------

struct Corpus {
  std::vector<std::string> names;
  std::vector<ImageBuf> images;

  std::size_t size() const { return images.size(); }
  bool empty() const { return images.empty(); }
  /// SHA-256 (hex) over names, shapes and 8-bit quantised samples.
  std::string digest() const;
};

/// Loads every .png / .ppm in `dir` (non-recursive), sorted by file name.
Corpus load_corpus(const std::filesystem::path& dir);

/// Deterministic synthetic photographs: 1/f colour noise with a random
/// channel mix, overlaid with blended disks.
Corpus synth_corpus(int count, int size, std::uint64_t seed);

/// Writes the images as PNG plus a manifest.txt of "name digest" lines.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Bilinear resize of every image (copies when already at size).
Corpus resize_corpus(const Corpus& corpus, int width, int height);

// ---- frequency analysis ----------------------------------------------------

struct SpectralReport {
  BandSpec band;
  std::optional<AttackSpec> attack;  // nullopt is the identity
  double amplitude = 0.0;
  int n_images = 0;
  std::string corpus_hash;
  /// Post-attack band energy of the mean diff map over the pre-attack
  /// energy of the inserted band; indexed by Band.
  std::array<double, 3> retention{};
  MagnitudeMap mean_pre_map;
  MagnitudeMap mean_diff_map;

  double retention_of(Band b) const { return retention[static_cast<int>(b)]; }
};

/// Ring amplitude that gives the requested PSNR for an unclipped image.
double ring_amplitude_for_psnr(int width, int height, const BandSpec& band, double psnr_db);

/// Inserts a constant ring in `band` into every RGB channel, applies the
/// attack to the original and the marked image, and averages
/// |F(T(x_w)) - F(T(x_o))| over the corpus. Each image's map is divided by
/// the square root of its pre-attack inserted-band energy before averaging.
SpectralReport frequency_analysis(const Corpus& corpus, const BandSpec& band,
                                  const std::optional<AttackSpec>& attack, double amplitude);

// ---- detection -------------------------------------------------------------

struct EmpiricalDetection {
  double auroc = 0.0;
  std::map<double, double> tpr_at_fpr;
};

/// AUROC by rank statistic with ties counted half; TPR at each FPR uses the
/// null set's (1 - fpr) quantile with higher-rank interpolation and a
/// strict score > threshold test.
EmpiricalDetection empirical_detection(const std::vector<double>& scores_w,
                                       const std::vector<double>& scores_null,
                                       const std::vector<double>& fprs = {1e-3, 1e-2});

// ---- benchmark -------------------------------------------------------------

struct BenchConfig {
  std::uint64_t master_seed = 20260101;
  std::vector<MethodId> methods{MethodId::kLfqim, MethodId::kDwtDct, MethodId::kDwtDctSvd};
  /// nullopt is the no-attack cell.
  std::vector<std::optional<AttackSpec>> attacks{std::nullopt};
  std::vector<double> targets{1e-3, 1e-2};
  double p_o = 0.5;
  /// Replace p_o by the empirical null match rate of each cell.
  bool estimate_p_o = false;
  int eval_size = 512;
  std::map<MethodId, WatermarkKey> keys;  // missing entries use default_key
  int threads = 0;                        // 0 = hardware concurrency

  WatermarkKey key_for(MethodId id) const;
  nlohmann::ordered_json to_json() const;
};

struct BenchRecord {
  MethodId method = MethodId::kLfqim;
  std::optional<AttackSpec> attack;
  int n_images = 0;
  int k = 0;
  double bit_accuracy_mean = 0.0;
  /// Fraction of watermarked decodes with M > tau(target).
  std::map<double, double> tpr_at_fpr;
  std::map<double, int> tau;
  /// Same targets, thresholds taken from the null score distribution.
  std::map<double, double> empirical_tpr_at_fpr;
  double auroc = 0.0;
  double null_match_rate = 0.0;
  double p_o = 0.5;
  double psnr_mean = 0.0;
  double ssim_mean = 0.0;
  std::string corpus_hash;

  std::string attack_label() const;
};

std::vector<BenchRecord> run_benchmark(const Corpus& corpus, const BenchConfig& config);

/// 64-bit content hash of an image (8-bit quantised samples and shape), so
/// per-image seeds do not depend on corpus order.
std::uint64_t image_fingerprint(const ImageBuf& img);

/// Seed of the payload the benchmark embeds into an image for `method`.
std::uint64_t bench_message_seed(std::uint64_t master, MethodId method, std::uint64_t fingerprint);

/// Mean |F(x_w) - F(x_o)| (channel mean) over the corpus at `eval_size`,
/// using the benchmark's payloads. This is the per-method pattern picture.
MagnitudeMap watermark_diff_map(const Corpus& corpus, MethodId method, const WatermarkKey& key,
                                std::uint64_t master_seed, int eval_size);

// ---- reports ---------------------------------------------------------------

enum class ReportFormat { kJson, kCsv };

nlohmann::ordered_json report_json(const std::vector<BenchRecord>& records,
                                   const BenchConfig& config);
nlohmann::ordered_json report_json(const SpectralReport& report);

/// Deterministic serialisation; throws IoError on failure.
void write_report(const std::vector<BenchRecord>& records, const BenchConfig& config,
                  ReportFormat format, const std::filesystem::path& path);
void write_report(const SpectralReport& report, ReportFormat format,
                  const std::filesystem::path& path);

/// Column names of the benchmark CSV.
std::vector<std::string> csv_columns();

/// 8-bit grayscale PNG of log1p(channel-mean map), DC moved to the centre,
/// min-max normalised (all-equal maps render black).
void render_heatmap(const MagnitudeMap& map, const std::filesystem::path& path);

}  // namespace lfmark

#endif  // LFMARK_BENCH_HPP_
