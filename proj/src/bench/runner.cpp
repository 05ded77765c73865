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
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lfmark/bench.hpp"
#include "lfmark/numeric.hpp"
#include "lfmark/rng.hpp"
#include "lfmark/stats.hpp"

namespace lfmark {

namespace {

struct Sample {
  int matched_w = 0;
  int matched_null = 0;
  double score_w = 0.0;
  double score_null = 0.0;
};

struct Quality {
  double psnr = 0.0;
  double ssim = 0.0;
};

std::uint64_t attack_seed(std::uint64_t master, const AttackSpec& spec,
                          std::uint64_t fingerprint) {
  return derive_seed(derive_seed(master ^ 0xA77AC4ull, spec.seed), fingerprint);
}

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  t = std::clamp(t, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (t == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::uint64_t bench_message_seed(std::uint64_t master, MethodId method,
                                 std::uint64_t fingerprint) {
  return derive_seed(derive_seed(master, 0x4D53470000ull + static_cast<int>(method)),
                     fingerprint);
}

MagnitudeMap watermark_diff_map(const Corpus& corpus, MethodId method, const WatermarkKey& key,
                                std::uint64_t master_seed, int eval_size) {
  if (corpus.empty()) throw std::invalid_argument("watermark_diff_map: empty corpus");
  MagnitudeMap acc(eval_size, eval_size, 1);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ImageBuf& src = corpus.images[i];
    const ImageBuf x_o = src.width() == eval_size && src.height() == eval_size
                             ? src
                             : resize_bilinear(src, eval_size, eval_size);
    const BitMessage msg = BitMessage::random(
        capacity(method), bench_message_seed(master_seed, method, image_fingerprint(src)));
    const MagnitudeMap d = spectral_diff(scaled_embed(method, x_o, msg, key), x_o).channel_mean();
    auto dst = acc.data();
    auto s = d.data();
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += s[j];
  }
  for (double& v : acc.data()) v /= static_cast<double>(corpus.size());
  return acc;
}

WatermarkKey BenchConfig::key_for(MethodId id) const {
  const auto it = keys.find(id);
  return it != keys.end() ? it->second : default_key(id);
}

std::string BenchRecord::attack_label() const { return attack ? attack->label() : "none"; }

std::vector<BenchRecord> run_benchmark(const Corpus& corpus, const BenchConfig& config) {
  if (corpus.empty()) throw std::invalid_argument("run_benchmark: empty corpus");
  if (config.methods.empty()) throw std::invalid_argument("run_benchmark: no methods");
  if (config.attacks.empty()) throw std::invalid_argument("run_benchmark: no attacks");
  if (config.eval_size < 8) throw std::invalid_argument("run_benchmark: eval_size < 8");
  for (const auto& a : config.attacks) {
    if (a) a->validate();
  }
  std::vector<WatermarkKey> keys;
  for (MethodId m : config.methods) {
    keys.push_back(config.key_for(m));
    validate_key(m, keys.back(), capacity(m));
  }

  const std::size_t n = corpus.size();
  const std::size_t n_methods = config.methods.size();
  const std::size_t n_attacks = config.attacks.size();
  // samples[(a * n_methods + m) * n + i]
  std::vector<Sample> samples(n_attacks * n_methods * n);
  std::vector<Quality> quality(n_methods * n);

  parallel_for(n, config.threads, [&](std::size_t i) {
    const ImageBuf& src = corpus.images[i];
    const ImageBuf x_o = src.width() == config.eval_size && src.height() == config.eval_size
                             ? src
                             : resize_bilinear(src, config.eval_size, config.eval_size);
    const std::uint64_t fp = image_fingerprint(src);
    std::vector<BitMessage> truths;
    std::vector<ImageBuf> marked;
    for (std::size_t m = 0; m < n_methods; ++m) {
      const MethodId id = config.methods[m];
      truths.push_back(BitMessage::random(capacity(id), bench_message_seed(config.master_seed, id, fp)));
      marked.push_back(scaled_embed(id, x_o, truths[m], keys[m]));
      quality[m * n + i] = {psnr(x_o, marked[m]), ssim(x_o, marked[m])};
    }
    for (std::size_t a = 0; a < n_attacks; ++a) {
      std::optional<AttackSpec> spec = config.attacks[a];
      if (spec) spec->seed = attack_seed(config.master_seed, *spec, fp);
      const ImageBuf probe_o = spec ? apply_attack(x_o, *spec) : x_o;
      for (std::size_t m = 0; m < n_methods; ++m) {
        const MethodId id = config.methods[m];
        const ImageBuf probe_w = spec ? apply_attack(marked[m], *spec) : marked[m];
        const Extraction ew = scaled_extract(id, probe_w, keys[m]);
        const Extraction en = scaled_extract(id, probe_o, keys[m]);
        Sample& s = samples[(a * n_methods + m) * n + i];
        s.matched_w = matching_bits(ew.bits, truths[m]);
        s.matched_null = matching_bits(en.bits, truths[m]);
        s.score_w = ew.score_against(truths[m]);
        s.score_null = en.score_against(truths[m]);
      }
    }
  });

  const std::string hash = corpus.digest();
  std::vector<BenchRecord> records;
  for (std::size_t a = 0; a < n_attacks; ++a) {
    for (std::size_t m = 0; m < n_methods; ++m) {
      const MethodId id = config.methods[m];
      const int k = capacity(id);
      BenchRecord r;
      r.method = id;
      r.attack = config.attacks[a];
      r.n_images = static_cast<int>(n);
      r.k = k;
      r.corpus_hash = hash;

      KahanSum acc, null_rate, q_psnr, q_ssim;
      std::vector<double> sw, sn;
      const Sample* cell = &samples[(a * n_methods + m) * n];
      for (std::size_t i = 0; i < n; ++i) {
        acc += static_cast<double>(cell[i].matched_w) / k;
        null_rate += static_cast<double>(cell[i].matched_null) / k;
        sw.push_back(cell[i].score_w);
        sn.push_back(cell[i].score_null);
        q_psnr += quality[m * n + i].psnr;
        q_ssim += quality[m * n + i].ssim;
      }
      r.bit_accuracy_mean = acc.mean();
      r.null_match_rate = null_rate.mean();
      r.psnr_mean = q_psnr.mean();
      r.ssim_mean = q_ssim.mean();
      r.p_o = config.estimate_p_o ? std::clamp(r.null_match_rate, 1e-6, 1.0 - 1e-6) : config.p_o;

      for (double target : config.targets) {
        const int tau = tau_for_target_fpr(k, r.p_o, target);
        const auto hits = std::count_if(cell, cell + n,
                                        [tau](const Sample& s) { return s.matched_w > tau; });
        r.tau[target] = tau;
        r.tpr_at_fpr[target] = static_cast<double>(hits) / static_cast<double>(n);
      }
      const EmpiricalDetection det = empirical_detection(sw, sn, config.targets);
      r.auroc = det.auroc;
      r.empirical_tpr_at_fpr = det.tpr_at_fpr;
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace lfmark
