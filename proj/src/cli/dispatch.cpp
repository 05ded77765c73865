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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "lfmark/attacks.hpp"
#include "lfmark/bench.hpp"
#include "lfmark/cli.hpp"
#include "lfmark/stats.hpp"
#include "lfmark/watermark.hpp"

namespace lfmark {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

WatermarkKey read_key(const std::string& path, MethodId method) {
  if (path.empty()) return default_key(method);
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open key file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path, std::string("invalid JSON: ") + e.what());
  }
  return WatermarkKey::from_json(j);
}

std::string default_corpus() {
  const char* env = std::getenv("LFMARK_CORPUS");
  return env ? env : "";
}

Corpus open_corpus(const std::string& dir, int limit, int size) {
  if (dir.empty()) throw UsageError("no corpus: pass --corpus or set LFMARK_CORPUS");
  Corpus c = load_corpus(dir);
  if (c.empty()) throw std::runtime_error("corpus " + dir + " holds no .png/.ppm images");
  if (limit > 0 && static_cast<std::size_t>(limit) < c.size()) {
    c.names.resize(static_cast<std::size_t>(limit));
    c.images.resize(static_cast<std::size_t>(limit));
  }
  if (size > 0) c = resize_corpus(c, size, size);
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "none", "all", "kind" (all severities) or "kind@s".
std::vector<std::optional<AttackSpec>> parse_attacks(const std::string& list,
                                                     std::uint64_t seed) {
  std::vector<std::optional<AttackSpec>> out;
  for (const auto& item : split(list, ',')) {
    if (item == "none") {
      out.emplace_back(std::nullopt);
    } else if (item == "all") {
      for (AttackKind k : kAllAttackKinds) {
        for (int s = 1; s <= 5; ++s) out.emplace_back(AttackSpec{k, s, seed});
      }
    } else if (const auto at = item.find('@'); at != std::string::npos) {
      AttackSpec spec{parse_attack_kind(item.substr(0, at)), 0, seed};
      try {
        spec.severity = std::stoi(item.substr(at + 1));
      } catch (const std::exception&) {
        throw UsageError("bad severity in '" + item + "'");
      }
      spec.validate();
      out.emplace_back(spec);
    } else {
      const AttackKind k = parse_attack_kind(item);
      for (int s = 1; s <= 5; ++s) out.emplace_back(AttackSpec{k, s, seed});
    }
  }
  if (out.empty()) throw UsageError("empty attack list");
  return out;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lfmark: low-frequency watermarking benchmark toolkit"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version, report schema and ladder version");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Embed a message (any resolution)");
  std::string e_method, e_in, e_out, e_msg, e_key;
  embed_cmd->add_option("-m,--method", e_method, "lfqim | dwt_dct | dwt_dct_svd")->required();
  embed_cmd->add_option("-i,--input", e_in, "Input image")->required();
  embed_cmd->add_option("-o,--output", e_out, "Output image (.png or .ppm)")->required();
  embed_cmd->add_option("--msg", e_msg, "Message as hex")->required();
  embed_cmd->add_option("--key", e_key, "Key JSON (default key if omitted)");

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Blind extraction and detection");
  std::string x_method, x_in, x_key, x_truth;
  double x_fpr = 1e-3;
  double x_po = 0.5;
  extract_cmd->add_option("-m,--method", x_method)->required();
  extract_cmd->add_option("-i,--input", x_in)->required();
  extract_cmd->add_option("--key", x_key);
  extract_cmd->add_option("--truth", x_truth, "Ground-truth message (hex)");
  extract_cmd->add_option("--fpr", x_fpr, "Target false-positive rate")->check(
      CLI::Range(1e-300, 1.0));
  extract_cmd->add_option("--p-o", x_po, "Null matching probability")->check(
      CLI::Range(0.0, 1.0));

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Apply one ladder distortion");
  std::string a_in, a_out, a_kind;
  int a_sev = 0;
  std::uint64_t a_seed = 0;
  attack_cmd->add_option("-i,--input", a_in)->required();
  attack_cmd->add_option("-o,--output", a_out)->required();
  attack_cmd->add_option("--kind", a_kind)->required();
  attack_cmd->add_option("--severity", a_sev)->required()->check(CLI::Range(1, 5));
  auto* a_seed_opt = attack_cmd->add_option("--seed", a_seed);

  // attacks --list
  auto* list_cmd = app.add_subcommand("attacks", "Describe the attack ladder");
  bool list_flag = false;
  list_cmd->add_flag("--list", list_flag, "Print the ladder as JSON");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Ring-pattern frequency analysis");
  std::string z_corpus = default_corpus(), z_band = "low", z_kind = "none", z_out, z_heat, z_csv;
  int z_sev = 3, z_limit = 0, z_size = 0;
  double z_amp = 0.0;
  std::uint64_t z_seed = 0;
  analyze_cmd->add_option("--corpus", z_corpus, "Corpus directory (env LFMARK_CORPUS)");
  analyze_cmd->add_option("--band", z_band, "low | mid | high");
  analyze_cmd->add_option("--kind", z_kind, "Attack kind or none");
  analyze_cmd->add_option("--severity", z_sev)->check(CLI::Range(1, 5));
  analyze_cmd->add_option("--seed", z_seed);
  analyze_cmd->add_option("--amp", z_amp, "Ring amplitude (default: 40 dB PSNR)");
  analyze_cmd->add_option("--limit", z_limit, "Use the first N images");
  analyze_cmd->add_option("--size", z_size, "Resize images to N x N");
  analyze_cmd->add_option("-o,--output", z_out, "Report JSON")->required();
  analyze_cmd->add_option("--csv", z_csv, "Report CSV");
  analyze_cmd->add_option("--heatmap", z_heat, "Mean diff map PNG");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark matrix");
  std::string b_corpus = default_corpus(), b_methods = "lfqim,dwt_dct,dwt_dct_svd",
              b_attacks = "none", b_out;
  std::uint64_t b_seed = BenchConfig{}.master_seed;
  int b_threads = 0, b_limit = 0, b_eval = 512;
  bool b_estimate = false, b_no_maps = false;
  bench_cmd->add_option("--corpus", b_corpus, "Corpus directory (env LFMARK_CORPUS)");
  bench_cmd->add_option("--methods", b_methods, "Comma-separated methods");
  bench_cmd->add_option("--attacks", b_attacks, "none, all, kind or kind@severity, comma-separated");
  bench_cmd->add_option("--out", b_out, "Output directory")->required();
  bench_cmd->add_option("--seed", b_seed, "Master seed");
  bench_cmd->add_option("--threads", b_threads);
  bench_cmd->add_option("--limit", b_limit, "Use the first N images");
  bench_cmd->add_option("--eval-size", b_eval)->check(CLI::Range(8, 8192));
  bench_cmd->add_flag("--estimate-p-o", b_estimate, "Use the empirical null match rate");
  bench_cmd->add_flag("--no-maps", b_no_maps, "Skip per-method pattern heatmaps");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Closed-form detection statistics");
  stats_cmd->require_subcommand(1);
  int s_k = 100, s_tau = 0;
  double s_p = 0.5, s_target = 1e-3;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--k", s_k)->check(CLI::Range(1, 1 << 20));
  };
  auto* fpr_cmd = stats_cmd->add_subcommand("fpr", "P(M > tau | p)");
  auto* tpr_cmd = stats_cmd->add_subcommand("tpr", "P(M > tau | p)");
  auto* tau_cmd = stats_cmd->add_subcommand("tau", "Smallest tau meeting --target");
  for (auto* c : {fpr_cmd, tpr_cmd}) {
    add_common(c);
    c->add_option("--tau", s_tau)->required();
    c->add_option("--p", s_p)->required()->check(CLI::Range(0.0, 1.0));
  }
  add_common(tau_cmd);
  tau_cmd->add_option("--p", s_p)->check(CLI::Range(0.0, 1.0));
  tau_cmd->add_option("--target", s_target)->required();

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus");
  int y_count = 200, y_size = 512;
  std::uint64_t y_seed = 1;
  std::string y_out;
  synth_cmd->add_option("--count", y_count)->check(CLI::Range(1, 100000));
  synth_cmd->add_option("--size", y_size)->check(CLI::Range(8, 8192));
  synth_cmd->add_option("--seed", y_seed);
  synth_cmd->add_option("-o,--output", y_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (show_version) {
      out << "lfmark " << kVersion << " report_schema=" << kReportSchemaVersion
          << " ladder=" << kLadderVersion << '\n';
      return kExitOk;
    }
    if (*embed_cmd) {
      const MethodId method = parse_method(e_method);
      const WatermarkKey key = read_key(e_key, method);
      const BitMessage msg = BitMessage::from_hex(e_msg, capacity(method));
      const ImageBuf img = load_image(e_in);
      const ImageBuf marked = scaled_embed(method, img, msg, key);
      save_image(e_out, marked);
      nlohmann::ordered_json j;
      j["output"] = e_out;
      j["psnr"] = psnr(img, marked);
      j["ssim"] = ssim(img, marked);
      out << j.dump() << '\n';
      return kExitOk;
    }
    if (*extract_cmd) {
      const MethodId method = parse_method(x_method);
      const WatermarkKey key = read_key(x_key, method);
      const Extraction ex = scaled_extract(method, load_image(x_in), key);
      nlohmann::ordered_json j;
      j["message"] = ex.bits.to_hex();
      if (x_truth.empty()) {
        out << j.dump() << '\n';
        return kExitOk;
      }
      const BitMessage truth = BitMessage::from_hex(x_truth, capacity(method));
      const DetectionResult r = verify(ex.bits, truth, x_po, x_fpr);
      j["bit_accuracy"] = r.bit_accuracy;
      j["matched"] = r.matched;
      j["tau"] = r.tau;
      j["fpr_at_tau"] = r.fpr_at_tau;
      j["detected"] = r.decision;
      out << j.dump() << '\n';
      return r.decision ? kExitOk : kExitNotDetected;
    }
    if (*attack_cmd) {
      const AttackKind kind = parse_attack_kind(a_kind);
      if (is_stochastic(kind) && a_seed_opt->count() == 0) {
        throw UsageError(std::string(to_string(kind)) + " is stochastic: pass --seed");
      }
      save_image(a_out, apply_attack(load_image(a_in), AttackSpec{kind, a_sev, a_seed}));
      return kExitOk;
    }
    if (*list_cmd) {
      out << ladder_json().dump(2) << '\n';
      return kExitOk;
    }
    if (*analyze_cmd) {
      const Corpus corpus = open_corpus(z_corpus, z_limit, z_size);
      const BandSpec band = BandSpec::defaults(parse_band(z_band));
      std::optional<AttackSpec> attack;
      if (z_kind != "none") attack = AttackSpec{parse_attack_kind(z_kind), z_sev, z_seed};
      const int w = corpus.images.front().width();
      const int h = corpus.images.front().height();
      const double amp = z_amp > 0.0 ? z_amp : ring_amplitude_for_psnr(w, h, band, 40.0);
      const SpectralReport rep = frequency_analysis(corpus, band, attack, amp);
      write_report(rep, ReportFormat::kJson, z_out);
      if (!z_csv.empty()) write_report(rep, ReportFormat::kCsv, z_csv);
      if (!z_heat.empty()) render_heatmap(rep.mean_diff_map, z_heat);
      out << report_json(rep).dump() << '\n';
      return kExitOk;
    }
    if (*bench_cmd) {
      const Corpus corpus = open_corpus(b_corpus, b_limit, 0);
      BenchConfig cfg;
      cfg.master_seed = b_seed;
      cfg.methods.clear();
      for (const auto& m : split(b_methods, ',')) cfg.methods.push_back(parse_method(m));
      if (cfg.methods.empty()) throw UsageError("empty method list");
      cfg.attacks = parse_attacks(b_attacks, 0);
      cfg.estimate_p_o = b_estimate;
      cfg.eval_size = b_eval;
      cfg.threads = b_threads;
      const auto records = run_benchmark(corpus, cfg);
      const std::filesystem::path dir(b_out);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError(dir, ec.message());
      write_report(records, cfg, ReportFormat::kJson, dir / "report.json");
      write_report(records, cfg, ReportFormat::kCsv, dir / "report.csv");
      if (!b_no_maps) {
        for (MethodId m : cfg.methods) {
          render_heatmap(
              watermark_diff_map(corpus, m, cfg.key_for(m), cfg.master_seed, cfg.eval_size),
              dir / ("pattern_" + std::string(to_string(m)) + ".png"));
        }
      }
      out << (dir / "report.json").string() << '\n';
      return kExitOk;
    }
    if (*stats_cmd) {
      if (*fpr_cmd) {
        out << num(fpr_at_tau(s_k, s_tau, s_p)) << '\n';
      } else if (*tpr_cmd) {
        out << num(tpr_at_tau(s_k, s_tau, s_p)) << '\n';
      } else {
        out << tau_for_target_fpr(s_k, s_p, s_target) << '\n';
      }
      return kExitOk;
    }
    if (*synth_cmd) {
      const Corpus c = synth_corpus(y_count, y_size, y_seed);
      write_corpus(c, y_out);
      out << c.digest() << '\n';
      return kExitOk;
    }
    err << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace lfmark
