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
#include <fstream>
#include <sstream>

#include "lfmark/bench.hpp"

namespace lfmark {

namespace {

constexpr double kCsvTargets[] = {1e-3, 1e-2};

std::string fpr_key(double fpr) {
  std::ostringstream os;
  os << fpr;
  return os.str();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json attack_json(const std::optional<AttackSpec>& a) {
  if (!a) return nullptr;
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(a->kind));
  j["severity"] = a->severity;
  j["seed"] = a->seed;
  j["params"] = params_to_json(severity_params(a->kind, a->severity));
  return j;
}

template <typename V>
nlohmann::ordered_json fpr_map(const std::map<double, V>& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [fpr, v] : m) j[fpr_key(fpr)] = v;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

nlohmann::ordered_json BenchConfig::to_json() const {
  nlohmann::ordered_json j;
  j["master_seed"] = master_seed;
  j["methods"] = nlohmann::ordered_json::array();
  for (MethodId m : methods) j["methods"].push_back(std::string(to_string(m)));
  j["attacks"] = nlohmann::ordered_json::array();
  for (const auto& a : attacks) j["attacks"].push_back(attack_json(a));
  j["targets"] = targets;
  j["p_o"] = p_o;
  j["estimate_p_o"] = estimate_p_o;
  j["eval_size"] = eval_size;
  j["keys"] = nlohmann::ordered_json::object();
  for (MethodId m : methods) j["keys"][std::string(to_string(m))] = key_for(m).to_json();
  j["ladder_version"] = kLadderVersion;
  return j;
}

nlohmann::ordered_json report_json(const std::vector<BenchRecord>& records,
                                   const BenchConfig& config) {
  nlohmann::ordered_json j;
  j["schema"] = "lfmark.bench";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = config.to_json();
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json e;
    e["method"] = std::string(to_string(r.method));
    e["attack"] = attack_json(r.attack);
    e["n_images"] = r.n_images;
    e["k"] = r.k;
    e["bit_accuracy_mean"] = r.bit_accuracy_mean;
    e["tpr_at_fpr"] = fpr_map(r.tpr_at_fpr);
    e["tau"] = fpr_map(r.tau);
    e["empirical_tpr_at_fpr"] = fpr_map(r.empirical_tpr_at_fpr);
    e["auroc"] = r.auroc;
    e["null_match_rate"] = r.null_match_rate;
    e["p_o"] = r.p_o;
    e["psnr_mean"] = r.psnr_mean;
    e["ssim_mean"] = r.ssim_mean;
    e["corpus_hash"] = r.corpus_hash;
    j["records"].push_back(std::move(e));
  }
  return j;
}

nlohmann::ordered_json report_json(const SpectralReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "lfmark.spectral";
  j["schema_version"] = kReportSchemaVersion;
  j["band"] = {{"name", std::string(to_string(rep.band.band))},
               {"r_low", rep.band.r_low},
               {"r_high", rep.band.r_high}};
  j["attack"] = attack_json(rep.attack);
  j["amplitude"] = rep.amplitude;
  j["n_images"] = rep.n_images;
  j["corpus_hash"] = rep.corpus_hash;
  j["normalization"] = "per_image_pre_attack_band_energy";
  j["retention"] = {{"low", rep.retention_of(Band::kLow)},
                    {"mid", rep.retention_of(Band::kMid)},
                    {"high", rep.retention_of(Band::kHigh)}};
  j["map_size"] = {rep.mean_diff_map.width(), rep.mean_diff_map.height()};
  return j;
}

std::vector<std::string> csv_columns() {
  std::vector<std::string> cols{"method", "attack", "severity", "n_images", "k",
                                "bit_accuracy_mean"};
  for (double t : kCsvTargets) cols.push_back("tpr_at_fpr_" + fpr_key(t));
  for (double t : kCsvTargets) cols.push_back("tau_" + fpr_key(t));
  for (double t : kCsvTargets) cols.push_back("empirical_tpr_at_fpr_" + fpr_key(t));
  for (const char* c : {"auroc", "null_match_rate", "p_o", "psnr_mean", "ssim_mean",
                        "corpus_hash"}) {
    cols.emplace_back(c);
  }
  return cols;
}

void write_report(const std::vector<BenchRecord>& records, const BenchConfig& config,
                  ReportFormat format, const std::filesystem::path& path) {
  if (format == ReportFormat::kJson) {
    write_text(path, report_json(records, config).dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  os << "# lfmark.bench csv schema_version=" << kReportSchemaVersion << '\n';
  const auto cols = csv_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  auto lookup = [](const auto& m, double key) -> std::string {
    const auto it = m.find(key);
    return it == m.end() ? std::string() : num(it->second);
  };
  for (const auto& r : records) {
    os << to_string(r.method) << ',' << (r.attack ? std::string(to_string(r.attack->kind)) : "none")
       << ',' << (r.attack ? r.attack->severity : 0) << ',' << r.n_images << ',' << r.k << ','
       << num(r.bit_accuracy_mean);
    for (double t : kCsvTargets) os << ',' << lookup(r.tpr_at_fpr, t);
    for (double t : kCsvTargets) os << ',' << lookup(r.tau, t);
    for (double t : kCsvTargets) os << ',' << lookup(r.empirical_tpr_at_fpr, t);
    os << ',' << num(r.auroc) << ',' << num(r.null_match_rate) << ',' << num(r.p_o) << ','
       << num(r.psnr_mean) << ',' << num(r.ssim_mean) << ',' << r.corpus_hash << '\n';
  }
  write_text(path, os.str());
}

void write_report(const SpectralReport& rep, ReportFormat format,
                  const std::filesystem::path& path) {
  if (format == ReportFormat::kJson) {
    write_text(path, report_json(rep).dump(2) + "\n");
    return;
  }
  std::ostringstream os;
  os << "# lfmark.spectral csv schema_version=" << kReportSchemaVersion << '\n';
  os << "band,r_low,r_high,attack,severity,amplitude,n_images,retention_low,retention_mid,"
        "retention_high,corpus_hash\n";
  os << to_string(rep.band.band) << ',' << num(rep.band.r_low) << ',' << num(rep.band.r_high)
     << ',' << (rep.attack ? std::string(to_string(rep.attack->kind)) : "none") << ','
     << (rep.attack ? rep.attack->severity : 0) << ',' << num(rep.amplitude) << ','
     << rep.n_images << ',' << num(rep.retention_of(Band::kLow)) << ','
     << num(rep.retention_of(Band::kMid)) << ',' << num(rep.retention_of(Band::kHigh)) << ','
     << rep.corpus_hash << '\n';
  write_text(path, os.str());
}

}  // namespace lfmark
