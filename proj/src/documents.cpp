// Copyright 2026 The htrsel Authors
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

#include "htrsel/documents.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "htrsel/error.hpp"
#include "htrsel/text.hpp"

namespace htrsel {

using nlohmann::json;

namespace {

constexpr const char* kFingerprintFormat = "htrsel-fingerprint";
constexpr int kFingerprintVersion = 1;

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

json percent(double rate) { return std::strtod(format_percent(rate).c_str(), nullptr); }

std::string dump(const json& j) { return j.dump(2, ' ', false) + "\n"; }

json distribution_to_json(const CharNgramDistribution& d) {
  json probs = json::object();
  for (const auto& [gram, p] : d.probs) probs[gram] = number(p);
  return {{"n", d.n},
          {"probs", std::move(probs)},
          {"smoothing_alpha", number(d.smoothing_alpha)},
          {"total_ngrams_observed", d.total_ngrams_observed}};
}

CharNgramDistribution distribution_from_json(const json& j, int expected_n) {
  CharNgramDistribution d;
  d.n = j.at("n").get<int>();
  if (d.n != expected_n) throw MalformedDocument("n-gram order mismatch in fingerprint");
  d.total_ngrams_observed = j.at("total_ngrams_observed").get<std::uint64_t>();
  d.smoothing_alpha = j.at("smoothing_alpha").get<double>();
  if (!(d.smoothing_alpha >= 0.0)) throw MalformedDocument("negative smoothing_alpha in fingerprint");
  double sum = 0.0;
  for (const auto& [gram, p] : j.at("probs").items()) {
    const auto cps = text::decode_utf8(gram);
    if (!cps || cps->size() != static_cast<std::size_t>(d.n)) {
      throw MalformedDocument("n-gram key '" + gram + "' does not have " + std::to_string(d.n) + " characters");
    }
    const double v = p.get<double>();
    if (!(v > 0.0 && v <= 1.0)) throw MalformedDocument("probability out of range for '" + gram + "'");
    d.probs.emplace(gram, v);
    sum += v;
  }
  if (!d.probs.empty() && std::abs(sum - 1.0) > 1e-6) {
    throw MalformedDocument("n-gram probabilities do not sum to 1");
  }
  return d;
}

json record_to_json(const SimilarityRecord& r) {
  return {{"candidate_id", r.candidate_id},
          {"kl_unigram", number(r.kl_unigram)},
          {"kl_bigram", number(r.kl_bigram)},
          {"kl_trigram", number(r.kl_trigram)},
          {"kl_mean", number(r.kl_mean())},
          {"lexical_similarity", optional_number(r.lexical_similarity)},
          {"char_width_delta_px", optional_number(r.char_width_delta_px)},
          {"candidate_avg_char_width_px", optional_number(r.candidate_avg_char_width_px)}};
}

json ranked_to_json(std::span<const SimilarityRecord> ranked) {
  json records = json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    json r = record_to_json(ranked[i]);
    r["rank"] = i + 1;
    records.push_back(std::move(r));
  }
  return records;
}

json plan_to_json(const SplitPlan& plan) {
  json splits = json::array();
  for (const auto& s : plan.splits) {
    splits.push_back({{"fraction", number(s.fraction)},
                      {"percent", number(s.fraction * 100.0)},
                      {"line_count", s.line_count},
                      {"selected_indices", s.selected_indices}});
  }
  return {{"total_lines", plan.total_lines}, {"splits", std::move(splits)}};
}

json range_to_json(const Range& r) { return json::array({number(r.lo), number(r.hi)}); }

void read_range(const json& j, const char* key, Range& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw MalformedDocument(std::string(key) + " must be a [lower, upper] pair");
  out = {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

double round_significant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

std::string fingerprint_to_json(const DatasetFingerprint& fp) {
  json j;
  j["format"] = kFingerprintFormat;
  j["version"] = kFingerprintVersion;
  j["dataset_id"] = fp.dataset_id;
  j["charset"] = fp.charset;
  j["line_count"] = fp.line_count;
  j["avg_char_width_px"] = optional_number(fp.avg_char_width_px);
  j["width_reference_height_px"] = fp.width_reference_height_px;
  j["metadata"] = {{"language", fp.metadata.language},
                   {"period", fp.metadata.period},
                   {"authors", std::string(to_string(fp.metadata.author_count))},
                   {"training_lines", fp.metadata.training_lines}};
  j["ngrams"] = {{"unigram", distribution_to_json(fp.unigram)},
                 {"bigram", distribution_to_json(fp.bigram)},
                 {"trigram", distribution_to_json(fp.trigram)}};
  return dump(j);
}

DatasetFingerprint fingerprint_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", std::string{}) != kFingerprintFormat) {
      throw MalformedDocument("not a fingerprint document");
    }
    if (j.at("version").get<int>() != kFingerprintVersion) {
      throw MalformedDocument("unsupported fingerprint version");
    }
    DatasetFingerprint fp;
    fp.dataset_id = j.at("dataset_id").get<std::string>();
    if (fp.dataset_id.empty()) throw MalformedDocument("fingerprint has an empty dataset_id");
    fp.charset = j.at("charset").get<std::set<std::string>>();
    fp.line_count = j.at("line_count").get<std::size_t>();
    if (!j.at("avg_char_width_px").is_null()) {
      const double w = j.at("avg_char_width_px").get<double>();
      if (!(w > 0.0)) throw MalformedDocument("avg_char_width_px must be positive");
      fp.avg_char_width_px = w;
    }
    fp.width_reference_height_px = j.value("width_reference_height_px", 0);
    const auto& meta = j.at("metadata");
    fp.metadata.language = meta.value("language", std::string{});
    fp.metadata.period = meta.value("period", std::string{});
    const auto authors = parse_author_count(meta.value("authors", std::string{"unknown"}));
    if (!authors) throw MalformedDocument("metadata.authors must be one, many or unknown");
    fp.metadata.author_count = *authors;
    fp.metadata.training_lines = meta.value("training_lines", fp.line_count);
    const auto& ngrams = j.at("ngrams");
    fp.unigram = distribution_from_json(ngrams.at("unigram"), 1);
    fp.bigram = distribution_from_json(ngrams.at("bigram"), 2);
    fp.trigram = distribution_from_json(ngrams.at("trigram"), 3);
    return fp;
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("malformed fingerprint: ") + e.what());
  }
}

std::string ranking_report_to_json(std::string_view target_id, RankKey key, LogBase base,
                                   std::span<const SimilarityRecord> ranked) {
  const json j = {{"format", "htrsel-ranking"},
                  {"target_id", std::string(target_id)},
                  {"key", std::string(to_string(key))},
                  {"log_base", base == LogBase::two ? "2" : "e"},
                  {"records", ranked_to_json(ranked)}};
  return dump(j);
}

std::string error_report_to_json(const ErrorReport& r) {
  const json j = {{"format", "htrsel-error-report"},
                  {"cer", number(r.cer)},
                  {"wer", number(r.wer)},
                  {"cer_percent", percent(r.cer)},
                  {"wer_percent", percent(r.wer)},
                  {"pair_count", r.pair_count},
                  {"total_ref_chars", r.total_ref_chars},
                  {"total_ref_words", r.total_ref_words},
                  {"char_edits", r.char_edits},
                  {"word_edits", r.word_edits}};
  return dump(j);
}

std::string split_plan_to_json(const SplitPlan& plan) {
  json j = plan_to_json(plan);
  j["format"] = "htrsel-split-plan";
  return dump(j);
}

std::string selection_report_to_json(const SelectionReport& report) {
  const json j = {{"format", "htrsel-selection-report"},
                  {"target_id", report.target_id},
                  {"recommended", report.recommended},
                  {"ranked", ranked_to_json(report.ranked)},
                  {"plan", plan_to_json(report.plan)},
                  {"notes", report.notes}};
  return dump(j);
}

AugmentationConfig augmentation_config_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw MalformedDocument("augmentation config must be a JSON object");
    AugmentationConfig cfg;
    read_range(j, "brightness", cfg.brightness);
    read_range(j, "contrast", cfg.contrast);
    read_range(j, "saturation", cfg.saturation);
    read_range(j, "hue", cfg.hue);
    read_range(j, "blur_sigma", cfg.blur_sigma);
    read_range(j, "rotation_deg", cfg.rotation_deg);
    read_range(j, "shear_deg", cfg.shear_deg);
    cfg.blur_kernel = j.value("blur_kernel", cfg.blur_kernel);
    cfg.homography_jitter_frac = j.value("homography_jitter_frac", cfg.homography_jitter_frac);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("malformed augmentation config: ") + e.what());
  }
}

std::string augmentation_config_to_json(const AugmentationConfig& cfg) {
  const json j = {{"brightness", range_to_json(cfg.brightness)},
                  {"contrast", range_to_json(cfg.contrast)},
                  {"saturation", range_to_json(cfg.saturation)},
                  {"hue", range_to_json(cfg.hue)},
                  {"blur_kernel", cfg.blur_kernel},
                  {"blur_sigma", range_to_json(cfg.blur_sigma)},
                  {"rotation_deg", range_to_json(cfg.rotation_deg)},
                  {"shear_deg", range_to_json(cfg.shear_deg)},
                  {"homography_jitter_frac", number(cfg.homography_jitter_frac)},
                  {"seed", cfg.seed}};
  return dump(j);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DomainError("cannot write " + path.string());
}

}  // namespace htrsel
