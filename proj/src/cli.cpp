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

#include "htrsel/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "htrsel/corpus.hpp"
#include "htrsel/documents.hpp"
#include "htrsel/error.hpp"
#include "htrsel/imaging.hpp"
#include "htrsel/metrics.hpp"
#include "htrsel/planner.hpp"
#include "htrsel/raster.hpp"
#include "htrsel/similarity.hpp"
#include "htrsel/text.hpp"

namespace htrsel::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string log_level = "warn";
};

struct FingerprintArgs {
  std::string manifest;
  std::string out;
  bool images = false;
  std::string id;
  std::string language;
  std::string period;
  std::string authors;
  double alpha = kDefaultSmoothingAlpha;
  int reference_height = kRecognizerHeight;
};

struct RankArgs {
  std::string target;
  std::vector<std::string> candidates;
  std::string lex;
  std::string key = "lexicographic";
  std::string log_base = "e";
  double alpha = kDefaultSmoothingAlpha;
  std::string out;
};

struct ComposeArgs {
  std::string words;
  std::string out_dir;
  int spacing = kWordSpacing;
  int height = kWordHeight;
  int words_per_line = 8;
  double source_char_width = 0.0;
  double target_char_width = 0.0;
};

struct AugmentArgs {
  std::string manifest;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string config;
  int copies = 1;
  int height = 0;
};

struct EvaluateArgs {
  std::string ref;
  std::string hyp;
  std::string out;
};

struct PlanArgs {
  std::optional<std::size_t> total;
  std::vector<double> fractions;
  std::optional<std::uint64_t> seed;
  std::string preset;
  std::string out;
};

struct ReportArgs {
  RankArgs rank;
  std::vector<double> fractions;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> total;
  std::string preset;
  double near_tie = ReportOptions{}.near_tie_unigram_delta;
};

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    out.flush();
  } else {
    write_text_file(out_path, text);
  }
}

std::vector<std::string> read_lines(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

std::string numbered(std::string_view stem, std::size_t i, std::string_view suffix) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05zu", i);
  return std::string(stem) + buf + std::string(suffix);
}

DatasetFingerprint load_fingerprint(const std::string& path) {
  return fingerprint_from_json(read_text_file(path));
}

KlOptions kl_options(const RankArgs& a) {
  return {a.alpha, a.log_base == "2" ? LogBase::two : LogBase::natural};
}

std::vector<SimilarityRecord> rank_from_args(const RankArgs& a, DatasetFingerprint& target,
                                             spdlog::logger& log) {
  target = load_fingerprint(a.target);
  std::vector<DatasetFingerprint> candidates;
  for (const auto& c : a.candidates) candidates.push_back(load_fingerprint(c));
  const auto lex = a.lex.empty() ? LexicalSimilarityTable{} : LexicalSimilarityTable::load(a.lex);
  log.info("ranking {} candidates against {}", candidates.size(), target.dataset_id);
  return rank_candidates(target, candidates, lex, *parse_rank_key(a.key), kl_options(a));
}

void run_fingerprint(const FingerprintArgs& a, std::ostream& out, spdlog::logger& log) {
  DatasetManifest m = ingest_manifest(a.manifest);
  if (!a.id.empty()) m.dataset_id = a.id;
  if (!a.language.empty()) m.metadata.language = a.language;
  if (!a.period.empty()) m.metadata.period = a.period;
  if (!a.authors.empty()) m.metadata.author_count = *parse_author_count(a.authors);
  const auto fp = fingerprint_dataset(m, a.images, {a.alpha, a.reference_height});
  log.info("fingerprinted {} lines of {}", fp.line_count, fp.dataset_id);
  emit(fingerprint_to_json(fp), a.out, out);
}

void run_rank(const RankArgs& a, std::ostream& out, spdlog::logger& log) {
  DatasetFingerprint target;
  const auto ranked = rank_from_args(a, target, log);
  emit(ranking_report_to_json(target.dataset_id, *parse_rank_key(a.key), kl_options(a).base, ranked), a.out, out);
}

void run_compose(const ComposeArgs& a, spdlog::logger& log) {
  if ((a.source_char_width > 0.0) != (a.target_char_width > 0.0)) {
    throw UsageError("--source-char-width and --target-char-width must be given together");
  }
  const DatasetManifest words = ingest_manifest(a.words);
  fs::create_directories(a.out_dir);
  std::string manifest;
  std::vector<WordImage> batch;
  std::size_t line_index = 0;
  const auto flush = [&] {
    if (batch.empty()) return;
    const LineImage line = compose_line(batch, a.spacing, a.height);
    const std::string name = numbered("line_", line_index++, ".png");
    save_raster(fs::path(a.out_dir) / name, line.pixels);
    manifest += name + "\t" + line.transcript + "\n";
    batch.clear();
  };
  for (const auto& entry : words.entries) {
    const auto cps = text::decode_utf8(entry.transcript);
    if (std::any_of(cps->begin(), cps->end(), text::is_space)) {
      throw MalformedManifest("word transcript '" + entry.transcript + "' contains whitespace");
    }
    WordImage w{load_raster(words.resolve(entry)), entry.transcript};
    if (a.source_char_width > 0.0) w = width_adjust(w, a.source_char_width, a.target_char_width);
    batch.push_back(std::move(w));
    if (batch.size() == static_cast<std::size_t>(a.words_per_line)) flush();
  }
  flush();
  write_text_file(fs::path(a.out_dir) / "lines.tsv", manifest);
  log.info("composed {} lines from {} words", line_index, words.entries.size());
}

void run_augment(const AugmentArgs& a, spdlog::logger& log) {
  AugmentationConfig cfg = a.config.empty() ? AugmentationConfig{} : augmentation_config_from_json(read_text_file(a.config));
  cfg.seed = *a.seed;
  cfg.validate();
  const DatasetManifest m = ingest_manifest(a.manifest);
  fs::create_directories(a.out_dir);
  std::string manifest;
  std::size_t index = 0;
  for (const auto& entry : m.entries) {
    LineImage line{load_raster(m.resolve(entry)), entry.transcript};
    if (a.height > 0) line = normalize_height(line, a.height);
    for (int copy = 0; copy < a.copies; ++copy, ++index) {
      const LineImage aug = augment(line, cfg, index);
      const std::string name = numbered("aug_", index, ".png");
      save_raster(fs::path(a.out_dir) / name, aug.pixels);
      manifest += name + "\t" + aug.transcript + "\n";
    }
  }
  write_text_file(fs::path(a.out_dir) / "lines.tsv", manifest);
  log.info("wrote {} augmented lines", index);
}

void run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto refs = read_lines(a.ref);
  const auto hyps = read_lines(a.hyp);
  if (refs.size() != hyps.size()) {
    throw DomainError("reference has " + std::to_string(refs.size()) + " lines but hypothesis has " +
                      std::to_string(hyps.size()));
  }
  std::vector<EvalPair> pairs;
  pairs.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) pairs.push_back({refs[i], hyps[i]});
  emit(error_report_to_json(aggregate_report(pairs)), a.out, out);
}

SplitPlan plan_from(const std::string& preset_id, std::optional<std::size_t> total, std::vector<double> fractions,
                    std::uint64_t seed) {
  if (!preset_id.empty()) {
    const auto preset = find_preset(preset_id);
    if (!preset) throw DomainError("unknown preset '" + preset_id + "'");
    return make_split_plan(preset->total_lines(), preset->split_counts, seed);
  }
  if (!total) throw UsageError("--total or --preset is required");
  if (fractions.empty()) fractions = default_fractions();
  return make_split_plan(*total, fractions, seed);
}

void run_plan(const PlanArgs& a, std::ostream& out) {
  if (!a.preset.empty() && (a.total || !a.fractions.empty())) {
    throw UsageError("--preset cannot be combined with --total or --fractions");
  }
  emit(split_plan_to_json(plan_from(a.preset, a.total, a.fractions, *a.seed)), a.out, out);
}

void run_report(const ReportArgs& a, std::ostream& out, spdlog::logger& log) {
  if (!a.preset.empty() && (a.total || !a.fractions.empty())) {
    throw UsageError("--preset cannot be combined with --total or --fractions");
  }
  DatasetFingerprint target;
  const auto ranked = rank_from_args(a.rank, target, log);
  const auto total = a.total ? a.total : std::optional<std::size_t>(target.line_count);
  const SplitPlan plan = plan_from(a.preset, total, a.fractions, *a.seed);
  const auto report = emit_report(target, ranked, plan, {a.near_tie});
  emit(selection_report_to_json(report), a.rank.out, out);
}

void add_rank_options(CLI::App& cmd, RankArgs& a) {
  cmd.add_option("--target", a.target, "Fingerprint of the target collection")->required();
  cmd.add_option("--candidates", a.candidates, "Fingerprints of candidate pretraining datasets")
      ->expected(0, -1);
  cmd.add_option("--lex", a.lex, "Lexical similarity table (lang1<TAB>lang2<TAB>value)");
  cmd.add_option("--key", a.key, "Ranking key")
      ->check(CLI::IsMember({"lexicographic", "mean"}))
      ->capture_default_str();
  cmd.add_option("--log-base", a.log_base, "Logarithm base of the KL divergence")
      ->check(CLI::IsMember({"e", "2"}))
      ->capture_default_str();
  cmd.add_option("--alpha", a.alpha, "Pseudo-count added over the union support")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--out", a.out, "Write the report here instead of stdout");
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dataset selection toolkit for handwritten text recognition", "htrsel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "htrsel 0.1.0");

  Common common;
  app.add_option("--log-level", common.log_level, "Log verbosity on stderr")
      ->envname("HTRSEL_LOG_LEVEL")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}))
      ->capture_default_str();

  FingerprintArgs fa;
  auto* fingerprint = app.add_subcommand("fingerprint", "Compute the linguistic and visual fingerprint of a dataset");
  fingerprint->add_option("--manifest", fa.manifest, "Dataset manifest (image<TAB>transcript)")->required();
  fingerprint->add_option("--out", fa.out, "Write the fingerprint here instead of stdout");
  fingerprint->add_flag("--images", fa.images, "Load line images to measure the average character width");
  fingerprint->add_option("--id", fa.id, "Override the dataset id");
  fingerprint->add_option("--language", fa.language, "Override the dataset language");
  fingerprint->add_option("--period", fa.period, "Override the dataset period");
  fingerprint->add_option("--authors", fa.authors, "Override the author count")
      ->check(CLI::IsMember({"one", "many", "unknown"}));
  fingerprint->add_option("--alpha", fa.alpha, "Pseudo-count added to every observed n-gram")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  fingerprint->add_option("--reference-height", fa.reference_height, "Line height used to measure character widths")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  RankArgs ra;
  auto* rank = app.add_subcommand("rank", "Rank candidate pretraining datasets against a target");
  add_rank_options(*rank, ra);

  ComposeArgs ca;
  auto* compose = app.add_subcommand("compose", "Compose word images into text-line images");
  compose->add_option("--words", ca.words, "Word manifest (image<TAB>word)")->required();
  compose->add_option("--out-dir", ca.out_dir, "Directory for line images and lines.tsv")->required();
  compose->add_option("--spacing", ca.spacing, "Background columns between words")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  compose->add_option("--height", ca.height, "Line height")->check(CLI::PositiveNumber)->capture_default_str();
  compose->add_option("--words-per-line", ca.words_per_line, "Words per composed line")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compose->add_option("--source-char-width", ca.source_char_width, "Average character width of the word images")
      ->check(CLI::PositiveNumber);
  compose->add_option("--target-char-width", ca.target_char_width, "Character width to adjust the words to")
      ->check(CLI::PositiveNumber);

  AugmentArgs aa;
  auto* augment_cmd = app.add_subcommand("augment", "Apply the photometric and geometric augmentation recipe");
  augment_cmd->add_option("--manifest", aa.manifest, "Line manifest (image<TAB>transcript)")->required();
  augment_cmd->add_option("--out-dir", aa.out_dir, "Directory for augmented images and lines.tsv")->required();
  augment_cmd->add_option("--seed", aa.seed, "Random seed")->required();
  augment_cmd->add_option("--config", aa.config, "Augmentation config (JSON); defaults to the standard recipe");
  augment_cmd->add_option("--copies", aa.copies, "Augmented copies per input line")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  augment_cmd->add_option("--height", aa.height, "Normalize line height first (0 keeps the input height)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Corpus-level CER and WER of a transcription");
  evaluate->add_option("--ref", ea.ref, "Reference transcripts, one per line")->required();
  evaluate->add_option("--hyp", ea.hyp, "Hypothesis transcripts, one per line")->required();
  evaluate->add_option("--out", ea.out, "Write the report here instead of stdout");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Nested fine-tuning splits for a training set");
  plan->add_option("--total", pa.total, "Number of training lines")->check(CLI::PositiveNumber);
  plan->add_option("--fractions", pa.fractions, "Fractions in (0, 1], comma separated")->delimiter(',');
  plan->add_option("--seed", pa.seed, "Random seed")->required();
  plan->add_option("--preset", pa.preset, "Use the reference line counts of a dataset");
  plan->add_option("--out", pa.out, "Write the plan here instead of stdout");

  ReportArgs rpa;
  auto* report = app.add_subcommand("report", "Rank candidates and plan fine-tuning for a target collection");
  add_rank_options(*report, rpa.rank);
  report->add_option("--fractions", rpa.fractions, "Fractions in (0, 1], comma separated")->delimiter(',');
  report->add_option("--seed", rpa.seed, "Random seed for the split plan")->required();
  report->add_option("--total", rpa.total, "Training lines (defaults to the target's line count)")
      ->check(CLI::PositiveNumber);
  report->add_option("--preset", rpa.preset, "Use the reference line counts of a dataset");
  report->add_option("--near-tie", rpa.near_tie, "Unigram KL gap flagged as a near tie")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "htrsel: usage error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  spdlog::logger log("htrsel", sink);
  log.set_pattern("htrsel [%l] %v");
  log.set_level(spdlog::level::from_str(common.log_level));

  try {
    if (fingerprint->parsed()) run_fingerprint(fa, out, log);
    else if (rank->parsed()) run_rank(ra, out, log);
    else if (compose->parsed()) run_compose(ca, log);
    else if (augment_cmd->parsed()) run_augment(aa, log);
    else if (evaluate->parsed()) run_evaluate(ea, out);
    else if (plan->parsed()) run_plan(pa, out);
    else if (report->parsed()) run_report(rpa, out, log);
  } catch (const UsageError& e) {
    err << "htrsel: usage error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "htrsel: error: " << one_line(e.what()) << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace htrsel::cli
