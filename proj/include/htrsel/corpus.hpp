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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace htrsel {

enum class AuthorCount { one, many, unknown };

std::string_view to_string(AuthorCount a);
/// Accepts "one", "many", "unknown" (case-insensitive); nullopt otherwise.
std::optional<AuthorCount> parse_author_count(std::string_view s);

struct DatasetMetadata {
  std::string language;
  std::string period;
  AuthorCount author_count = AuthorCount::unknown;
  std::size_t training_lines = 0;

  bool operator==(const DatasetMetadata&) const = default;
};

struct ManifestEntry {
  std::filesystem::path image_path;  // as written in the manifest, relative to base_dir
  std::string transcript;            // NFC, trimmed, non-empty

  bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
  std::string dataset_id;
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;
  DatasetMetadata metadata;

  std::filesystem::path resolve(const ManifestEntry& e) const { return base_dir / e.image_path; }
  std::vector<std::string> transcripts() const;

  bool operator==(const DatasetManifest&) const = default;
};

/// Parses manifest text. Records are `image_path<TAB>transcript`, one per
/// line; CRLF and a leading BOM are tolerated. Lines starting with '#' are
/// comments, except the directives `# dataset_id: X`, `# language: X`,
/// `# period: X` and `# authors: one|many|unknown`. Blank lines are skipped.
///
/// `default_id` is used when no dataset_id directive is present.
DatasetManifest parse_manifest(std::string_view text, std::string_view default_id,
                               const std::filesystem::path& base_dir = {});

/// Reads and parses a manifest file. The dataset id defaults to the file
/// stem and image paths resolve against the manifest's directory.
DatasetManifest ingest_manifest(const std::filesystem::path& path);

/// Normalized probability distribution over character n-grams.
///
/// `smoothing_alpha` records the pseudo-count that was added to each
/// observed n-gram, which lets the raw counts be recovered exactly as
/// p * (total + alpha * |support|) - alpha.
struct CharNgramDistribution {
  int n = 1;
  std::map<std::string, double> probs;
  std::uint64_t total_ngrams_observed = 0;
  double smoothing_alpha = 0.0;

  /// Raw count implied by a stored probability.
  double count_of(double prob) const;
  double probability(std::string_view gram) const;

  bool operator==(const CharNgramDistribution&) const = default;
};

inline constexpr double kDefaultSmoothingAlpha = 0.5;

/// Counts character n-grams line by line (never across lines). Spaces are
/// characters and case is preserved. `smoothing_alpha` is added to every
/// observed n-gram before normalization.
CharNgramDistribution ngram_distribution(std::span<const std::string> transcripts, int n,
                                         double smoothing_alpha = kDefaultSmoothingAlpha);

struct DatasetFingerprint {
  std::string dataset_id;
  std::set<std::string> charset;  // one UTF-8 encoded code point per element
  CharNgramDistribution unigram;
  CharNgramDistribution bigram;
  CharNgramDistribution trigram;
  std::optional<double> avg_char_width_px;
  int width_reference_height_px = 0;  // height the width was measured at; 0 when absent
  std::size_t line_count = 0;
  DatasetMetadata metadata;

  const CharNgramDistribution& distribution(int n) const;

  bool operator==(const DatasetFingerprint&) const = default;
};

struct FingerprintOptions {
  double smoothing_alpha = kDefaultSmoothingAlpha;
  /// Height every line is normalized to before character widths are
  /// measured. Defaults to the recognizer input height.
  int width_reference_height = 60;
};

DatasetFingerprint fingerprint_dataset(const DatasetManifest& manifest, bool images_available,
                                       const FingerprintOptions& options = {});

}  // namespace htrsel
