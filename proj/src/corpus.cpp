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

#include "htrsel/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "htrsel/error.hpp"
#include "htrsel/imaging.hpp"
#include "htrsel/raster.hpp"
#include "htrsel/text.hpp"

namespace htrsel {

std::string_view to_string(AuthorCount a) {
  switch (a) {
    case AuthorCount::one: return "one";
    case AuthorCount::many: return "many";
    case AuthorCount::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<AuthorCount> parse_author_count(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "one") return AuthorCount::one;
  if (lower == "many") return AuthorCount::many;
  if (lower == "unknown") return AuthorCount::unknown;
  return std::nullopt;
}

std::vector<std::string> DatasetManifest::transcripts() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.transcript);
  return out;
}

namespace {

std::string_view strip_ascii(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// `# key: value`; returns false for plain comments.
bool apply_directive(std::string_view comment, DatasetManifest& m, std::size_t line_no) {
  comment = strip_ascii(comment.substr(1));
  const auto colon = comment.find(':');
  if (colon == std::string_view::npos) return false;
  const auto key = strip_ascii(comment.substr(0, colon));
  const auto value = strip_ascii(comment.substr(colon + 1));
  if (key == "dataset_id") {
    if (value.empty()) {
      throw MalformedManifest("line " + std::to_string(line_no) + ": empty dataset_id directive");
    }
    m.dataset_id = std::string(value);
  } else if (key == "language") {
    m.metadata.language = std::string(value);
  } else if (key == "period") {
    m.metadata.period = std::string(value);
  } else if (key == "authors") {
    const auto a = parse_author_count(value);
    if (!a) {
      throw MalformedManifest("line " + std::to_string(line_no) + ": authors must be one, many or unknown");
    }
    m.metadata.author_count = *a;
  } else {
    return false;
  }
  return true;
}

}  // namespace

DatasetManifest parse_manifest(std::string_view text, std::string_view default_id,
                               const std::filesystem::path& base_dir) {
  DatasetManifest m;
  m.dataset_id = std::string(default_id);
  m.base_dir = base_dir;

  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::unordered_set<std::string> seen_paths;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (strip_ascii(line).empty()) continue;
    if (line.front() == '#') {
      apply_directive(line, m, line_no);
      continue;
    }

    const auto where = "line " + std::to_string(line_no);
    if (!text::decode_utf8(line)) throw MalformedManifest(where + ": invalid UTF-8");
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw MalformedManifest(where + ": missing TAB separator");
    const auto path = line.substr(0, tab);
    if (path.empty()) throw MalformedManifest(where + ": empty image path");
    std::string transcript = text::to_nfc(text::trim(line.substr(tab + 1)));
    if (transcript.empty()) throw MalformedManifest(where + ": empty transcript");
    if (!seen_paths.insert(std::string(path)).second) {
      throw MalformedManifest(where + ": duplicate image path '" + std::string(path) + "'");
    }
    m.entries.push_back({std::filesystem::path(std::string(path)), std::move(transcript)});
  }

  if (m.dataset_id.empty()) throw MalformedManifest("dataset_id must be non-empty");
  if (m.entries.empty()) throw EmptyManifest("manifest '" + m.dataset_id + "' has no entries");
  m.metadata.training_lines = m.entries.size();
  return m;
}

DatasetManifest ingest_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedManifest("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.stem().string(), path.parent_path());
}

double CharNgramDistribution::count_of(double prob) const {
  const double mass = static_cast<double>(total_ngrams_observed) +
                      smoothing_alpha * static_cast<double>(probs.size());
  return std::max(0.0, prob * mass - smoothing_alpha);
}

double CharNgramDistribution::probability(std::string_view gram) const {
  const auto it = probs.find(std::string(gram));
  return it == probs.end() ? 0.0 : it->second;
}

CharNgramDistribution ngram_distribution(std::span<const std::string> transcripts, int n,
                                         double smoothing_alpha) {
  if (n < 1 || n > 3) throw std::invalid_argument("n-gram order must be 1, 2 or 3");
  if (!(smoothing_alpha >= 0.0)) throw InvalidAlpha("smoothing_alpha must be non-negative");

  std::unordered_map<std::string_view, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& line : transcripts) {
    const auto offsets = text::codepoint_offsets(line);
    if (!offsets) throw std::invalid_argument("transcript is not valid UTF-8");
    const std::size_t cps = offsets->size() - 1;
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + un <= cps; ++i) {
      const auto from = (*offsets)[i];
      ++counts[std::string_view(line).substr(from, (*offsets)[i + un] - from)];
      ++total;
    }
  }
  if (total == 0) {
    throw NoObservableNgrams("no transcript has at least " + std::to_string(n) + " characters");
  }

  CharNgramDistribution dist;
  dist.n = n;
  dist.total_ngrams_observed = total;
  dist.smoothing_alpha = smoothing_alpha;
  const double mass = static_cast<double>(total) + smoothing_alpha * static_cast<double>(counts.size());
  for (const auto& [gram, count] : counts) {
    dist.probs.emplace(std::string(gram), (static_cast<double>(count) + smoothing_alpha) / mass);
  }
  return dist;
}

const CharNgramDistribution& DatasetFingerprint::distribution(int n) const {
  switch (n) {
    case 1: return unigram;
    case 2: return bigram;
    case 3: return trigram;
    default: throw std::invalid_argument("n-gram order must be 1, 2 or 3");
  }
}

namespace {

// When every line is shorter than n the order has no observations; the
// distribution is then left empty (total_ngrams_observed == 0).
CharNgramDistribution observable_or_empty(std::span<const std::string> transcripts, int n, double alpha) {
  try {
    return ngram_distribution(transcripts, n, alpha);
  } catch (const NoObservableNgrams&) {
    return CharNgramDistribution{n, {}, 0, alpha};
  }
}

}  // namespace

DatasetFingerprint fingerprint_dataset(const DatasetManifest& manifest, bool images_available,
                                       const FingerprintOptions& options) {
  const auto transcripts = manifest.transcripts();

  DatasetFingerprint fp;
  fp.dataset_id = manifest.dataset_id;
  fp.metadata = manifest.metadata;
  fp.metadata.training_lines = manifest.entries.size();
  fp.line_count = manifest.entries.size();
  fp.unigram = ngram_distribution(transcripts, 1, options.smoothing_alpha);
  fp.bigram = observable_or_empty(transcripts, 2, options.smoothing_alpha);
  fp.trigram = observable_or_empty(transcripts, 3, options.smoothing_alpha);
  for (const auto& [gram, p] : fp.unigram.probs) fp.charset.insert(gram);

  if (images_available) {
    CharWidthAccumulator widths(options.width_reference_height);
    for (const auto& entry : manifest.entries) {
      const Raster r = load_raster(manifest.resolve(entry));
      widths.add(r.width, r.height, entry.transcript);
    }
    fp.avg_char_width_px = widths.average();
    fp.width_reference_height_px = options.width_reference_height;
  }
  return fp;
}

}  // namespace htrsel
