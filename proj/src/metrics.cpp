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

#include "htrsel/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "htrsel/error.hpp"
#include "htrsel/text.hpp"

namespace htrsel {

namespace {

std::u32string decode(std::string_view s) {
  auto cps = text::decode_utf8(s);
  if (!cps) throw std::invalid_argument("transcript is not valid UTF-8");
  return std::move(*cps);
}

struct PairCounts {
  std::size_t char_edits = 0;
  std::size_t ref_chars = 0;
  std::size_t word_edits = 0;
  std::size_t ref_words = 0;
};

std::size_t words_distance(const std::vector<std::u32string>& a, const std::vector<std::u32string>& b) {
  return edit_distance(std::span<const std::u32string>(a), std::span<const std::u32string>(b));
}

PairCounts count_pair(const EvalPair& pair) {
  const auto ref = decode(pair.reference);
  const auto hyp = decode(pair.hypothesis);
  if (ref.empty()) throw EmptyReference("reference transcript is empty");
  const auto ref_words = text::split_words(ref);
  if (ref_words.empty()) throw EmptyReference("reference transcript has no words");
  const auto hyp_words = text::split_words(hyp);
  return {edit_distance(ref, hyp), ref.size(), words_distance(ref_words, hyp_words), ref_words.size()};
}

}  // namespace

std::size_t char_edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(decode(a), decode(b));
}

std::size_t word_edit_distance(std::string_view a, std::string_view b) {
  return words_distance(text::split_words(decode(a)), text::split_words(decode(b)));
}

double cer(const EvalPair& pair) {
  const auto ref = decode(pair.reference);
  if (ref.empty()) throw EmptyReference("reference transcript is empty");
  return static_cast<double>(edit_distance(ref, decode(pair.hypothesis))) / static_cast<double>(ref.size());
}

double wer(const EvalPair& pair) {
  const auto ref = text::split_words(decode(pair.reference));
  if (ref.empty()) throw EmptyReference("reference transcript has no words");
  const auto hyp = text::split_words(decode(pair.hypothesis));
  return static_cast<double>(words_distance(ref, hyp)) / static_cast<double>(ref.size());
}

ErrorReport aggregate_report(std::span<const EvalPair> pairs) {
  if (pairs.empty()) throw EmptyPairSet("no transcription pairs to evaluate");
  ErrorReport report;
  for (const auto& pair : pairs) {
    const PairCounts c = count_pair(pair);
    report.char_edits += c.char_edits;
    report.total_ref_chars += c.ref_chars;
    report.word_edits += c.word_edits;
    report.total_ref_words += c.ref_words;
  }
  report.pair_count = pairs.size();
  report.cer = static_cast<double>(report.char_edits) / static_cast<double>(report.total_ref_chars);
  report.wer = static_cast<double>(report.word_edits) / static_cast<double>(report.total_ref_words);
  return report;
}

std::string format_percent(double rate) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", rate * 100.0);
  return buf;
}

}  // namespace htrsel
