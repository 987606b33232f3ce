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

#include "htrsel/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace htrsel::text {

namespace {

template <typename Visit>
bool walk_utf8(std::string_view bytes, Visit&& visit) {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
    visit(static_cast<std::size_t>(start), static_cast<char32_t>(c));
  }
  return true;
}

}  // namespace

std::optional<std::u32string> decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  if (!walk_utf8(bytes, [&](std::size_t, char32_t c) { out.push_back(c); })) {
    return std::nullopt;
  }
  return out;
}

std::optional<std::vector<std::size_t>> codepoint_offsets(std::string_view bytes) {
  std::vector<std::size_t> offsets;
  offsets.reserve(bytes.size() + 1);
  if (!walk_utf8(bytes, [&](std::size_t at, char32_t) { offsets.push_back(at); })) {
    return std::nullopt;
  }
  offsets.push_back(bytes.size());
  return offsets;
}

std::string encode_utf8(char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) throw std::invalid_argument("not a Unicode scalar value");
  return std::string(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) out += encode_utf8(c);
  return out;
}

std::string to_nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  const auto src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (nfc->isNormalized(src, status) && U_SUCCESS(status)) return std::string(utf8);
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }

std::string trim(std::string_view utf8) {
  const auto offsets = codepoint_offsets(utf8);
  if (!offsets) return std::string(utf8);
  const auto cps = decode_utf8(utf8);
  std::size_t first = 0;
  std::size_t last = cps->size();
  while (first < last && is_space((*cps)[first])) ++first;
  while (last > first && is_space((*cps)[last - 1])) --last;
  return std::string(utf8.substr((*offsets)[first], (*offsets)[last] - (*offsets)[first]));
}

std::vector<std::u32string> split_words(std::u32string_view cps) {
  std::vector<std::u32string> words;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    const std::size_t start = i;
    while (i < cps.size() && !is_space(cps[i])) ++i;
    if (i > start) words.emplace_back(cps.substr(start, i - start));
  }
  return words;
}

std::size_t count_non_space(std::u32string_view cps) {
  std::size_t n = 0;
  for (char32_t c : cps) n += is_space(c) ? 0 : 1;
  return n;
}

}  // namespace htrsel::text
