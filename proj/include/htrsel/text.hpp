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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

/// UTF-8 helpers shared by the corpus and metrics modules.
namespace htrsel::text {

/// Decodes UTF-8 into Unicode scalar values; nullopt on malformed input.
std::optional<std::u32string> decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view cps);
std::string encode_utf8(char32_t cp);

/// Byte offset of every code point start, plus a final entry equal to
/// bytes.size(). nullopt on malformed input.
std::optional<std::vector<std::size_t>> codepoint_offsets(std::string_view bytes);

std::string to_nfc(std::string_view utf8);

bool is_space(char32_t cp);

/// Strips Unicode whitespace at both ends, leaving the interior untouched.
std::string trim(std::string_view utf8);

/// Splits on runs of whitespace. Empty and all-space input yield no words.
std::vector<std::u32string> split_words(std::u32string_view cps);

std::size_t count_non_space(std::u32string_view cps);

}  // namespace htrsel::text
