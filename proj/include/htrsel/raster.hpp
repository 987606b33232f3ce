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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace htrsel {

inline constexpr std::uint8_t kBackground = 255;
inline constexpr std::uint8_t kInk = 0;

/// 8-bit raster, row-major with interleaved channels (1 = gray, 3 = RGB).
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  static Raster filled(int width, int height, int channels, std::uint8_t value);

  bool empty() const { return width <= 0 || height <= 0; }
  bool valid() const;
  std::size_t stride() const { return static_cast<std::size_t>(width) * channels; }

  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels[static_cast<std::size_t>(y) * stride() + static_cast<std::size_t>(x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels[static_cast<std::size_t>(y) * stride() + static_cast<std::size_t>(x) * channels + c];
  }

  bool operator==(const Raster&) const = default;
};

/// Loads any format OpenCV can decode as 8-bit gray or RGB. Alpha is
/// dropped and deeper samples are scaled down. Throws ImageLoadFailure.
Raster load_raster(const std::filesystem::path& path);

/// Writes a lossless raster; the format follows the extension (.png, .pgm, .ppm, ...).
void save_raster(const std::filesystem::path& path, const Raster& raster);

}  // namespace htrsel
