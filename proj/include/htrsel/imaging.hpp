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

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "htrsel/raster.hpp"

namespace htrsel {

/// Single-word grayscale raster (0 = ink, 255 = background).
struct WordImage {
  Raster pixels;
  std::string transcript;  // no internal whitespace

  bool operator==(const WordImage&) const = default;
};

/// Text-line raster, gray or RGB.
struct LineImage {
  Raster pixels;
  std::string transcript;

  bool operator==(const LineImage&) const = default;
};

inline constexpr int kRecognizerHeight = 60;
inline constexpr int kWordHeight = 32;
inline constexpr int kWordSpacing = 16;

/// Bilinear resize to `target_height`, keeping the aspect ratio. Width is
/// round(w * target / h), at least 1.
Raster resize_to_height(const Raster& src, int target_height);
LineImage normalize_height(const LineImage& img, int target_height = kRecognizerHeight);

/// Width a raster of size (width, height) would have once normalized to
/// `target_height`.
int normalized_width(int width, int height, int target_height);

/// Accumulates pixel width per non-whitespace character, measured at a
/// common reference height.
class CharWidthAccumulator {
 public:
  explicit CharWidthAccumulator(int reference_height = kWordHeight);

  void add(int width, int height, std::string_view transcript);
  bool empty() const { return chars_ == 0; }
  double average() const;

 private:
  int reference_height_;
  double width_sum_ = 0.0;
  std::size_t chars_ = 0;
};

/// Sum of widths over sum of non-whitespace characters after normalizing
/// every sample to `reference_height`. Throws EmptySampleSet.
double estimate_avg_char_width(std::span<const LineImage> samples, int reference_height = kWordHeight);
double estimate_avg_char_width(std::span<const WordImage> samples, int reference_height = kWordHeight);

/// Horizontal-only rescale by target/source. Height and transcript are kept.
WordImage width_adjust(const WordImage& word, double source_char_width, double target_char_width);

/// Height-normalizes each word and concatenates them left to right with
/// `spacing_px` background columns in between. Throws EmptyWordList.
LineImage compose_line(std::span<const WordImage> words, int spacing_px = kWordSpacing,
                       int line_height = kWordHeight);

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Range&) const = default;
};

struct AugmentationConfig {
  Range brightness{0.5, 5.0};
  Range contrast{0.1, 10.0};
  Range saturation{0.0, 5.0};
  Range hue{-0.1, 0.1};
  int blur_kernel = 5;
  Range blur_sigma{0.1, 2.0};
  Range rotation_deg{-1.0, 1.0};
  Range shear_deg{-50.0, 30.0};
  double homography_jitter_frac = 0.02;
  std::uint64_t seed = 0;

  /// Every step collapsed to a no-op.
  static AugmentationConfig neutral(std::uint64_t seed = 0);

  /// Throws InvalidConfig when a range is inverted, the kernel is even or
  /// non-positive, or the jitter is negative.
  void validate() const;

  bool operator==(const AugmentationConfig&) const = default;
};

enum class GeometricKind { rotation, affine, homography };

/// Parameters drawn for one augment call; exposed so callers can log them.
struct AugmentationDraw {
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;
  double hue = 0.0;
  double blur_sigma = 0.0;
  GeometricKind geometric = GeometricKind::rotation;
  double rotation_deg = 0.0;
  double shear_deg = 0.0;
  std::array<double, 8> corner_jitter{};  // (dx, dy) per corner as fractions of width/height
};

AugmentationDraw draw_augmentation(const AugmentationConfig& cfg, std::uint64_t image_index = 0);

/// Color jitter (brightness, contrast, saturation, hue), Gaussian blur, then
/// one geometric distortion picked uniformly among rotation, affine and
/// homography. Deterministic in (img, cfg.seed, image_index); dimensions and
/// transcript are preserved, uncovered pixels become background.
LineImage augment(const LineImage& img, const AugmentationConfig& cfg, std::uint64_t image_index = 0);

/// Applies an explicit draw; augment() is draw_augmentation() followed by this.
Raster apply_augmentation(const Raster& src, const AugmentationDraw& draw, int blur_kernel);

}  // namespace htrsel
