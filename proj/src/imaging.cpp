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

#include "htrsel/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include <opencv2/imgproc.hpp>

#include "htrsel/error.hpp"
#include "htrsel/text.hpp"
#include "mat_view.hpp"

namespace htrsel {

namespace {

void require_valid(const Raster& r, const char* what) {
  if (!r.valid()) throw InvalidRaster(std::string(what) + ": raster is empty or inconsistent");
}

Raster resize_to(const Raster& src, int width, int height) {
  if (width == src.width && height == src.height) return src;
  cv::Mat out;
  cv::resize(detail::view(src), out, cv::Size(width, height), 0.0, 0.0, cv::INTER_LINEAR);
  return detail::to_raster(out);
}

Raster gray_to_rgb(const Raster& src) {
  if (src.channels == 3) return src;
  cv::Mat out;
  cv::cvtColor(detail::view(src), out, cv::COLOR_GRAY2RGB);
  return detail::to_raster(out);
}

}  // namespace

int normalized_width(int width, int height, int target_height) {
  const double w = static_cast<double>(width) * target_height / height;
  return std::max(1, static_cast<int>(std::lround(w)));
}

Raster resize_to_height(const Raster& src, int target_height) {
  require_valid(src, "resize_to_height");
  if (target_height < 1) throw std::invalid_argument("target height must be at least 1");
  return resize_to(src, normalized_width(src.width, src.height, target_height), target_height);
}

LineImage normalize_height(const LineImage& img, int target_height) {
  return {resize_to_height(img.pixels, target_height), img.transcript};
}

CharWidthAccumulator::CharWidthAccumulator(int reference_height) : reference_height_(reference_height) {
  if (reference_height < 1) throw std::invalid_argument("reference height must be at least 1");
}

void CharWidthAccumulator::add(int width, int height, std::string_view transcript) {
  if (width < 1 || height < 1) throw InvalidRaster("sample raster has no pixels");
  const auto cps = text::decode_utf8(transcript);
  if (!cps) throw std::invalid_argument("transcript is not valid UTF-8");
  const std::size_t visible = text::count_non_space(*cps);
  if (visible == 0) throw DomainError("sample transcript has no visible characters");
  width_sum_ += static_cast<double>(width) * reference_height_ / height;
  chars_ += visible;
}

double CharWidthAccumulator::average() const {
  if (chars_ == 0) throw EmptySampleSet("no samples to estimate the character width from");
  return width_sum_ / static_cast<double>(chars_);
}

double estimate_avg_char_width(std::span<const LineImage> samples, int reference_height) {
  if (samples.empty()) throw EmptySampleSet("no samples to estimate the character width from");
  CharWidthAccumulator acc(reference_height);
  for (const auto& s : samples) acc.add(s.pixels.width, s.pixels.height, s.transcript);
  return acc.average();
}

double estimate_avg_char_width(std::span<const WordImage> samples, int reference_height) {
  if (samples.empty()) throw EmptySampleSet("no samples to estimate the character width from");
  CharWidthAccumulator acc(reference_height);
  for (const auto& s : samples) acc.add(s.pixels.width, s.pixels.height, s.transcript);
  return acc.average();
}

WordImage width_adjust(const WordImage& word, double source_char_width, double target_char_width) {
  require_valid(word.pixels, "width_adjust");
  if (!(source_char_width > 0.0) || !(target_char_width > 0.0)) {
    throw std::invalid_argument("character widths must be positive");
  }
  const double scaled = word.pixels.width * (target_char_width / source_char_width);
  const int width = std::max(1, static_cast<int>(std::lround(scaled)));
  return {resize_to(word.pixels, width, word.pixels.height), word.transcript};
}

LineImage compose_line(std::span<const WordImage> words, int spacing_px, int line_height) {
  if (words.empty()) throw EmptyWordList("cannot compose a line from zero words");
  if (spacing_px < 0) throw std::invalid_argument("spacing must be non-negative");
  if (line_height < 1) throw std::invalid_argument("line height must be at least 1");

  int channels = 1;
  for (const auto& w : words) {
    require_valid(w.pixels, "compose_line");
    channels = std::max(channels, w.pixels.channels);
  }

  std::vector<Raster> parts;
  parts.reserve(words.size());
  int total_width = spacing_px * static_cast<int>(words.size() - 1);
  for (const auto& w : words) {
    Raster r = resize_to_height(w.pixels, line_height);
    if (r.channels != channels) r = gray_to_rgb(r);
    total_width += r.width;
    parts.push_back(std::move(r));
  }

  LineImage line;
  line.pixels = Raster::filled(total_width, line_height, channels, kBackground);
  int x = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Raster& r = parts[i];
    for (int y = 0; y < line_height; ++y) {
      std::memcpy(&line.pixels.at(x, y), r.pixels.data() + y * r.stride(), r.stride());
    }
    x += r.width + spacing_px;
    if (i > 0) line.transcript += ' ';
    line.transcript += words[i].transcript;
  }
  return line;
}

}  // namespace htrsel
