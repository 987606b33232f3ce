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

// Bridges between Raster and cv::Mat. Private to the library.

#include <cstring>

#include <opencv2/core.hpp>

#include "htrsel/raster.hpp"

namespace htrsel::detail {

/// Non-owning Mat header over the raster's pixel buffer.
inline cv::Mat view(const Raster& r) {
  return cv::Mat(r.height, r.width, CV_8UC(r.channels), const_cast<std::uint8_t*>(r.pixels.data()));
}

inline Raster to_raster(const cv::Mat& m) {
  CV_Assert(m.depth() == CV_8U);
  Raster r;
  r.width = m.cols;
  r.height = m.rows;
  r.channels = m.channels();
  r.pixels.resize(static_cast<std::size_t>(m.total()) * m.channels());
  const std::size_t row_bytes = r.stride();
  for (int y = 0; y < m.rows; ++y) {
    std::memcpy(r.pixels.data() + y * row_bytes, m.ptr<std::uint8_t>(y), row_bytes);
  }
  return r;
}

}  // namespace htrsel::detail
