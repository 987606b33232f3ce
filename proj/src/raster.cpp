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

#include "htrsel/raster.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "htrsel/error.hpp"
#include "mat_view.hpp"

namespace htrsel {

Raster Raster::filled(int width, int height, int channels, std::uint8_t value) {
  Raster r;
  r.width = width;
  r.height = height;
  r.channels = channels;
  r.pixels.assign(static_cast<std::size_t>(width) * height * channels, value);
  return r;
}

bool Raster::valid() const {
  return width >= 1 && height >= 1 && (channels == 1 || channels == 3) &&
         pixels.size() == static_cast<std::size_t>(width) * height * channels;
}

Raster load_raster(const std::filesystem::path& path) {
  cv::Mat m;
  try {
    m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw ImageLoadFailure("cannot decode " + path.string() + ": " + e.what());
  }
  if (m.empty()) throw ImageLoadFailure("cannot load image " + path.string());

  if (m.depth() != CV_8U) {
    cv::Mat scaled;
    const double scale = m.depth() == CV_16U ? 1.0 / 257.0 : (m.depth() == CV_32F || m.depth() == CV_64F ? 255.0 : 1.0);
    m.convertTo(scaled, CV_MAKETYPE(CV_8U, m.channels()), scale);
    m = scaled;
  }
  cv::Mat out;
  switch (m.channels()) {
    case 1: out = m; break;
    case 2: cv::extractChannel(m, out, 0); break;
    case 3: cv::cvtColor(m, out, cv::COLOR_BGR2RGB); break;
    case 4: cv::cvtColor(m, out, cv::COLOR_BGRA2RGB); break;
    default: throw ImageLoadFailure("unsupported channel count in " + path.string());
  }
  return detail::to_raster(out);
}

void save_raster(const std::filesystem::path& path, const Raster& raster) {
  if (!raster.valid()) throw InvalidRaster("refusing to write an invalid raster to " + path.string());
  cv::Mat view = detail::view(raster);
  cv::Mat bgr;
  if (raster.channels == 3) {
    cv::cvtColor(view, bgr, cv::COLOR_RGB2BGR);
  } else {
    bgr = view;
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), bgr);
  } catch (const cv::Exception& e) {
    throw DomainError("cannot write " + path.string() + ": " + e.what());
  }
  if (!ok) throw DomainError("cannot write " + path.string());
}

}  // namespace htrsel
