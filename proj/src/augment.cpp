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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <opencv2/imgproc.hpp>

#include "htrsel/error.hpp"
#include "htrsel/imaging.hpp"
#include "mat_view.hpp"

namespace htrsel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform draws mapped by hand from raw mt19937_64 output.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index) : engine_(splitmix64(seed ^ splitmix64(index))) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(const Range& r) { return r.lo + (r.hi - r.lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

void clamp_pixels(cv::Mat& m) {
  cv::min(m, 255.0, m);
  cv::max(m, 0.0, m);
}

// Luma weights used for grayscale conversion in the color steps.
cv::Mat luma(const cv::Mat& rgb) {
  cv::Mat gray;
  cv::transform(rgb, gray, cv::Matx13f(0.299f, 0.587f, 0.114f));
  return gray;
}

void adjust_brightness(cv::Mat& m, double factor) {
  if (factor == 1.0) return;
  m *= factor;
  clamp_pixels(m);
}

void adjust_contrast(cv::Mat& m, double factor) {
  if (factor == 1.0) return;
  const double mean = cv::mean(m.channels() == 3 ? luma(m) : m)[0];
  m = m * factor + cv::Scalar::all((1.0 - factor) * mean);
  clamp_pixels(m);
}

void adjust_saturation(cv::Mat& m, double factor) {
  if (m.channels() != 3 || factor == 1.0) return;
  cv::Mat gray3;
  cv::cvtColor(luma(m), gray3, cv::COLOR_GRAY2RGB);
  cv::addWeighted(m, factor, gray3, 1.0 - factor, 0.0, m);
  clamp_pixels(m);
}

void adjust_hue(cv::Mat& m, double shift) {
  if (m.channels() != 3 || shift == 0.0) return;
  cv::Mat hsv;
  cv::cvtColor(m / 255.0, hsv, cv::COLOR_RGB2HSV);  // H in [0, 360)
  const float degrees = static_cast<float>(shift * 360.0);
  hsv.forEach<cv::Vec3f>([degrees](cv::Vec3f& px, const int*) {
    px[0] = std::fmod(px[0] + degrees + 360.0f, 360.0f);
  });
  cv::cvtColor(hsv, m, cv::COLOR_HSV2RGB);
  m *= 255.0;
  clamp_pixels(m);
}

void warp_affine(cv::Mat& m, const cv::Matx23d& a) {
  if (a == cv::Matx23d(1, 0, 0, 0, 1, 0)) return;
  cv::Mat out;
  cv::warpAffine(m, out, a, m.size(), cv::INTER_LINEAR, cv::BORDER_CONSTANT, cv::Scalar::all(kBackground));
  m = out;
}

// Rotation by `rotation_deg` composed with a horizontal shear, both about
// the image center.
cv::Matx23d rotate_shear(cv::Size size, double rotation_deg, double shear_deg) {
  const double t = rotation_deg * std::numbers::pi / 180.0;
  const double k = std::tan(shear_deg * std::numbers::pi / 180.0);
  const double c = std::cos(t);
  const double s = std::sin(t);
  // Counter-clockwise on screen (y axis pointing down), then x += k * y.
  const cv::Matx22d rot(c, s, -s, c);
  const cv::Matx22d shear(1.0, k, 0.0, 1.0);
  const cv::Matx22d a = rot * shear;
  const cv::Vec2d center((size.width - 1) / 2.0, (size.height - 1) / 2.0);
  const cv::Vec2d offset = center - a * center;
  return {a(0, 0), a(0, 1), offset[0], a(1, 0), a(1, 1), offset[1]};
}

void warp_homography(cv::Mat& m, const std::array<double, 8>& jitter) {
  if (std::all_of(jitter.begin(), jitter.end(), [](double j) { return j == 0.0; })) return;
  const float w = static_cast<float>(m.cols - 1);
  const float h = static_cast<float>(m.rows - 1);
  const cv::Point2f src[4] = {{0.f, 0.f}, {w, 0.f}, {w, h}, {0.f, h}};
  cv::Point2f dst[4];
  for (int i = 0; i < 4; ++i) {
    dst[i] = src[i] + cv::Point2f(static_cast<float>(jitter[2 * i] * m.cols),
                                  static_cast<float>(jitter[2 * i + 1] * m.rows));
  }
  const cv::Mat homography = cv::getPerspectiveTransform(src, dst);
  cv::Mat out;
  cv::warpPerspective(m, out, homography, m.size(), cv::INTER_LINEAR, cv::BORDER_CONSTANT,
                      cv::Scalar::all(kBackground));
  m = out;
}

void check_range(const Range& r, const char* name) {
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw InvalidConfig(std::string(name) + " range must satisfy lower <= upper");
  }
}

}  // namespace

AugmentationConfig AugmentationConfig::neutral(std::uint64_t seed) {
  AugmentationConfig cfg;
  cfg.brightness = {1.0, 1.0};
  cfg.contrast = {1.0, 1.0};
  cfg.saturation = {1.0, 1.0};
  cfg.hue = {0.0, 0.0};
  cfg.blur_sigma = {0.0, 0.0};
  cfg.rotation_deg = {0.0, 0.0};
  cfg.shear_deg = {0.0, 0.0};
  cfg.homography_jitter_frac = 0.0;
  cfg.seed = seed;
  return cfg;
}

void AugmentationConfig::validate() const {
  check_range(brightness, "brightness");
  check_range(contrast, "contrast");
  check_range(saturation, "saturation");
  check_range(hue, "hue");
  check_range(blur_sigma, "blur_sigma");
  check_range(rotation_deg, "rotation");
  check_range(shear_deg, "shear");
  if (brightness.lo < 0.0 || contrast.lo < 0.0 || saturation.lo < 0.0 || blur_sigma.lo < 0.0) {
    throw InvalidConfig("color factors and blur sigma must be non-negative");
  }
  if (blur_kernel < 1 || blur_kernel % 2 == 0) throw InvalidConfig("blur kernel must be a positive odd size");
  if (!(homography_jitter_frac >= 0.0)) throw InvalidConfig("homography jitter must be non-negative");
  if (shear_deg.lo <= -90.0 || shear_deg.hi >= 90.0) throw InvalidConfig("shear must lie in (-90, 90) degrees");
}

AugmentationDraw draw_augmentation(const AugmentationConfig& cfg, std::uint64_t image_index) {
  cfg.validate();
  Stream rng(cfg.seed, image_index);
  AugmentationDraw d;
  d.brightness = rng.uniform(cfg.brightness);
  d.contrast = rng.uniform(cfg.contrast);
  d.saturation = rng.uniform(cfg.saturation);
  d.hue = rng.uniform(cfg.hue);
  d.blur_sigma = rng.uniform(cfg.blur_sigma);
  const int pick = std::min(2, static_cast<int>(rng.unit() * 3.0));
  d.geometric = static_cast<GeometricKind>(pick);
  d.rotation_deg = rng.uniform(cfg.rotation_deg);
  d.shear_deg = rng.uniform(cfg.shear_deg);
  const Range jitter{-cfg.homography_jitter_frac, cfg.homography_jitter_frac};
  for (double& j : d.corner_jitter) j = rng.uniform(jitter);
  if (d.geometric == GeometricKind::rotation) d.shear_deg = 0.0;
  return d;
}

Raster apply_augmentation(const Raster& src, const AugmentationDraw& draw, int blur_kernel) {
  if (!src.valid()) throw InvalidRaster("augment: raster is empty or inconsistent");
  cv::Mat m;
  detail::view(src).convertTo(m, CV_32FC(src.channels));

  adjust_brightness(m, draw.brightness);
  adjust_contrast(m, draw.contrast);
  adjust_saturation(m, draw.saturation);
  adjust_hue(m, draw.hue);
  if (draw.blur_sigma > 0.0) {
    cv::GaussianBlur(m, m, cv::Size(blur_kernel, blur_kernel), draw.blur_sigma, draw.blur_sigma,
                     cv::BORDER_REFLECT_101);
  }
  switch (draw.geometric) {
    case GeometricKind::rotation:
      warp_affine(m, rotate_shear(m.size(), draw.rotation_deg, 0.0));
      break;
    case GeometricKind::affine:
      warp_affine(m, rotate_shear(m.size(), draw.rotation_deg, draw.shear_deg));
      break;
    case GeometricKind::homography:
      warp_homography(m, draw.corner_jitter);
      break;
  }

  cv::Mat out;
  m.convertTo(out, CV_8UC(src.channels));  // rounds and saturates to [0, 255]
  return detail::to_raster(out);
}

LineImage augment(const LineImage& img, const AugmentationConfig& cfg, std::uint64_t image_index) {
  const AugmentationDraw draw = draw_augmentation(cfg, image_index);
  return {apply_augmentation(img.pixels, draw, cfg.blur_kernel), img.transcript};
}

}  // namespace htrsel
