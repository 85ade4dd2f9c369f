#include "lbpkit/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lbpkit/error.hpp"

namespace lbpkit {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) {
    throw Error(ErrorKind::InvalidDimensions, "image dimensions must be positive");
  }
  if (pixels_.size() != width_ * height_) {
    throw Error(ErrorKind::InvalidDimensions,
                "pixel count " + std::to_string(pixels_.size()) + " does not match " +
                    std::to_string(width_) + "x" + std::to_string(height_));
  }
  for (double v : pixels_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "image intensities must be finite");
    }
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height, double value)
    : GrayImage(width, height, std::vector<double>(width * height, value)) {}

GrayImage GrayImage::crop(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h) const {
  if (w == 0 || h == 0 || x0 + w > width_ || y0 + h > height_) {
    throw Error(ErrorKind::InvalidDimensions, "crop rectangle outside image");
  }
  std::vector<double> out;
  out.reserve(w * h);
  for (std::size_t y = y0; y < y0 + h; ++y) {
    auto r = row(y).subspan(x0, w);
    out.insert(out.end(), r.begin(), r.end());
  }
  return GrayImage(w, h, std::move(out));
}

VideoVolume::VideoVolume(std::vector<GrayImage> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) {
    throw Error(ErrorKind::InvalidDimensions, "video volume needs at least one frame");
  }
  for (const auto& f : frames_) {
    if (f.width() != frames_.front().width() || f.height() != frames_.front().height()) {
      throw Error(ErrorKind::InvalidDimensions, "all frames must share the same dimensions");
    }
  }
}

double bilinear_sample(const GrayImage& image, double x, double y) {
  const double max_x = static_cast<double>(image.width() - 1);
  const double max_y = static_cast<double>(image.height() - 1);
  if (!(x >= 0.0 && x <= max_x && y >= 0.0 && y <= max_y)) {
    throw Error(ErrorKind::CoordinateOutOfBounds,
                "sample (" + std::to_string(x) + ", " + std::to_string(y) + ") outside image");
  }
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double tx = x - fx;
  const double ty = y - fy;
  const auto x0 = static_cast<std::size_t>(fx);
  const auto y0 = static_cast<std::size_t>(fy);
  // A zero fractional part never reads past the last row/column.
  const std::size_t x1 = tx > 0.0 ? x0 + 1 : x0;
  const std::size_t y1 = ty > 0.0 ? y0 + 1 : y0;
  const double a = image.at(x0, y0);
  const double b = image.at(x1, y0);
  const double c = image.at(x0, y1);
  const double d = image.at(x1, y1);
  const double v = (1.0 - tx) * (1.0 - ty) * a + tx * (1.0 - ty) * b + (1.0 - tx) * ty * c +
                   tx * ty * d;
  // Weights may sum to 1 +- ulp; keep the result inside the neighbor range.
  return std::clamp(v, std::min({a, b, c, d}), std::max({a, b, c, d}));
}

double median_of(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorKind::EmptyInput, "median of an empty sequence");
  }
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace lbpkit
