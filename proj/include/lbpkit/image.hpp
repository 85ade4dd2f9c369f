#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lbpkit {

/// Single-channel raster of real-valued intensities, stored row-major.
/// Immutable once constructed; every intensity is finite.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, std::vector<double> pixels);
  /// Constant-valued image.
  GrayImage(std::size_t width, std::size_t height, double value = 0.0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  double at(std::size_t x, std::size_t y) const noexcept { return pixels_[y * width_ + x]; }
  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<const double> row(std::size_t y) const noexcept {
    return std::span<const double>(pixels_).subspan(y * width_, width_);
  }

  /// Copy of the rectangle [x0, x0+w) x [y0, y0+h).
  GrayImage crop(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h) const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> pixels_;
};

/// Ordered frames of identical dimensions.
class VideoVolume {
 public:
  explicit VideoVolume(std::vector<GrayImage> frames);

  std::size_t width() const noexcept { return frames_.front().width(); }
  std::size_t height() const noexcept { return frames_.front().height(); }
  std::size_t frame_count() const noexcept { return frames_.size(); }

  const GrayImage& frame(std::size_t t) const noexcept { return frames_[t]; }
  double at(std::size_t x, std::size_t y, std::size_t t) const noexcept {
    return frames_[t].at(x, y);
  }

 private:
  std::vector<GrayImage> frames_;
};

/// Bilinear interpolation of the four pixels surrounding (x, y).
/// Exact pixel value at integer coordinates. Throws CoordinateOutOfBounds
/// unless 0 <= x <= width-1 and 0 <= y <= height-1.
double bilinear_sample(const GrayImage& image, double x, double y);

/// Median; even-length input yields the mean of the two middle values.
double median_of(std::span<const double> values);

}  // namespace lbpkit
