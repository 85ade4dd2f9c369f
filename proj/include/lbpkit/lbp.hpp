#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lbpkit/image.hpp"
#include "lbpkit/kernels.hpp"

namespace lbpkit {

/// Circular sampling geometry: P samples on a circle of radius R pixels.
struct SamplingSpec {
  int samples = 8;
  double radius = 1.0;

  /// Throws UnsupportedP for P outside [4, 24], InvalidArgument for R <= 0.
  void validate() const;
  /// Border excluded from code images: ceil(R).
  std::size_t margin() const;

  friend bool operator==(const SamplingSpec&, const SamplingSpec&) = default;
};

/// Ties within this absolute tolerance count as "sample >= center".
inline constexpr double kTieEpsilon = 1e-9;

/// Per-pixel codes over the interior of a source image. The interior excludes
/// `margin` pixels on every side.
struct CodeImage {
  std::size_t source_width = 0;
  std::size_t source_height = 0;
  std::size_t margin = 0;
  int samples = 8;
  double radius = 1.0;
  std::vector<std::uint32_t> codes;  // row-major, interior_width() per row

  std::size_t interior_width() const { return source_width - 2 * margin; }
  std::size_t interior_height() const { return source_height - 2 * margin; }
  /// Code of interior pixel (ix, iy), i.e. source pixel (ix+margin, iy+margin).
  std::uint32_t at(std::size_t ix, std::size_t iy) const { return codes[iy * interior_width() + ix]; }
};

struct TexturePixelStats {
  double contrast_c = 0.0;  // mean(1-labeled neighbors) - mean(0-labeled neighbors)
  double var = 0.0;         // population variance of the neighbors
};

struct BasicLbpResult {
  CodeImage codes;
  std::vector<double> contrast;  // one per interior pixel
  std::vector<double> variance;  // one per interior pixel

  TexturePixelStats stats_at(std::size_t ix, std::size_t iy) const {
    const std::size_t i = iy * codes.interior_width() + ix;
    return {contrast[i], variance[i]};
  }
  double mean_contrast() const;
};

/// 3x3 operator. Neighbors >= center set their bit; weights run clockwise from
/// the top-left neighbor: 1 2 4 / 128 . 8 / 64 32 16. C is zero when every
/// neighbor falls on the same side. Throws ImageTooSmall below 3x3.
BasicLbpResult basic_lbp(const GrayImage& image);
BasicLbpResult basic_lbp(const GrayImage& image, const kernels::KernelTable& kernels);

/// Sample p sits at offset (R cos(2 pi p/P), -R sin(2 pi p/P)) from the center,
/// y growing downward; offsets within 1e-9 of an integer are snapped to it.
struct RingOffset {
  double dx;
  double dy;
};
std::vector<RingOffset> ring_offsets(const SamplingSpec& spec);

/// Interpolation taps for an image with the given row stride.
std::vector<kernels::RingTap> ring_taps(const SamplingSpec& spec, std::size_t stride);

/// The P interpolated ring values around (cx, cy). Throws OutOfBoundsRing
/// when the ring (with margin ceil(R)) leaves the image.
std::vector<double> ring_samples(const GrayImage& image, std::size_t cx, std::size_t cy,
                                 const SamplingSpec& spec);

/// Circular operator LBP(P, R). Bit p is set iff sample p >= center - 1e-9.
/// Throws ImageTooSmall when no interior pixel remains.
CodeImage generalized_lbp(const GrayImage& image, const SamplingSpec& spec);
CodeImage generalized_lbp(const GrayImage& image, const SamplingSpec& spec,
                          const kernels::KernelTable& kernels);

/// Population variance of (sample - center). Independent of `center`; it is
/// computed from the samples directly so the shift invariance is exact.
double var_measure(std::span<const double> samples, double center);

/// LBP(P, R) where the center and each ring sample are replaced by the median
/// of the window x window pixel block around their rounded position.
/// window == 1 is plain generalized_lbp. Margin is ceil(R) + window/2.
CodeImage median_robust_lbp(const GrayImage& image, const SamplingSpec& spec, int window);

}  // namespace lbpkit
