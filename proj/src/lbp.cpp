#include "lbpkit/lbp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lbpkit/error.hpp"
#include "lbpkit/mapping.hpp"

namespace lbpkit {
namespace {

constexpr double kSnap = 1e-9;

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < kSnap ? r : v;
}

void require_interior(std::size_t w, std::size_t h, std::size_t margin) {
  if (w <= 2 * margin || h <= 2 * margin) {
    throw Error(ErrorKind::ImageTooSmall, "image " + std::to_string(w) + "x" + std::to_string(h) +
                                              " has no interior for margin " +
                                              std::to_string(margin));
  }
}

CodeImage run_ring(const GrayImage& image, std::span<const kernels::RingTap> taps,
                   std::size_t margin, const SamplingSpec& spec, const kernels::KernelTable& k) {
  CodeImage out{image.width(), image.height(), margin, spec.samples, spec.radius, {}};
  const std::size_t iw = out.interior_width();
  const std::size_t ih = out.interior_height();
  out.codes.resize(iw * ih);
  const double* base = image.pixels().data();
  for (std::size_t iy = 0; iy < ih; ++iy) {
    const double* center = base + (iy + margin) * image.width() + margin;
    k.ring_row(center, taps.data(), taps.size(), iw, kTieEpsilon, out.codes.data() + iy * iw);
  }
  return out;
}

}  // namespace

void SamplingSpec::validate() const {
  if (samples < kMinSamples || samples > kMaxSamples) {
    throw Error(ErrorKind::UnsupportedP, "P=" + std::to_string(samples) + " outside [4, 24]");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  }
}

std::size_t SamplingSpec::margin() const {
  return static_cast<std::size_t>(std::ceil(radius - kSnap));
}

double BasicLbpResult::mean_contrast() const {
  if (contrast.empty()) return 0.0;
  return std::accumulate(contrast.begin(), contrast.end(), 0.0) /
         static_cast<double>(contrast.size());
}

BasicLbpResult basic_lbp(const GrayImage& image) { return basic_lbp(image, kernels::active()); }

BasicLbpResult basic_lbp(const GrayImage& image, const kernels::KernelTable& k) {
  require_interior(image.width(), image.height(), 1);
  BasicLbpResult r;
  r.codes = CodeImage{image.width(), image.height(), 1, 8, 1.0, {}};
  const std::size_t iw = r.codes.interior_width();
  const std::size_t ih = r.codes.interior_height();
  r.codes.codes.resize(iw * ih);
  r.contrast.resize(iw * ih);
  r.variance.resize(iw * ih);
  const double* base = image.pixels().data();
  const std::size_t w = image.width();
  for (std::size_t iy = 0; iy < ih; ++iy) {
    const double* mid = base + (iy + 1) * w + 1;
    k.basic_row(mid - w, mid, mid + w, iw, r.codes.codes.data() + iy * iw,
                r.contrast.data() + iy * iw, r.variance.data() + iy * iw);
  }
  return r;
}

std::vector<RingOffset> ring_offsets(const SamplingSpec& spec) {
  spec.validate();
  std::vector<RingOffset> out;
  out.reserve(static_cast<std::size_t>(spec.samples));
  for (int p = 0; p < spec.samples; ++p) {
    const double angle = 2.0 * std::numbers::pi * p / spec.samples;
    out.push_back({snap(spec.radius * std::cos(angle)), snap(-spec.radius * std::sin(angle))});
  }
  return out;
}

std::vector<kernels::RingTap> ring_taps(const SamplingSpec& spec, std::size_t stride) {
  const auto s = static_cast<std::ptrdiff_t>(stride);
  std::vector<kernels::RingTap> taps;
  for (const RingOffset& o : ring_offsets(spec)) {
    const double fx = std::floor(o.dx);
    const double fy = std::floor(o.dy);
    const double tx = o.dx - fx;
    const double ty = o.dy - fy;
    kernels::RingTap t;
    t.offset = static_cast<std::ptrdiff_t>(fy) * s + static_cast<std::ptrdiff_t>(fx);
    t.step_x = tx > 0.0 ? 1 : 0;
    t.step_y = ty > 0.0 ? s : 0;
    t.w00 = (1.0 - tx) * (1.0 - ty);
    t.w10 = tx * (1.0 - ty);
    t.w01 = (1.0 - tx) * ty;
    t.w11 = tx * ty;
    t.exact = tx == 0.0 && ty == 0.0;
    taps.push_back(t);
  }
  return taps;
}

std::vector<double> ring_samples(const GrayImage& image, std::size_t cx, std::size_t cy,
                                 const SamplingSpec& spec) {
  spec.validate();
  const std::size_t m = spec.margin();
  if (cx < m || cy < m || cx + m >= image.width() || cy + m >= image.height()) {
    throw Error(ErrorKind::OutOfBoundsRing, "ring of radius " + std::to_string(spec.radius) +
                                                " around (" + std::to_string(cx) + ", " +
                                                std::to_string(cy) + ") leaves the image");
  }
  const auto taps = ring_taps(spec, image.width());
  const double* c = image.pixels().data() + cy * image.width() + cx;
  std::vector<double> out;
  out.reserve(taps.size());
  for (const auto& t : taps) {
    const double* q = c + t.offset;
    out.push_back(t.exact ? *q
                          : t.w00 * q[0] + t.w10 * q[t.step_x] + t.w01 * q[t.step_y] +
                                t.w11 * q[t.step_x + t.step_y]);
  }
  return out;
}

CodeImage generalized_lbp(const GrayImage& image, const SamplingSpec& spec) {
  return generalized_lbp(image, spec, kernels::active());
}

CodeImage generalized_lbp(const GrayImage& image, const SamplingSpec& spec,
                          const kernels::KernelTable& k) {
  spec.validate();
  const std::size_t m = spec.margin();
  require_interior(image.width(), image.height(), m);
  const auto taps = ring_taps(spec, image.width());
  return run_ring(image, taps, m, spec, k);
}

double var_measure(std::span<const double> samples, double /*center*/) {
  if (samples.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "variance needs at least two samples");
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return ss / n;
}

CodeImage median_robust_lbp(const GrayImage& image, const SamplingSpec& spec, int window) {
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "median window must be odd and >= 1");
  }
  if (window == 1) return generalized_lbp(image, spec);
  spec.validate();
  const auto half = static_cast<std::size_t>(window / 2);
  const std::size_t m = spec.margin() + half;
  require_interior(image.width(), image.height(), m);

  // Median-filter every pixel whose window fits; the border keeps raw values
  // and is never read by the taps below.
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  std::vector<double> filtered(image.pixels().begin(), image.pixels().end());
  std::vector<double> block(static_cast<std::size_t>(window) * static_cast<std::size_t>(window));
  for (std::size_t y = half; y + half < h; ++y) {
    for (std::size_t x = half; x + half < w; ++x) {
      std::size_t n = 0;
      for (std::size_t by = y - half; by <= y + half; ++by) {
        for (std::size_t bx = x - half; bx <= x + half; ++bx) block[n++] = image.at(bx, by);
      }
      filtered[y * w + x] = median_of(block);
    }
  }
  const GrayImage medians(w, h, std::move(filtered));

  std::vector<kernels::RingTap> taps;
  const auto stride = static_cast<std::ptrdiff_t>(w);
  for (const RingOffset& o : ring_offsets(spec)) {
    kernels::RingTap t;
    t.offset = static_cast<std::ptrdiff_t>(std::round(o.dy)) * stride +
               static_cast<std::ptrdiff_t>(std::round(o.dx));
    taps.push_back(t);
  }
  return run_ring(medians, taps, m, spec, kernels::active());
}

}  // namespace lbpkit
