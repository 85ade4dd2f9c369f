#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lbpkit/image.hpp"
#include "lbpkit/lbp.hpp"
#include "lbpkit/mapping.hpp"

namespace lbpkit {

struct Grid {
  std::size_t x = 1;
  std::size_t y = 1;
};

/// Concatenated per-window histograms. Layout: planes (1, or 3 for LBP-TOP
/// in XY, XT, YT order), then windows row-major, then bins.
struct Descriptor {
  std::vector<double> values;
  std::uint32_t bins_per_window = 0;
  Grid grid;
  std::size_t planes = 1;
  bool normalized = false;
  SamplingSpec spec;
  MappingKind mapping = MappingKind::Full;

  std::size_t window_count() const { return grid.x * grid.y * planes; }
};

/// Bin counts over every interior code. With `normalize` the counts are
/// divided by the number of interior pixels. Throws MappingMismatch when the
/// mapping was built for a different P.
Descriptor lbp_histogram(const CodeImage& codes, const CodeMapping& mapping, bool normalize);

/// Splits the interior into grid.x by grid.y windows by floor division, the
/// last window in each axis absorbing the remainder, and concatenates the
/// window histograms row-major. Normalization is per window.
/// Throws EmptyWindow when a window would have no pixels.
Descriptor grid_histogram(const CodeImage& codes, const CodeMapping& mapping, Grid grid,
                          bool normalize);

/// generalized_lbp followed by grid_histogram; `spec` is recorded in the result.
Descriptor grid_descriptor(const GrayImage& image, const SamplingSpec& spec,
                           const CodeMapping& mapping, Grid grid, bool normalize);

/// Interior voxel range shared by all three planes of lbp_top.
struct TopMargins {
  std::size_t x;
  std::size_t y;
  std::size_t t;
};
TopMargins lbp_top_margins(const SamplingSpec& xy, const SamplingSpec& xt,
                           const SamplingSpec& yt);

/// LBP on three orthogonal planes. The XT plane has x horizontal and t
/// vertical (later frames "down"); YT has y horizontal and t vertical. Each
/// plane's ring uses its own spec with the same radius along both axes. All
/// three histograms count the same interior voxels. The mapping's P must
/// equal the P of every spec. Throws VolumeTooSmall when no voxel qualifies.
Descriptor lbp_top(const VideoVolume& volume, const SamplingSpec& xy, const SamplingSpec& xt,
                   const SamplingSpec& yt, const CodeMapping& mapping, bool normalize);

// Serialization. Unnormalized counts print as integers; other reals use 17
// significant digits.
std::string descriptor_csv_header(const Descriptor& d);
std::string descriptor_csv_row(std::string_view id, const Descriptor& d);
std::string descriptor_json(std::string_view id, const Descriptor& d);
/// Parses descriptor_json output back.
Descriptor descriptor_from_json(std::string_view json, std::string* id = nullptr);

}  // namespace lbpkit
