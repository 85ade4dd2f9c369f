#include "lbpkit/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "lbpkit/csv.hpp"
#include "lbpkit/error.hpp"

namespace lbpkit {
namespace {

void require_same_p(int codes_p, const CodeMapping& mapping) {
  if (codes_p != mapping.samples()) {
    throw Error(ErrorKind::MappingMismatch, "codes use P=" + std::to_string(codes_p) +
                                                " but mapping was built for P=" +
                                                std::to_string(mapping.samples()));
  }
}

// Divides each window's sub-vector by its own total; empty windows stay zero.
void normalize_windows(Descriptor& d) {
  const std::size_t bins = d.bins_per_window;
  for (std::size_t w = 0; w < d.window_count(); ++w) {
    auto first = d.values.begin() + static_cast<std::ptrdiff_t>(w * bins);
    double total = 0.0;
    for (auto it = first; it != first + static_cast<std::ptrdiff_t>(bins); ++it) total += *it;
    if (total > 0.0) {
      for (auto it = first; it != first + static_cast<std::ptrdiff_t>(bins); ++it) *it /= total;
    }
  }
  d.normalized = true;
}

struct Span1d {
  std::size_t begin;
  std::size_t end;
};

Span1d window_span(std::size_t extent, std::size_t parts, std::size_t index) {
  const std::size_t base = extent / parts;
  return {index * base, index + 1 == parts ? extent : (index + 1) * base};
}

}  // namespace

Descriptor lbp_histogram(const CodeImage& codes, const CodeMapping& mapping, bool normalize) {
  return grid_histogram(codes, mapping, Grid{1, 1}, normalize);
}

Descriptor grid_histogram(const CodeImage& codes, const CodeMapping& mapping, Grid grid,
                          bool normalize) {
  require_same_p(codes.samples, mapping);
  if (grid.x == 0 || grid.y == 0) {
    throw Error(ErrorKind::InvalidArgument, "grid dimensions must be >= 1");
  }
  const std::size_t iw = codes.interior_width();
  const std::size_t ih = codes.interior_height();
  if (iw / grid.x == 0 || ih / grid.y == 0) {
    throw Error(ErrorKind::EmptyWindow, "grid " + std::to_string(grid.x) + "x" +
                                            std::to_string(grid.y) + " leaves empty windows in a " +
                                            std::to_string(iw) + "x" + std::to_string(ih) +
                                            " interior");
  }
  Descriptor d;
  d.bins_per_window = mapping.bin_count();
  d.grid = grid;
  d.mapping = mapping.kind();
  d.spec = SamplingSpec{codes.samples, codes.radius};
  d.values.assign(grid.x * grid.y * d.bins_per_window, 0.0);

  for (std::size_t gy = 0; gy < grid.y; ++gy) {
    const Span1d rows = window_span(ih, grid.y, gy);
    for (std::size_t gx = 0; gx < grid.x; ++gx) {
      const Span1d cols = window_span(iw, grid.x, gx);
      double* hist = d.values.data() + (gy * grid.x + gx) * d.bins_per_window;
      for (std::size_t y = rows.begin; y < rows.end; ++y) {
        const std::uint32_t* row = codes.codes.data() + y * iw;
        for (std::size_t x = cols.begin; x < cols.end; ++x) hist[mapping.bin(row[x])] += 1.0;
      }
    }
  }
  if (normalize) normalize_windows(d);
  return d;
}

Descriptor grid_descriptor(const GrayImage& image, const SamplingSpec& spec,
                           const CodeMapping& mapping, Grid grid, bool normalize) {
  require_same_p(spec.samples, mapping);
  return grid_histogram(generalized_lbp(image, spec), mapping, grid, normalize);
}

TopMargins lbp_top_margins(const SamplingSpec& xy, const SamplingSpec& xt,
                           const SamplingSpec& yt) {
  return {std::max(xy.margin(), xt.margin()), std::max(xy.margin(), yt.margin()),
          std::max(xt.margin(), yt.margin())};
}

Descriptor lbp_top(const VideoVolume& volume, const SamplingSpec& xy, const SamplingSpec& xt,
                   const SamplingSpec& yt, const CodeMapping& mapping, bool normalize) {
  for (const SamplingSpec* s : {&xy, &xt, &yt}) {
    s->validate();
    require_same_p(s->samples, mapping);
  }
  const TopMargins m = lbp_top_margins(xy, xt, yt);
  const std::size_t W = volume.width();
  const std::size_t H = volume.height();
  const std::size_t T = volume.frame_count();
  if (W <= 2 * m.x || H <= 2 * m.y || T <= 2 * m.t) {
    throw Error(ErrorKind::VolumeTooSmall,
                "volume " + std::to_string(W) + "x" + std::to_string(H) + "x" + std::to_string(T) +
                    " has no interior for margins " + std::to_string(m.x) + "/" +
                    std::to_string(m.y) + "/" + std::to_string(m.t));
  }
  const std::size_t iw = W - 2 * m.x;
  const std::size_t ih = H - 2 * m.y;
  const std::size_t it = T - 2 * m.t;
  const kernels::KernelTable& k = kernels::active();

  Descriptor d;
  d.bins_per_window = mapping.bin_count();
  d.planes = 3;
  d.mapping = mapping.kind();
  d.spec = xy;
  d.values.assign(3 * d.bins_per_window, 0.0);
  double* hist_xy = d.values.data();
  double* hist_xt = hist_xy + d.bins_per_window;
  double* hist_yt = hist_xt + d.bins_per_window;

  std::vector<std::uint32_t> codes(std::max({iw, ih}));

  const auto taps_xy = ring_taps(xy, W);
  for (std::size_t t = m.t; t < m.t + it; ++t) {
    const double* frame = volume.frame(t).pixels().data();
    for (std::size_t y = m.y; y < m.y + ih; ++y) {
      k.ring_row(frame + y * W + m.x, taps_xy.data(), taps_xy.size(), iw, kTieEpsilon,
                 codes.data());
      for (std::size_t i = 0; i < iw; ++i) hist_xy[mapping.bin(codes[i])] += 1.0;
    }
  }

  // XT slices: rows are frames, columns are x.
  const auto taps_xt = ring_taps(xt, W);
  std::vector<double> slice(W * T);
  for (std::size_t y = m.y; y < m.y + ih; ++y) {
    for (std::size_t t = 0; t < T; ++t) {
      const auto row = volume.frame(t).row(y);
      std::copy(row.begin(), row.end(), slice.begin() + static_cast<std::ptrdiff_t>(t * W));
    }
    for (std::size_t t = m.t; t < m.t + it; ++t) {
      k.ring_row(slice.data() + t * W + m.x, taps_xt.data(), taps_xt.size(), iw, kTieEpsilon,
                 codes.data());
      for (std::size_t i = 0; i < iw; ++i) hist_xt[mapping.bin(codes[i])] += 1.0;
    }
  }

  // YT slices: rows are frames, columns are y.
  const auto taps_yt = ring_taps(yt, H);
  slice.assign(H * T, 0.0);
  for (std::size_t x = m.x; x < m.x + iw; ++x) {
    for (std::size_t t = 0; t < T; ++t) {
      const GrayImage& f = volume.frame(t);
      for (std::size_t y = 0; y < H; ++y) slice[t * H + y] = f.at(x, y);
    }
    for (std::size_t t = m.t; t < m.t + it; ++t) {
      k.ring_row(slice.data() + t * H + m.y, taps_yt.data(), taps_yt.size(), ih, kTieEpsilon,
                 codes.data());
      for (std::size_t i = 0; i < ih; ++i) hist_yt[mapping.bin(codes[i])] += 1.0;
    }
  }

  if (normalize) normalize_windows(d);
  return d;
}

std::string descriptor_csv_header(const Descriptor& d) {
  std::string out = "id,gx,gy,P,R,mapping";
  for (std::size_t i = 0; i < d.values.size(); ++i) out += ",v" + std::to_string(i);
  return out;
}

std::string descriptor_csv_row(std::string_view id, const Descriptor& d) {
  std::string out(id);
  out += "," + std::to_string(d.grid.x) + "," + std::to_string(d.grid.y) + "," +
         std::to_string(d.spec.samples) + "," + csv::format_real(d.spec.radius) + "," +
         std::string(to_string(d.mapping));
  for (double v : d.values) {
    out += ',';
    out += csv::format_real(v);
  }
  return out;
}

std::string descriptor_json(std::string_view id, const Descriptor& d) {
  nlohmann::ordered_json j;
  j["id"] = std::string(id);
  j["grid"] = {d.grid.x, d.grid.y};
  j["planes"] = d.planes;
  j["P"] = d.spec.samples;
  j["R"] = d.spec.radius;
  j["mapping"] = std::string(to_string(d.mapping));
  j["normalized"] = d.normalized;
  j["bins_per_window"] = d.bins_per_window;
  auto values = nlohmann::ordered_json::array();
  for (double v : d.values) {
    if (!d.normalized) {
      values.push_back(static_cast<std::uint64_t>(v));
    } else {
      values.push_back(v);
    }
  }
  j["values"] = std::move(values);
  return j.dump();
}

Descriptor descriptor_from_json(std::string_view text, std::string* id) {
  try {
    const auto j = nlohmann::json::parse(text);
    Descriptor d;
    d.grid = Grid{j.at("grid").at(0).get<std::size_t>(), j.at("grid").at(1).get<std::size_t>()};
    d.planes = j.at("planes").get<std::size_t>();
    d.spec = SamplingSpec{j.at("P").get<int>(), j.at("R").get<double>()};
    d.mapping = parse_mapping_kind(j.at("mapping").get<std::string>());
    d.normalized = j.at("normalized").get<bool>();
    d.bins_per_window = j.at("bins_per_window").get<std::uint32_t>();
    d.values = j.at("values").get<std::vector<double>>();
    if (d.values.size() != d.window_count() * d.bins_per_window) {
      throw Error(ErrorKind::MalformedData, "descriptor value count does not match its layout");
    }
    if (id) *id = j.at("id").get<std::string>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedData, std::string("descriptor json: ") + e.what());
  }
}

}  // namespace lbpkit
