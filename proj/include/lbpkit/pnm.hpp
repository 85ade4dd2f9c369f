#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "lbpkit/image.hpp"

namespace lbpkit {

enum class RasterFormat { PgmAscii, PgmBinary, PpmBinary };

struct RasterHeader {
  RasterFormat format;
  std::size_t width;
  std::size_t height;
  int max_value;
  std::size_t payload_offset;  // first payload byte
};

/// Parses the netpbm header (P2, P5 or P6). Only max value 255 is accepted.
RasterHeader parse_raster_header(std::span<const std::uint8_t> bytes);

/// Decodes an 8-bit PGM (P2/P5) or PPM (P6). Color pixels are converted with
/// 0.299 R + 0.587 G + 0.114 B. Errors carry the offending byte offset.
GrayImage load_image(std::span<const std::uint8_t> bytes);

/// Encodes as binary P5, rounding to the nearest integer (ties away from zero).
/// Throws OutOfRangeIntensity if any intensity lies outside [0, 255].
std::vector<std::uint8_t> save_pgm(const GrayImage& image);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
GrayImage load_image_file(const std::filesystem::path& path);
void save_pgm_file(const GrayImage& image, const std::filesystem::path& path);

}  // namespace lbpkit
