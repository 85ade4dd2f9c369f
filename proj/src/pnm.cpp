#include "lbpkit/pnm.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "lbpkit/error.hpp"

namespace lbpkit {
namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

[[noreturn]] void fail(ErrorKind kind, std::size_t offset, const std::string& what) {
  throw Error(kind, what + " at byte offset " + std::to_string(offset));
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }
  void advance() { ++pos_; }

  // Whitespace and '#' comments running to end of line.
  void skip_separators() {
    while (!at_end()) {
      if (is_space(peek())) {
        advance();
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n' && peek() != '\r') advance();
      } else {
        break;
      }
    }
  }

  // Returns false if no digits are present at the cursor.
  bool read_unsigned(long long& out, ErrorKind on_overflow) {
    const std::size_t start = pos_;
    long long value = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000'000LL) fail(on_overflow, start, "integer too large");
      advance();
    }
    out = value;
    return pos_ != start;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

long long header_field(Cursor& cur, const char* name) {
  cur.skip_separators();
  const std::size_t at = cur.offset();
  long long v = 0;
  if (cur.at_end() || !cur.read_unsigned(v, ErrorKind::MalformedHeader)) {
    fail(ErrorKind::MalformedHeader, at, std::string("expected ") + name);
  }
  if (!cur.at_end() && !is_space(cur.peek()) && cur.peek() != '#') {
    fail(ErrorKind::MalformedHeader, cur.offset(), std::string("unexpected byte after ") + name);
  }
  return v;
}

}  // namespace

RasterHeader parse_raster_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    fail(ErrorKind::MalformedHeader, 0, "missing netpbm magic");
  }
  RasterHeader h{};
  switch (bytes[1]) {
    case '2': h.format = RasterFormat::PgmAscii; break;
    case '5': h.format = RasterFormat::PgmBinary; break;
    case '6': h.format = RasterFormat::PpmBinary; break;
    default: fail(ErrorKind::MalformedHeader, 1, "unsupported netpbm magic");
  }
  Cursor cur(bytes);
  cur.advance();
  cur.advance();
  if (cur.at_end() || (!is_space(cur.peek()) && cur.peek() != '#')) {
    fail(ErrorKind::MalformedHeader, 2, "expected whitespace after magic");
  }
  const long long w = header_field(cur, "width");
  const long long hgt = header_field(cur, "height");
  const std::size_t max_at = (cur.skip_separators(), cur.offset());
  const long long maxval = header_field(cur, "max value");
  if (w <= 0 || hgt <= 0) fail(ErrorKind::MalformedHeader, max_at, "dimensions must be positive");
  if (maxval != 255) {
    fail(ErrorKind::UnsupportedMaxValue, max_at,
         "max value " + std::to_string(maxval) + " (only 255 is supported)");
  }
  h.width = static_cast<std::size_t>(w);
  h.height = static_cast<std::size_t>(hgt);
  h.max_value = static_cast<int>(maxval);
  if (h.format == RasterFormat::PgmAscii) {
    h.payload_offset = cur.offset();
  } else {
    // Exactly one whitespace byte separates the header from binary payload.
    if (cur.at_end() || !is_space(cur.peek())) {
      fail(ErrorKind::MalformedHeader, cur.offset(), "expected single whitespace before payload");
    }
    h.payload_offset = cur.offset() + 1;
  }
  return h;
}

GrayImage load_image(std::span<const std::uint8_t> bytes) {
  const RasterHeader h = parse_raster_header(bytes);
  const std::size_t n = h.width * h.height;
  std::vector<double> pixels;
  pixels.reserve(n);

  switch (h.format) {
    case RasterFormat::PgmBinary: {
      if (bytes.size() - h.payload_offset < n) {
        fail(ErrorKind::TruncatedPayload, bytes.size(),
             "expected " + std::to_string(n) + " payload bytes");
      }
      for (std::size_t i = 0; i < n; ++i) pixels.push_back(bytes[h.payload_offset + i]);
      break;
    }
    case RasterFormat::PpmBinary: {
      if (bytes.size() - h.payload_offset < 3 * n) {
        fail(ErrorKind::TruncatedPayload, bytes.size(),
             "expected " + std::to_string(3 * n) + " payload bytes");
      }
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* px = bytes.data() + h.payload_offset + 3 * i;
        pixels.push_back(0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]);
      }
      break;
    }
    case RasterFormat::PgmAscii: {
      Cursor cur(bytes);
      while (cur.offset() < h.payload_offset) cur.advance();
      for (std::size_t i = 0; i < n; ++i) {
        cur.skip_separators();
        if (cur.at_end()) {
          fail(ErrorKind::TruncatedPayload, cur.offset(),
               "expected " + std::to_string(n) + " samples, got " + std::to_string(i));
        }
        const std::size_t at = cur.offset();
        long long v = 0;
        if (!cur.read_unsigned(v, ErrorKind::MalformedData) ||
            (!cur.at_end() && !is_space(cur.peek()) && cur.peek() != '#')) {
          fail(ErrorKind::MalformedData, at, "invalid sample");
        }
        if (v > h.max_value) fail(ErrorKind::MalformedData, at, "sample exceeds max value");
        pixels.push_back(static_cast<double>(v));
      }
      break;
    }
  }
  return GrayImage(h.width, h.height, std::move(pixels));
}

std::vector<std::uint8_t> save_pgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double v = image.pixels()[i];
    if (v < 0.0 || v > 255.0) {
      throw Error(ErrorKind::OutOfRangeIntensity,
                  "intensity " + std::to_string(v) + " at pixel " + std::to_string(i) +
                      " outside [0, 255]");
    }
    out.push_back(static_cast<std::uint8_t>(std::round(v)));
  }
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedData, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

GrayImage load_image_file(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return load_image(bytes);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void save_pgm_file(const GrayImage& image, const std::filesystem::path& path) {
  const auto bytes = save_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::MalformedData, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace lbpkit
