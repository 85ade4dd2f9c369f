#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "lbpkit/descriptor.hpp"
#include "lbpkit/error.hpp"
#include "test_support.hpp"

namespace lbpkit {
namespace {

// Histogram of the interior written from scratch over a code image.
std::vector<double> count_bins(const CodeImage& codes, const CodeMapping& m, std::size_t x0, std::size_t y0,
                               std::size_t w, std::size_t h) {
  std::vector<double> hist(m.bin_count(), 0.0);
  for (std::size_t y = y0; y < y0 + h; ++y) {
    for (std::size_t x = x0; x < x0 + w; ++x) hist[m.bin(codes.at(x, y))] += 1;
  }
  return hist;
}

TEST(Histogram, WorkedExampleOneHot) {
  const GrayImage img(3, 3, {6, 5, 2, 7, 6, 1, 9, 8, 7});
  const auto d = lbp_histogram(basic_lbp(img).codes, build_code_mapping(MappingKind::Full, 8), false);
  ASSERT_EQ(d.values.size(), 256u);
  for (std::size_t b = 0; b < 256; ++b) EXPECT_EQ(d.values[b], b == 241 ? 1.0 : 0.0);
}

TEST(Histogram, ConstantImageAndNormalization) {
  const GrayImage img(10, 7, 4.0);
  const auto m = build_code_mapping(MappingKind::U2, 8);
  const auto codes = generalized_lbp(img, {8, 1.0});
  const auto d = lbp_histogram(codes, m, false);
  EXPECT_EQ(d.values[m.bin(255)], 8.0 * 5.0);
  EXPECT_EQ(std::accumulate(d.values.begin(), d.values.end(), 0.0), 40.0);
  const auto n = lbp_histogram(codes, m, true);
  EXPECT_DOUBLE_EQ(std::accumulate(n.values.begin(), n.values.end(), 0.0), 1.0);
  EXPECT_TRUE(n.normalized);
}

TEST(Histogram, LengthsForFullMapping) {
  const auto d8 = lbp_histogram(generalized_lbp(GrayImage(5, 5), {8, 1.0}),
                                build_code_mapping(MappingKind::Full, 8), false);
  EXPECT_EQ(d8.values.size(), 256u);
  const auto d16 = lbp_histogram(generalized_lbp(GrayImage(5, 5), {16, 2.0}),
                                 build_code_mapping(MappingKind::Full, 16), false);
  EXPECT_EQ(d16.values.size(), 65536u);
  EXPECT_EQ(d16.values[65535], 1.0);
}

TEST(Histogram, MappingMismatch) {
  const auto codes = generalized_lbp(GrayImage(5, 5), {8, 1.0});
  try {
    lbp_histogram(codes, build_code_mapping(MappingKind::U2, 16), false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MappingMismatch);
  }
}

TEST(Grid, OneByOneEqualsGlobal) {
  std::mt19937 rng(21);
  const auto img = testing::random_integer_image(17, 13, rng);
  const auto m = build_code_mapping(MappingKind::Riu2, 8);
  const auto codes = generalized_lbp(img, {8, 1.0});
  EXPECT_EQ(grid_histogram(codes, m, {1, 1}, false).values, lbp_histogram(codes, m, false).values);
  EXPECT_EQ(grid_descriptor(img, {8, 1.0}, m, {1, 1}, true).values, lbp_histogram(codes, m, true).values);
}

TEST(Grid, RemainderJoinsLastWindow) {
  std::mt19937 rng(22);
  const auto img = testing::random_integer_image(12, 9, rng);  // interior 10 x 7
  const auto m = build_code_mapping(MappingKind::U2, 8);
  const auto codes = generalized_lbp(img, {8, 1.0});
  const auto d = grid_histogram(codes, m, {3, 2}, false);
  ASSERT_EQ(d.values.size(), 6u * 59u);
  EXPECT_EQ(d.window_count(), 6u);
  const std::size_t xs[] = {0, 3, 6}, ws[] = {3, 3, 4};
  const std::size_t ys[] = {0, 3}, hs[] = {3, 4};
  for (std::size_t wy = 0; wy < 2; ++wy) {
    for (std::size_t wx = 0; wx < 3; ++wx) {
      const auto expected = count_bins(codes, m, xs[wx], ys[wy], ws[wx], hs[wy]);
      const std::size_t off = (wy * 3 + wx) * 59;
      EXPECT_EQ(std::vector<double>(d.values.begin() + off, d.values.begin() + off + 59), expected);
    }
  }
  const auto n = grid_histogram(codes, m, {3, 2}, true);
  for (std::size_t w = 0; w < 6; ++w) {
    EXPECT_NEAR(std::accumulate(n.values.begin() + w * 59, n.values.begin() + (w + 1) * 59, 0.0), 1.0, 1e-12);
  }
}

TEST(Grid, ConservationWithEmptyRemainders) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t gx = 1 + rng() % 4, gy = 1 + rng() % 4;
    const auto img = testing::random_integer_image(gx * (2 + rng() % 4) + 2, gy * (2 + rng() % 4) + 2, rng);
    const auto m = build_code_mapping(static_cast<MappingKind>(rng() % 4), 8);
    const auto codes = generalized_lbp(img, {8, 1.0});
    const auto grid = grid_histogram(codes, m, {gx, gy}, false);
    const auto global = lbp_histogram(codes, m, false);
    std::vector<double> sum(m.bin_count(), 0.0);
    for (std::size_t w = 0; w < gx * gy; ++w) {
      for (std::size_t b = 0; b < m.bin_count(); ++b) sum[b] += grid.values[w * m.bin_count() + b];
    }
    EXPECT_EQ(sum, global.values);
  }
}

TEST(Grid, HalvesMatchIndependentHistograms) {
  // Left half vertical stripes, right half constant; 2x1 grid split at the seam.
  const std::size_t w = 22, h = 10;
  std::vector<double> px(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) px[y * w + x] = x < 11 ? ((x / 2) % 2) * 200.0 : 90.0;
  }
  const GrayImage img(w, h, px);
  const auto m = build_code_mapping(MappingKind::U2, 8);
  const auto d = grid_descriptor(img, {8, 1.0}, m, {2, 1}, false);
  const auto left = lbp_histogram(generalized_lbp(img.crop(0, 0, 12, h), {8, 1.0}), m, false);
  const auto right = lbp_histogram(generalized_lbp(img.crop(10, 0, 12, h), {8, 1.0}), m, false);
  EXPECT_EQ(std::vector<double>(d.values.begin(), d.values.begin() + 59), left.values);
  EXPECT_EQ(std::vector<double>(d.values.begin() + 59, d.values.end()), right.values);
}

TEST(Grid, EmptyWindow) {
  const auto codes = generalized_lbp(GrayImage(5, 5), {8, 1.0});  // interior 3x3
  try {
    grid_histogram(codes, build_code_mapping(MappingKind::U2, 8), {4, 1}, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyWindow);
  }
}

VideoVolume repeated(const GrayImage& frame, std::size_t n) {
  return VideoVolume(std::vector<GrayImage>(n, frame));
}

TEST(LbpTop, ConstantVolume) {
  const auto m = build_code_mapping(MappingKind::Full, 8);
  const SamplingSpec s{8, 1.0};
  const auto d = lbp_top(repeated(GrayImage(6, 5, 7.0), 4), s, s, s, m, false);
  ASSERT_EQ(d.values.size(), 3u * 256u);
  EXPECT_EQ(d.planes, 3u);
  const double voxels = 4.0 * 3.0 * 2.0;
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t b = 0; b < 256; ++b) EXPECT_EQ(d.values[p * 256 + b], b == 255 ? voxels : 0.0);
  }
}

TEST(LbpTop, TemporallyConstantXyPlane) {
  std::mt19937 rng(24);
  const auto frame = testing::random_integer_image(12, 10, rng);
  const auto m = build_code_mapping(MappingKind::U2, 8);
  const SamplingSpec xy{8, 1.0}, t{8, 2.0};
  const auto d = lbp_top(repeated(frame, 7), xy, t, t, m, false);
  const auto margins = lbp_top_margins(xy, t, t);
  EXPECT_EQ(margins.x, 2u);
  EXPECT_EQ(margins.t, 2u);
  // 2-D histogram of the frame over the voxel interior, once per interior frame.
  const auto codes = generalized_lbp(frame, xy);
  const std::size_t off = margins.x - codes.margin;
  auto expected = count_bins(codes, m, off, off, 12 - 2 * margins.x, 10 - 2 * margins.y);
  for (double& v : expected) v *= 7 - 2 * margins.t;
  EXPECT_EQ(std::vector<double>(d.values.begin(), d.values.begin() + 59), expected);
}

TEST(LbpTop, Errors) {
  const SamplingSpec s{8, 1.0};
  EXPECT_THROW(lbp_top(repeated(GrayImage(6, 6), 2), s, s, s, build_code_mapping(MappingKind::U2, 8), false),
               Error);
  EXPECT_THROW(lbp_top(repeated(GrayImage(6, 6), 5), s, {4, 1.0}, s, build_code_mapping(MappingKind::U2, 8), false),
               Error);
}

TEST(Serialization, CsvAndJson) {
  const GrayImage img(3, 3, {6, 5, 2, 7, 6, 1, 9, 8, 7});
  const auto m = build_code_mapping(MappingKind::Riu2, 8);
  const auto d = lbp_histogram(basic_lbp(img).codes, m, false);
  EXPECT_EQ(descriptor_csv_header(d), "id,gx,gy,P,R,mapping,v0,v1,v2,v3,v4,v5,v6,v7,v8,v9");
  EXPECT_EQ(descriptor_csv_row("a", d), "a,1,1,8,1,riu2,0,0,0,0,0,1,0,0,0,0");

  std::mt19937 rng(25);
  const auto n = grid_descriptor(testing::random_image(15, 11, rng), {12, 1.7}, build_code_mapping(MappingKind::U2, 12),
                                 {2, 3}, true);
  std::string id;
  const auto back = descriptor_from_json(descriptor_json("img-7", n), &id);
  EXPECT_EQ(id, "img-7");
  EXPECT_EQ(back.values, n.values);
  EXPECT_EQ(back.grid.x, 2u);
  EXPECT_EQ(back.grid.y, 3u);
  EXPECT_EQ(back.spec, n.spec);
  EXPECT_EQ(back.mapping, MappingKind::U2);
  EXPECT_EQ(back.bins_per_window, n.bins_per_window);
  EXPECT_TRUE(back.normalized);
}

}  // namespace
}  // namespace lbpkit
