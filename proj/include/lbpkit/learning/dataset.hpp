#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lbpkit {

struct Sample {
  std::vector<double> features;
  std::string label;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Feature vectors of a common dimension, each with an opaque label.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::size_t dim) : dim_(dim) {}

  /// Throws DimensionMismatch if the vector length differs from dim()
  /// (the first sample fixes dim() when it is still zero).
  void add(std::vector<double> features, std::string label = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }

  std::vector<std::vector<double>> feature_rows() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Sample> samples_;
};

struct SplitResult {
  LabeledDataset train;
  LabeledDataset validation;
  LabeledDataset test;
  std::uint64_t seed = 0;
  /// Source indices of each part, in shuffled order.
  std::array<std::vector<std::size_t>, 3> indices;
};

/// Seeded shuffle, then contiguous slicing into train/validation/test. Part
/// sizes use largest-remainder apportionment so they sum exactly to n; equal
/// remainders favor the earlier part. Throws BadRatios unless the ratios are
/// nonnegative and sum to 1 +- 1e-9, EmptyInput for an empty dataset.
SplitResult split_dataset(const LabeledDataset& data, std::array<double, 3> ratios,
                          std::uint64_t seed);

/// Per-feature standardization fitted on training data only.
struct Normalizer {
  std::vector<double> means;
  std::vector<double> scales;  // population sd, 1 for (near-)constant features

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> invert(std::span<const double> z) const;

  friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

/// Throws EmptyTrainingSet for an empty dataset.
Normalizer fit_normalizer(const LabeledDataset& train);

/// Throws DimensionMismatch if dimensions differ. Labels are kept.
LabeledDataset apply_normalizer(const Normalizer& norm, const LabeledDataset& data);

std::string normalizer_json(const Normalizer& norm);
Normalizer normalizer_from_json(std::string_view json);

/// Header row, then one row per sample. With `has_label` the first column is
/// the label. Throws MalformedData naming the source and line on bad input.
LabeledDataset parse_dataset_csv(std::string_view text, std::string_view source, bool has_label);
LabeledDataset read_dataset_csv(const std::filesystem::path& path, bool has_label);
std::string dataset_csv(const LabeledDataset& data);

}  // namespace lbpkit
