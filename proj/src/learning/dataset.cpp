#include "lbpkit/learning/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "lbpkit/csv.hpp"
#include "lbpkit/error.hpp"
#include "lbpkit/learning/rng.hpp"

namespace lbpkit {

void LabeledDataset::add(std::vector<double> features, std::string label) {
  if (samples_.empty() && dim_ == 0) dim_ = features.size();
  if (features.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch, "sample has " + std::to_string(features.size()) +
                                                  " features, dataset expects " +
                                                  std::to_string(dim_));
  }
  samples_.push_back({std::move(features), std::move(label)});
}

std::vector<std::vector<double>> LabeledDataset::feature_rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(samples_.size());
  for (const auto& s : samples_) out.push_back(s.features);
  return out;
}

SplitResult split_dataset(const LabeledDataset& data, std::array<double, 3> ratios,
                          std::uint64_t seed) {
  if (data.empty()) throw Error(ErrorKind::EmptyInput, "cannot split an empty dataset");
  double total = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw Error(ErrorKind::BadRatios, "split ratios must be nonnegative");
    }
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::BadRatios, "split ratios sum to " + csv::format_real(total) + ", not 1");
  }

  const std::size_t n = data.size();
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = ratios[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(std::floor(quota));
    remainders[i] = quota - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 3]];

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SeededRng rng(seed);
  rng.shuffle(std::span<std::size_t>(perm));

  SplitResult out;
  out.seed = seed;
  LabeledDataset* parts[3] = {&out.train, &out.validation, &out.test};
  std::size_t cursor = 0;
  for (std::size_t p = 0; p < 3; ++p) {
    *parts[p] = LabeledDataset(data.dim());
    for (std::size_t i = 0; i < sizes[p]; ++i, ++cursor) {
      const Sample& s = data[perm[cursor]];
      parts[p]->add(s.features, s.label);
      out.indices[p].push_back(perm[cursor]);
    }
  }
  return out;
}

std::vector<double> Normalizer::apply(std::span<const double> x) const {
  if (x.size() != means.size()) {
    throw Error(ErrorKind::DimensionMismatch, "normalizer expects " +
                                                  std::to_string(means.size()) + " features, got " +
                                                  std::to_string(x.size()));
  }
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - means[i]) / scales[i];
  return z;
}

std::vector<double> Normalizer::invert(std::span<const double> z) const {
  if (z.size() != means.size()) {
    throw Error(ErrorKind::DimensionMismatch, "normalizer dimension mismatch");
  }
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] * scales[i] + means[i];
  return x;
}

Normalizer fit_normalizer(const LabeledDataset& train) {
  if (train.empty()) throw Error(ErrorKind::EmptyTrainingSet, "cannot fit on an empty training set");
  const std::size_t d = train.dim();
  const double n = static_cast<double>(train.size());
  Normalizer norm{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
  for (const auto& s : train.samples()) {
    for (std::size_t j = 0; j < d; ++j) norm.means[j] += s.features[j];
  }
  for (double& m : norm.means) m /= n;
  for (std::size_t j = 0; j < d; ++j) {
    double ss = 0.0;
    for (const auto& s : train.samples()) {
      const double dev = s.features[j] - norm.means[j];
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / n);
    // Rounding leaves ~1e-17 spread on constant columns; treat those as constant.
    norm.scales[j] = sd > 1e-12 * std::max(1.0, std::abs(norm.means[j])) ? sd : 1.0;
  }
  return norm;
}

LabeledDataset apply_normalizer(const Normalizer& norm, const LabeledDataset& data) {
  if (data.dim() != norm.means.size() && !data.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "dataset has " + std::to_string(data.dim()) +
                                                  " features, normalizer expects " +
                                                  std::to_string(norm.means.size()));
  }
  LabeledDataset out(norm.means.size());
  for (const auto& s : data.samples()) out.add(norm.apply(s.features), s.label);
  return out;
}

std::string normalizer_json(const Normalizer& norm) {
  nlohmann::ordered_json j;
  j["means"] = norm.means;
  j["scales"] = norm.scales;
  return j.dump();
}

Normalizer normalizer_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Normalizer n{j.at("means").get<std::vector<double>>(), j.at("scales").get<std::vector<double>>()};
    if (n.means.size() != n.scales.size()) {
      throw Error(ErrorKind::MalformedData, "normalizer means/scales length differ");
    }
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedData, std::string("normalizer json: ") + e.what());
  }
}

LabeledDataset parse_dataset_csv(std::string_view text, std::string_view source, bool has_label) {
  const auto lines = csv::parse_lines(text);
  auto where = [&](std::size_t line) { return std::string(source) + ":" + std::to_string(line); };
  if (lines.empty()) throw Error(ErrorKind::MalformedData, std::string(source) + ": missing header row");
  const std::size_t columns = csv::split(lines.front().text).size();
  const std::size_t dim = has_label ? columns - 1 : columns;
  if (dim == 0) throw Error(ErrorKind::MalformedData, where(lines.front().number) + ": no feature columns");

  LabeledDataset data(dim);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = csv::split(lines[i].text);
    if (fields.size() != columns) {
      throw Error(ErrorKind::MalformedData, where(lines[i].number) + ": expected " +
                                                std::to_string(columns) + " columns, found " +
                                                std::to_string(fields.size()));
    }
    std::vector<double> features(dim);
    const std::size_t first = has_label ? 1 : 0;
    for (std::size_t c = first; c < fields.size(); ++c) {
      if (!csv::parse_real(fields[c], features[c - first])) {
        throw Error(ErrorKind::MalformedData, where(lines[i].number) + ": column " +
                                                  std::to_string(c + 1) + " is not a number: '" +
                                                  std::string(fields[c]) + "'");
      }
    }
    data.add(std::move(features), has_label ? std::string(fields[0]) : std::string{});
  }
  return data;
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path, bool has_label) {
  return parse_dataset_csv(csv::read_text(path), path.string(), has_label);
}

std::string dataset_csv(const LabeledDataset& data) {
  std::string out = "label";
  for (std::size_t j = 0; j < data.dim(); ++j) out += ",f" + std::to_string(j);
  out += '\n';
  for (const auto& s : data.samples()) {
    out += s.label;
    for (double v : s.features) {
      out += ',';
      out += csv::format_real(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace lbpkit
