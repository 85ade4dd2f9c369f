#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lbpkit {

struct ScoredSample {
  double score;   // higher means more likely positive
  bool positive;  // ground truth
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Predicted positive iff score >= threshold.
/// Throws DegenerateClassDistribution unless both classes are present.
ConfusionCounts confusion_at_threshold(std::span<const ScoredSample> samples, double threshold);

struct RocPoint {
  double fpr;
  double tpr;
  double threshold;  // +inf for the (0, 0) origin
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

/// Threshold sweep over the distinct scores, highest first; tied scores move
/// together. The trapezoidal AUC is accumulated in integer counts, so it equals
/// the concordant-pair statistic (ties counted one half) exactly up to the
/// final division. Throws DegenerateClassDistribution.
RocCurve roc_curve(std::span<const ScoredSample> samples);

struct PrPoint {
  double recall;
  double precision;
  double threshold;
};

struct PrCurve {
  std::vector<PrPoint> points;  // one per distinct score, recall nondecreasing
};

/// One point per distinct threshold, highest first. The last point predicts
/// everything positive: recall 1, precision = positives / total.
/// Throws NoPositiveSamples.
PrCurve pr_curve(std::span<const ScoredSample> samples);

/// "score,label" rows, label 0 or 1; an optional "score,label" header and
/// '#' comments are skipped. Throws MalformedData naming source and line.
std::vector<ScoredSample> parse_scores_csv(std::string_view text, std::string_view source);
std::vector<ScoredSample> read_scores_csv(const std::filesystem::path& path);

/// "fpr,tpr" rows followed by "# auc=<value>".
std::string roc_csv(const RocCurve& curve);
/// "recall,precision" rows.
std::string pr_csv(const PrCurve& curve);

}  // namespace lbpkit
