#include "lbpkit/eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "lbpkit/csv.hpp"
#include "lbpkit/error.hpp"

namespace lbpkit {
namespace {

struct ClassTotals {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

ClassTotals totals(std::span<const ScoredSample> samples) {
  ClassTotals t;
  for (const auto& s : samples) (s.positive ? t.positives : t.negatives) += 1;
  return t;
}

void require_both_classes(const ClassTotals& t) {
  if (t.positives == 0 || t.negatives == 0) {
    throw Error(ErrorKind::DegenerateClassDistribution,
                "need at least one positive and one negative sample (have " +
                    std::to_string(t.positives) + " / " + std::to_string(t.negatives) + ")");
  }
}

// Cumulative counts after each distinct score, highest score first.
struct Step {
  double threshold;
  std::size_t tp;
  std::size_t fp;
};

std::vector<Step> sweep(std::span<const ScoredSample> samples) {
  std::vector<ScoredSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredSample& a, const ScoredSample& b) { return a.score > b.score; });
  std::vector<Step> steps;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double score = sorted[i].score;
    for (; i < sorted.size() && sorted[i].score == score; ++i) (sorted[i].positive ? tp : fp) += 1;
    steps.push_back({score, tp, fp});
  }
  return steps;
}

}  // namespace

ConfusionCounts confusion_at_threshold(std::span<const ScoredSample> samples, double threshold) {
  require_both_classes(totals(samples));
  ConfusionCounts c;
  for (const auto& s : samples) {
    const bool predicted = s.score >= threshold;
    if (s.positive) {
      (predicted ? c.tp : c.fn) += 1;
    } else {
      (predicted ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

RocCurve roc_curve(std::span<const ScoredSample> samples) {
  const ClassTotals t = totals(samples);
  require_both_classes(t);
  const double P = static_cast<double>(t.positives);
  const double N = static_cast<double>(t.negatives);

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  // Twice the area in units of one (positive, negative) pair.
  unsigned long long doubled_area = 0;
  std::size_t prev_tp = 0, prev_fp = 0;
  for (const Step& s : sweep(samples)) {
    doubled_area += static_cast<unsigned long long>(s.fp - prev_fp) * (s.tp + prev_tp);
    curve.points.push_back({static_cast<double>(s.fp) / N, static_cast<double>(s.tp) / P, s.threshold});
    prev_tp = s.tp;
    prev_fp = s.fp;
  }
  curve.auc = static_cast<double>(doubled_area) / (2.0 * P * N);
  return curve;
}

PrCurve pr_curve(std::span<const ScoredSample> samples) {
  const ClassTotals t = totals(samples);
  if (t.positives == 0) throw Error(ErrorKind::NoPositiveSamples, "precision-recall needs positives");
  PrCurve curve;
  for (const Step& s : sweep(samples)) {
    curve.points.push_back({static_cast<double>(s.tp) / static_cast<double>(t.positives),
                            static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp),
                            s.threshold});
  }
  return curve;
}

std::vector<ScoredSample> parse_scores_csv(std::string_view text, std::string_view source) {
  std::vector<ScoredSample> out;
  const auto lines = csv::parse_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto where = std::string(source) + ":" + std::to_string(line.number) + ": ";
    const auto fields = csv::split(line.text);
    if (i == 0 && fields.size() == 2 && fields[0] == "score" && fields[1] == "label") continue;
    if (fields.size() != 2) {
      throw Error(ErrorKind::MalformedData, where + "expected 'score,label'");
    }
    double score = 0.0;
    if (!csv::parse_real(fields[0], score)) {
      throw Error(ErrorKind::MalformedData, where + "score is not a finite number");
    }
    if (fields[1] != "0" && fields[1] != "1") {
      throw Error(ErrorKind::MalformedData, where + "label must be 0 or 1");
    }
    out.push_back({score, fields[1] == "1"});
  }
  return out;
}

std::vector<ScoredSample> read_scores_csv(const std::filesystem::path& path) {
  return parse_scores_csv(csv::read_text(path), path.string());
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "fpr,tpr\n";
  for (const auto& p : curve.points) {
    out += csv::format_real(p.fpr) + "," + csv::format_real(p.tpr) + "\n";
  }
  out += "# auc=" + csv::format_real(curve.auc) + "\n";
  return out;
}

std::string pr_csv(const PrCurve& curve) {
  std::string out = "recall,precision\n";
  for (const auto& p : curve.points) {
    out += csv::format_real(p.recall) + "," + csv::format_real(p.precision) + "\n";
  }
  return out;
}

}  // namespace lbpkit
