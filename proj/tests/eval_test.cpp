#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lbpkit/error.hpp"
#include "lbpkit/eval.hpp"

namespace lbpkit {
namespace {

std::vector<ScoredSample> make(std::vector<double> pos, std::vector<double> neg) {
  std::vector<ScoredSample> s;
  for (double v : pos) s.push_back({v, true});
  for (double v : neg) s.push_back({v, false});
  return s;
}

// Fraction of (positive, negative) pairs ranked correctly, ties counted 1/2.
double mann_whitney(const std::vector<ScoredSample>& s) {
  double wins = 0, pairs = 0;
  for (const auto& p : s) {
    if (!p.positive) continue;
    for (const auto& n : s) {
      if (n.positive) continue;
      pairs += 1;
      wins += p.score > n.score ? 1.0 : p.score == n.score ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

double trapezoid(const RocCurve& c) {
  double a = 0;
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    a += (c.points[i].fpr - c.points[i - 1].fpr) * (c.points[i].tpr + c.points[i - 1].tpr) / 2;
  }
  return a;
}

std::vector<ScoredSample> random_scores(std::mt19937& rng, std::size_t n, int levels) {
  std::vector<ScoredSample> s;
  std::uniform_int_distribution<int> u(0, levels - 1);
  for (std::size_t i = 0; i < n; ++i) s.push_back({u(rng) / static_cast<double>(levels), (rng() & 1u) != 0});
  s[0].positive = true;
  s[1].positive = false;
  return s;
}

TEST(Confusion, Examples) {
  const auto sep = make({0.9, 0.8}, {0.2, 0.4});
  EXPECT_EQ(confusion_at_threshold(sep, 0.5), (ConfusionCounts{2, 0, 2, 0}));
  EXPECT_EQ(confusion_at_threshold(sep, -std::numeric_limits<double>::infinity()), (ConfusionCounts{2, 2, 0, 0}));
  EXPECT_EQ(confusion_at_threshold(make({0.8, 0.3}, {0.6, 0.1}), 0.5), (ConfusionCounts{1, 1, 1, 1}));
  EXPECT_EQ(confusion_at_threshold(make({0.5}, {0.5}), 0.5), (ConfusionCounts{1, 1, 0, 0}));
  EXPECT_THROW(confusion_at_threshold(make({0.5}, {}), 0.5), Error);
}

TEST(Roc, Examples) {
  EXPECT_EQ(roc_curve(make({0.9, 0.8}, {0.2, 0.4})).auc, 1.0);
  EXPECT_EQ(roc_curve(make({0.2, 0.4}, {0.9, 0.8})).auc, 0.0);
  const auto c = roc_curve(make({0.8, 0.4}, {0.6, 0.2}));
  EXPECT_EQ(c.auc, 0.75);
  ASSERT_EQ(c.points.size(), 5u);
  EXPECT_EQ(c.points.front().fpr, 0.0);
  EXPECT_EQ(c.points.front().tpr, 0.0);
  EXPECT_EQ(c.points.back().fpr, 1.0);
  EXPECT_EQ(c.points.back().tpr, 1.0);
  EXPECT_EQ(roc_curve(make({0.5, 0.5}, {0.5})).auc, 0.5);
  try {
    roc_curve(make({}, {0.1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateClassDistribution);
  }
}

TEST(Roc, MonotoneAndMatchesConcordance) {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_scores(rng, 2 + rng() % 200, 1 + rng() % 30);
    const auto c = roc_curve(s);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
      ASSERT_GE(c.points[i].fpr, c.points[i - 1].fpr);
      ASSERT_GE(c.points[i].tpr, c.points[i - 1].tpr);
    }
    EXPECT_NEAR(c.auc, mann_whitney(s), 1e-12);
    EXPECT_NEAR(c.auc, trapezoid(c), 1e-12);
  }
}

TEST(Roc, StrictlyIncreasingTransformInvariance) {
  std::mt19937 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_scores(rng, 60, 12);
    const auto before = roc_curve(s);
    const auto pr_before = pr_curve(s);
    for (auto& x : s) x.score = std::exp(3 * x.score) - 7;
    const auto after = roc_curve(s);
    const auto pr_after = pr_curve(s);
    EXPECT_EQ(before.auc, after.auc);
    ASSERT_EQ(before.points.size(), after.points.size());
    for (std::size_t i = 0; i < before.points.size(); ++i) {
      EXPECT_EQ(before.points[i].fpr, after.points[i].fpr);
      EXPECT_EQ(before.points[i].tpr, after.points[i].tpr);
    }
    ASSERT_EQ(pr_before.points.size(), pr_after.points.size());
    for (std::size_t i = 0; i < pr_before.points.size(); ++i) {
      EXPECT_EQ(pr_before.points[i].recall, pr_after.points[i].recall);
      EXPECT_EQ(pr_before.points[i].precision, pr_after.points[i].precision);
    }
  }
}

TEST(Roc, RandomScoresNearHalf) {
  std::mt19937 rng(63);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<ScoredSample> s;
  for (int i = 0; i < 10000; ++i) s.push_back({u(rng), i % 2 == 0});
  EXPECT_NEAR(roc_curve(s).auc, 0.5, 0.05);
}

TEST(Pr, Examples) {
  const auto c = pr_curve(make({0.8, 0.3}, {0.6, 0.1}));
  ASSERT_EQ(c.points.size(), 4u);
  const double expected[][2] = {{0.5, 1.0}, {0.5, 0.5}, {1.0, 2.0 / 3.0}, {1.0, 0.5}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(c.points[i].recall, expected[i][0]);
    EXPECT_DOUBLE_EQ(c.points[i].precision, expected[i][1]);
  }
  const auto perfect = pr_curve(make({0.9, 0.7}, {0.2, 0.1}));
  bool corner = false;
  for (const auto& p : perfect.points) corner = corner || (p.recall == 1.0 && p.precision == 1.0);
  EXPECT_TRUE(corner);
  try {
    pr_curve(make({}, {0.1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoPositiveSamples);
  }
  EXPECT_NO_THROW(pr_curve(make({0.3}, {})));
}

TEST(Pr, PrevalenceEndpointAndBounds) {
  std::mt19937 rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_scores(rng, 2 + rng() % 100, 1 + rng() % 20);
    std::size_t P = 0;
    for (const auto& x : s) P += x.positive;
    const auto c = pr_curve(s);
    EXPECT_EQ(c.points.back().recall, 1.0);
    EXPECT_EQ(c.points.back().precision, static_cast<double>(P) / static_cast<double>(s.size()));
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      EXPECT_GE(c.points[i].precision, 0.0);
      EXPECT_LE(c.points[i].precision, 1.0);
      if (i) {
        EXPECT_GE(c.points[i].recall, c.points[i - 1].recall);
      }
    }
  }
}

TEST(ScoreCsv, ParseAndRender) {
  const auto s = parse_scores_csv("score,label\n0.8,1\n# c\n0.6,0\n0.4,1\n0.2,0\n", "s.csv");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_TRUE(s[0].positive);
  EXPECT_EQ(s[3].score, 0.2);
  EXPECT_EQ(roc_csv(roc_curve(s)), "fpr,tpr\n0,0\n0,0.5\n0.5,0.5\n0.5,1\n1,1\n# auc=0.75\n");
  EXPECT_EQ(pr_csv(pr_curve(s)), "recall,precision\n0.5,1\n0.5,0.5\n1,0.66666666666666663\n1,0.5\n");
  try {
    parse_scores_csv("0.1,1\n0.2,2\n", "s.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedData);
    EXPECT_NE(std::string(e.what()).find("s.csv:2"), std::string::npos);
  }
  EXPECT_THROW(parse_scores_csv("abc,1\n", "s"), Error);
  EXPECT_THROW(parse_scores_csv("0.1\n", "s"), Error);
}

}  // namespace
}  // namespace lbpkit
