#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "lbpkit/pnm.hpp"

namespace lbpkit {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lbpkit_cli_" + std::to_string(::getpid()) + "_" +
                                         ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string image(const std::string& name, const GrayImage& img) {
    const auto p = dir_ / name;
    fs::create_directories(p.parent_path());
    save_pgm_file(img, p);
    return p.string();
  }
  static std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  }

  fs::path dir_;
};

GrayImage worked_patch() { return GrayImage(3, 3, {6, 5, 2, 7, 6, 1, 9, 8, 7}); }

TEST_F(CliTest, DescribeBasicWorkedExample) {
  const auto path = image("patch.pgm", worked_patch());
  const auto r = run_cli({"describe", "--basic", "--mapping", "full", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row, comment;
  std::getline(lines, header);
  std::getline(lines, row);
  std::getline(lines, comment);
  std::vector<std::string> fields;
  std::stringstream ss(row);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  ASSERT_EQ(fields.size(), 6u + 256u);
  for (std::size_t b = 0; b < 256; ++b) EXPECT_EQ(fields[6 + b], b == 241 ? "1" : "0") << b;
  const auto eq = comment.find("mean_contrast=");
  ASSERT_NE(eq, std::string::npos);
  EXPECT_NEAR(std::stod(comment.substr(eq + 14)), 4.7333, 1e-3);
}

TEST_F(CliTest, DescribeManyKeepsInputOrderAndJson) {
  std::mt19937 rng(71);
  std::vector<std::string> args{"describe", "--grid", "2x2", "--normalize", "--format", "json"};
  for (int i = 0; i < 9; ++i) {
    std::vector<double> px(20 * 20);
    for (auto& v : px) v = rng() % 256;
    args.push_back(image("img" + std::to_string(9 - i) + ".pgm", GrayImage(20, 20, px)));
  }
  const auto r = run_cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line); ++n) {
    EXPECT_NE(line.find("img" + std::to_string(9 - n) + ".pgm"), std::string::npos);
  }
  EXPECT_EQ(n, 9u);
  EXPECT_EQ(run_cli(args).out, r.out);
}

TEST_F(CliTest, DescribeDatasetFeedsClassify) {
  std::mt19937 rng(72);
  std::vector<std::string> train_args{"describe", "--dataset", "--normalize"};
  for (int i = 0; i < 4; ++i) {
    std::vector<double> stripes(16 * 16), noise(16 * 16);
    for (std::size_t k = 0; k < stripes.size(); ++k) {
      stripes[k] = ((k % 16) / 2 % 2) * 200.0 + rng() % 5;
      noise[k] = rng() % 256;
    }
    train_args.push_back(image("stripes/s" + std::to_string(i) + ".pgm", GrayImage(16, 16, stripes)));
    train_args.push_back(image("noise/n" + std::to_string(i) + ".pgm", GrayImage(16, 16, noise)));
  }
  const auto train = run_cli(train_args);
  ASSERT_EQ(train.code, 0) << train.err;
  EXPECT_EQ(train.out.rfind("label,f0,", 0), 0u);
  const auto train_csv = write("train.csv", train.out);
  const auto r = run_cli({"classify", "--train", train_csv, "--query", train_csv, "--labels"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# correct=8 total=8 accuracy=1"), std::string::npos) << r.out;
}

TEST_F(CliTest, DescribeVideo) {
  for (int t = 0; t < 5; ++t) image("clip/f" + std::to_string(t) + ".pgm", GrayImage(6, 6, 50.0));
  const auto r = run_cli({"describe-video", "--mapping", "riu2", (dir_ / "clip").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  // Three one-hot planes at the riu2 bin of 255 (bin 8), 4*4*3 voxels each.
  EXPECT_NE(r.out.find(",0,0,0,0,0,0,0,0,48,0,0,0,0,0,0,0,0,0,48,0,0,0,0,0,0,0,0,0,48,0"), std::string::npos)
      << r.out;
  EXPECT_EQ(run_cli({"describe-video", (dir_ / "missing").string()}).code, 1);
}

TEST_F(CliTest, ClassifyHandExample) {
  const auto train = write("train.csv", "label,x\nA,0\nA,2\nB,10\nB,11\n");
  const auto query = write("query.csv", "x\n6\n");
  const auto r = run_cli({"classify", "--train", train, "--query", query, "--k", "3", "--distance", "l2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "index,predicted\n0,B\n");
  const auto one = run_cli({"classify", "--train", train, "--query", query, "--k", "1", "--distance", "l1"});
  EXPECT_EQ(one.out, "index,predicted\n0,A\n");
}

TEST_F(CliTest, ClusterOutputs) {
  const auto data = write("pts.csv", "label,x,y\na,0,0\na,0,1\nb,10,10\nb,10,11\nc,20,0\nc,21,0\n");
  const auto centroids = (dir_ / "c.json").string();
  const auto r = run_cli({"cluster", data, "--k", "3", "--seed", "4", "--restarts", "5", "--labeled",
                          "--centroids", centroids});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# sse=1.5 "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# purity=1"), std::string::npos);
  EXPECT_NE(slurp(centroids).find("\"centroids\""), std::string::npos);
  EXPECT_EQ(run_cli({"cluster", data, "--k", "7", "--labeled"}).code, 1);
}

TEST_F(CliTest, ReducePcaCollinear) {
  const auto data = write("line.csv", "x,y\n0,0\n1,2\n2,4\n-1,-2\n5,10\n");
  const auto r = run_cli({"reduce", data, "--method", "pca", "--dims", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "c0,c1");
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_NEAR(std::stod(line.substr(line.find(',') + 1)), 0.0, 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, 5);
  const auto m = run_cli({"reduce", data, "--method", "mds", "--dims", "1"});
  EXPECT_EQ(m.code, 0) << m.err;
}

TEST_F(CliTest, EvalCurves) {
  const auto scores = write("s.csv", "score,label\n0.8,1\n0.6,0\n0.4,1\n0.2,0\n");
  const auto roc = run_cli({"eval", scores, "--curve", "roc"});
  ASSERT_EQ(roc.code, 0) << roc.err;
  EXPECT_NE(roc.out.find("# auc=0.75"), std::string::npos);
  const auto pr = run_cli({"eval", scores, "--curve", "pr"});
  EXPECT_EQ(pr.out.rfind("recall,precision\n", 0), 0u);
}

TEST_F(CliTest, DataErrorsNameFileAndLine) {
  const auto bad = write("bad.csv", "score,label\n0.8,1\n0.6,maybe\n");
  const auto r = run_cli({"eval", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("bad.csv:3"), std::string::npos) << r.err;
  const auto ragged = write("ragged.csv", "label,x,y\nA,1,2\nB,3\n");
  const auto q = write("q.csv", "x,y\n1,2\n");
  const auto c = run_cli({"classify", "--train", ragged, "--query", q});
  EXPECT_EQ(c.code, 1);
  EXPECT_NE(c.err.find("ragged.csv:3"), std::string::npos) << c.err;
  const auto broken = write("broken.pgm", "P5\n4 4\n255\nxx");
  EXPECT_EQ(run_cli({"describe", broken}).code, 1);
  EXPECT_EQ(run_cli({"describe", (dir_ / "nope.pgm").string()}).code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"describe", "--bogus", "x.pgm"}).code, 2);
  EXPECT_EQ(run_cli({"describe", "--mapping", "weird", "x.pgm"}).code, 2);
  EXPECT_EQ(run_cli({"describe", "--grid", "3by3", "x.pgm"}).code, 2);
  EXPECT_EQ(run_cli({"describe", "--p", "40", "x.pgm"}).code, 2);
  EXPECT_EQ(run_cli({"describe", "--median-window", "2", "x.pgm"}).code, 2);
  EXPECT_EQ(run_cli({"eval", "s.csv", "--curve", "det"}).code, 2);
  EXPECT_EQ(run_cli({"classify", "--train", "t.csv"}).code, 2);
}

TEST_F(CliTest, HelpOnEverySubcommand) {
  for (const char* sub : {"describe", "describe-video", "classify", "cluster", "reduce", "eval", "selftest"}) {
    const auto r = run_cli({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
}

TEST_F(CliTest, Selftest) {
  const auto r = run_cli({"selftest"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST_F(CliTest, OutputFlagWritesFile) {
  const auto scores = write("s.csv", "0.8,1\n0.6,0\n");
  const auto out = (dir_ / "roc.csv").string();
  const auto r = run_cli({"eval", scores, "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(out), "fpr,tpr\n0,0\n0,1\n1,1\n# auc=1\n");
}

}  // namespace
}  // namespace lbpkit
