#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbpkit/csv.hpp"
#include "lbpkit/descriptor.hpp"
#include "lbpkit/error.hpp"
#include "lbpkit/eval.hpp"
#include "lbpkit/image.hpp"
#include "lbpkit/lbp.hpp"
#include "lbpkit/learning/dataset.hpp"
#include "lbpkit/learning/kmeans.hpp"
#include "lbpkit/learning/knn.hpp"
#include "lbpkit/learning/mds.hpp"
#include "lbpkit/learning/pca.hpp"
#include "lbpkit/mapping.hpp"
#include "lbpkit/pnm.hpp"

namespace lbpkit::cli {
namespace {

namespace fs = std::filesystem;

// Raised after parsing for option combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<Grid> parse_grid(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) return std::nullopt;
  double gx = 0, gy = 0;
  if (!csv::parse_real(text.substr(0, x), gx) || !csv::parse_real(text.substr(x + 1), gy)) {
    return std::nullopt;
  }
  if (gx < 1 || gy < 1 || gx != std::floor(gx) || gy != std::floor(gy)) return std::nullopt;
  return Grid{static_cast<std::size_t>(gx), static_cast<std::size_t>(gy)};
}

const CLI::Validator kGridCheck(
    [](std::string& s) { return parse_grid(s) ? std::string{} : "expected GXxGY, e.g. 4x4"; },
    "GXxGY");

const CLI::Validator kMappingCheck = CLI::IsMember({"full", "u2", "ri", "riu2"});
const CLI::Validator kDistanceCheck = CLI::IsMember({"chi-square", "chi2", "l1", "l2", "intersection"});

SamplingSpec checked_spec(int p, double r) {
  SamplingSpec spec{p, r};
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return spec;
}

/// Writes to -o when given, otherwise to the primary stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorKind::MalformedData, path + ": cannot write output");
}

/// Applies `work` to every index on a small thread pool. Results keep input
/// order; the first failure in input order is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& work) {
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        work(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

// Prefixes library errors with the file they came from.
template <typename F>
auto with_source(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string msg = e.what();
    const std::string name = path.string();
    if (msg.rfind(name, 0) == 0) throw;
    throw Error(e.kind(), name + ": " + msg);
  }
}

Matrix to_matrix(const LabeledDataset& data) {
  return Matrix::from_rows(data.feature_rows());
}

// ---------------------------------------------------------------- describe

struct DescribeOptions {
  std::vector<std::string> inputs;
  int p = 8;
  double r = 1.0;
  std::string mapping = "u2";
  std::string grid = "1x1";
  bool normalize = false;
  bool basic = false;
  int median_window = 1;
  std::string format = "csv";
  bool dataset = false;
  std::string output;
};

struct Described {
  Descriptor descriptor;
  std::optional<double> mean_contrast;
};

Described describe_image(const GrayImage& image, const DescribeOptions& o, const CodeMapping& mapping,
                         Grid grid) {
  if (o.basic) {
    const BasicLbpResult res = basic_lbp(image);
    return {grid_histogram(res.codes, mapping, grid, o.normalize), res.mean_contrast()};
  }
  const SamplingSpec spec{o.p, o.r};
  if (o.median_window > 1) {
    Descriptor d = grid_histogram(median_robust_lbp(image, spec, o.median_window), mapping, grid, o.normalize);
    return {std::move(d), std::nullopt};
  }
  return {grid_descriptor(image, spec, mapping, grid, o.normalize), std::nullopt};
}

std::string render_descriptors(const std::vector<std::string>& ids, const std::vector<Described>& rows,
                               const std::string& format, bool dataset) {
  std::string text;
  if (dataset) {
    LabeledDataset data;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      data.add(rows[i].descriptor.values, fs::path(ids[i]).parent_path().filename().string());
    }
    return dataset_csv(data);
  }
  if (format == "json") {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto j = nlohmann::ordered_json::parse(descriptor_json(ids[i], rows[i].descriptor));
      if (rows[i].mean_contrast) j["mean_contrast"] = *rows[i].mean_contrast;
      text += j.dump() + "\n";
    }
    return text;
  }
  if (!rows.empty()) text += descriptor_csv_header(rows.front().descriptor) + "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    text += descriptor_csv_row(ids[i], rows[i].descriptor) + "\n";
    if (rows[i].mean_contrast) {
      text += "# " + ids[i] + " mean_contrast=" + csv::format_real(*rows[i].mean_contrast) + "\n";
    }
  }
  return text;
}

void add_descriptor_flags(CLI::App& cmd, DescribeOptions& o) {
  cmd.add_option("--p", o.p, "Samples on the ring (4..24)")->capture_default_str();
  cmd.add_option("--r", o.r, "Ring radius in pixels")->capture_default_str();
  cmd.add_option("--mapping", o.mapping, "Code mapping: full, u2, ri, riu2")
      ->check(kMappingCheck)
      ->capture_default_str();
  cmd.add_option("--grid", o.grid, "Histogram windows, GXxGY")->check(kGridCheck)->capture_default_str();
  cmd.add_flag("--normalize", o.normalize, "Divide each window histogram by its pixel count");
  cmd.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd.add_flag("--dataset", o.dataset, "Emit a labeled dataset CSV; labels are parent directory names");
  cmd.add_option("-o,--output", o.output, "Output file (default: standard output)");
}

int do_describe(const DescribeOptions& o, std::ostream& out) {
  if (o.basic && (o.p != 8 || o.r != 1.0 || o.median_window != 1)) {
    throw UsageError("--basic is the fixed 3x3 operator; it takes no --p, --r or --median-window");
  }
  if (o.median_window < 1 || o.median_window % 2 == 0) {
    throw UsageError("--median-window must be a positive odd number");
  }
  if (o.dataset && o.format != "csv") throw UsageError("--dataset writes CSV only");
  checked_spec(o.p, o.r);
  const CodeMapping mapping = build_code_mapping(parse_mapping_kind(o.mapping), o.p);
  const Grid grid = *parse_grid(o.grid);

  std::vector<Described> rows(o.inputs.size());
  parallel_for(o.inputs.size(), [&](std::size_t i) {
    const fs::path path = o.inputs[i];
    rows[i] = with_source(path, [&] { return describe_image(load_image_file(path), o, mapping, grid); });
  });
  emit(o.output, render_descriptors(o.inputs, rows, o.format, o.dataset), out);
  return kExitOk;
}

// ---------------------------------------------------------- describe-video

struct VideoOptions {
  DescribeOptions base;
  double rt = 0.0;  // temporal radius; 0 means "same as --r"
};

VideoVolume load_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::MalformedData, dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".pgm" || ext == ".PGM")) files.push_back(entry.path());
  }
  if (files.empty()) throw Error(ErrorKind::EmptyInput, dir.string() + ": no .pgm frames");
  std::sort(files.begin(), files.end());
  std::vector<GrayImage> frames;
  frames.reserve(files.size());
  for (const auto& f : files) frames.push_back(with_source(f, [&] { return load_image_file(f); }));
  return VideoVolume(std::move(frames));
}

int do_describe_video(const VideoOptions& vo, std::ostream& out) {
  const DescribeOptions& o = vo.base;
  if (o.dataset && o.format != "csv") throw UsageError("--dataset writes CSV only");
  const SamplingSpec xy = checked_spec(o.p, o.r);
  const SamplingSpec t = checked_spec(o.p, vo.rt > 0.0 ? vo.rt : o.r);
  const CodeMapping mapping = build_code_mapping(parse_mapping_kind(o.mapping), o.p);
  const Grid grid = *parse_grid(o.grid);
  if (grid.x != 1 || grid.y != 1) throw UsageError("describe-video supports only --grid 1x1");

  std::vector<Described> rows(o.inputs.size());
  parallel_for(o.inputs.size(), [&](std::size_t i) {
    const fs::path dir = o.inputs[i];
    const VideoVolume volume = load_frames(dir);
    rows[i] = with_source(dir, [&] { return Described{lbp_top(volume, xy, t, t, mapping, o.normalize), {}}; });
  });
  // Dataset labels come from the clip directory's parent.
  std::vector<std::string> ids;
  for (const auto& in : o.inputs) ids.push_back(fs::path(in).lexically_normal().string());
  for (auto& id : ids) {
    if (!id.empty() && id.back() == '/') id.pop_back();
  }
  emit(o.output, render_descriptors(ids, rows, o.format, o.dataset), out);
  return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyOptions {
  std::string train;
  std::string query;
  std::size_t k = 1;
  std::string distance = "chi-square";
  bool labels = false;
  bool normalize = false;
  std::string output;
};

int do_classify(const ClassifyOptions& o, std::ostream& out) {
  LabeledDataset train = read_dataset_csv(o.train, true);
  LabeledDataset query = read_dataset_csv(o.query, o.labels);
  if (train.empty()) throw Error(ErrorKind::EmptyTrainingSet, o.train + ": no samples");
  if (!query.empty() && query.dim() != train.dim()) {
    throw Error(ErrorKind::DimensionMismatch, o.query + ": " + std::to_string(query.dim()) +
                                                  " features, training data has " + std::to_string(train.dim()));
  }
  if (o.normalize) {
    const Normalizer norm = fit_normalizer(train);
    train = apply_normalizer(norm, train);
    query = apply_normalizer(norm, query);
  }
  const KnnConfig config{o.k, parse_distance_kind(o.distance)};

  std::string text = o.labels ? "index,predicted,truth\n" : "index,predicted\n";
  std::map<std::pair<std::string, std::string>, std::size_t> confusion;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < query.size(); ++i) {
    const KnnResult res = knn_classify(train, config, query[i].features);
    text += std::to_string(i) + "," + res.label;
    if (o.labels) {
      text += "," + query[i].label;
      ++confusion[{query[i].label, res.label}];
      correct += res.label == query[i].label ? 1 : 0;
    }
    text += "\n";
  }
  if (o.labels && !query.empty()) {
    text += "# correct=" + std::to_string(correct) + " total=" + std::to_string(query.size()) +
            " accuracy=" + csv::format_real(static_cast<double>(correct) / static_cast<double>(query.size())) +
            "\n";
    for (const auto& [key, count] : confusion) {
      text += "# confusion truth=" + key.first + " predicted=" + key.second + " count=" + std::to_string(count) +
              "\n";
    }
  }
  emit(o.output, text, out);
  return kExitOk;
}

// ----------------------------------------------------------------- cluster

struct ClusterOptions {
  std::string input;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::size_t max_iter = 100;
  bool labeled = false;
  std::string centroids;
  std::string output;
};

double purity(const LabeledDataset& data, const KMeansModel& model) {
  std::vector<std::map<std::string, std::size_t>> votes(model.k);
  for (std::size_t i = 0; i < data.size(); ++i) ++votes[model.assignments[i]][data[i].label];
  std::size_t agree = 0;
  for (const auto& v : votes) {
    std::size_t best = 0;
    for (const auto& [label, count] : v) best = std::max(best, count);
    agree += best;
  }
  return static_cast<double>(agree) / static_cast<double>(data.size());
}

int do_cluster(const ClusterOptions& o, std::ostream& out) {
  const LabeledDataset data = read_dataset_csv(o.input, o.labeled);
  if (data.empty()) throw Error(ErrorKind::EmptyInput, o.input + ": no samples");
  const KMeansModel model = kmeans_best_of(to_matrix(data), o.k, o.seed, o.restarts, o.max_iter);

  std::string text = "index,cluster\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    text += std::to_string(i) + "," + std::to_string(model.assignments[i]) + "\n";
  }
  text += "# sse=" + csv::format_real(model.sse) + " iterations=" + std::to_string(model.iterations) +
          " converged=" + (model.converged ? "true" : "false") + "\n";
  if (o.labeled) text += "# purity=" + csv::format_real(purity(data, model)) + "\n";
  if (!o.centroids.empty()) emit(o.centroids, kmeans_json(model) + "\n", out);
  emit(o.output, text, out);
  return kExitOk;
}

// ------------------------------------------------------------------ reduce

struct ReduceOptions {
  std::string input;
  std::string method = "pca";
  std::size_t dims = 2;
  bool labeled = false;
  std::string distance = "l2";
  std::string output;
};

int do_reduce(const ReduceOptions& o, std::ostream& out) {
  const LabeledDataset data = read_dataset_csv(o.input, o.labeled);
  if (data.empty()) throw Error(ErrorKind::EmptyInput, o.input + ": no samples");
  const Matrix points = to_matrix(data);
  Matrix coords;
  if (o.method == "pca") {
    coords = pca_project(pca_fit(points), points, o.dims);
  } else {
    coords = mds_embed(distance_matrix(points, parse_distance_kind(o.distance)), o.dims);
  }
  std::string text = o.labeled ? "label," : "";
  for (std::size_t c = 0; c < o.dims; ++c) text += (c ? ",c" : "c") + std::to_string(c);
  text += "\n";
  for (std::size_t i = 0; i < coords.rows(); ++i) {
    if (o.labeled) text += data[i].label + ",";
    for (std::size_t c = 0; c < o.dims; ++c) text += (c ? "," : "") + csv::format_real(coords(i, c));
    text += "\n";
  }
  emit(o.output, text, out);
  return kExitOk;
}

// -------------------------------------------------------------------- eval

struct EvalOptions {
  std::string input;
  std::string curve = "roc";
  std::string output;
};

int do_eval(const EvalOptions& o, std::ostream& out) {
  const auto samples = read_scores_csv(o.input);
  const std::string text = o.curve == "roc" ? roc_csv(roc_curve(samples)) : pr_csv(pr_curve(samples));
  emit(o.output, text, out);
  return kExitOk;
}

// ---------------------------------------------------------------- selftest

struct Check {
  const char* name;
  std::function<bool()> pass;
};

GrayImage worked_patch() {
  return GrayImage(3, 3, {6, 5, 2, 7, 6, 1, 9, 8, 7});
}

std::vector<Check> golden_checks() {
  return {
      {"basic_lbp code 241",
       [] { return basic_lbp(worked_patch()).codes.codes == std::vector<std::uint32_t>{241}; }},
      {"basic_lbp contrast 4.7333",
       [] { return std::abs(basic_lbp(worked_patch()).contrast.at(0) - (37.0 / 5.0 - 8.0 / 3.0)) < 1e-12; }},
      {"describe --basic one-hot at 241",
       [] {
         DescribeOptions o;
         o.basic = true;
         o.mapping = "full";
         const auto d = describe_image(worked_patch(), o, build_code_mapping(MappingKind::Full, 8), Grid{});
         std::vector<double> expected(256, 0.0);
         expected[241] = 1.0;
         return d.descriptor.values == expected && d.mean_contrast &&
                std::abs(*d.mean_contrast - 4.7333) < 1e-3;
       }},
      {"median of 9 8 7 7 6 6 5 2 1 is 6",
       [] {
         const std::vector<double> v{9, 8, 7, 7, 6, 6, 5, 2, 1};
         return median_of(v) == 6.0;
       }},
      {"full histogram length P=8",
       [] { return build_code_mapping(MappingKind::Full, 8).bin_count() == 256; }},
      {"full histogram length P=16",
       [] {
         const auto m = build_code_mapping(MappingKind::Full, 16);
         return m.bin_count() == 65536 && m.bin(65535) == 65535;
       }},
      {"u2 P=8 has 59 bins", [] { return build_code_mapping(MappingKind::U2, 8).bin_count() == 59; }},
      {"ri P=8 has 36 bins", [] { return build_code_mapping(MappingKind::Ri, 8).bin_count() == 36; }},
      {"riu2 P=8 has 10 bins", [] { return build_code_mapping(MappingKind::Riu2, 8).bin_count() == 10; }},
      {"split 50:25:25 of 100",
       [] {
         LabeledDataset data;
         for (int i = 0; i < 100; ++i) data.add({static_cast<double>(i)});
         const auto s = split_dataset(data, {0.5, 0.25, 0.25}, 7);
         return s.train.size() == 50 && s.validation.size() == 25 && s.test.size() == 25;
       }},
      {"split 25:50:25 of 100",
       [] {
         LabeledDataset data;
         for (int i = 0; i < 100; ++i) data.add({static_cast<double>(i)});
         const auto s = split_dataset(data, {0.25, 0.5, 0.25}, 7);
         return s.train.size() == 25 && s.validation.size() == 50 && s.test.size() == 25;
       }},
  };
}

int do_selftest(std::ostream& out) {
  std::size_t failed = 0;
  for (const auto& check : golden_checks()) {
    bool ok = false;
    try {
      ok = check.pass();
    } catch (const std::exception&) {
      ok = false;
    }
    out << (ok ? "PASS " : "FAIL ") << check.name << "\n";
    failed += ok ? 0 : 1;
  }
  out << (failed == 0 ? "selftest: all checks passed\n" : "selftest: " + std::to_string(failed) + " failed\n");
  return failed == 0 ? kExitOk : kExitDataError;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local binary pattern texture descriptors and learning tools", "lbpkit"};
  app.require_subcommand(1);

  DescribeOptions describe;
  auto* describe_cmd = app.add_subcommand("describe", "LBP descriptors of PGM/PPM images");
  describe_cmd->add_option("inputs", describe.inputs, "Image files")->required();
  add_descriptor_flags(*describe_cmd, describe);
  describe_cmd->add_flag("--basic", describe.basic, "Fixed 3x3 operator; also reports mean contrast C");
  describe_cmd->add_option("--median-window", describe.median_window, "Median window W (odd)")
      ->capture_default_str();

  VideoOptions video;
  auto* video_cmd = app.add_subcommand("describe-video", "LBP-TOP descriptors of frame directories");
  video_cmd->add_option("inputs", video.base.inputs, "Directories of .pgm frames (lexicographic order)")
      ->required();
  add_descriptor_flags(*video_cmd, video.base);
  video_cmd->add_option("--rt", video.rt, "Radius of the XT and YT rings (default: --r)");

  ClassifyOptions classify;
  auto* classify_cmd = app.add_subcommand("classify", "k-nearest-neighbor labels for query vectors");
  classify_cmd->add_option("--train", classify.train, "Labeled dataset CSV")->required();
  classify_cmd->add_option("--query", classify.query, "Query CSV (features only unless --labels)")->required();
  classify_cmd->add_option("--k", classify.k, "Neighbors")->capture_default_str()->check(CLI::PositiveNumber);
  classify_cmd->add_option("--distance", classify.distance, "chi-square, l1, l2, intersection")
      ->check(kDistanceCheck)
      ->capture_default_str();
  classify_cmd->add_flag("--labels", classify.labels, "Query CSV has a label column; report confusion");
  classify_cmd->add_flag("--normalize", classify.normalize, "Standardize features using training statistics");
  classify_cmd->add_option("-o,--output", classify.output, "Output file");

  ClusterOptions cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means clustering of feature vectors");
  cluster_cmd->add_option("input", cluster.input, "Feature CSV")->required();
  cluster_cmd->add_option("--k", cluster.k, "Clusters")->capture_default_str()->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--seed", cluster.seed, "Seed of the first run")->capture_default_str();
  cluster_cmd->add_option("--restarts", cluster.restarts, "Seeds tried; the lowest SSE wins")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--max-iter", cluster.max_iter, "Update steps per run")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cluster_cmd->add_flag("--labeled", cluster.labeled, "First column is a label; report purity");
  cluster_cmd->add_option("--centroids", cluster.centroids, "Write the model as JSON to this file");
  cluster_cmd->add_option("-o,--output", cluster.output, "Output file");

  ReduceOptions reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Low-dimensional coordinates for visualization");
  reduce_cmd->add_option("input", reduce.input, "Feature CSV")->required();
  reduce_cmd->add_option("--method", reduce.method, "pca or mds")
      ->check(CLI::IsMember({"pca", "mds"}))
      ->capture_default_str();
  reduce_cmd->add_option("--dims", reduce.dims, "Output dimensions")->capture_default_str()->check(
      CLI::PositiveNumber);
  reduce_cmd->add_option("--distance", reduce.distance, "Distance used by mds")
      ->check(kDistanceCheck)
      ->capture_default_str();
  reduce_cmd->add_flag("--labeled", reduce.labeled, "First column is a label; copied to the output");
  reduce_cmd->add_option("-o,--output", reduce.output, "Output file");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "ROC or precision-recall curve of scored samples");
  eval_cmd->add_option("input", eval.input, "CSV of score,label rows")->required();
  eval_cmd->add_option("--curve", eval.curve, "roc or pr")
      ->check(CLI::IsMember({"roc", "pr"}))
      ->capture_default_str();
  eval_cmd->add_option("-o,--output", eval.output, "Output file");

  auto* selftest_cmd = app.add_subcommand("selftest", "Check built-in golden values");

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (describe_cmd->parsed()) return do_describe(describe, out);
    if (video_cmd->parsed()) return do_describe_video(video, out);
    if (classify_cmd->parsed()) return do_classify(classify, out);
    if (cluster_cmd->parsed()) return do_cluster(cluster, out);
    if (reduce_cmd->parsed()) return do_reduce(reduce, out);
    if (eval_cmd->parsed()) return do_eval(eval, out);
    if (selftest_cmd->parsed()) return do_selftest(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace lbpkit::cli
