#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bba/io/io.hpp"
#include "bba/learn/boosting.hpp"
#include "bba/limit/limit.hpp"

namespace bba::app {

/// Process exit codes, one per pipeline stage.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kConfig = 3,
  kData = 4,
  kDiagrams = 5,
  kTraining = 6,
  kEvaluation = 7,
  kOutput = 8,
};

struct StageError : std::runtime_error {
  ExitCode code;
  StageError(ExitCode c, const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), code(c) {}
};

struct RunConfig {
  // [run]
  std::string name = "experiment";
  std::string kind = "classify";  // classify | limit | rademacher
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output_dir;

  // [data]
  std::string generator = "torus-sphere";
  long n_train = 50;  // per class
  long n_test = 50;   // per class
  long points = 500;
  long points_min = 0, points_max = 0;  // random point count when points_max > 0
  double scale_min = 1.0, scale_max = 1.0;
  double noise = 0.0;
  double torus_outer = 4.0, torus_inner = 2.0, sphere_radius = 6.0;
  double ppp_mean = 30.0, disk_radius = 1.0;
  std::vector<double> orbit_rhos{2.5, 3.5, 4.0, 4.1, 4.3};
  int graph_vertices = 20;
  double graph_edge_prob = 0.2;
  int ws_neighbors = 2;
  double ws_rewire = 0.1;
  double hks_time = 10.0;
  std::string train_path, test_path;
  double test_fraction = 0.3;

  // [features]
  std::string features = "diagrams";  // diagrams | points

  // [filtration]
  std::string complex = "cech";
  std::vector<int> homology{1};
  double max_value = std::numeric_limits<double>::infinity();
  std::optional<double> truncation;
  double merge_radius = 0.0;

  // [diagram]
  std::string weight = "constant";
  double power = 1.0;
  bool rotate = true;

  // [learner]
  std::string learner = "exhaustive";
  std::string region = "ball";
  int centers = 20;
  std::vector<double> radii;
  int radius_levels = 10;
  int center_subsample = 0;
  int threshold_quantiles = 10;
  std::vector<double> thresholds;
  int rect_levels = 8;

  // [boost]
  int rounds = 10;
  double subsample_fraction = 1.0;
  double error_floor = 1e-10;

  // [smooth]
  SmoothTrainConfig smooth;

  // [limit]
  LimitCheckConfig limit;

  // [rademacher]
  RademacherScalingConfig rademacher;
};

/// INI text with [section] headers; unknown sections or keys are rejected.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Named recipe as a list of (subdirectory, config) runs.
std::vector<std::pair<std::string, RunConfig>> recipe_runs(const std::string& name);
std::vector<std::string> recipe_names();

struct ClassMetrics {
  int label = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  std::vector<int> classes;
  std::vector<ClassMetrics> per_class;
  std::vector<std::vector<long>> confusion;  // rows: true class, columns: predicted
  std::vector<double> staged_train_error;
  std::vector<double> staged_test_error;
  std::vector<std::pair<std::string, double>> timings;  // seconds per phase
};

/// Metrics over the union of the declared classes and those seen in the data.
MetricsReport compute_metrics(std::vector<int> classes, const std::vector<int>& truth,
                              const std::vector<int>& predicted);

/// Metrics without timings; timings are written separately.
io::json metrics_to_json(const MetricsReport& m);
io::json timings_to_json(const MetricsReport& m);

MetricsReport evaluate(const io::Model& model, const Dataset& data);

/// 0-1 error after each stage prefix (one-vs-one: same prefix in every pair).
std::vector<double> staged_error(const io::Model& model, const Dataset& data);

/// One CSV row per stage with alpha, error, region geometry, threshold and sign.
std::string rectangle_trace_csv(const io::Model& model);

// ---------------------------------------------------------------------------
// Pipeline pieces

struct Split {
  std::vector<Points> clouds;
  std::vector<Graph> graphs;
  std::vector<int> labels;
};

struct GeneratedData {
  Split train, test;
};

GeneratedData generate(const RunConfig& cfg);

/// Persistence diagrams (selected dimensions) of every cloud or graph.
std::vector<io::DiagramRecord> compute_diagrams(const Split& split, const RunConfig& cfg);

/// Unit-weight point-cloud measures (graphs are rejected).
Dataset clouds_to_dataset(const Split& split);

/// Selected dimensions merged into one measure per record.
Dataset diagrams_to_dataset(const std::vector<io::DiagramRecord>& records, const RunConfig& cfg);

/// Weak-learner grid fitted on the training measures.
BoostConfig build_boost_config(const Dataset& train, const RunConfig& cfg);

io::Model fit_model(const Dataset& train, const RunConfig& cfg);

struct ExperimentResult {
  MetricsReport metrics;
  io::Model model;
};

/// generate -> diagrams -> train -> evaluate. Writes model.json,
/// diagrams_{train,test}.jsonl, metrics.json, timings.json and rectangles.csv
/// when cfg.output_dir is set.
ExperimentResult run_experiment(const RunConfig& cfg);

std::string limit_check_csv(const std::vector<LimitCheckRow>& rows);
std::string rademacher_csv(const std::vector<RademacherRow>& rows);

/// Runs every part of a recipe into `output_dir`/<subdir>. Returns a summary
/// line per run.
std::vector<std::string> run_recipe(const std::string& name, const std::string& output_dir,
                                    const std::optional<std::string>& config_path, std::optional<int> workers,
                                    std::optional<std::uint64_t> seed);

}  // namespace bba::app
