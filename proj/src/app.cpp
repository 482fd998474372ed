#include "bba/app/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <sstream>

#include "bba/core/parallel.hpp"
#include "bba/core/random.hpp"
#include "bba/datagen/datagen.hpp"
#include "bba/topology/filtration.hpp"

namespace bba::app {

using io::format_real;
using io::json;

MetricsReport compute_metrics(std::vector<int> classes, const std::vector<int>& truth,
                              const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("metrics: length mismatch");
  classes.insert(classes.end(), truth.begin(), truth.end());
  classes.insert(classes.end(), predicted.begin(), predicted.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  MetricsReport m;
  m.classes = classes;
  const std::size_t k = classes.size();
  auto pos = [&](int c) {
    return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), c) - classes.begin());
  };
  m.confusion.assign(k, std::vector<long>(k, 0));
  long correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++m.confusion[pos(truth[i])][pos(predicted[i])];
    if (truth[i] == predicted[i]) ++correct;
  }
  m.accuracy = truth.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(truth.size());
  for (std::size_t c = 0; c < k; ++c) {
    long predicted_c = 0, support = 0;
    for (std::size_t r = 0; r < k; ++r) {
      predicted_c += m.confusion[r][c];
      support += m.confusion[c][r];
    }
    const long tp = m.confusion[c][c];
    ClassMetrics cm;
    cm.label = classes[c];
    cm.support = support;
    cm.precision = predicted_c ? static_cast<double>(tp) / static_cast<double>(predicted_c) : 0.0;
    cm.recall = support ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
    cm.f1 = cm.precision + cm.recall > 0.0 ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall) : 0.0;
    m.per_class.push_back(cm);
  }
  return m;
}

json metrics_to_json(const MetricsReport& m) {
  json per_class = json::array();
  for (const auto& c : m.per_class)
    per_class.push_back(
        {{"label", c.label}, {"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}, {"support", c.support}});
  return {{"accuracy", m.accuracy},
          {"classes", m.classes},
          {"per_class", per_class},
          {"confusion", m.confusion},
          {"staged_train_error", m.staged_train_error},
          {"staged_test_error", m.staged_test_error}};
}

json timings_to_json(const MetricsReport& m) {
  json t = json::object();
  for (const auto& [phase, seconds] : m.timings) t[phase] = seconds;
  return t;
}

namespace {

std::vector<int> model_classes(const io::Model& model) {
  if (const auto* e = std::get_if<Ensemble>(&model)) {
    std::vector<int> c = e->labels;
    std::sort(c.begin(), c.end());
    return c;
  }
  return std::get<OneVsOneModel>(model).classes;
}

std::size_t model_stage_count(const io::Model& model) {
  if (const auto* e = std::get_if<Ensemble>(&model)) return e->stages.size();
  std::size_t n = 0;
  for (const auto& [key, e] : std::get<OneVsOneModel>(model).pairs) n = std::max(n, e.stages.size());
  return n;
}

io::Model truncate_model(const io::Model& model, std::size_t stages) {
  auto cut = [&](Ensemble e) {
    if (e.stages.size() > stages) e.stages.resize(stages);
    return e;
  };
  if (const auto* e = std::get_if<Ensemble>(&model)) return cut(*e);
  OneVsOneModel m = std::get<OneVsOneModel>(model);
  for (auto& [key, e] : m.pairs) e = cut(e);
  return m;
}

void check_dims(const io::Model& model, const Dataset& data) {
  const Eigen::Index d = io::model_dim(model);
  if (d != 0 && data.size() > 0 && d != data.dim)
    throw StageError(kEvaluation, "evaluate",
                     "model dimension " + std::to_string(d) + " differs from data dimension " + std::to_string(data.dim));
}

}  // namespace

MetricsReport evaluate(const io::Model& model, const Dataset& data) {
  check_dims(model, data);
  std::vector<int> predicted;
  predicted.reserve(data.size());
  for (const auto& mu : data.measures) predicted.push_back(io::model_predict(model, mu));
  MetricsReport m = compute_metrics(model_classes(model), data.labels, predicted);
  m.staged_test_error = staged_error(model, data);
  return m;
}

std::vector<double> staged_error(const io::Model& model, const Dataset& data) {
  check_dims(model, data);
  std::vector<double> out;
  const std::size_t stages = model_stage_count(model);
  for (std::size_t t = 1; t <= stages; ++t) {
    const io::Model cut = truncate_model(model, t);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (io::model_predict(cut, data.measures[i]) != data.labels[i]) ++wrong;
    out.push_back(data.size() ? static_cast<double>(wrong) / static_cast<double>(data.size()) : 0.0);
  }
  return out;
}

std::string rectangle_trace_csv(const io::Model& model) {
  std::ostringstream os;
  os << "pair,stage,alpha,error,type,center,radius,mins,maxs,threshold,sign\n";
  auto join = [](const Point& p) {
    std::string s;
    for (Eigen::Index i = 0; i < p.size(); ++i) s += (i ? ";" : "") + format_real(p(i));
    return s;
  };
  auto emit = [&](const Ensemble& e) {
    const std::string pair = std::to_string(e.labels[0]) + "-" + std::to_string(e.labels[1]);
    for (std::size_t t = 0; t < e.stages.size(); ++t) {
      const Stage& st = e.stages[t];
      os << pair << ',' << t << ',' << format_real(st.alpha) << ',' << format_real(st.error) << ',';
      if (const auto* b = std::get_if<Balld>(&st.classifier.region))
        os << "ball," << join(b->center) << ',' << format_real(b->radius) << ",,";
      else {
        const auto& r = std::get<AxisRectd>(st.classifier.region);
        os << "rect,,," << join(r.mins) << ',' << join(r.maxs);
      }
      os << ',' << format_real(st.classifier.threshold) << ',' << st.classifier.sign << '\n';
    }
  };
  if (const auto* e = std::get_if<Ensemble>(&model)) emit(*e);
  else
    for (const auto& [key, e] : std::get<OneVsOneModel>(model).pairs) emit(e);
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t example_seed(std::uint64_t base, int split, int cls, long i) {
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(split * 1000 + cls)), static_cast<std::uint64_t>(i));
}

Split generate_split(const RunConfig& cfg, int split_id, long per_class) {
  Split s;
  const std::string& g = cfg.generator;
  int n_classes = 2;
  if (g == "orbit") n_classes = static_cast<int>(cfg.orbit_rhos.size());
  for (int c = 0; c < n_classes; ++c) {
    for (long i = 0; i < per_class; ++i) {
      const std::uint64_t seed = example_seed(cfg.seed, split_id, c, i);
      if (g == "torus-sphere" || g == "torus-sphere-random") {
        long points = cfg.points;
        double scale = 1.0;
        if (g == "torus-sphere-random") {
          Rng rng(derive_seed(seed, 10));
          if (cfg.points_max > 0) {
            if (cfg.points_min < 1 || cfg.points_min > cfg.points_max)
              throw std::invalid_argument("require 1 <= points_min <= points_max");
            points = cfg.points_min +
                     static_cast<long>(uniform_index(rng, static_cast<std::size_t>(cfg.points_max - cfg.points_min + 1)));
          }
          scale = cfg.scale_min + (cfg.scale_max - cfg.scale_min) * uniform01(rng);
        }
        Points p = c == 1 ? sample_torus(points, scale * cfg.torus_outer, scale * cfg.torus_inner, derive_seed(seed, 1))
                          : sample_sphere(points, scale * cfg.sphere_radius, derive_seed(seed, 1));
        s.clouds.push_back(add_gaussian_noise(p, cfg.noise, derive_seed(seed, 2)));
      } else if (g == "ppp-gpp") {
        if (c == 0) {
          s.clouds.push_back(sample_ppp_disk(cfg.ppp_mean, cfg.disk_radius, seed));
        } else {
          s.clouds.push_back(sample_ginibre(static_cast<int>(std::lround(cfg.ppp_mean)), cfg.disk_radius, seed));
        }
      } else if (g == "orbit") {
        s.clouds.push_back(orbit({cfg.orbit_rhos[static_cast<std::size_t>(c)], cfg.points, seed}));
      } else if (g == "graph-hks") {
        s.graphs.push_back(c == 0 ? erdos_renyi(cfg.graph_vertices, cfg.graph_edge_prob, seed)
                                  : watts_strogatz(cfg.graph_vertices, cfg.ws_neighbors, cfg.ws_rewire, seed));
      } else {
        throw std::invalid_argument("unknown generator \"" + g + "\"");
      }
      s.labels.push_back(c);
    }
  }
  return s;
}

Split split_from_dataset(const Dataset& d) {
  Split s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    s.clouds.push_back(d.measures[i].points());
    s.labels.push_back(d.labels[i]);
  }
  return s;
}

Dataset read_dataset_file(const std::string& path) {
  std::istringstream is(io::read_file(path));
  return io::read_dataset(is);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

GeneratedData generate(const RunConfig& cfg) {
  GeneratedData out;
  if (cfg.generator == "file") {
    if (cfg.train_path.empty()) throw std::invalid_argument("generator \"file\" needs data.train_path");
    const Dataset train = read_dataset_file(cfg.train_path);
    if (!cfg.test_path.empty()) {
      out.train = split_from_dataset(train);
      out.test = split_from_dataset(read_dataset_file(cfg.test_path));
      return out;
    }
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) throw std::invalid_argument("test_fraction must be in (0, 1)");
    std::vector<std::size_t> idx(train.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, 77));
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
    const auto n_test = static_cast<std::size_t>(std::llround(cfg.test_fraction * static_cast<double>(idx.size())));
    std::vector<std::size_t> te(idx.begin(), idx.begin() + static_cast<long>(n_test));
    std::vector<std::size_t> tr(idx.begin() + static_cast<long>(n_test), idx.end());
    std::sort(te.begin(), te.end());
    std::sort(tr.begin(), tr.end());
    out.train = split_from_dataset(train.subset(tr));
    out.test = split_from_dataset(train.subset(te));
    return out;
  }
  if (cfg.n_train < 1 || cfg.n_test < 0) throw std::invalid_argument("n_train must be >= 1 and n_test >= 0");
  out.train = generate_split(cfg, 0, cfg.n_train);
  out.test = generate_split(cfg, 1, cfg.n_test);
  return out;
}

std::vector<io::DiagramRecord> compute_diagrams(const Split& split, const RunConfig& cfg) {
  if (cfg.homology.empty()) throw std::invalid_argument("filtration.homology is empty");
  const int top = *std::max_element(cfg.homology.begin(), cfg.homology.end());
  if (*std::min_element(cfg.homology.begin(), cfg.homology.end()) < 0) throw std::invalid_argument("negative homology dimension");

  const bool graphs = !split.graphs.empty();
  const std::size_t n = graphs ? split.graphs.size() : split.clouds.size();
  std::vector<io::DiagramRecord> out(n);
  if (graphs && top > 1) throw std::invalid_argument("graph diagrams exist in dimensions 0 and 1 only");
  if (!graphs && top > 2) throw std::invalid_argument("point-cloud homology is limited to dimension 2");
  if (cfg.complex != "cech" && cfg.complex != "rips") throw std::invalid_argument("unknown complex \"" + cfg.complex + "\"");

  parallel_for(n, cfg.workers, [&](std::size_t i) {
    std::vector<PersistenceDiagram> all;
    if (graphs) {
      auto [d0, d1] = graph_sublevel_diagrams(split.graphs[i], graph_hks(split.graphs[i], cfg.hks_time));
      all = {std::move(d0), std::move(d1)};
    } else {
      FiltrationOptions opts;
      opts.max_dim = top + 1;
      opts.max_value = cfg.max_value;
      opts.jitter_seed = derive_seed(cfg.seed, 5);
      const Points pts = merge_close_points(split.clouds[i], cfg.merge_radius);
      const FilteredComplex complex = cfg.complex == "cech" ? cech_filtration(pts, opts) : rips_filtration(pts, opts);
      all = persistence(complex);
    }
    for (int k : cfg.homology) out[i].diagrams.push_back(all.at(static_cast<std::size_t>(k)));
    out[i].label = split.labels[i];
  });
  return out;
}

Dataset clouds_to_dataset(const Split& split) {
  if (!split.graphs.empty()) throw std::invalid_argument("graphs have no point-cloud measure");
  Dataset data;
  if (!split.clouds.empty()) data.dim = split.clouds.front().rows();
  for (std::size_t i = 0; i < split.clouds.size(); ++i) data.push_back(Measured::uniform(split.clouds[i]), split.labels[i]);
  return data;
}

Dataset diagrams_to_dataset(const std::vector<io::DiagramRecord>& records, const RunConfig& cfg) {
  DiagramMeasureOptions opts;
  if (cfg.weight == "constant") opts.weight = DiagramWeight::constant;
  else if (cfg.weight == "persistence") opts.weight = DiagramWeight::persistence;
  else if (cfg.weight == "power") opts.weight = DiagramWeight::persistence_power;
  else throw std::invalid_argument("unknown diagram weight \"" + cfg.weight + "\"");
  opts.power = cfg.power;
  opts.rotate = cfg.rotate;
  opts.truncation = cfg.truncation;
  if (!opts.truncation && std::isfinite(cfg.max_value)) opts.truncation = cfg.max_value;

  Dataset data;
  data.dim = 2;
  for (const auto& r : records) {
    PersistenceDiagram merged;
    for (const auto& d : r.diagrams) merged.pairs.insert(merged.pairs.end(), d.pairs.begin(), d.pairs.end());
    if (!r.label) throw std::invalid_argument("diagram record without a label");
    data.push_back(diagram_to_measure(merged, opts), *r.label);
  }
  return data;
}

BoostConfig build_boost_config(const Dataset& train, const RunConfig& cfg) {
  BoostConfig b;
  b.rounds = cfg.rounds;
  b.subsample_fraction = cfg.subsample_fraction;
  b.error_floor = cfg.error_floor;
  b.seed = derive_seed(cfg.seed, 20);
  b.workers = cfg.workers;
  b.learner.center_subsample = cfg.center_subsample;
  b.learner.smooth = cfg.smooth;
  b.learner.smooth.seed = derive_seed(cfg.seed ^ cfg.smooth.seed, 21);

  if (cfg.learner == "smooth") {
    b.learner.kind = LearnerKind::smooth;
    return b;
  }
  if (cfg.learner != "exhaustive") throw std::invalid_argument("unknown learner \"" + cfg.learner + "\"");
  b.learner.kind = LearnerKind::exhaustive;

  GridSpec& grid = b.learner.grid;
  grid.thresholds = cfg.thresholds;
  grid.threshold_quantiles = cfg.threshold_quantiles;
  const Points support = pooled_support(train);
  if (support.cols() == 0) throw std::invalid_argument("training measures have empty support");

  if (cfg.region == "ball") {
    grid.kind = RegionKind::ball;
    const int k = std::max(1, std::min<int>(cfg.centers, static_cast<int>(support.cols())));
    grid.centers = kmeans_centers(support, k, derive_seed(cfg.seed, 22));
    if (!cfg.radii.empty()) {
      grid.radii = cfg.radii;
    } else {
      // Quantiles of pairwise distances within an evenly strided subsample.
      const Eigen::Index m = std::min<Eigen::Index>(support.cols(), 400);
      std::vector<double> dist;
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index c = a + 1; c < m; ++c)
          dist.push_back((support.col(a * support.cols() / m) - support.col(c * support.cols() / m)).norm());
      std::sort(dist.begin(), dist.end());
      if (dist.empty()) dist.push_back(1.0);
      for (int j = 1; j <= cfg.radius_levels; ++j) {
        const double level = 0.5 * j / (cfg.radius_levels + 1.0);
        const double r = dist[static_cast<std::size_t>(level * static_cast<double>(dist.size() - 1))];
        if (grid.radii.empty() || r > grid.radii.back()) grid.radii.push_back(r);
      }
      if (grid.radii.empty() || grid.radii.front() <= 0.0) grid.radii.insert(grid.radii.begin(), 1e-9);
    }
  } else if (cfg.region == "rect") {
    grid.kind = RegionKind::rect;
    for (Eigen::Index j = 0; j < support.rows(); ++j) {
      std::vector<double> axis;
      for (Eigen::Index i = 0; i < support.cols(); ++i) axis.push_back(support(j, i));
      std::sort(axis.begin(), axis.end());
      std::vector<double> cuts;
      for (int l = 1; l <= cfg.rect_levels; ++l) {
        const double v = axis[static_cast<std::size_t>(l / (cfg.rect_levels + 1.0) * static_cast<double>(axis.size() - 1))];
        if (cuts.empty() || v > cuts.back()) cuts.push_back(v);
      }
      std::vector<double> mins{-std::numeric_limits<double>::infinity()}, maxs;
      mins.insert(mins.end(), cuts.begin(), cuts.end());
      maxs = cuts;
      maxs.push_back(std::numeric_limits<double>::infinity());
      grid.rect_mins.push_back(mins);
      grid.rect_maxs.push_back(maxs);
    }
  } else {
    throw std::invalid_argument("unknown region \"" + cfg.region + "\"");
  }
  return b;
}

io::Model fit_model(const Dataset& train, const RunConfig& cfg) {
  const BoostConfig b = build_boost_config(train, cfg);
  const std::vector<int> classes = train.label_set();
  if (classes == std::vector<int>{0, 1}) return adaboost_fit(train, b);
  return one_vs_one_fit(train, b, classes);
}

ExperimentResult run_experiment(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  std::vector<std::pair<std::string, double>> timings;

  auto t0 = clock::now();
  GeneratedData data;
  try {
    data = generate(cfg);
  } catch (const std::exception& e) {
    throw StageError(kData, "generate", e.what());
  }
  timings.emplace_back("generate", seconds_since(t0));

  t0 = clock::now();
  std::vector<io::DiagramRecord> dtrain, dtest;
  Dataset train, test;
  try {
    if (cfg.features == "points") {
      train = clouds_to_dataset(data.train);
      test = clouds_to_dataset(data.test);
    } else if (cfg.features == "diagrams") {
      dtrain = compute_diagrams(data.train, cfg);
      dtest = compute_diagrams(data.test, cfg);
      train = diagrams_to_dataset(dtrain, cfg);
      test = diagrams_to_dataset(dtest, cfg);
    } else {
      throw std::invalid_argument("unknown feature kind \"" + cfg.features + "\"");
    }
  } catch (const std::exception& e) {
    throw StageError(kDiagrams, "diagrams", e.what());
  }
  timings.emplace_back("features", seconds_since(t0));

  t0 = clock::now();
  ExperimentResult result;
  try {
    result.model = fit_model(train, cfg);
  } catch (const std::exception& e) {
    throw StageError(kTraining, "train", e.what());
  }
  timings.emplace_back("train", seconds_since(t0));

  t0 = clock::now();
  try {
    result.metrics = evaluate(result.model, test);
    result.metrics.staged_train_error = staged_error(result.model, train);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(kEvaluation, "evaluate", e.what());
  }
  timings.emplace_back("evaluate", seconds_since(t0));
  result.metrics.timings = timings;

  if (!cfg.output_dir.empty()) {
    try {
      namespace fs = std::filesystem;
      fs::create_directories(cfg.output_dir);
      const fs::path dir(cfg.output_dir);
      io::write_file((dir / "model.json").string(), io::model_to_json(result.model).dump(1) + "\n");
      if (cfg.features == "diagrams") {
        std::ostringstream a, b;
        io::write_diagrams(a, dtrain);
        io::write_diagrams(b, dtest);
        io::write_file((dir / "diagrams_train.jsonl").string(), a.str());
        io::write_file((dir / "diagrams_test.jsonl").string(), b.str());
      }
      io::write_file((dir / "metrics.json").string(), metrics_to_json(result.metrics).dump(1) + "\n");
      io::write_file((dir / "timings.json").string(), timings_to_json(result.metrics).dump(1) + "\n");
      io::write_file((dir / "rectangles.csv").string(), rectangle_trace_csv(result.model));
    } catch (const std::exception& e) {
      throw StageError(kOutput, "output", e.what());
    }
  }
  return result;
}

std::string limit_check_csv(const std::vector<LimitCheckRow>& rows) {
  std::ostringstream os;
  os << "n,r_n,rectangle,xi,mu_hat,stderr,mean_abs_error\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_real(r.r_n) << ',' << r.rectangle << ',' << format_real(r.xi_mean) << ','
       << format_real(r.mu_hat) << ',' << format_real(r.mu_stderr) << ',' << format_real(r.mean_abs_error) << '\n';
  return os.str();
}

std::string rademacher_csv(const std::vector<RademacherRow>& rows) {
  std::ostringstream os;
  os << "N,estimate,stderr\n";
  for (const auto& r : rows) os << r.n << ',' << format_real(r.estimate) << ',' << format_real(r.stderr_) << '\n';
  return os.str();
}

std::vector<std::string> run_recipe(const std::string& name, const std::string& output_dir,
                                    const std::optional<std::string>& config_path, std::optional<int> workers,
                                    std::optional<std::uint64_t> seed) {
  namespace fs = std::filesystem;
  std::vector<std::string> summary;
  for (auto [subdir, cfg] : recipe_runs(name)) {
    if (config_path) apply_config_file(cfg, *config_path);
    if (workers) cfg.workers = *workers;
    if (seed) cfg.seed = *seed;
    cfg.limit.workers = cfg.workers;
    cfg.output_dir = subdir.empty() ? output_dir : (fs::path(output_dir) / subdir).string();
    const std::string tag = subdir.empty() ? name : name + "/" + subdir;

    if (cfg.kind == "classify") {
      const ExperimentResult r = run_experiment(cfg);
      summary.push_back(tag + ": accuracy " + format_real(r.metrics.accuracy));
    } else if (cfg.kind == "limit") {
      std::vector<LimitCheckRow> rows;
      try {
        rows = run_limit_check(cfg.limit);
      } catch (const std::exception& e) {
        throw StageError(kData, "limit-check", e.what());
      }
      try {
        fs::create_directories(cfg.output_dir);
        io::write_file((fs::path(cfg.output_dir) / "limit_check.csv").string(), limit_check_csv(rows));
      } catch (const std::exception& e) {
        throw StageError(kOutput, "output", e.what());
      }
      summary.push_back(tag + ": " + std::to_string(rows.size()) + " rows");
    } else if (cfg.kind == "rademacher") {
      std::vector<RademacherRow> rows;
      double slope = 0.0;
      try {
        rows = run_rademacher_scaling(cfg.rademacher);
        slope = loglog_slope(rows);
      } catch (const std::exception& e) {
        throw StageError(kData, "rademacher", e.what());
      }
      try {
        fs::create_directories(cfg.output_dir);
        io::write_file((fs::path(cfg.output_dir) / "rademacher.csv").string(), rademacher_csv(rows));
        io::write_file((fs::path(cfg.output_dir) / "summary.json").string(),
                       json{{"loglog_slope", slope}}.dump(1) + "\n");
      } catch (const std::exception& e) {
        throw StageError(kOutput, "output", e.what());
      }
      summary.push_back(tag + ": slope " + format_real(slope));
    } else {
      throw StageError(kConfig, "config", "unknown run kind \"" + cfg.kind + "\"");
    }
  }
  return summary;
}

}  // namespace bba::app
