#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "bba/app/app.hpp"
#include "support.hpp"

using namespace bba;
using bba::test::vec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bba_test_app_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

app::RunConfig tiny_config() {
  app::RunConfig c;
  apply_config_text(c,
                    "[data]\n"
                    "generator = ppp-gpp\n"
                    "n_train = 15\n"
                    "n_test = 10\n"
                    "ppp_mean = 25\n"
                    "[learner]\n"
                    "centers = 6\n"
                    "radius_levels = 4\n"
                    "[boost]\n"
                    "rounds = 4\n");
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  app::RunConfig c;
  apply_config_text(c,
                    "# comment\n"
                    "[run]\nseed = 42\nworkers = 2\n"
                    "[filtration]\nhomology = 0, 1\nmax_value = inf\ntruncation = 1.5\n"
                    "[limit]\nrectangles = 0,0.5,0.5,1; 0,1,1,2\nmanifold = circle\n");
  CHECK(c.seed == 42);
  CHECK(c.workers == 2);
  CHECK(c.homology == std::vector<int>{0, 1});
  CHECK(std::isinf(c.max_value));
  CHECK(c.truncation == 1.5);
  REQUIRE(c.limit.rectangles.size() == 2);
  CHECK(c.limit.rectangles[1].v == 2.0);
  CHECK(c.limit.manifold == LimitManifold::circle);
}

TEST_CASE("config rejects unknown or malformed entries") {
  app::RunConfig c;
  CHECK_THROWS(apply_config_text(c, "[run]\nsede = 1\n"));
  CHECK_THROWS(apply_config_text(c, "[nonsense]\nseed = 1\n"));
  CHECK_THROWS(apply_config_text(c, "[run]\nseed = abc\n"));
  CHECK_THROWS(apply_config_text(c, "[boost]\nrounds = 3x\n"));
  CHECK_THROWS(apply_config_text(c, "[limit]\nrectangles = 1,0,2,3\n"));
  CHECK_THROWS(apply_config_file(c, "/nonexistent/config.ini"));
}

TEST_CASE("recipes") {
  const auto names = app::recipe_names();
  CHECK(names.size() == 7);
  for (const auto& n : names) CHECK(!app::recipe_runs(n).empty());
  CHECK(app::recipe_runs("torus-vs-sphere").size() == 3);
  CHECK_THROWS(app::recipe_runs("no-such-recipe"));
}

TEST_CASE("real and region serialization round-trips") {
  CHECK(io::real_from_json(io::real_to_json(INFINITY)) == INFINITY);
  CHECK(io::real_from_json(io::real_to_json(-INFINITY)) == -INFINITY);
  CHECK(io::real_from_json(io::real_to_json(0.1)) == 0.1);
  CHECK_THROWS_AS(io::real_from_json(io::json("nan")), io::SchemaError);

  const Region box = AxisRectd(vec({0, -INFINITY}), vec({1, INFINITY}));
  const auto back = std::get<AxisRectd>(io::region_from_json(io::to_json(box)));
  CHECK(back.mins(1) == -INFINITY);
  CHECK(back.maxs(1) == INFINITY);
  const Region ball = Balld(vec({0.25, 1e-17}), 0.3);
  const auto b2 = std::get<Balld>(io::region_from_json(io::to_json(ball)));
  CHECK(b2.center == std::get<Balld>(ball).center);
  CHECK_THROWS_AS(io::region_from_json(io::json::parse(R"({"type":"cone"})")), io::SchemaError);
}

TEST_CASE("dataset and diagram files round-trip") {
  Rng rng(1);
  Dataset data;
  data.push_back(test::random_measure(2, 4, rng), 1);
  data.push_back(Measured::uniform(test::random_points(2, 3, rng)), 0);
  data.push_back(Measured(2), 1);
  std::stringstream ss;
  io::write_dataset(ss, data);
  const Dataset back = io::read_dataset(ss);
  REQUIRE(back.size() == 3);
  CHECK(back.labels == data.labels);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.measures[i].points() == data.measures[i].points());
    CHECK(back.measures[i].weights() == data.measures[i].weights());
  }

  PersistenceDiagram d0, d1;
  d0.dim = 0;
  d0.pairs = {PersistencePair{0, 0.3}, PersistencePair{0, kInfinity}};
  d1.dim = 1;
  d1.pairs = {PersistencePair{0.2, 0.45}};
  std::vector<io::DiagramRecord> recs{{{d0, d1}, 3}, {{d0}, std::nullopt}};
  std::stringstream ds;
  io::write_diagrams(ds, recs);
  const auto got = io::read_diagrams(ds);
  REQUIRE(got.size() == 2);
  CHECK(got[0].label == 3);
  CHECK(!got[1].label.has_value());
  REQUIRE(got[0].diagrams.size() == 2);
  CHECK(got[0].diagrams[0].pairs[1].essential());
  CHECK(got[0].diagrams[1].pairs[0].death == 0.45);

  std::stringstream bad("{\"label\": 1, \"points\": [[0, 1], [2]]}\n");
  CHECK_THROWS(io::read_dataset(bad));
}

TEST_CASE("model files round-trip") {
  Ensemble e;
  e.labels = {2, 5};
  e.stages = {Stage{WeakClassifier{Region(Balld(vec({0.1, 0.2}), 0.3)), 1.5, -1}, 0.75, 0.2}};
  const io::Model m = e;
  const auto back = std::get<Ensemble>(io::model_from_json(io::model_to_json(m)));
  CHECK(back.labels == e.labels);
  CHECK(back.stages[0].alpha == 0.75);
  CHECK(back.stages[0].classifier.sign == -1);
  CHECK(io::model_dim(m) == 2);

  OneVsOneModel ovo;
  ovo.classes = {2, 5};
  ovo.pairs.emplace(std::make_pair(2, 5), e);
  const auto j = io::model_to_json(ovo);
  CHECK(j["pairs"].contains("2-5"));
  const auto ovo_back = std::get<OneVsOneModel>(io::model_from_json(j));
  CHECK(ovo_back.classes == ovo.classes);
  const Measured mu = Measured::uniform(vec({0.1, 0.2}));
  CHECK(io::model_predict(ovo_back, mu) == io::model_predict(m, mu));
}

TEST_CASE("graph and real formatting") {
  const Graph g(4, {{0, 1}, {2, 3}});
  const Graph back = io::graph_from_json(io::to_json(g));
  CHECK(back.n == 4);
  CHECK(back.edges == g.edges);
  CHECK(io::format_real(0.1) == "0.1");
  CHECK(std::stod(io::format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("metrics") {
  const auto perfect = app::compute_metrics({0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0});
  CHECK(perfect.accuracy == 1.0);
  const auto constant = app::compute_metrics({0, 1}, {0, 1, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 0});
  CHECK(constant.accuracy == 0.5);

  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> truth, pred;
    const std::size_t n = 1 + uniform_index(rng, 40);
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back(static_cast<int>(uniform_index(rng, 4)));
      pred.push_back(static_cast<int>(uniform_index(rng, 5)));
    }
    const auto m = app::compute_metrics({0, 1, 2, 3}, truth, pred);
    CHECK(m.accuracy >= 0.0);
    CHECK(m.accuracy <= 1.0);
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
      long row = 0;
      for (long v : m.confusion[c]) row += v;
      CHECK(row == std::count(truth.begin(), truth.end(), m.classes[c]));
    }
    for (const auto& pc : m.per_class) {
      const double expect = pc.precision + pc.recall > 0 ? 2 * pc.precision * pc.recall / (pc.precision + pc.recall) : 0.0;
      CHECK(std::abs(pc.f1 - expect) <= 1e-12);
    }
  }
}

TEST_CASE("experiment output is deterministic") {
  app::RunConfig c = tiny_config();
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  c.output_dir = a.string();
  const auto ra = app::run_experiment(c);
  c.output_dir = b.string();
  app::run_experiment(c);
  for (const char* f : {"metrics.json", "model.json", "diagrams_train.jsonl", "diagrams_test.jsonl", "rectangles.csv"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(io::read_file((a / f).string()) == io::read_file((b / f).string()));
  }
  CHECK(fs::exists(a / "timings.json"));
  CHECK(ra.metrics.staged_test_error.size() == std::get<Ensemble>(ra.model).stages.size());
  CHECK(ra.metrics.accuracy > 0.5);

  c.workers = 3;
  const auto rc = app::run_experiment(c);
  CHECK(rc.metrics.accuracy == ra.metrics.accuracy);
}

TEST_CASE("point-cloud features skip diagrams") {
  app::RunConfig c = tiny_config();
  c.features = "points";
  const fs::path dir = scratch("points");
  c.output_dir = dir.string();
  const auto r = app::run_experiment(c);
  CHECK(fs::exists(dir / "metrics.json"));
  CHECK(!fs::exists(dir / "diagrams_train.jsonl"));
  CHECK(io::model_dim(r.model) == 2);
  c.features = "nonsense";
  CHECK_THROWS_AS(app::run_experiment(c), app::StageError);
}

TEST_CASE("stage errors carry exit codes") {
  app::RunConfig c = tiny_config();
  c.generator = "no-such-generator";
  try {
    app::run_experiment(c);
    FAIL("expected a stage error");
  } catch (const app::StageError& e) {
    CHECK(e.code == app::kData);
  }
}

TEST_CASE("rectangle trace") {
  const auto r = app::run_experiment(tiny_config());
  const std::string csv = app::rectangle_trace_csv(r.model);
  CHECK(csv.rfind("pair,stage,alpha,error,type,center,radius,mins,maxs,threshold,sign\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        1 + static_cast<long>(std::get<Ensemble>(r.model).stages.size()));
}
