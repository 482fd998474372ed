#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bba/app/app.hpp"
#include "bba/core/random.hpp"
#include "bba/datagen/datagen.hpp"
#include "bba/io/io.hpp"
#include "bba/topology/filtration.hpp"

namespace {

using namespace bba;
using app::StageError;

template <typename F>
auto stage(app::ExitCode code, const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(code, name, e.what());
  }
}

std::string slurp(const std::string& path) { return io::read_file(path); }

Dataset load_dataset(const std::string& path) {
  std::istringstream is(slurp(path));
  return io::read_dataset(is);
}

void emit(const std::string& path, const std::string& content) {
  stage(app::kOutput, "output", [&] {
    if (path.empty() || path == "-") {
      std::cout << content;
    } else {
      const auto parent = std::filesystem::path(path).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);
      io::write_file(path, content);
    }
    return 0;
  });
}

app::RunConfig base_config(const std::string& config_path, int workers) {
  app::RunConfig cfg;
  if (!config_path.empty()) app::apply_config_file(cfg, config_path);
  if (workers > 0) cfg.workers = workers;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Boosted region classifiers on measures and persistence diagrams"};
  cli.require_subcommand(1);
  std::string config_path;
  int workers = 0;
  cli.add_option("--config", config_path, "INI run configuration")->check(CLI::ExistingFile);
  cli.add_option("--workers", workers, "worker threads (1 = bit-exact reproducibility)")->check(CLI::PositiveNumber);

  // gen
  auto* gen = cli.add_subcommand("gen", "sample point clouds or graphs");
  std::string gen_kind, gen_out;
  long gen_count = 1, gen_points = 100;
  int gen_label = 0;
  std::uint64_t gen_seed = 0;
  double radius = 1.0, r_outer = 4.0, r_inner = 2.0, noise = 0.0, mean_count = 30.0, rho = 2.5, edge_prob = 0.2,
         rewire = 0.1;
  int neighbors = 2;
  gen->add_option("generator", gen_kind, "torus | sphere | ppp | ginibre | orbit | graph-er | graph-ws")
      ->required()
      ->check(CLI::IsMember({"torus", "sphere", "ppp", "ginibre", "orbit", "graph-er", "graph-ws"}));
  gen->add_option("--count", gen_count, "number of samples")->check(CLI::NonNegativeNumber);
  gen->add_option("--points", gen_points, "points (or graph vertices) per sample");
  gen->add_option("--label", gen_label, "label written with every sample");
  gen->add_option("--seed", gen_seed, "base seed")->required();
  gen->add_option("--radius", radius, "sphere / disk radius");
  gen->add_option("--outer", r_outer, "torus center-circle radius");
  gen->add_option("--inner", r_inner, "torus tube radius");
  gen->add_option("--noise", noise, "Gaussian noise standard deviation");
  gen->add_option("--mean-count", mean_count, "Poisson mean (ppp)");
  gen->add_option("--rho", rho, "orbit parameter");
  gen->add_option("--edge-prob", edge_prob, "Erdos-Renyi edge probability");
  gen->add_option("--neighbors", neighbors, "Watts-Strogatz ring neighbors per side");
  gen->add_option("--rewire", rewire, "Watts-Strogatz rewiring probability");
  gen->add_option("--out", gen_out, "output JSONL (default stdout)");

  // ph
  auto* ph = cli.add_subcommand("ph", "persistence diagrams of point clouds or graphs");
  std::string ph_in, ph_out, ph_complex = "cech";
  int ph_max_dim = 1;
  double ph_max_value = std::numeric_limits<double>::infinity(), hks_time = 10.0;
  bool ph_graphs = false;
  ph->add_option("--input", ph_in, "point-cloud JSONL or graph JSONL")->required()->check(CLI::ExistingFile);
  ph->add_option("--complex", ph_complex, "cech | rips")->check(CLI::IsMember({"cech", "rips"}));
  ph->add_option("--max-dim", ph_max_dim, "highest homology dimension")->check(CLI::Range(0, 2));
  ph->add_option("--max-value", ph_max_value, "filtration cap");
  ph->add_flag("--graphs", ph_graphs, "input holds graphs; use the HKS lower-star filtration");
  ph->add_option("--hks-time", hks_time, "HKS diffusion time");
  ph->add_option("--out", ph_out, "output diagram JSONL (default stdout)");

  // train
  auto* train = cli.add_subcommand("train", "fit a boosted model on a measure dataset");
  std::string train_in, train_diagrams, model_out;
  train->add_option("--data", train_in, "measure dataset JSONL")->check(CLI::ExistingFile);
  train->add_option("--diagrams", train_diagrams, "labelled diagram JSONL")->check(CLI::ExistingFile);
  train->add_option("--model", model_out, "output model JSON")->required();

  // predict / eval
  auto* predict = cli.add_subcommand("predict", "predict labels");
  auto* eval = cli.add_subcommand("eval", "evaluate a model");
  std::string model_in, data_in, diagrams_in, pred_out;
  for (auto* sc : {predict, eval}) {
    sc->add_option("--model", model_in, "model JSON")->required()->check(CLI::ExistingFile);
    sc->add_option("--data", data_in, "measure dataset JSONL")->check(CLI::ExistingFile);
    sc->add_option("--diagrams", diagrams_in, "labelled diagram JSONL")->check(CLI::ExistingFile);
    sc->add_option("--out", pred_out, "output file (default stdout)");
  }

  // bottleneck
  auto* bn = cli.add_subcommand("bottleneck", "bottleneck distance between two diagrams");
  std::string bn_a, bn_b;
  int bn_dim = 1;
  bn->add_option("a", bn_a, "diagram JSONL")->required()->check(CLI::ExistingFile);
  bn->add_option("b", bn_b, "diagram JSONL")->required()->check(CLI::ExistingFile);
  bn->add_option("--dim", bn_dim, "homology dimension to compare");

  // limit-check / rademacher
  auto* lc = cli.add_subcommand("limit-check", "rescaled rectangle counts against the limiting measure");
  std::string lc_out;
  lc->add_option("--out", lc_out, "output CSV (default stdout)");
  auto* rad = cli.add_subcommand("rademacher", "Monte-Carlo Rademacher complexity scaling");
  std::string rad_out;
  rad->add_option("--out", rad_out, "output CSV (default stdout)");

  // recipe
  auto* recipe = cli.add_subcommand("recipe", "run a named experiment recipe");
  std::string recipe_name, recipe_out = "out";
  std::optional<std::uint64_t> recipe_seed;
  recipe->add_option("name", recipe_name, "recipe name")->required()->check(CLI::IsMember(app::recipe_names()));
  recipe->add_option("--out", recipe_out, "output directory");
  recipe->add_option("--seed", recipe_seed, "override the run seed");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : app::kUsage;
  }

  try {
    if (*gen) {
      std::ostringstream os;
      for (long i = 0; i < gen_count; ++i) {
        const std::uint64_t seed = derive_seed(gen_seed, static_cast<std::uint64_t>(i));
        const auto line = stage(app::kData, "gen", [&]() -> std::string {
          if (gen_kind == "graph-er" || gen_kind == "graph-ws") {
            const Graph g = gen_kind == "graph-er"
                                ? erdos_renyi(static_cast<int>(gen_points), edge_prob, seed)
                                : watts_strogatz(static_cast<int>(gen_points), neighbors, rewire, seed);
            io::json j = io::to_json(g);
            j["label"] = gen_label;
            return j.dump();
          }
          Points p;
          if (gen_kind == "torus") p = sample_torus(gen_points, r_outer, r_inner, seed);
          else if (gen_kind == "sphere") p = sample_sphere(gen_points, radius, seed);
          else if (gen_kind == "ppp") p = sample_ppp_disk(mean_count, radius, seed);
          else if (gen_kind == "ginibre") p = sample_ginibre(static_cast<int>(gen_points), radius, seed);
          else p = orbit({rho, gen_points, seed});
          p = add_gaussian_noise(p, noise, derive_seed(seed, 99));
          io::json j = io::to_json(Measured::uniform(p), gen_label);
          if (p.cols() == 0) j["dim"] = p.rows();
          return j.dump();
        });
        os << line << '\n';
      }
      emit(gen_out, os.str());
    } else if (*ph) {
      app::RunConfig cfg = base_config(config_path, workers);
      cfg.complex = ph_complex;
      cfg.max_value = ph_max_value;
      cfg.hks_time = hks_time;
      cfg.homology.clear();
      for (int k = 0; k <= ph_max_dim; ++k) cfg.homology.push_back(k);
      app::Split split = stage(app::kData, "read", [&] {
        app::Split s;
        std::istringstream is(slurp(ph_in));
        std::string line;
        while (std::getline(is, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          const io::json j = io::json::parse(line);
          if (ph_graphs) s.graphs.push_back(io::graph_from_json(j));
          else s.clouds.push_back(io::measure_from_json(j).points());
          s.labels.push_back(j.value("label", 0));
        }
        return s;
      });
      const auto records = stage(app::kDiagrams, "ph", [&] { return app::compute_diagrams(split, cfg); });
      std::ostringstream os;
      io::write_diagrams(os, records);
      emit(ph_out, os.str());
    } else if (*train) {
      app::RunConfig cfg = base_config(config_path, workers);
      if (train_in.empty() == train_diagrams.empty())
        throw StageError(app::kUsage, "train", "give exactly one of --data or --diagrams");
      const Dataset data = stage(app::kData, "read", [&] {
        if (!train_in.empty()) return load_dataset(train_in);
        std::istringstream is(slurp(train_diagrams));
        return app::diagrams_to_dataset(io::read_diagrams(is), cfg);
      });
      const io::Model model = stage(app::kTraining, "train", [&] { return app::fit_model(data, cfg); });
      emit(model_out, io::model_to_json(model).dump(1) + "\n");
    } else if (*predict || *eval) {
      app::RunConfig cfg = base_config(config_path, workers);
      if (data_in.empty() == diagrams_in.empty())
        throw StageError(app::kUsage, "input", "give exactly one of --data or --diagrams");
      const io::Model model =
          stage(app::kData, "read", [&] { return io::model_from_json(io::json::parse(slurp(model_in))); });
      const Dataset data = stage(app::kData, "read", [&] {
        if (!data_in.empty()) return load_dataset(data_in);
        std::istringstream is(slurp(diagrams_in));
        return app::diagrams_to_dataset(io::read_diagrams(is), cfg);
      });
      if (*predict) {
        std::ostringstream os;
        stage(app::kEvaluation, "predict", [&] {
          for (const auto& mu : data.measures) os << io::model_predict(model, mu) << '\n';
          return 0;
        });
        emit(pred_out, os.str());
      } else {
        const auto m = stage(app::kEvaluation, "eval", [&] { return app::evaluate(model, data); });
        emit(pred_out, app::metrics_to_json(m).dump(1) + "\n");
      }
    } else if (*bn) {
      auto pick = [&](const std::string& path) {
        std::istringstream is(slurp(path));
        for (const auto& rec : io::read_diagrams(is))
          for (const auto& d : rec.diagrams)
            if (d.dim == bn_dim) return d;
        throw std::runtime_error(path + ": no diagram of dimension " + std::to_string(bn_dim));
      };
      const auto a = stage(app::kData, "read", [&] { return pick(bn_a); });
      const auto b = stage(app::kData, "read", [&] { return pick(bn_b); });
      std::cout << io::format_real(bottleneck(a, b)) << '\n';
    } else if (*lc) {
      app::RunConfig cfg = base_config(config_path, workers);
      cfg.limit.workers = cfg.workers;
      if (cfg.limit.rectangles.empty())
        throw StageError(app::kConfig, "config", "limit.rectangles must list at least one rectangle");
      const auto rows = stage(app::kData, "limit-check", [&] { return run_limit_check(cfg.limit); });
      emit(lc_out, app::limit_check_csv(rows));
    } else if (*rad) {
      app::RunConfig cfg = base_config(config_path, workers);
      const auto rows = stage(app::kData, "rademacher", [&] { return run_rademacher_scaling(cfg.rademacher); });
      emit(rad_out, app::rademacher_csv(rows));
    } else if (*recipe) {
      std::optional<std::string> cp;
      if (!config_path.empty()) cp = config_path;
      std::optional<int> w;
      if (workers > 0) w = workers;
      for (const auto& line : app::run_recipe(recipe_name, recipe_out, cp, w, recipe_seed)) std::cout << line << '\n';
    }
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return app::kData;
  }
  return app::kOk;
}
