#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bba/app/app.hpp"

namespace bba::app {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not a number: \"" + s + "\"");
  return v;
}

long parse_long(const std::string& raw) {
  const std::string s = trim(raw);
  std::size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: \"" + s + "\"");
  return v;
}

std::uint64_t parse_seed(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty() || s[0] == '-') throw std::invalid_argument("seed must be a nonnegative integer");
  std::size_t pos = 0;
  const std::uint64_t v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: \"" + s + "\"");
  return v;
}

bool parse_bool(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("not a boolean: \"" + s + "\"");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

template <typename T, typename F>
std::vector<T> parse_list(const std::string& s, F&& f) {
  std::vector<T> out;
  for (const auto& item : split(s, ',')) out.push_back(static_cast<T>(f(item)));
  return out;
}

std::vector<Rectangle> parse_rectangles(const std::string& s) {
  std::vector<Rectangle> out;
  for (const auto& item : split(s, ';')) {
    const auto v = parse_list<double>(item, parse_real);
    if (v.size() != 4) throw std::invalid_argument("rectangle needs four values s,t,u,v");
    out.emplace_back(v[0], v[1], v[2], v[3]);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"run.name", [](RunConfig& c, const std::string& v) { c.name = trim(v); }},
      {"run.kind", [](RunConfig& c, const std::string& v) { c.kind = trim(v); }},
      {"run.seed", [](RunConfig& c, const std::string& v) { c.seed = parse_seed(v); }},
      {"run.workers", [](RunConfig& c, const std::string& v) { c.workers = static_cast<int>(parse_long(v)); }},
      {"run.output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); }},

      {"data.generator", [](RunConfig& c, const std::string& v) { c.generator = trim(v); }},
      {"data.n_train", [](RunConfig& c, const std::string& v) { c.n_train = parse_long(v); }},
      {"data.n_test", [](RunConfig& c, const std::string& v) { c.n_test = parse_long(v); }},
      {"data.points", [](RunConfig& c, const std::string& v) { c.points = parse_long(v); }},
      {"data.points_min", [](RunConfig& c, const std::string& v) { c.points_min = parse_long(v); }},
      {"data.points_max", [](RunConfig& c, const std::string& v) { c.points_max = parse_long(v); }},
      {"data.scale_min", [](RunConfig& c, const std::string& v) { c.scale_min = parse_real(v); }},
      {"data.scale_max", [](RunConfig& c, const std::string& v) { c.scale_max = parse_real(v); }},
      {"data.noise", [](RunConfig& c, const std::string& v) { c.noise = parse_real(v); }},
      {"data.torus_outer", [](RunConfig& c, const std::string& v) { c.torus_outer = parse_real(v); }},
      {"data.torus_inner", [](RunConfig& c, const std::string& v) { c.torus_inner = parse_real(v); }},
      {"data.sphere_radius", [](RunConfig& c, const std::string& v) { c.sphere_radius = parse_real(v); }},
      {"data.ppp_mean", [](RunConfig& c, const std::string& v) { c.ppp_mean = parse_real(v); }},
      {"data.disk_radius", [](RunConfig& c, const std::string& v) { c.disk_radius = parse_real(v); }},
      {"data.orbit_rhos", [](RunConfig& c, const std::string& v) { c.orbit_rhos = parse_list<double>(v, parse_real); }},
      {"data.graph_vertices",
       [](RunConfig& c, const std::string& v) { c.graph_vertices = static_cast<int>(parse_long(v)); }},
      {"data.graph_edge_prob", [](RunConfig& c, const std::string& v) { c.graph_edge_prob = parse_real(v); }},
      {"data.ws_neighbors", [](RunConfig& c, const std::string& v) { c.ws_neighbors = static_cast<int>(parse_long(v)); }},
      {"data.ws_rewire", [](RunConfig& c, const std::string& v) { c.ws_rewire = parse_real(v); }},
      {"data.hks_time", [](RunConfig& c, const std::string& v) { c.hks_time = parse_real(v); }},
      {"data.train_path", [](RunConfig& c, const std::string& v) { c.train_path = trim(v); }},
      {"data.test_path", [](RunConfig& c, const std::string& v) { c.test_path = trim(v); }},
      {"data.test_fraction", [](RunConfig& c, const std::string& v) { c.test_fraction = parse_real(v); }},

      {"features.kind", [](RunConfig& c, const std::string& v) { c.features = trim(v); }},

      {"filtration.complex", [](RunConfig& c, const std::string& v) { c.complex = trim(v); }},
      {"filtration.homology", [](RunConfig& c, const std::string& v) { c.homology = parse_list<int>(v, parse_long); }},
      {"filtration.max_value", [](RunConfig& c, const std::string& v) { c.max_value = parse_real(v); }},
      {"filtration.truncation",
       [](RunConfig& c, const std::string& v) {
         if (trim(v) == "none") c.truncation.reset();
         else c.truncation = parse_real(v);
       }},
      {"filtration.merge_radius", [](RunConfig& c, const std::string& v) { c.merge_radius = parse_real(v); }},

      {"diagram.weight", [](RunConfig& c, const std::string& v) { c.weight = trim(v); }},
      {"diagram.power", [](RunConfig& c, const std::string& v) { c.power = parse_real(v); }},
      {"diagram.rotate", [](RunConfig& c, const std::string& v) { c.rotate = parse_bool(v); }},

      {"learner.kind", [](RunConfig& c, const std::string& v) { c.learner = trim(v); }},
      {"learner.region", [](RunConfig& c, const std::string& v) { c.region = trim(v); }},
      {"learner.centers", [](RunConfig& c, const std::string& v) { c.centers = static_cast<int>(parse_long(v)); }},
      {"learner.radii", [](RunConfig& c, const std::string& v) { c.radii = parse_list<double>(v, parse_real); }},
      {"learner.radius_levels",
       [](RunConfig& c, const std::string& v) { c.radius_levels = static_cast<int>(parse_long(v)); }},
      {"learner.center_subsample",
       [](RunConfig& c, const std::string& v) { c.center_subsample = static_cast<int>(parse_long(v)); }},
      {"learner.threshold_quantiles",
       [](RunConfig& c, const std::string& v) { c.threshold_quantiles = static_cast<int>(parse_long(v)); }},
      {"learner.thresholds",
       [](RunConfig& c, const std::string& v) { c.thresholds = parse_list<double>(v, parse_real); }},
      {"learner.rect_levels", [](RunConfig& c, const std::string& v) { c.rect_levels = static_cast<int>(parse_long(v)); }},

      {"boost.rounds", [](RunConfig& c, const std::string& v) { c.rounds = static_cast<int>(parse_long(v)); }},
      {"boost.subsample_fraction", [](RunConfig& c, const std::string& v) { c.subsample_fraction = parse_real(v); }},
      {"boost.error_floor", [](RunConfig& c, const std::string& v) { c.error_floor = parse_real(v); }},

      {"smooth.learning_rate", [](RunConfig& c, const std::string& v) { c.smooth.learning_rate = parse_real(v); }},
      {"smooth.epochs", [](RunConfig& c, const std::string& v) { c.smooth.epochs = static_cast<int>(parse_long(v)); }},
      {"smooth.restarts",
       [](RunConfig& c, const std::string& v) { c.smooth.restarts = static_cast<int>(parse_long(v)); }},
      {"smooth.batch_size",
       [](RunConfig& c, const std::string& v) { c.smooth.batch_size = static_cast<int>(parse_long(v)); }},
      {"smooth.initial_scale", [](RunConfig& c, const std::string& v) { c.smooth.initial_scale = parse_real(v); }},
      {"smooth.seed", [](RunConfig& c, const std::string& v) { c.smooth.seed = parse_seed(v); }},

      {"limit.manifold",
       [](RunConfig& c, const std::string& v) {
         const std::string m = trim(v);
         if (m == "circle") c.limit.manifold = LimitManifold::circle;
         else if (m == "flat-square") c.limit.manifold = LimitManifold::flat_square;
         else throw std::invalid_argument("unknown manifold \"" + m + "\"");
       }},
      {"limit.k", [](RunConfig& c, const std::string& v) { c.limit.k = static_cast<int>(parse_long(v)); }},
      {"limit.sample_sizes",
       [](RunConfig& c, const std::string& v) { c.limit.sample_sizes = parse_list<long>(v, parse_long); }},
      {"limit.seeds",
       [](RunConfig& c, const std::string& v) { c.limit.seeds = parse_list<std::uint64_t>(v, parse_seed); }},
      {"limit.n_mc", [](RunConfig& c, const std::string& v) { c.limit.n_mc = parse_long(v); }},
      {"limit.mc_seed", [](RunConfig& c, const std::string& v) { c.limit.mc_seed = parse_seed(v); }},
      {"limit.rectangles", [](RunConfig& c, const std::string& v) { c.limit.rectangles = parse_rectangles(v); }},

      {"rademacher.sample_sizes",
       [](RunConfig& c, const std::string& v) { c.rademacher.sample_sizes = parse_list<long>(v, parse_long); }},
      {"rademacher.points_per_measure",
       [](RunConfig& c, const std::string& v) { c.rademacher.points_per_measure = static_cast<int>(parse_long(v)); }},
      {"rademacher.n_draws", [](RunConfig& c, const std::string& v) { c.rademacher.n_draws = parse_long(v); }},
      {"rademacher.seed", [](RunConfig& c, const std::string& v) { c.rademacher.seed = parse_seed(v); }},
  };
  return table;
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw StageError(kConfig, "config", e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  const auto& table = setters();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw StageError(kConfig, "config", "key \"" + section + "\" outside of a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = table.find(full);
      if (it == table.end()) throw StageError(kConfig, "config", "unknown key \"" + full + "\"");
      try {
        it->second(cfg, value.data());
      } catch (const StageError&) {
        throw;
      } catch (const std::exception& e) {
        throw StageError(kConfig, "config", "\"" + full + "\": " + e.what());
      }
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const std::exception& e) {
    throw StageError(kConfig, "config", e.what());
  }
  apply_config_text(cfg, text);
}

// ---------------------------------------------------------------------------

std::vector<std::string> recipe_names() {
  return {"torus-vs-sphere", "torus-sphere-random", "ppp-vs-gpp", "orbit-5class-reduced",
          "graph-hks-demo",  "limit-check",         "rademacher-scaling"};
}

std::vector<std::pair<std::string, RunConfig>> recipe_runs(const std::string& name) {
  std::vector<std::pair<std::string, RunConfig>> runs;
  RunConfig c;
  c.name = name;
  if (name == "torus-vs-sphere") {
    c.generator = "torus-sphere";
    c.n_train = 50;
    c.n_test = 50;
    c.points = 500;
    c.complex = "cech";
    c.homology = {1};
    c.max_value = 1.2;
    c.truncation = 1.2;
    c.centers = 20;
    c.radius_levels = 8;
    c.rounds = 10;
    for (double sigma : {0.0, 1.0, 4.0}) {
      RunConfig r = c;
      r.noise = sigma;
      std::ostringstream dir;
      dir << "noise-" << sigma;
      runs.emplace_back(dir.str(), r);
    }
  } else if (name == "torus-sphere-random") {
    c.generator = "torus-sphere-random";
    c.n_train = 50;
    c.n_test = 50;
    c.points_min = 150;
    c.points_max = 300;
    c.scale_min = 0.7;
    c.scale_max = 1.3;
    c.noise = 0.1;
    c.complex = "cech";
    c.homology = {0, 1};
    c.max_value = 1.5;
    c.truncation = 1.5;
    c.region = "rect";
    c.rect_levels = 8;
    c.rounds = 15;
    runs.emplace_back("", c);
  } else if (name == "ppp-vs-gpp") {
    c.generator = "ppp-gpp";
    c.n_train = 200;
    c.n_test = 100;
    c.ppp_mean = 30.0;
    c.disk_radius = 1.0;
    c.complex = "cech";
    c.homology = {1};
    c.centers = 20;
    c.radius_levels = 8;
    c.rounds = 30;
    runs.emplace_back("", c);
  } else if (name == "orbit-5class-reduced") {
    c.generator = "orbit";
    c.n_train = 100;
    c.n_test = 50;
    c.points = 300;
    c.features = "points";
    c.complex = "cech";
    c.homology = {0, 1};
    c.max_value = 0.1;
    c.truncation = 0.1;
    c.merge_radius = 0.002;
    c.centers = 40;
    c.radius_levels = 10;
    c.rounds = 40;
    runs.emplace_back("", c);
  } else if (name == "graph-hks-demo") {
    c.generator = "graph-hks";
    c.n_train = 100;
    c.n_test = 50;
    c.graph_vertices = 20;
    c.graph_edge_prob = 0.21;
    c.ws_neighbors = 2;
    c.ws_rewire = 0.1;
    c.hks_time = 10.0;
    c.homology = {0, 1};
    c.truncation = 1.0;
    c.centers = 15;
    c.radius_levels = 6;
    c.rounds = 10;
    runs.emplace_back("", c);
  } else if (name == "limit-check") {
    c.kind = "limit";
    c.limit.k = 0;
    RunConfig circle = c;
    circle.limit.manifold = LimitManifold::circle;
    circle.limit.rectangles = {Rectangle(0.0, 0.5, 0.5, 1.0), Rectangle(0.0, 1.0, 1.0, 2.0),
                               Rectangle(0.0, 0.5, 2.0, 3.0)};
    runs.emplace_back("circle", circle);
    RunConfig square = c;
    square.limit.manifold = LimitManifold::flat_square;
    square.limit.rectangles = {Rectangle(0.0, 0.1, 0.1, 0.25), Rectangle(0.0, 0.25, 0.25, 0.5),
                               Rectangle(0.0, 0.1, 0.5, 0.75)};
    runs.emplace_back("flat-square", square);
  } else if (name == "rademacher-scaling") {
    c.kind = "rademacher";
    runs.emplace_back("", c);
  } else {
    throw StageError(kUsage, "recipe", "unknown recipe \"" + name + "\"");
  }
  return runs;
}

}  // namespace bba::app
