#include "bba/io/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace bba::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("expected a non-empty coordinate array");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) p(static_cast<Eigen::Index>(i)) = real_from_json(j[i]);
  return p;
}

json point_to_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(real_to_json(p(i)));
  return a;
}

template <typename T>
T checked_get(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("bad value for ") + what);
  }
}

}  // namespace

json real_to_json(double v) {
  if (std::isnan(v)) throw SchemaError("NaN is not serializable");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw SchemaError("expected a real number or \"inf\"");
}

json to_json(const Region& r) {
  return std::visit(
      [](const auto& reg) -> json {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, Balld>) {
          return {{"type", "ball"}, {"center", point_to_json(reg.center)}, {"radius", real_to_json(reg.radius)}};
        } else {
          return {{"type", "rect"}, {"mins", point_to_json(reg.mins)}, {"maxs", point_to_json(reg.maxs)}};
        }
      },
      r);
}

Region region_from_json(const json& j) {
  const std::string type = checked_get<std::string>(field(j, "type"), "region type");
  try {
    if (type == "ball") return Balld(point_from_json(field(j, "center")), real_from_json(field(j, "radius")));
    if (type == "rect") return AxisRectd(point_from_json(field(j, "mins")), point_from_json(field(j, "maxs")));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("unknown region type \"" + type + "\"");
}

json to_json(const WeakClassifier& h) {
  return {{"region", to_json(h.region)}, {"threshold", real_to_json(h.threshold)}, {"sign", h.sign}};
}

WeakClassifier classifier_from_json(const json& j) {
  WeakClassifier h;
  h.region = region_from_json(field(j, "region"));
  h.threshold = real_from_json(field(j, "threshold"));
  h.sign = checked_get<int>(field(j, "sign"), "sign");
  if (h.sign != 1 && h.sign != -1) throw SchemaError("sign must be +1 or -1");
  return h;
}

json to_json(const Ensemble& e) {
  json stages = json::array();
  for (const auto& st : e.stages) stages.push_back({{"classifier", to_json(st.classifier)}, {"alpha", st.alpha}, {"error", st.error}});
  return {{"labels", e.labels}, {"stages", stages}};
}

Ensemble ensemble_from_json(const json& j) {
  Ensemble e;
  e.labels = checked_get<std::vector<int>>(field(j, "labels"), "labels");
  if (e.labels.size() != 2) throw SchemaError("labels must hold two entries");
  const json& st = field(j, "stages");
  if (!st.is_array()) throw SchemaError("stages must be an array");
  for (const auto& s : st) {
    Stage stage{classifier_from_json(field(s, "classifier")), real_from_json(field(s, "alpha"))};
    if (s.contains("error")) stage.error = real_from_json(s["error"]);
    e.stages.push_back(std::move(stage));
  }
  return e;
}

json to_json(const OneVsOneModel& m) {
  json pairs = json::object();
  for (const auto& [key, e] : m.pairs) pairs[std::to_string(key.first) + "-" + std::to_string(key.second)] = to_json(e);
  return {{"classes", m.classes}, {"pairs", pairs}};
}

OneVsOneModel one_vs_one_from_json(const json& j) {
  OneVsOneModel m;
  m.classes = checked_get<std::vector<int>>(field(j, "classes"), "classes");
  const json& pairs = field(j, "pairs");
  if (!pairs.is_object()) throw SchemaError("pairs must be an object");
  for (const auto& [key, val] : pairs.items()) {
    int a = 0, b = 0;
    char dash = 0;
    std::istringstream ks(key);
    if (!(ks >> a >> dash >> b) || dash != '-' || !ks.eof()) throw SchemaError("bad pair key \"" + key + "\"");
    m.pairs.emplace(std::make_pair(a, b), ensemble_from_json(val));
  }
  return m;
}

json model_to_json(const Model& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

Model model_from_json(const json& j) {
  if (j.is_object() && j.contains("pairs")) return one_vs_one_from_json(j);
  return ensemble_from_json(j);
}

int model_predict(const Model& m, const Measured& mu) {
  if (const auto* e = std::get_if<Ensemble>(&m)) return ensemble_predict(*e, mu);
  return one_vs_one_predict(std::get<OneVsOneModel>(m), mu);
}

Eigen::Index model_dim(const Model& m) {
  const Ensemble* e = std::get_if<Ensemble>(&m);
  if (!e) {
    const auto& pairs = std::get<OneVsOneModel>(m).pairs;
    if (pairs.empty()) return 0;
    e = &pairs.begin()->second;
  }
  if (e->stages.empty()) return 0;
  return region_dim(e->stages.front().classifier.region);
}

json to_json(const Measured& mu, std::optional<int> label) {
  json j = json::object();
  if (label) j["label"] = *label;
  json pts = json::array();
  for (Eigen::Index i = 0; i < mu.size(); ++i) pts.push_back(point_to_json(mu.point(i)));
  j["points"] = pts;
  bool unit = true;
  for (Eigen::Index i = 0; i < mu.size(); ++i) unit = unit && mu.weight(i) == 1.0;
  if (!unit) {
    json w = json::array();
    for (Eigen::Index i = 0; i < mu.size(); ++i) w.push_back(real_to_json(mu.weight(i)));
    j["weights"] = w;
  }
  return j;
}

Measured measure_from_json(const json& j) {
  const json& pts = field(j, "points");
  if (!pts.is_array()) throw SchemaError("points must be an array");
  Eigen::Index dim = 0;
  if (j.contains("dim")) dim = checked_get<Eigen::Index>(j["dim"], "dim");
  if (!pts.empty()) {
    const Eigen::Index first = static_cast<Eigen::Index>(pts[0].size());
    if (dim != 0 && dim != first) throw SchemaError("point dimension disagrees with \"dim\"");
    dim = first;
  }
  if (dim < 1) throw SchemaError("empty measure needs an explicit \"dim\"");
  Points p(dim, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point q = point_from_json(pts[i]);
    if (q.size() != dim) throw SchemaError("inconsistent point dimension");
    p.col(static_cast<Eigen::Index>(i)) = q;
  }
  Eigen::VectorXd w = Eigen::VectorXd::Ones(p.cols());
  if (j.contains("weights")) {
    const json& wj = j["weights"];
    if (!wj.is_array() || wj.size() != pts.size()) throw SchemaError("weights must match points in length");
    for (std::size_t i = 0; i < wj.size(); ++i) w(static_cast<Eigen::Index>(i)) = real_from_json(wj[i]);
  }
  try {
    return Measured(std::move(p), std::move(w));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

void write_dataset(std::ostream& os, const Dataset& data) {
  data.validate();
  for (std::size_t i = 0; i < data.size(); ++i) {
    json j = to_json(data.measures[i], data.labels[i]);
    if (data.measures[i].empty()) j["dim"] = data.dim;
    os << j.dump() << '\n';
  }
}

Dataset read_dataset(std::istream& is) {
  Dataset data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      Measured mu = measure_from_json(j);
      const int label = checked_get<int>(field(j, "label"), "label");
      if (!data.measures.empty() && mu.dim() != data.dim) throw SchemaError("measure dimension mismatch");
      data.push_back(std::move(mu), label);
    } catch (const json::parse_error& e) {
      throw SchemaError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return data;
}

json to_json(const PersistenceDiagram& d) {
  json pairs = json::array();
  for (const auto& p : d.pairs) pairs.push_back({real_to_json(p.birth), real_to_json(p.death)});
  return {{"dim", d.dim}, {"pairs", pairs}};
}

PersistenceDiagram diagram_from_json(const json& j) {
  PersistenceDiagram d;
  d.dim = checked_get<int>(field(j, "dim"), "dim");
  const json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw SchemaError("pairs must be an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw SchemaError("pair must be [birth, death]");
    PersistencePair q;
    q.birth = real_from_json(p[0]);
    q.death = real_from_json(p[1]);
    if (!(q.birth <= q.death) || std::isinf(q.birth)) throw SchemaError("pair needs finite birth <= death");
    d.pairs.push_back(q);
  }
  return d;
}

void write_diagrams(std::ostream& os, const std::vector<DiagramRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& d : records[i].diagrams) {
      json j = to_json(d);
      j["id"] = i;
      if (records[i].label) j["label"] = *records[i].label;
      os << j.dump() << '\n';
    }
  }
}

std::vector<DiagramRecord> read_diagrams(std::istream& is) {
  std::vector<DiagramRecord> out;
  std::string line;
  long current = -1;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError(e.what());
    }
    const long id = j.contains("id") ? checked_get<long>(j["id"], "id") : current + 1;
    if (id != current) {
      out.emplace_back();
      current = id;
    }
    out.back().diagrams.push_back(diagram_from_json(j));
    if (j.contains("label")) out.back().label = checked_get<int>(j["label"], "label");
  }
  return out;
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return {{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
  const int n = checked_get<int>(field(j, "n"), "n");
  auto edges = checked_get<std::vector<std::pair<int, int>>>(field(j, "edges"), "edges");
  try {
    return Graph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace bba::io
