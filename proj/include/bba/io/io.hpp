#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bba/core/measure.hpp"
#include "bba/datagen/datagen.hpp"
#include "bba/learn/boosting.hpp"
#include "bba/topology/persistence.hpp"

namespace bba::io {

using json = nlohmann::json;

/// Raised for malformed or inconsistent files.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reals: non-finite values are written as the strings "inf" / "-inf".
json real_to_json(double v);
double real_from_json(const json& j);

json to_json(const Region& r);
Region region_from_json(const json& j);

json to_json(const WeakClassifier& h);
WeakClassifier classifier_from_json(const json& j);

json to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j);

json to_json(const OneVsOneModel& m);
OneVsOneModel one_vs_one_from_json(const json& j);

/// Binary ensembles and one-vs-one models share the model file.
using Model = std::variant<Ensemble, OneVsOneModel>;
json model_to_json(const Model& m);
Model model_from_json(const json& j);
int model_predict(const Model& m, const Measured& mu);
Eigen::Index model_dim(const Model& m);

json to_json(const Measured& mu, std::optional<int> label = std::nullopt);
Measured measure_from_json(const json& j);

/// One {"label", "points", "weights"?} object per line.
void write_dataset(std::ostream& os, const Dataset& data);
Dataset read_dataset(std::istream& is);

/// One {"dim", "pairs"} object per line, optional "label".
struct DiagramRecord {
  std::vector<PersistenceDiagram> diagrams;
  std::optional<int> label;
};
json to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const json& j);
void write_diagrams(std::ostream& os, const std::vector<DiagramRecord>& records);
std::vector<DiagramRecord> read_diagrams(std::istream& is);

json to_json(const Graph& g);
Graph graph_from_json(const json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Shortest round-trip decimal representation.
std::string format_real(double v);

}  // namespace bba::io
