#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "bba/core/measure.hpp"
#include "bba/topology/filtration.hpp"

namespace bba {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  double birth = 0.0;
  double death = kInfinity;
  /// Filtration positions of the creating / destroying simplices (-1 if essential).
  int birth_simplex = -1;
  int death_simplex = -1;

  double persistence() const { return death - birth; }
  bool essential() const { return death == kInfinity; }
};

struct PersistenceDiagram {
  int dim = 0;
  std::vector<PersistencePair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

struct PersistenceOptions {
  /// Keep pairs with birth == death.
  bool include_zero_length = false;
  /// Skip columns of known positive simplices (twist optimization).
  bool clearing = true;
};

/// GF(2) column reduction of the boundary matrix in filtration order.
/// Returns diagrams for dimensions 0 .. max_dim - 1 (max_dim 0 yields H0 only).
std::vector<PersistenceDiagram> persistence(const FilteredComplex& complex, const PersistenceOptions& opts = {});

/// Brute-force Betti number of the subcomplex {value <= r} (or {value < r} when
/// strict) by GF(2) rank of boundary matrices.
int betti_oracle(const FilteredComplex& complex, double r, int k, bool strict = false);

/// Persistent Betti count read off a diagram: #{pairs with b <= r < d}.
int persistent_betti(const PersistenceDiagram& dgm, double r);

/// (b, d) -> (b, d - b); essential points use the truncation value for d.
Measured rotate_diagram(const PersistenceDiagram& dgm, std::optional<double> truncation = std::nullopt);

enum class DiagramWeight { constant, persistence, persistence_power };

struct DiagramMeasureOptions {
  DiagramWeight weight = DiagramWeight::constant;
  double power = 1.0;
  std::optional<double> truncation;
  bool rotate = true;
};

/// Diagram as a 2-d measure with one Dirac mass per pair.
Measured diagram_to_measure(const PersistenceDiagram& dgm, const DiagramMeasureOptions& opts = {});
Measured diagram_to_measure(const PersistenceDiagram& dgm, const std::function<double(double, double)>& weight,
                            std::optional<double> truncation, bool rotate);

/// Bottleneck distance with the l-infinity ground metric. Essential points
/// must be matched among themselves (by birth); unequal counts give +inf.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

}  // namespace bba
