#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bba/core/measure.hpp"

namespace bba {

/// Simplex of dimension <= 3; unused vertex slots hold -1.
struct Simplex {
  std::array<int, 4> vertices{-1, -1, -1, -1};
  int dim = 0;
  double value = 0.0;

  int vertex(int i) const { return vertices[static_cast<std::size_t>(i)]; }
};

/// Filtration order: (value, dim, lexicographic vertices).
bool filtration_less(const Simplex& a, const Simplex& b);

class FilteredComplex {
 public:
  FilteredComplex() = default;

  /// Sorts, validates face closure and monotonicity; throws on violation.
  static FilteredComplex from_simplices(std::vector<Simplex> simplices, int max_dim, int point_count);

  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  int max_dim() const { return max_dim_; }
  int point_count() const { return point_count_; }

  /// Position of a face given its sorted vertices, or -1.
  long index_of(const std::array<int, 4>& vertices) const;

  /// Positions of codimension-1 faces of simplex `i`, ascending.
  std::vector<int> boundary(std::size_t i) const;

 private:
  std::vector<Simplex> simplices_;
  std::vector<std::pair<std::uint64_t, int>> index_;  // sorted by key
  int max_dim_ = 0;
  int point_count_ = 0;
};

struct FiltrationOptions {
  int max_dim = 2;
  double max_value = 1e300;
  /// Upper bound on the number of enumerated simplices.
  std::size_t max_simplices = 50'000'000;
  /// Seed for the deterministic jitter applied to duplicate points.
  std::uint64_t jitter_seed = 0;
};

/// Minimal enclosing ball radius of up to four points (Welzl recursion).
double min_enclosing_radius(const Points& pts);

/// Closed-form minimal enclosing ball radius of a triangle from squared side lengths.
double triangle_enclosing_radius(double ab2, double bc2, double ca2);

/// Cech filtration: simplex value = radius of the minimal enclosing ball of its vertices.
FilteredComplex cech_filtration(const Points& points, const FiltrationOptions& opts);

/// Rips filtration with value = (max pairwise distance) / 2, so edges agree with Cech.
FilteredComplex rips_filtration(const Points& points, const FiltrationOptions& opts);

/// Greedy thinning in column order: a point is dropped when it lies within
/// `radius` of an earlier kept point. Diagrams move by at most `radius` in
/// bottleneck distance.
Points merge_close_points(const Points& points, double radius);

/// Copy of `points` where exact duplicates are displaced by 1e-12 * bounding-box diagonal.
Points jitter_duplicates(const Points& points, std::uint64_t seed);

}  // namespace bba
