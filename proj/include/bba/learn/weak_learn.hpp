#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bba/core/measure.hpp"
#include "bba/core/regions.hpp"

namespace bba {

/// Region + mass threshold + sign. Predicts label 1 iff sign * (mu(A) - threshold) > 0.
struct WeakClassifier {
  Region region;
  double threshold = 0.0;
  int sign = 1;
};

inline bool decide(int sign, double mass, double threshold) {
  return sign > 0 ? mass > threshold : mass < threshold;
}

/// Predicted label in {0, 1}.
int predict(const WeakClassifier& h, const Measured& mu);

/// sum_i w_i 1{h(mu_i) != Y_i}; w must be nonnegative and sum to 1 (tolerance 1e-9).
double weighted_error(const WeakClassifier& h, const Dataset& data, std::span<const double> w);

/// Uniform weights 1/N.
std::vector<double> uniform_weights(std::size_t n);

enum class RegionKind { ball, rect };

/// Discretized search space for the exhaustive learner.
///
/// Ball grids use `centers` x `radii`. Rect grids take the Cartesian product
/// over axes of (min, max) pairs drawn from `rect_mins[j]` x `rect_maxs[j]`
/// with min <= max. When `thresholds` is empty a per-region default grid is
/// derived from the observed masses (see default_thresholds).
struct GridSpec {
  RegionKind kind = RegionKind::ball;
  std::vector<Point> centers;
  std::vector<double> radii;
  std::vector<std::vector<double>> rect_mins;
  std::vector<std::vector<double>> rect_maxs;
  std::vector<double> thresholds;
  int threshold_quantiles = 10;

  std::vector<Region> candidate_regions() const;
};

/// Quantiles at levels {0, 1/q, ..., 1} of the masses, midpoints between
/// consecutive distinct quantiles, and one value below the minimum so a
/// constant prediction is always reachable. Sorted ascending, distinct.
std::vector<double> default_thresholds(std::span<const double> masses, int quantiles);

struct SearchResult {
  WeakClassifier classifier;
  double error = 1.0;
};

/// Exhaustive minimization of the weighted 0-1 loss over regions x thresholds x
/// orientations. Ties: lowest error, then sign +1, then grid enumeration order.
SearchResult exhaustive_search(const Dataset& data, std::span<const double> w, const GridSpec& grid,
                               int workers = 1);

/// Lloyd iterations (cap 100, tolerance 1e-6) from k-means++ seeding. Points are columns.
std::vector<Point> kmeans_centers(const Points& points, int k, std::uint64_t seed);

/// All support points of all measures, column-wise.
Points pooled_support(const Dataset& data);

// ---------------------------------------------------------------------------
// Smoothed learner

struct SmoothTrainConfig {
  double learning_rate = 0.05;
  int epochs = 100;
  int restarts = 10;
  int batch_size = 16;
  double initial_scale = 0.1;
  std::uint64_t seed = 0;
};

struct SmoothGradient {
  Point center;
  double radius = 0.0;
  double threshold = 0.0;
  double scale = 0.0;
};

/// Cross-entropy of sigmoid(f_{C,r,s,sigma}(mu_k)) against binary labels.
/// Probabilities are clamped to [1e-12, 1 - 1e-12]. Optional per-example
/// multipliers scale each term (boosting weights times N).
double cross_entropy_loss(const SmoothParamsd& p, const Dataset& data,
                          std::span<const double> example_weights = {});

/// Analytic gradient of cross_entropy_loss with respect to (C, r, s, sigma),
/// restricted to the examples in `batch` (all examples when empty).
SmoothGradient cross_entropy_gradient(const SmoothParamsd& p, const Dataset& data,
                                      std::span<const double> example_weights = {},
                                      std::span<const std::size_t> batch = {});

/// Hardened smoothed learner: restarts x both label orientations of plain SGD;
/// returns the ball classifier with lowest weighted 0-1 training error.
SearchResult smooth_train(const Dataset& data, const SmoothTrainConfig& cfg,
                          std::span<const double> w = {});

}  // namespace bba
