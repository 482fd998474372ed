#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bba/learn/weak_learn.hpp"

namespace bba {

struct Stage {
  WeakClassifier classifier;
  double alpha = 0.0;
  /// Weighted training error of the stage before clamping.
  double error = 0.0;
};

/// Weighted vote of weak classifiers. `labels[0]` is emitted for a
/// non-positive vote, `labels[1]` for a positive one.
struct Ensemble {
  std::vector<int> labels{0, 1};
  std::vector<Stage> stages;
};

enum class LearnerKind { exhaustive, smooth };

struct LearnerConfig {
  LearnerKind kind = LearnerKind::exhaustive;
  GridSpec grid;
  /// When > 0 and smaller than grid.centers, each round searches a fresh
  /// seed-derived subset of this many ball centers.
  int center_subsample = 0;
  SmoothTrainConfig smooth;
};

struct BoostConfig {
  int rounds = 10;
  LearnerConfig learner;
  /// Fraction of the training set handed to the weak learner each round.
  double subsample_fraction = 1.0;
  /// Weighted errors are clamped to [error_floor, 1 - error_floor] before alpha.
  double error_floor = 1e-10;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// Discrete AdaBoost over measure weak classifiers. Labels must lie in {0, 1}.
Ensemble adaboost_fit(const Dataset& data, const BoostConfig& cfg);

/// Also returns the normalized example weights in force at each round.
Ensemble adaboost_fit(const Dataset& data, const BoostConfig& cfg, std::vector<std::vector<double>>* weight_trace);

/// Signed vote sum_t alpha_t * (+1 | -1).
double ensemble_score(const Ensemble& model, const Measured& mu, std::size_t stage_count);
int ensemble_predict(const Ensemble& model, const Measured& mu);

/// 0-1 training error after each prefix of stages.
std::vector<double> staged_training_error(const Ensemble& model, const Dataset& data);

/// One binary ensemble per unordered class pair, keyed "i-j" with i < j.
struct OneVsOneModel {
  std::vector<int> classes;
  std::map<std::pair<int, int>, Ensemble> pairs;
};

OneVsOneModel one_vs_one_fit(const Dataset& data, const BoostConfig& cfg);
/// Declared class list; every class needs at least one training example.
OneVsOneModel one_vs_one_fit(const Dataset& data, const BoostConfig& cfg, std::vector<int> classes);
int one_vs_one_predict(const OneVsOneModel& model, const Measured& mu);

}  // namespace bba
