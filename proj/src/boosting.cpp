#include "bba/learn/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bba/core/random.hpp"

namespace bba {

namespace {

SearchResult fit_weak(const Dataset& data, std::span<const double> w, const LearnerConfig& learner,
                      std::uint64_t round_seed, int workers) {
  if (learner.kind == LearnerKind::smooth) {
    SmoothTrainConfig cfg = learner.smooth;
    cfg.seed = derive_seed(learner.smooth.seed ^ round_seed, 1);
    return smooth_train(data, cfg, w);
  }
  const GridSpec* grid = &learner.grid;
  GridSpec sub;
  if (learner.grid.kind == RegionKind::ball && learner.center_subsample > 0 &&
      static_cast<std::size_t>(learner.center_subsample) < learner.grid.centers.size()) {
    sub = learner.grid;
    std::vector<std::size_t> idx(learner.grid.centers.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(derive_seed(round_seed, 2));
    for (std::size_t i = 0; i < static_cast<std::size_t>(learner.center_subsample); ++i)
      std::swap(idx[i], idx[i + uniform_index(rng, idx.size() - i)]);
    idx.resize(static_cast<std::size_t>(learner.center_subsample));
    std::sort(idx.begin(), idx.end());
    sub.centers.clear();
    for (auto i : idx) sub.centers.push_back(learner.grid.centers[i]);
    grid = &sub;
  }
  return exhaustive_search(data, w, *grid, workers);
}

}  // namespace

Ensemble adaboost_fit(const Dataset& data, const BoostConfig& cfg) {
  return adaboost_fit(data, cfg, nullptr);
}

Ensemble adaboost_fit(const Dataset& data, const BoostConfig& cfg, std::vector<std::vector<double>>* weight_trace) {
  if (cfg.rounds < 1) throw std::invalid_argument("adaboost: rounds must be >= 1");
  if (!(cfg.subsample_fraction > 0.0 && cfg.subsample_fraction <= 1.0))
    throw std::invalid_argument("adaboost: subsample fraction must be in (0, 1]");
  data.validate();
  if (data.size() == 0) throw std::invalid_argument("adaboost: empty dataset");
  for (int y : data.labels)
    if (y != 0 && y != 1) throw std::invalid_argument("adaboost: labels must be binary {0, 1}");

  const std::size_t n = data.size();
  std::vector<double> w = uniform_weights(n);
  Ensemble model;
  const double floor = cfg.error_floor;

  for (int t = 0; t < cfg.rounds; ++t) {
    if (weight_trace) weight_trace->push_back(w);
    const std::uint64_t round_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));

    SearchResult fit;
    if (cfg.subsample_fraction < 1.0) {
      const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cfg.subsample_fraction * n)));
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      Rng rng(derive_seed(round_seed, 3));
      for (std::size_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + uniform_index(rng, n - i)]);
      idx.resize(m);
      std::sort(idx.begin(), idx.end());
      const Dataset sub = data.subset(idx);
      std::vector<double> sw(m);
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) total += (sw[i] = w[idx[i]]);
      if (total <= 0.0) {
        sw = uniform_weights(m);
      } else {
        for (auto& v : sw) v /= total;
      }
      fit = fit_weak(sub, sw, cfg.learner, round_seed, cfg.workers);
    } else {
      fit = fit_weak(data, w, cfg.learner, round_seed, cfg.workers);
    }

    // Error and reweighting always use the full training set.
    std::vector<int> correct(n);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      correct[i] = predict(fit.classifier, data.measures[i]) == data.labels[i];
      if (!correct[i]) err += w[i];
    }
    if (t > 0 && err >= 0.5) break;
    const double e = std::clamp(err, floor, 1.0 - floor);
    const double alpha = 0.5 * std::log((1.0 - e) / e);
    model.stages.push_back(Stage{fit.classifier, alpha, err});
    if (err <= floor) break;

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= std::exp(correct[i] ? -alpha : alpha);
      total += w[i];
    }
    for (auto& v : w) v /= total;
  }
  return model;
}

double ensemble_score(const Ensemble& model, const Measured& mu, std::size_t stage_count) {
  double score = 0.0;
  const std::size_t m = std::min(stage_count, model.stages.size());
  for (std::size_t t = 0; t < m; ++t) {
    const auto& st = model.stages[t];
    score += st.alpha * (predict(st.classifier, mu) == 1 ? 1.0 : -1.0);
  }
  return score;
}

int ensemble_predict(const Ensemble& model, const Measured& mu) {
  if (model.stages.empty()) throw std::invalid_argument("ensemble_predict: model has no stages");
  if (model.labels.size() != 2) throw std::invalid_argument("ensemble_predict: binary label pair expected");
  return ensemble_score(model, mu, model.stages.size()) > 0.0 ? model.labels[1] : model.labels[0];
}

std::vector<double> staged_training_error(const Ensemble& model, const Dataset& data) {
  std::vector<double> out;
  out.reserve(model.stages.size());
  const std::size_t n = data.size();
  std::vector<double> scores(n, 0.0);
  for (const auto& st : model.stages) {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] += st.alpha * (predict(st.classifier, data.measures[i]) == 1 ? 1.0 : -1.0);
      const int label = scores[i] > 0.0 ? model.labels[1] : model.labels[0];
      if (label != data.labels[i]) ++wrong;
    }
    out.push_back(n ? static_cast<double>(wrong) / static_cast<double>(n) : 0.0);
  }
  return out;
}

OneVsOneModel one_vs_one_fit(const Dataset& data, const BoostConfig& cfg) {
  data.validate();
  return one_vs_one_fit(data, cfg, data.label_set());
}

OneVsOneModel one_vs_one_fit(const Dataset& data, const BoostConfig& cfg, std::vector<int> classes) {
  data.validate();
  std::sort(classes.begin(), classes.end());
  if (std::adjacent_find(classes.begin(), classes.end()) != classes.end())
    throw std::invalid_argument("one_vs_one: duplicate class id");
  if (classes.size() < 2) throw std::invalid_argument("one_vs_one: need at least two classes");
  for (int c : classes)
    if (std::find(data.labels.begin(), data.labels.end(), c) == data.labels.end())
      throw std::invalid_argument("one_vs_one: class " + std::to_string(c) + " has no training examples");
  for (int y : data.labels)
    if (!std::binary_search(classes.begin(), classes.end(), y))
      throw std::invalid_argument("one_vs_one: label " + std::to_string(y) + " is not a declared class");
  OneVsOneModel model;
  model.classes = std::move(classes);
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      const int ca = model.classes[a];
      const int cb = model.classes[b];
      Dataset pair;
      pair.dim = data.dim;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.labels[i] == ca) pair.push_back(data.measures[i], 0);
        else if (data.labels[i] == cb) pair.push_back(data.measures[i], 1);
      }
      BoostConfig sub = cfg;
      sub.seed = derive_seed(cfg.seed, 1000 + a * model.classes.size() + b);
      Ensemble e = adaboost_fit(pair, sub);
      e.labels = {ca, cb};
      model.pairs.emplace(std::make_pair(ca, cb), std::move(e));
    }
  }
  return model;
}

int one_vs_one_predict(const OneVsOneModel& model, const Measured& mu) {
  if (model.classes.empty()) throw std::invalid_argument("one_vs_one_predict: empty model");
  std::map<int, int> votes;
  for (int c : model.classes) votes[c] = 0;
  for (const auto& [key, e] : model.pairs) ++votes[ensemble_predict(e, mu)];
  int arg = model.classes.front();
  for (const auto& [c, v] : votes)
    if (v > votes[arg]) arg = c;  // map order: ties keep the smallest id
  return arg;
}

}  // namespace bba
