#include "bba/learn/weak_learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "bba/core/parallel.hpp"
#include "bba/core/random.hpp"

namespace bba {

namespace {

void check_binary(const Dataset& data) {
  data.validate();
  for (int y : data.labels)
    if (y != 0 && y != 1) throw std::invalid_argument("expected binary labels in {0, 1}");
}

void check_weights(std::span<const double> w, std::size_t n) {
  if (w.size() != n) throw std::invalid_argument("weights: length differs from dataset size");
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("weights: must be finite and >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("weights: not normalized");
}

// Lexicographic selection key: (error, orientation rank, region, threshold).
using Key = std::tuple<double, int, std::size_t, std::size_t>;

int sign_rank(int sign) { return sign > 0 ? 0 : 1; }

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

int predict(const WeakClassifier& h, const Measured& mu) {
  return decide(h.sign, mass_in_region(mu, h.region), h.threshold) ? 1 : 0;
}

double weighted_error(const WeakClassifier& h, const Dataset& data, std::span<const double> w) {
  check_weights(w, data.size());
  double err = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (predict(h, data.measures[i]) != data.labels[i]) err += w[i];
  return err;
}

std::vector<double> uniform_weights(std::size_t n) {
  return std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0);
}

std::vector<Region> GridSpec::candidate_regions() const {
  std::vector<Region> out;
  if (kind == RegionKind::ball) {
    out.reserve(centers.size() * radii.size());
    for (const auto& c : centers)
      for (double r : radii) out.emplace_back(Balld(c, r));
    return out;
  }
  if (rect_mins.size() != rect_maxs.size() || rect_mins.empty())
    throw std::invalid_argument("grid: rect_mins/rect_maxs must be non-empty and per-axis");
  const std::size_t d = rect_mins.size();
  std::vector<std::vector<std::pair<double, double>>> per_axis(d);
  for (std::size_t j = 0; j < d; ++j)
    for (double lo : rect_mins[j])
      for (double hi : rect_maxs[j])
        if (lo <= hi) per_axis[j].emplace_back(lo, hi);
  std::vector<std::size_t> idx(d, 0);
  for (const auto& axis : per_axis)
    if (axis.empty()) return out;
  while (true) {
    Point lo(static_cast<Eigen::Index>(d)), hi(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      lo(static_cast<Eigen::Index>(j)) = per_axis[j][idx[j]].first;
      hi(static_cast<Eigen::Index>(j)) = per_axis[j][idx[j]].second;
    }
    out.emplace_back(AxisRectd(lo, hi));
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (++idx[j] < per_axis[j].size()) break;
      idx[j] = 0;
      if (j == 0) return out;
    }
  }
}

std::vector<double> default_thresholds(std::span<const double> masses, int quantiles) {
  if (masses.empty()) return {0.0};
  std::vector<double> sorted(masses.begin(), masses.end());
  std::sort(sorted.begin(), sorted.end());
  const int q = std::max(1, quantiles);
  std::vector<double> levels;
  for (int j = 0; j <= q; ++j) levels.push_back(quantile_sorted(sorted, static_cast<double>(j) / q));
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<double> out(levels);
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) out.push_back(0.5 * (levels[j] + levels[j + 1]));
  const double lo = levels.front();
  double spread = std::max(levels.back() - lo, std::abs(lo));
  if (spread == 0.0) spread = 1.0;
  out.push_back(lo - 0.5 * spread);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SearchResult exhaustive_search(const Dataset& data, std::span<const double> w, const GridSpec& grid,
                               int workers) {
  check_binary(data);
  check_weights(w, data.size());
  const auto regions = grid.candidate_regions();
  if (regions.empty()) throw std::invalid_argument("exhaustive_search: empty region grid");
  if (grid.kind == RegionKind::ball && grid.radii.empty())
    throw std::invalid_argument("exhaustive_search: empty radius grid");

  const std::size_t n = data.size();
  struct Best {
    Key key{std::numeric_limits<double>::infinity(), 2, 0, 0};
    double threshold = 0.0;
    int sign = 1;
  };
  std::vector<Best> best(regions.size());

  parallel_for(regions.size(), workers, [&](std::size_t r) {
    std::vector<double> masses(n);
    for (std::size_t i = 0; i < n; ++i) masses[i] = mass_in_region(data.measures[i], regions[r]);
    const std::vector<double> thresholds =
        grid.thresholds.empty() ? default_thresholds(masses, grid.threshold_quantiles) : grid.thresholds;
    Best local;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      for (int sign : {1, -1}) {
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          if ((decide(sign, masses[i], thresholds[t]) ? 1 : 0) != data.labels[i]) err += w[i];
        const Key key{err, sign_rank(sign), r, t};
        if (key < local.key) {
          local.key = key;
          local.threshold = thresholds[t];
          local.sign = sign;
        }
      }
    }
    best[r] = local;
  });

  std::size_t arg = 0;
  for (std::size_t r = 1; r < best.size(); ++r)
    if (best[r].key < best[arg].key) arg = r;
  SearchResult res;
  res.classifier = WeakClassifier{regions[arg], best[arg].threshold, best[arg].sign};
  res.error = std::get<0>(best[arg].key);
  return res;
}

Points pooled_support(const Dataset& data) {
  Eigen::Index total = 0;
  for (const auto& mu : data.measures) total += mu.size();
  Points out(data.dim, total);
  Eigen::Index c = 0;
  for (const auto& mu : data.measures) {
    out.middleCols(c, mu.size()) = mu.points();
    c += mu.size();
  }
  return out;
}

std::vector<Point> kmeans_centers(const Points& points, int k, std::uint64_t seed) {
  const Eigen::Index n = points.cols();
  if (n == 0) throw std::invalid_argument("kmeans: empty input");
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: require 1 <= k <= number of points");
  Rng rng(seed);

  // k-means++ seeding
  Points centers(points.rows(), k);
  centers.col(0) = points.col(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(n))));
  Eigen::VectorXd d2 = (points.colwise() - centers.col(0)).colwise().squaredNorm().transpose();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = uniform01(rng) * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d2(i) <= 0.0) continue;
        u -= d2(i);
        if (u < 0.0) {
          pick = i;
          break;
        }
      }
      while (d2(pick) <= 0.0 && pick > 0) --pick;
    } else {
      pick = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(n)));
    }
    centers.col(c) = points.col(pick);
    d2 = d2.cwiseMin((points.colwise() - centers.col(c)).colwise().squaredNorm().transpose());
  }

  // Lloyd
  std::vector<Eigen::Index> assign(static_cast<std::size_t>(n), 0);
  for (int iter = 0; iter < 100; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index arg = 0;
      (centers.colwise() - points.col(i)).colwise().squaredNorm().minCoeff(&arg);
      assign[static_cast<std::size_t>(i)] = arg;
    }
    Points sums = Points::Zero(points.rows(), k);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.col(assign[static_cast<std::size_t>(i)]) += points.col(i);
      counts(assign[static_cast<std::size_t>(i)]) += 1.0;
    }
    double shift = 0.0;
    for (int c = 0; c < k; ++c) {
      if (counts(c) == 0.0) continue;  // empty cluster keeps its center
      const Point next = sums.col(c) / counts(c);
      shift = std::max(shift, (next - centers.col(c)).norm());
      centers.col(c) = next;
    }
    if (shift < 1e-6) break;
  }

  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) out.emplace_back(centers.col(c));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kProbFloor = 1e-12;

struct FeatureTerms {
  double f = 0.0;
  Point dcenter;
  double dradius = 0.0;
  double dscale = 0.0;
};

FeatureTerms feature_with_gradient(const Measured& mu, const SmoothParamsd& p) {
  FeatureTerms out;
  out.dcenter = Point::Zero(mu.dim());
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const Point diff = mu.point(j) - p.center;
    const double norm = diff.norm();
    const double d = norm - p.radius;
    const double w = mu.weight(j);
    if (d <= 0.0) {
      out.f += w;
      continue;
    }
    const double e = std::exp(-d / p.scale);
    out.f += w * e;
    out.dcenter += (w * e / (p.scale * norm)) * diff;
    out.dradius += w * e / p.scale;
    out.dscale += w * e * d / (p.scale * p.scale);
  }
  out.f -= p.threshold;
  return out;
}

double clamped_prob(double f) {
  return std::clamp(sigmoid(f), kProbFloor, 1.0 - kProbFloor);
}

}  // namespace

double cross_entropy_loss(const SmoothParamsd& p, const Dataset& data, std::span<const double> example_weights) {
  check_binary(data);
  if (!example_weights.empty() && example_weights.size() != data.size())
    throw std::invalid_argument("cross_entropy_loss: weight length mismatch");
  double loss = 0.0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const double prob = clamped_prob(smooth_feature(data.measures[k], p));
    const double term = data.labels[k] == 1 ? -std::log(prob) : -std::log(1.0 - prob);
    loss += (example_weights.empty() ? 1.0 : example_weights[k]) * term;
  }
  return loss;
}

SmoothGradient cross_entropy_gradient(const SmoothParamsd& p, const Dataset& data,
                                      std::span<const double> example_weights,
                                      std::span<const std::size_t> batch) {
  if (!(p.scale > 0.0)) throw std::invalid_argument("cross_entropy_gradient: scale must be > 0");
  SmoothGradient g;
  g.center = Point::Zero(data.dim);
  auto accumulate = [&](std::size_t k) {
    const FeatureTerms t = feature_with_gradient(data.measures[k], p);
    const double raw = sigmoid(t.f);
    if (raw < kProbFloor || raw > 1.0 - kProbFloor) return;  // clamped: flat loss
    const double c = (example_weights.empty() ? 1.0 : example_weights[k]) * (raw - data.labels[k]);
    g.center += c * t.dcenter;
    g.radius += c * t.dradius;
    g.scale += c * t.dscale;
    g.threshold -= c;
  };
  if (batch.empty()) {
    for (std::size_t k = 0; k < data.size(); ++k) accumulate(k);
  } else {
    for (std::size_t k : batch) accumulate(k);
  }
  return g;
}

SearchResult smooth_train(const Dataset& data, const SmoothTrainConfig& cfg, std::span<const double> w) {
  check_binary(data);
  if (data.size() == 0) throw std::invalid_argument("smooth_train: empty dataset");
  if (!(cfg.learning_rate > 0.0) || cfg.epochs < 1 || cfg.restarts < 1 || cfg.batch_size < 1 ||
      !(cfg.initial_scale > 0.0))
    throw std::invalid_argument("smooth_train: configuration values must be positive");
  std::vector<double> weights = w.empty() ? uniform_weights(data.size()) : std::vector<double>(w.begin(), w.end());
  check_weights(weights, data.size());
  const std::size_t n = data.size();
  std::vector<double> multipliers(n);
  for (std::size_t i = 0; i < n; ++i) multipliers[i] = weights[i] * static_cast<double>(n);

  const Points support = pooled_support(data);
  Rng rng(cfg.seed);

  // Pairwise distances over a bounded deterministic sample of the support.
  std::vector<double> pair_dists;
  {
    const Eigen::Index m = std::min<Eigen::Index>(support.cols(), 200);
    std::vector<Eigen::Index> pick(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
      pick[static_cast<std::size_t>(i)] = support.cols() <= 200 ? i : (i * support.cols()) / m;
    for (std::size_t a = 0; a < pick.size(); ++a)
      for (std::size_t b = a + 1; b < pick.size(); ++b)
        pair_dists.push_back((support.col(pick[a]) - support.col(pick[b])).norm());
    std::sort(pair_dists.begin(), pair_dists.end());
    if (pair_dists.empty()) pair_dists.push_back(0.0);
  }

  SearchResult best;
  bool have_best = false;
  std::size_t best_run = 0;
  std::size_t run = 0;
  std::vector<std::size_t> order(n);

  for (int orientation : {1, -1}) {
    Dataset oriented = data;
    if (orientation < 0)
      for (auto& y : oriented.labels) y = 1 - y;

    for (int restart = 0; restart < cfg.restarts; ++restart, ++run) {
      SmoothParamsd p;
      if (support.cols() > 0) {
        p.center = support.col(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(support.cols()))));
      } else {
        p.center = Point::Zero(data.dim);
      }
      p.radius = quantile_sorted(pair_dists, uniform01(rng));
      p.scale = cfg.initial_scale;
      {
        std::vector<double> masses(n);
        const Region ball = Balld(p.center, p.radius);
        for (std::size_t i = 0; i < n; ++i) masses[i] = mass_in_region(data.measures[i], ball);
        std::sort(masses.begin(), masses.end());
        p.threshold = quantile_sorted(masses, 0.5);
      }

      std::iota(order.begin(), order.end(), std::size_t{0});
      for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
          const std::size_t stop = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
          std::span<const std::size_t> batch(order.data() + start, stop - start);
          const SmoothGradient g = cross_entropy_gradient(p, oriented, multipliers, batch);
          const double step = cfg.learning_rate / static_cast<double>(batch.size());
          p.center -= step * g.center;
          p.radius = std::max(0.0, p.radius - step * g.radius);
          p.threshold -= step * g.threshold;
          p.scale = std::max(1e-6, p.scale - step * g.scale);
        }
        const WeakClassifier hard{Balld(p.center, p.radius), p.threshold, orientation};
        const double err = weighted_error(hard, data, weights);
        const bool better = !have_best || err < best.error ||
                            (err == best.error && sign_rank(orientation) < sign_rank(best.classifier.sign)) ||
                            (err == best.error && orientation == best.classifier.sign && run < best_run);
        if (better) {
          best = SearchResult{hard, err};
          best_run = run;
          have_best = true;
        }
      }
    }
  }
  return best;
}

}  // namespace bba
