#include "bba/limit/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bba/core/parallel.hpp"
#include "bba/core/random.hpp"

namespace bba {

Rectangle::Rectangle(double s_, double t_, double u_, double v_) : s(s_), t(t_), u(u_), v(v_) {
  if (!(s >= 0.0 && s <= t && t <= u && u <= v)) throw std::invalid_argument("rectangle: require 0 <= s <= t <= u <= v");
}

double r_n_exponent(int k, int d) {
  if (k < 0 || d < 1) throw std::invalid_argument("r_n: require k >= 0, d >= 1");
  if (k <= d - 4) return static_cast<double>(k + 2) / static_cast<double>(2 + d * (k + 1));
  return static_cast<double>(k + 4) / static_cast<double>(d * (k + 3));
}

double r_n_schedule(long n, int k, int d) {
  if (n < 2) throw std::invalid_argument("r_n: require n >= 2");
  return std::pow(static_cast<double>(n), -r_n_exponent(k, d));
}

double xi_normalize(double count, long n, double r_n, int k, int d) {
  if (n < 1 || !(r_n > 0.0) || !std::isfinite(r_n) || k < 0 || d < 1)
    throw std::invalid_argument("xi: inconsistent (n, r_n, k, d)");
  const double norm = std::pow(static_cast<double>(n), k + 2) * std::pow(r_n, d * (k + 1));
  return count / norm;
}

double xi_count(const PersistenceDiagram& dgm, const Rectangle& rect, long n, double r_n, int k, int d) {
  if (dgm.dim != k) throw std::invalid_argument("xi: diagram dimension differs from k");
  long count = 0;
  for (const auto& p : dgm.pairs)
    if (rect.contains(p.birth, p.death)) ++count;
  return xi_normalize(static_cast<double>(count), n, r_n, k, d);
}

double ball_volume(int d, double radius) {
  const double half = 0.5 * d;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) * std::pow(radius, d);
}

namespace {

int reduced_betti_strict(const FilteredComplex& c, double r, int k) {
  int b = betti_oracle(c, r, k, /*strict=*/true);
  if (k == 0) {
    int vertices = 0;
    for (const auto& s : c.simplices())
      if (s.dim == 0 && s.value < r) ++vertices;
    if (vertices > 0) b -= 1;
  }
  return b;
}

FilteredComplex small_cech(const Points& pts, int k) {
  FiltrationOptions opts;
  opts.max_dim = std::min(k + 1, 3);
  return cech_filtration(pts, opts);
}

}  // namespace

int limit_h(const Points& pts, double r, int k) {
  return reduced_betti_strict(small_cech(pts, k), r, k) == 1 ? 1 : 0;
}

int limit_H(const Points& pts, const Rectangle& rect, int k) {
  const FilteredComplex c = small_cech(pts, k);
  auto h = [&](double r) { return reduced_betti_strict(c, r, k) == 1 ? 1 : 0; };
  const int hs = h(rect.s), ht = h(rect.t), hu = h(rect.u);
  const int hv = std::isinf(rect.v) ? 0 : h(rect.v);
  return ht * hu - ht * hv - hs * hu + hs * hv;
}

MonteCarloEstimate mu_k_montecarlo(double density_moment, int k, int d, const Rectangle& rect, long n_mc,
                                   std::uint64_t seed) {
  if (std::isinf(rect.v)) throw std::invalid_argument("mu_k: rectangle must have finite v");
  if (k < 0 || k > 2 || d < 1) throw std::invalid_argument("mu_k: require 0 <= k <= 2 and d >= 1");
  if (n_mc < 2) throw std::invalid_argument("mu_k: need at least two Monte-Carlo samples");
  if (rect.s == rect.t || rect.u == rect.v) return {};

  const double radius = (k + 2) * rect.v;
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Points pts = Points::Zero(d, k + 2);
  std::vector<double> values(static_cast<std::size_t>(n_mc));
  for (long m = 0; m < n_mc; ++m) {
    for (int j = 1; j <= k + 1; ++j) {
      Point dir(d);
      for (int c = 0; c < d; ++c) dir(c) = normal(rng);
      const double rad = radius * std::pow(uniform01(rng), 1.0 / d);
      pts.col(j) = rad * dir.normalized();
    }
    values[static_cast<std::size_t>(m)] = limit_H(pts, rect, k);
  }
  const double mean = pairwise_sum(values) / static_cast<double>(n_mc);
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(n_mc - 1);

  double factorial = 1.0;
  for (int j = 2; j <= k + 2; ++j) factorial *= j;
  const double scale = density_moment / factorial * std::pow(ball_volume(d, radius), k + 1);
  return {scale * mean, scale * std::sqrt(var / static_cast<double>(n_mc))};
}

// ---------------------------------------------------------------------------

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Eigen::MatrixXd evaluate_region_class(const std::vector<Region>& regions, const std::vector<Measured>& sample) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(regions.size()), static_cast<Eigen::Index>(sample.size()));
  for (std::size_t f = 0; f < regions.size(); ++f)
    for (std::size_t i = 0; i < sample.size(); ++i)
      out(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) = mass_in_region(sample[i], regions[f]);
  return out;
}

Eigen::MatrixXd evaluate_function_class(const std::vector<std::function<double(const Measured&)>>& functions,
                                        const std::vector<Measured>& sample) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(functions.size()), static_cast<Eigen::Index>(sample.size()));
  for (std::size_t f = 0; f < functions.size(); ++f)
    for (std::size_t i = 0; i < sample.size(); ++i)
      out(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) = functions[f](sample[i]);
  return out;
}

MonteCarloEstimate rademacher_estimate(const Eigen::MatrixXd& class_values, long n_draws, std::uint64_t seed,
                                       SignDistribution dist) {
  if (class_values.rows() == 0) throw std::invalid_argument("rademacher: empty function class");
  if (class_values.cols() == 0) throw std::invalid_argument("rademacher: empty sample");
  if (n_draws < 1) throw std::invalid_argument("rademacher: need at least one draw");
  const Eigen::Index n = class_values.cols();
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> sups(static_cast<std::size_t>(n_draws));
  Eigen::VectorXd sigma(n);
  for (long m = 0; m < n_draws; ++m) {
    for (Eigen::Index i = 0; i < n; ++i)
      sigma(i) = dist == SignDistribution::rademacher ? ((rng() >> 63) ? 1.0 : -1.0) : normal(rng);
    const Eigen::VectorXd corr = class_values * sigma;
    sups[static_cast<std::size_t>(m)] = corr.cwiseAbs().maxCoeff() / static_cast<double>(n);
  }
  const double mean = pairwise_sum(sups) / static_cast<double>(n_draws);
  if (n_draws == 1) return {mean, 0.0};
  std::vector<double> sq(sups.size());
  for (std::size_t i = 0; i < sups.size(); ++i) sq[i] = (sups[i] - mean) * (sups[i] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(n_draws - 1);
  return {mean, std::sqrt(var / static_cast<double>(n_draws))};
}

// ---------------------------------------------------------------------------

int manifold_dimension(LimitManifold m) { return m == LimitManifold::circle ? 1 : 2; }

double manifold_density_moment(LimitManifold m, int k) {
  // Uniform density: f = 1 / vol(M), so int f^{k+2} = vol(M)^{-(k+1)}.
  const double vol = m == LimitManifold::circle ? 2.0 * std::numbers::pi : 1.0;
  return std::pow(vol, -(k + 1));
}

std::vector<double> xi_for_sample(LimitManifold manifold, int k, long n, std::uint64_t seed,
                                  const std::vector<Rectangle>& rects) {
  const int d = manifold_dimension(manifold);
  const double r_n = r_n_schedule(n, k, d);
  double v_max = 0.0;
  for (const auto& r : rects) {
    if (std::isinf(r.v)) throw std::invalid_argument("limit-check: rectangles need finite v");
    v_max = std::max(v_max, r.v);
  }

  Rng rng(seed);
  Points pts(2, n);
  for (long i = 0; i < n; ++i) {
    if (manifold == LimitManifold::circle) {
      const double theta = 2.0 * std::numbers::pi * uniform01(rng);
      pts(0, i) = std::cos(theta);
      pts(1, i) = std::sin(theta);
    } else {
      pts(0, i) = uniform01(rng);
      pts(1, i) = uniform01(rng);
    }
  }
  pts /= r_n;

  FiltrationOptions opts;
  opts.max_dim = k + 1;
  opts.max_value = v_max;
  const FilteredComplex complex = cech_filtration(pts, opts);
  const auto dgms = persistence(complex);
  const PersistenceDiagram& dgm = dgms.at(static_cast<std::size_t>(k));

  // Flat square: keep features whose defining simplex is 3 v_max (rescaled)
  // away from the boundary, then correct for the retained area.
  const double margin = 3.0 * v_max;
  const double side = 1.0 / r_n;
  double area_fraction = 1.0;
  auto interior = [&](int simplex_index) {
    if (manifold != LimitManifold::flat_square) return true;
    const Simplex& s = complex.simplices()[static_cast<std::size_t>(simplex_index)];
    for (int v = 0; v <= s.dim; ++v) {
      const auto c = pts.col(s.vertex(v));
      if (c(0) < margin || c(0) > side - margin || c(1) < margin || c(1) > side - margin) return false;
    }
    return true;
  };
  if (manifold == LimitManifold::flat_square) {
    const double frac = std::max(0.0, 1.0 - 2.0 * margin / side);
    area_fraction = frac * frac;
    if (area_fraction <= 0.0) throw std::invalid_argument("limit-check: margin exceeds the sampling square");
  }

  std::vector<double> out;
  out.reserve(rects.size());
  for (const auto& rect : rects) {
    long count = 0;
    for (const auto& p : dgm.pairs) {
      if (!rect.contains(p.birth, p.death)) continue;
      if (interior(p.death_simplex >= 0 ? p.death_simplex : p.birth_simplex)) ++count;
    }
    out.push_back(xi_normalize(static_cast<double>(count) / area_fraction, n, r_n, k, d));
  }
  return out;
}

std::vector<LimitCheckRow> run_limit_check(const LimitCheckConfig& cfg) {
  if (cfg.rectangles.empty()) throw std::invalid_argument("limit-check: no rectangles");
  if (cfg.seeds.empty()) throw std::invalid_argument("limit-check: no seeds");
  const int d = manifold_dimension(cfg.manifold);
  if (cfg.k < 0 || cfg.k > d - 1) throw std::invalid_argument("limit-check: require 0 <= k <= d - 1");
  const double moment = manifold_density_moment(cfg.manifold, cfg.k);

  std::vector<MonteCarloEstimate> mu(cfg.rectangles.size());
  parallel_for(cfg.rectangles.size(), cfg.workers, [&](std::size_t r) {
    mu[r] = mu_k_montecarlo(moment, cfg.k, d, cfg.rectangles[r], cfg.n_mc, derive_seed(cfg.mc_seed, r));
  });

  std::vector<LimitCheckRow> rows;
  for (long n : cfg.sample_sizes) {
    std::vector<std::vector<double>> xi(cfg.seeds.size());
    parallel_for(cfg.seeds.size(), cfg.workers, [&](std::size_t s) {
      xi[s] = xi_for_sample(cfg.manifold, cfg.k, n, derive_seed(cfg.seeds[s], static_cast<std::uint64_t>(n)),
                            cfg.rectangles);
    });
    for (std::size_t r = 0; r < cfg.rectangles.size(); ++r) {
      std::vector<double> vals, errs;
      for (const auto& per_seed : xi) {
        vals.push_back(per_seed[r]);
        errs.push_back(std::abs(per_seed[r] - mu[r].mean));
      }
      LimitCheckRow row;
      row.n = n;
      row.r_n = r_n_schedule(n, cfg.k, d);
      row.rectangle = r;
      row.xi_mean = pairwise_sum(vals) / static_cast<double>(vals.size());
      row.mu_hat = mu[r].mean;
      row.mu_stderr = mu[r].stderr_;
      row.mean_abs_error = pairwise_sum(errs) / static_cast<double>(errs.size());
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<RademacherRow> run_rademacher_scaling(const RademacherScalingConfig& cfg) {
  std::vector<Region> regions;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (double r : {0.1, 0.2, 0.3}) {
        Point c(2);
        c << 0.1 + 0.2 * a, 0.1 + 0.2 * b;
        regions.emplace_back(Balld(c, r));
      }

  std::vector<RademacherRow> rows;
  for (long n : cfg.sample_sizes) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)));
    std::vector<Measured> sample;
    sample.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      Points pts(2, cfg.points_per_measure);
      for (int j = 0; j < cfg.points_per_measure; ++j) {
        pts(0, j) = uniform01(rng);
        pts(1, j) = uniform01(rng);
      }
      sample.push_back(Measured::uniform(std::move(pts)));
    }
    const Eigen::MatrixXd values = evaluate_region_class(regions, sample);
    const auto est = rademacher_estimate(values, cfg.n_draws, derive_seed(cfg.seed ^ 0xABCDEFULL, static_cast<std::uint64_t>(n)));
    rows.push_back({n, est.mean, est.stderr_});
  }
  return rows;
}

double loglog_slope(const std::vector<RademacherRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("loglog_slope: need at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(r.estimate);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace bba
