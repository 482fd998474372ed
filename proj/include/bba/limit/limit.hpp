#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bba/core/regions.hpp"
#include "bba/topology/persistence.hpp"

namespace bba {

/// Birth/death rectangle [s, t) x [u, v) with 0 <= s <= t <= u <= v <= inf.
struct Rectangle {
  double s = 0.0, t = 0.0, u = 0.0, v = 0.0;

  Rectangle() = default;
  Rectangle(double s_, double t_, double u_, double v_);
  bool contains(double birth, double death) const {
    return birth >= s && birth < t && death >= u && death < v;
  }
};

/// Sparse-regime scale: n^{-(k+2)/(2+d(k+1))} when k < d - 4 (first branch also
/// at k == d - 4), n^{-(k+4)/(d(k+3))} otherwise.
double r_n_schedule(long n, int k, int d);
double r_n_exponent(int k, int d);

/// Card(R intersect dgm_k(Cech(X_n / r_n))) / (n^{k+2} r_n^{d(k+1)}), where
/// `dgm` was computed on the rescaled cloud.
double xi_count(const PersistenceDiagram& dgm, const Rectangle& rect, long n, double r_n, int k, int d);

/// Same normalization applied to an externally filtered count.
double xi_normalize(double count, long n, double r_n, int k, int d);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// h_r on k+2 points: 1 iff the reduced k-th Betti number of the Cech complex
/// {simplices with value < r} equals 1.
int limit_h(const Points& pts, double r, int k);

/// H_{s,t,u,v} = h_t h_u - h_t h_v - h_s h_u + h_s h_v.
int limit_H(const Points& pts, const Rectangle& rect, int k);

/// Monte-Carlo estimate of the limiting measure mu_k(R) given the density
/// moment I = int_M f^{k+2} dH.
MonteCarloEstimate mu_k_montecarlo(double density_moment, int k, int d, const Rectangle& rect, long n_mc,
                                   std::uint64_t seed);

/// Volume of the Euclidean d-ball of the given radius.
double ball_volume(int d, double radius);

// ---------------------------------------------------------------------------

enum class SignDistribution { rademacher, gaussian };

/// Rows: functions; columns: sample members. Entry (f, i) = f(mu_i).
Eigen::MatrixXd evaluate_region_class(const std::vector<Region>& regions, const std::vector<Measured>& sample);
Eigen::MatrixXd evaluate_function_class(const std::vector<std::function<double(const Measured&)>>& functions,
                                        const std::vector<Measured>& sample);

/// (1/N) E_sigma sup_f |sum_i sigma_i f(mu_i)| over n_draws sign vectors.
MonteCarloEstimate rademacher_estimate(const Eigen::MatrixXd& class_values, long n_draws, std::uint64_t seed,
                                       SignDistribution dist = SignDistribution::rademacher);

/// Pairwise (cascade) summation; order-fixed for reproducibility.
double pairwise_sum(std::span<const double> values);

// ---------------------------------------------------------------------------
// Experiments

enum class LimitManifold { circle, flat_square };

struct LimitCheckConfig {
  LimitManifold manifold = LimitManifold::flat_square;
  int k = 0;
  std::vector<long> sample_sizes{200, 2000};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  long n_mc = 20000;
  std::uint64_t mc_seed = 7;
  std::vector<Rectangle> rectangles{Rectangle(0, 0.1, 0.1, 0.25), Rectangle(0, 0.25, 0.25, 0.5), Rectangle(0, 0.1, 0.5, 0.75)};
  int workers = 1;
};

struct LimitCheckRow {
  long n = 0;
  double r_n = 0.0;
  std::size_t rectangle = 0;
  double xi_mean = 0.0;           // mean of xi over seeds
  double mu_hat = 0.0;
  double mu_stderr = 0.0;
  double mean_abs_error = 0.0;    // mean over seeds of |xi - mu_hat|
};

/// Intrinsic dimension and density moment of the sampling setup.
int manifold_dimension(LimitManifold m);
double manifold_density_moment(LimitManifold m, int k);

/// Rescaled rectangle counts xi_{k,n} for one sample (boundary-margin corrected
/// for the flat square).
std::vector<double> xi_for_sample(LimitManifold manifold, int k, long n, std::uint64_t seed,
                                  const std::vector<Rectangle>& rects);

std::vector<LimitCheckRow> run_limit_check(const LimitCheckConfig& cfg);

struct RademacherScalingConfig {
  std::vector<long> sample_sizes{50, 100, 200, 400, 800, 1600};
  int points_per_measure = 20;
  long n_draws = 400;
  std::uint64_t seed = 11;
};

struct RademacherRow {
  long n = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Ball-indicator grid class on i.i.d. fixed-mass measures in [0, 1]^2.
std::vector<RademacherRow> run_rademacher_scaling(const RademacherScalingConfig& cfg);

/// Least-squares slope of log(estimate) against log(N).
double loglog_slope(const std::vector<RademacherRow>& rows);

}  // namespace bba
