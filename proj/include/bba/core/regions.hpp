#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

#include "bba/core/measure.hpp"

namespace bba {

/// Closed Euclidean ball.
template <typename Scalar>
struct Ball {
  PointT<Scalar> center;
  Scalar radius{0};

  Ball() = default;
  Ball(PointT<Scalar> c, Scalar r) : center(std::move(c)), radius(r) {
    if (!(radius >= Scalar(0)) || !std::isfinite(static_cast<double>(radius)))
      throw std::invalid_argument("ball radius must be finite and >= 0");
  }
  Eigen::Index dim() const { return center.size(); }
};

/// Closed axis-aligned box. Bounds may be infinite (half-open quadrants).
template <typename Scalar>
struct AxisRect {
  PointT<Scalar> mins;
  PointT<Scalar> maxs;

  AxisRect() = default;
  AxisRect(PointT<Scalar> lo, PointT<Scalar> hi) : mins(std::move(lo)), maxs(std::move(hi)) {
    if (mins.size() != maxs.size()) throw std::invalid_argument("rect: mins/maxs length mismatch");
    if (mins.size() < 1) throw std::invalid_argument("rect: empty dimension");
    for (Eigen::Index j = 0; j < mins.size(); ++j) {
      if (std::isnan(static_cast<double>(mins(j))) || std::isnan(static_cast<double>(maxs(j))) ||
          !(mins(j) <= maxs(j)))
        throw std::invalid_argument("rect: require mins[j] <= maxs[j]");
    }
  }
  Eigen::Index dim() const { return mins.size(); }
};

template <typename Scalar>
using RegionT = std::variant<Ball<Scalar>, AxisRect<Scalar>>;

using Region = RegionT<double>;
using Balld = Ball<double>;
using AxisRectd = AxisRect<double>;

template <typename Scalar>
Eigen::Index region_dim(const RegionT<Scalar>& region) {
  return std::visit([](const auto& r) { return r.dim(); }, region);
}

template <typename Scalar, typename Derived>
bool contains(const Ball<Scalar>& ball, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != ball.dim()) throw std::invalid_argument("contains: dimension mismatch");
  return (x - ball.center).squaredNorm() <= ball.radius * ball.radius;
}

template <typename Scalar, typename Derived>
bool contains(const AxisRect<Scalar>& rect, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != rect.dim()) throw std::invalid_argument("contains: dimension mismatch");
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x(j) < rect.mins(j) || x(j) > rect.maxs(j)) return false;
  return true;
}

template <typename Scalar, typename Derived>
bool contains(const RegionT<Scalar>& region, const Eigen::MatrixBase<Derived>& x) {
  return std::visit([&](const auto& r) { return contains(r, x); }, region);
}

/// Euclidean distance from x to the closed ball, max(0, |x - C| - r).
template <typename Scalar, typename Derived>
Scalar dist_to_ball(const Ball<Scalar>& ball, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != ball.dim()) throw std::invalid_argument("dist_to_ball: dimension mismatch");
  const Scalar d = (x - ball.center).norm() - ball.radius;
  return d > Scalar(0) ? d : Scalar(0);
}

/// mu(A) for a closed region A. Boundary points count as inside.
template <typename Scalar>
Scalar mass_in_region(const Measure<Scalar>& mu, const RegionT<Scalar>& region) {
  if (region_dim(region) != mu.dim()) throw std::invalid_argument("mass_in_region: dimension mismatch");
  return std::visit(
      [&](const auto& r) {
        Scalar acc(0);
        for (Eigen::Index i = 0; i < mu.size(); ++i)
          if (contains(r, mu.point(i))) acc += mu.weight(i);
        return acc;
      },
      region);
}

template <typename Scalar>
struct SmoothParams {
  PointT<Scalar> center;
  Scalar radius{0};
  Scalar threshold{0};
  Scalar scale{1};
};

using SmoothParamsd = SmoothParams<double>;

/// Smoothed ball mass minus threshold: sum_i w_i exp(-d(B(C, r), x_i) / sigma) - s.
template <typename Scalar>
Scalar smooth_feature(const Measure<Scalar>& mu, const SmoothParams<Scalar>& p) {
  if (!(p.scale > Scalar(0))) throw std::invalid_argument("smooth_feature: scale must be > 0");
  if (p.center.size() != mu.dim()) throw std::invalid_argument("smooth_feature: dimension mismatch");
  Scalar acc(0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    Scalar d = (mu.point(i) - p.center).norm() - p.radius;
    if (d < Scalar(0)) d = Scalar(0);
    acc += mu.weight(i) * std::exp(-d / p.scale);
  }
  return acc - p.threshold;
}

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  if (x >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-x));
  const Scalar e = std::exp(x);
  return e / (Scalar(1) + e);
}

}  // namespace bba
