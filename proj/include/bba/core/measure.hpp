#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bba {

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using PointsT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = PointT<double>;
using Points = PointsT<double>;

/// Finite weighted point set. Points are stored column-wise (d x n).
///
/// Weights are kept explicitly even when all equal one; no normalization is
/// ever applied, so thresholds and mass statistics see raw mass.
template <typename Scalar>
class Measure {
 public:
  using PointType = PointT<Scalar>;
  using PointsType = PointsT<Scalar>;
  using WeightsType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Measure(Eigen::Index dim = 1) : points_(dim, 0), weights_(0) {
    if (dim < 1) throw std::invalid_argument("measure dimension must be >= 1");
  }

  Measure(PointsType points, WeightsType weights)
      : points_(std::move(points)), weights_(std::move(weights)) {
    validate();
  }

  /// Unit weights on every column of `points`.
  static Measure uniform(PointsType points) {
    WeightsType w = WeightsType::Ones(points.cols());
    return Measure(std::move(points), std::move(w));
  }

  Eigen::Index dim() const { return points_.rows(); }
  Eigen::Index size() const { return points_.cols(); }
  bool empty() const { return points_.cols() == 0; }

  const PointsType& points() const { return points_; }
  const WeightsType& weights() const { return weights_; }
  auto point(Eigen::Index i) const { return points_.col(i); }
  Scalar weight(Eigen::Index i) const { return weights_(i); }

 private:
  void validate() const {
    if (points_.rows() < 1) throw std::invalid_argument("measure dimension must be >= 1");
    if (points_.cols() != weights_.size())
      throw std::invalid_argument("measure: points and weights differ in length");
    if (!points_.allFinite()) throw std::invalid_argument("measure: non-finite coordinate");
    for (Eigen::Index i = 0; i < weights_.size(); ++i) {
      if (!std::isfinite(static_cast<double>(weights_(i))) || weights_(i) < Scalar(0))
        throw std::invalid_argument("measure: weights must be finite and nonnegative");
    }
  }

  PointsType points_;
  WeightsType weights_;
};

using Measured = Measure<double>;

template <typename Scalar>
struct LabeledDataset {
  std::vector<Measure<Scalar>> measures;
  std::vector<int> labels;
  Eigen::Index dim = 1;

  std::size_t size() const { return measures.size(); }

  void push_back(Measure<Scalar> mu, int label) {
    if (measures.empty() && labels.empty()) dim = mu.dim();
    if (mu.dim() != dim) throw std::invalid_argument("dataset: measure dimension mismatch");
    measures.push_back(std::move(mu));
    labels.push_back(label);
  }

  void validate() const {
    if (measures.size() != labels.size())
      throw std::invalid_argument("dataset: measures and labels differ in length");
    for (const auto& mu : measures)
      if (mu.dim() != dim) throw std::invalid_argument("dataset: measure dimension mismatch");
  }

  /// Sorted distinct labels.
  std::vector<int> label_set() const;

  LabeledDataset subset(const std::vector<std::size_t>& idx) const {
    LabeledDataset out;
    out.dim = dim;
    out.measures.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (auto i : idx) {
      out.measures.push_back(measures.at(i));
      out.labels.push_back(labels.at(i));
    }
    return out;
  }
};

using Dataset = LabeledDataset<double>;

template <typename Scalar>
std::vector<int> LabeledDataset<Scalar>::label_set() const {
  std::vector<int> out(labels);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename Scalar>
Scalar total_mass(const Measure<Scalar>& mu) {
  Scalar acc(0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) acc += mu.weight(i);
  return acc;
}

/// Unnormalized integral sum_i w_i f(x_i). Throws if f is non-finite on the support.
template <typename Scalar, typename F>
Scalar integrate(const Measure<Scalar>& mu, F&& f) {
  Scalar acc(0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const Scalar v = f(mu.point(i));
    if (!std::isfinite(static_cast<double>(v)))
      throw std::domain_error("integrate: integrand is not finite on the support");
    acc += mu.weight(i) * v;
  }
  return acc;
}

/// Power mean of total masses, (sum M_i^p / N)^(1/p).
template <typename Scalar>
Scalar mbar_p(const LabeledDataset<Scalar>& data, double p) {
  if (data.measures.empty()) throw std::invalid_argument("mbar_p: empty dataset");
  if (!(p >= 1.0)) throw std::invalid_argument("mbar_p: p must be >= 1");
  double acc = 0.0;
  for (const auto& mu : data.measures) acc += std::pow(static_cast<double>(total_mass(mu)), p);
  return static_cast<Scalar>(std::pow(acc / static_cast<double>(data.measures.size()), 1.0 / p));
}

}  // namespace bba
